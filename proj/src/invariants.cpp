#include "kfb/invariants.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "kfb/f2linalg.hpp"
#include "kfb/f2poly.hpp"

namespace kfb {

Rational parse_rational(const std::string& text) {
    try {
        return Rational(text);
    } catch (const std::exception&) {
        throw InputError("not a rational number: '" + text + "'");
    }
}

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::vector<Arrow> vertical_differential(const FilteredComplex& c) {
    require_valid(c);
    std::vector<Arrow> out;
    for (const auto& a : c.arrows())
        if (a.u_power == 0) out.push_back(a);
    return out;
}

std::vector<Arrow> horizontal_differential(const FilteredComplex& c) {
    require_valid(c);
    std::vector<Arrow> out;
    for (const auto& a : c.arrows())
        if (c.gen(a.target).alexander - a.u_power == c.gen(a.source).alexander)
            out.push_back(a);
    return out;
}

std::optional<int> vertical_length(const FilteredComplex& c, const std::string& gen_id) {
    require_valid(c);
    int g = c.index_of(gen_id);
    std::optional<int> top;
    for (const auto& a : c.arrows())
        if (a.source == g && a.u_power == 0) {
            int aj = c.gen(a.target).alexander;
            if (!top || aj > *top) top = aj;
        }
    if (!top) return std::nullopt;
    return c.gen(g).alexander - *top;
}

namespace {

std::vector<std::vector<int>> vertical_targets(const FilteredComplex& c) {
    std::vector<std::vector<int>> out(c.size());
    for (const auto& a : c.arrows())
        if (a.u_power == 0) out[a.source].push_back(a.target);
    return out;
}

// Homology of (CFK-hat, d_V) must be one-dimensional and sit in Maslov 0.
void require_knot_complex(const FilteredComplex& c) {
    auto targets = vertical_targets(c);
    std::map<int, std::vector<int>> by_maslov;
    for (int i = 0; i < c.size(); ++i) by_maslov[c.gen(i).maslov].push_back(i);

    std::map<int, int> rank; // maslov of the source level -> rank of d_V
    for (const auto& [m, gens] : by_maslov) {
        F2Span span;
        for (int g : gens) {
            BitVec v(c.size());
            for (int t : targets[g]) v.flip(t);
            if (v.any()) span.insert(v);
        }
        rank[m] = span.rank();
    }
    auto rank_at = [&](int m) {
        auto it = rank.find(m);
        return it == rank.end() ? 0 : it->second;
    };

    int total = 0, at_zero = 0;
    for (const auto& [m, gens] : by_maslov) {
        int h = static_cast<int>(gens.size()) - rank_at(m) - rank_at(m + 1);
        total += h;
        if (m == 0) at_zero = h;
    }
    if (total != 1 || at_zero != 1) throw NotAKnotComplex();
}

} // namespace

int tau(const FilteredComplex& c) {
    require_valid(c);
    require_knot_complex(c);

    auto targets = vertical_targets(c);
    auto col = [&](int g) {
        BitVec v(c.size());
        for (int t : targets[g]) v.flip(t);
        return v;
    };

    F2Span image; // d_V of the Maslov-1 level
    for (int g = 0; g < c.size(); ++g)
        if (c.gen(g).maslov == 1) image.insert(col(g));

    std::set<int> levels;
    for (const auto& g : c.generators())
        if (g.maslov == 0) levels.insert(g.alexander);

    for (int j : levels) {
        std::vector<int> sel;
        for (int g = 0; g < c.size(); ++g)
            if (c.gen(g).maslov == 0 && c.gen(g).alexander <= j) sel.push_back(g);
        std::vector<BitVec> cols;
        for (int g : sel) cols.push_back(col(g));
        for (const auto& combo : kernel_basis(cols, static_cast<int>(sel.size()))) {
            BitVec chain(c.size());
            for (size_t idx = 0; idx < sel.size(); ++idx)
                if (combo.get(static_cast<int>(idx))) chain.flip(sel[idx]);
            if (!image.contains(chain)) return j;
        }
    }
    throw InternalError("tau: no nontrivial vertical class found despite precondition");
}

HfkTable hfk_hat(const FilteredComplex& c) {
    require_valid(c);

    // (i,j)-preserving arrows: u_power = 0 and equal Alexander gradings.
    std::vector<std::vector<int>> targets(c.size());
    for (const auto& a : c.arrows())
        if (a.u_power == 0 &&
            c.gen(a.target).alexander == c.gen(a.source).alexander)
            targets[a.source].push_back(a.target);

    std::map<std::pair<int, int>, std::vector<int>> by_bigrading;
    for (int g = 0; g < c.size(); ++g)
        by_bigrading[{c.gen(g).alexander, c.gen(g).maslov}].push_back(g);

    std::map<std::pair<int, int>, int> rank; // (a, m of source) -> rank
    for (const auto& [am, gens] : by_bigrading) {
        F2Span span;
        for (int g : gens) {
            BitVec v(c.size());
            for (int t : targets[g]) v.flip(t);
            if (v.any()) span.insert(v);
        }
        rank[am] = span.rank();
    }
    auto rank_at = [&](int a, int m) {
        auto it = rank.find({a, m});
        return it == rank.end() ? 0 : it->second;
    };

    HfkTable table;
    for (const auto& [am, gens] : by_bigrading) {
        auto [a, m] = am;
        int h = static_cast<int>(gens.size()) - rank_at(a, m) - rank_at(a, m + 1);
        if (h != 0) table[am] = h;
    }
    return table;
}

TorsionResult torsion_order(const FilteredComplex& c) {
    require_valid(c);
    const int n = c.size();

    UMat dh(n, n);
    for (const auto& a : c.arrows())
        if (c.gen(a.target).alexander - a.u_power == c.gen(a.source).alexander)
            dh.add_to(a.target, a.source, UPoly::monomial(a.u_power));

    SmithResult snf = smith_normal_form(dh);
    const int r = snf.rank();

    TorsionResult out;
    out.module.free_rank = n - 2 * r;
    for (const auto& d : snf.diagonal) {
        if (d.is_zero() || d.is_one()) continue;
        // The d_H matrix is graded by the j-grading, so every minor is a
        // monomial and so is every elementary divisor.
        if (!d.is_monomial())
            throw InternalError("torsion_order: non-monomial elementary divisor " + d.str());
        out.module.torsion_orders.push_back(d.degree());
    }
    std::sort(out.module.torsion_orders.begin(), out.module.torsion_orders.end());
    out.ord = out.module.torsion_orders.empty() ? 0 : out.module.torsion_orders.back();
    return out;
}

int default_window(const FilteredComplex& c) {
    return c.max_alexander() - c.min_alexander() + 2;
}

H0Lattice::H0Lattice(const FilteredComplex& c, int window)
    : c_(c), window_(window) {
    m0_index_.assign(c.size(), -1);
    for (int g = 0; g < c.size(); ++g) {
        const auto& gen = c.gen(g);
        if (gen.maslov % 2 == 0) {
            int k = gen.maslov / 2;
            m0_index_[g] = static_cast<int>(m0_.size());
            m0_.push_back({g, k, -k, gen.alexander - k});
        } else {
            // (M-1)/2 with sign-safe rounding; M odd so the division is exact.
            int k = (gen.maslov - 1) / 2;
            if ((gen.maslov - 1) % 2 != 0) throw InternalError("parity");
            m1_.push_back({g, k, -k, gen.alexander - k});
        }
    }
}

bool H0Lattice::in_window(const LatticePoint& p) const {
    return p.k >= -window_ && p.k <= window_;
}

H0Lattice::ClassSearch H0Lattice::nontrivial_class(const std::vector<char>& select) const {
    const int n = c_.size();
    std::vector<std::vector<int>> targets(n);
    for (const auto& a : c_.arrows()) targets[a.source].push_back(a.target);

    // Boundaries of Maslov-1 translates inside the window.
    F2Span image;
    for (const auto& p : m1_) {
        if (!in_window(p)) continue;
        BitVec v(n);
        for (int t : targets[p.gen]) v.flip(t);
        if (v.any()) image.insert(v);
    }

    std::vector<int> sel;
    for (size_t idx = 0; idx < m0_.size(); ++idx)
        if (select[idx]) sel.push_back(static_cast<int>(idx));

    std::vector<BitVec> cols;
    for (int idx : sel) {
        BitVec v(n);
        for (int t : targets[m0_[idx].gen]) v.flip(t);
        cols.push_back(v);
    }

    for (const auto& combo : kernel_basis(cols, static_cast<int>(sel.size()))) {
        BitVec chain(n);
        std::vector<int> support;
        for (size_t idx = 0; idx < sel.size(); ++idx)
            if (combo.get(static_cast<int>(idx))) {
                chain.flip(m0_[sel[idx]].gen);
                support.push_back(sel[idx]);
            }
        if (!image.contains(chain)) return {true, support};
    }
    return {false, {}};
}

namespace {

Rational point_weight(const LatticePoint& p, const Rational& t) {
    // j * t/2 + i * (1 - t/2)
    return Rational(p.j) * t / 2 + Rational(p.i) * (1 - t / 2);
}

// Minimal s with H0(C_{t,s}) -> H0 surjective, as -2s; nullopt if no cut
// carries the class.
std::optional<Rational> min_cut_upsilon(const H0Lattice& lat, const Rational& t) {
    std::set<Rational> candidates;
    for (const auto& p : lat.maslov0())
        if (lat.in_window(p)) candidates.insert(point_weight(p, t));
    for (const Rational& s : candidates) {
        std::vector<char> select(lat.maslov0().size(), 0);
        for (size_t idx = 0; idx < lat.maslov0().size(); ++idx) {
            const auto& p = lat.maslov0()[idx];
            select[idx] = lat.in_window(p) && point_weight(p, t) <= s;
        }
        if (lat.nontrivial_class(select).surjective) return -2 * s;
    }
    return std::nullopt;
}

Rational upsilon_impl(const H0Lattice& lat, const H0Lattice& lat_next, const Rational& t) {
    auto v = min_cut_upsilon(lat, t);
    auto v_next = min_cut_upsilon(lat_next, t);
    if (v != v_next)
        throw InternalError("window_unstable: upsilon at t=" + rational_str(t) +
                            " differs between W and W+1");
    if (!v) throw NotAKnotComplex();
    return *v;
}

} // namespace

Rational upsilon_at(const FilteredComplex& c, const Rational& t, std::optional<int> window) {
    require_valid(c);
    require_knot_complex(c);
    if (t < 0 || t > 2) throw InputError("upsilon parameter t must lie in [0,2]");
    const int w = window.value_or(default_window(c));
    H0Lattice lat(c, w), lat_next(c, w + 1);
    return upsilon_impl(lat, lat_next, t);
}

Rational PLFunction::value_at(const Rational& t) const {
    if (samples.empty()) throw InternalError("empty PL function");
    if (t < samples.front().first || t > samples.back().first)
        throw InputError("PL function evaluated outside its domain");
    for (size_t k = 0; k + 1 < samples.size(); ++k) {
        const auto& [t0, v0] = samples[k];
        const auto& [t1, v1] = samples[k + 1];
        if (t >= t0 && t <= t1) {
            if (t == t0) return v0;
            if (t == t1) return v1;
            return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
        }
    }
    return samples.back().second;
}

PLFunction upsilon_pl(const FilteredComplex& c, std::optional<int> window) {
    require_valid(c);
    require_knot_complex(c);
    const int w = window.value_or(default_window(c));
    H0Lattice lat(c, w), lat_next(c, w + 1);

    // Candidate breakpoints: parameters where two window lattice points trade
    // places in the weight order, i.e. j t/2 + i(1-t/2) = j' t/2 + i'(1-t/2).
    std::set<Rational> cuts{Rational(0), Rational(2)};
    std::vector<LatticePoint> pts;
    for (const auto& p : lat.maslov0())
        if (lat.in_window(p)) pts.push_back(p);
    for (size_t a = 0; a < pts.size(); ++a)
        for (size_t b = a + 1; b < pts.size(); ++b) {
            int denom = (pts[a].j - pts[a].i) - (pts[b].j - pts[b].i);
            if (denom == 0) continue;
            Rational tstar = Rational(2 * (pts[b].i - pts[a].i)) / denom;
            if (tstar > 0 && tstar < 2) cuts.insert(tstar);
        }

    std::vector<std::pair<Rational, Rational>> samples;
    for (const Rational& t : cuts) samples.emplace_back(t, upsilon_impl(lat, lat_next, t));

    // Between consecutive candidates the function is affine; verify at the
    // midpoint and fail loudly rather than emit a wrong function.
    for (size_t k = 0; k + 1 < samples.size(); ++k) {
        Rational mid = (samples[k].first + samples[k + 1].first) / 2;
        Rational expect = (samples[k].second + samples[k + 1].second) / 2;
        if (upsilon_impl(lat, lat_next, mid) != expect)
            throw InternalError("upsilon_pl: nonlinearity between candidate breakpoints at t=" +
                                rational_str(mid));
    }

    // Drop interior samples where the slope does not change.
    PLFunction out;
    for (size_t k = 0; k < samples.size(); ++k) {
        if (k > 0 && k + 1 < samples.size()) {
            const auto& [t0, v0] = samples[k - 1];
            const auto& [t1, v1] = samples[k];
            const auto& [t2, v2] = samples[k + 1];
            if ((v1 - v0) * (t2 - t1) == (v2 - v1) * (t1 - t0)) continue;
        }
        out.samples.push_back(samples[k]);
    }

    if (out.samples.front().second != 0 || out.samples.back().second != 0)
        throw InternalError("upsilon_pl: endpoint values are nonzero");
    return out;
}

FilteredComplex reduce(const FilteredComplex& c) {
    require_valid(c);

    std::vector<Generator> gens(c.generators().begin(), c.generators().end());
    std::set<std::tuple<int, int, int>> arrows;
    for (const auto& a : c.arrows()) arrows.insert({a.source, a.target, a.u_power});
    std::vector<char> alive(gens.size(), 1);

    auto toggle = [&](int s, int t, int u) {
        auto key = std::make_tuple(s, t, u);
        if (!arrows.erase(key)) arrows.insert(key);
    };

    for (;;) {
        int ca = -1, cb = -1;
        for (const auto& [s, t, u] : arrows)
            if (u == 0 && alive[s] && alive[t] &&
                gens[s].alexander == gens[t].alexander) {
                ca = s;
                cb = t;
                break;
            }
        if (ca < 0) break;

        std::vector<std::tuple<int, int, int>> into_b, outof_a;
        for (const auto& [s, t, u] : arrows) {
            if (t == cb && s != ca && alive[s]) into_b.emplace_back(s, t, u);
            if (s == ca && t != cb && alive[t]) outof_a.emplace_back(s, t, u);
        }
        for (const auto& [xs, xt, xu] : into_b)
            for (const auto& [ys, yt, yu] : outof_a)
                toggle(xs, yt, xu + yu);

        alive[ca] = alive[cb] = 0;
        for (auto it = arrows.begin(); it != arrows.end();) {
            auto [s, t, u] = *it;
            if (s == ca || s == cb || t == ca || t == cb) it = arrows.erase(it);
            else ++it;
        }
    }

    FilteredComplex out;
    std::vector<int> remap(gens.size(), -1);
    for (size_t g = 0; g < gens.size(); ++g)
        if (alive[g]) remap[g] = out.add_generator(gens[g].id, gens[g].alexander, gens[g].maslov);
    for (const auto& [s, t, u] : arrows) out.toggle_arrow(remap[s], remap[t], u);
    out.set_symmetric(c.symmetric());
    return out;
}

} // namespace kfb
