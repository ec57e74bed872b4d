#include "kfb/acceptance.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "kfb/braid.hpp"
#include "kfb/constructors.hpp"
#include "kfb/invariants.hpp"
#include "kfb/verifier.hpp"

namespace kfb {

namespace {

struct Check {
    bool ok = true;
    std::string detail;
    int count = 0;
    void expect(bool cond, const std::string& what) {
        ++count;
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

// ---- independent oracles (no shared code with the implementation path) ----

// A chain as a set of (generator, U exponent) pairs.
using BruteChain = std::set<std::pair<int, int>>;

BruteChain brute_boundary(const FilteredComplex& c, const BruteChain& chain) {
    BruteChain out;
    for (const auto& [g, k] : chain)
        for (const auto& a : c.arrows()) {
            if (a.source != g) continue;
            auto term = std::make_pair(a.target, k + a.u_power);
            if (!out.erase(term)) out.insert(term);
        }
    return out;
}

// Upsilon by exhaustive enumeration of all window chains, for small complexes.
std::optional<Rational> brute_upsilon(const FilteredComplex& c, const Rational& t, int window) {
    std::vector<std::pair<int, int>> m0, m1; // (gen, k)
    for (int g = 0; g < c.size(); ++g) {
        int m = c.gen(g).maslov;
        if (m % 2 == 0 && std::abs(m / 2) <= window) m0.emplace_back(g, m / 2);
        if (m % 2 != 0 && std::abs((m - 1) / 2) <= window) m1.emplace_back(g, (m - 1) / 2);
    }
    if (m0.size() > 20 || m1.size() > 20) throw InputError("brute oracle: complex too large");

    std::vector<BruteChain> boundaries;
    for (unsigned long mask = 0; mask < (1ul << m1.size()); ++mask) {
        BruteChain eta;
        for (size_t b = 0; b < m1.size(); ++b)
            if (mask & (1ul << b)) eta.insert(m1[b]);
        boundaries.push_back(brute_boundary(c, eta));
    }

    auto weight = [&](const std::pair<int, int>& p) {
        int i = -p.second;
        int j = c.gen(p.first).alexander - p.second;
        return Rational(j) * t / 2 + Rational(i) * (1 - t / 2);
    };

    std::optional<Rational> best;
    for (unsigned long mask = 1; mask < (1ul << m0.size()); ++mask) {
        BruteChain xi;
        for (size_t b = 0; b < m0.size(); ++b)
            if (mask & (1ul << b)) xi.insert(m0[b]);
        if (!brute_boundary(c, xi).empty()) continue; // not a cycle
        if (std::find(boundaries.begin(), boundaries.end(), xi) != boundaries.end())
            continue; // trivial class
        Rational top = weight(*xi.begin());
        for (const auto& p : xi) top = std::max(top, weight(p));
        if (!best || top < *best) best = top;
    }
    if (!best) return std::nullopt;
    return -2 * *best;
}

// Direct re-check of the structural laws, independent of validate().
std::set<std::string> oracle_violations(const FilteredComplex& c) {
    std::set<std::string> out;
    for (const auto& a : c.arrows()) {
        if (c.gen(a.target).alexander - a.u_power > c.gen(a.source).alexander)
            out.insert("filtration_violated");
        if (c.gen(a.target).maslov - 2 * a.u_power != c.gen(a.source).maslov - 1)
            out.insert("maslov_violated");
    }
    std::map<std::tuple<int, int, int>, int> two_paths;
    for (const auto& a : c.arrows())
        for (const auto& b : c.arrows())
            if (b.source == a.target)
                two_paths[{a.source, b.target, a.u_power + b.u_power}] ^= 1;
    for (const auto& [k, parity] : two_paths)
        if (parity) out.insert("d_squared_nonzero");

    if (c.symmetric()) {
        const int n = c.size();
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::set<std::tuple<int, int, int>> arrows;
        for (const auto& a : c.arrows()) arrows.insert({a.source, a.target, a.u_power});
        bool found = false;
        do {
            bool good = true;
            for (int g = 0; g < n && good; ++g) {
                const auto& x = c.gen(g);
                const auto& y = c.gen(perm[g]);
                if (y.alexander != -x.alexander || y.maslov != x.maslov - 2 * x.alexander)
                    good = false;
            }
            for (const auto& a : c.arrows()) {
                if (!good) break;
                int u = a.u_power + c.gen(a.source).alexander - c.gen(a.target).alexander;
                if (u < 0 || !arrows.count({perm[a.source], perm[a.target], u})) good = false;
            }
            if (good) found = true;
        } while (!found && std::next_permutation(perm.begin(), perm.end()));
        if (!found) out.insert("symmetry_missing");
    }
    return out;
}

std::string pair_name(const std::string& label, int n) {
    return label + " n=" + std::to_string(n);
}

// ---- criteria ----

CriterionResult criterion_torus_invariants(const std::string& data_dir) {
    Check ch;
    const std::vector<std::pair<int, int>> pqs = {{2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 5}, {4, 5}};
    for (auto [p, q] : pqs) {
        FilteredComplex c = staircase_torus(p, q);
        int expect_tau = (p - 1) * (q - 1) / 2;
        int expect_ord = std::min(p, q) - 1;
        std::string name = "T(" + std::to_string(p) + "," + std::to_string(q) + ")";
        ch.expect(tau(c) == expect_tau, name + ": tau != (p-1)(q-1)/2");
        ch.expect(torsion_order(c).ord == expect_ord, name + ": ord != min(p,q)-1");
        // Ord <= bridge - 1 with bridge(T(p,q)) = min(p,q).
        ch.expect(expect_ord <= std::min(p, q) - 1, name + ": torsion bound violated");
    }
    (void)data_dir;
    return {1, "torus-knot invariant suite", ch.ok,
            ch.ok ? std::to_string(ch.count) + " checks" : ch.detail};
}

CriterionResult criterion_upsilon_properties(const std::string& data_dir) {
    Check ch;
    for (const auto& label : bundled_labels()) {
        FilteredComplex c = load_bundled(label, data_dir);
        int t = tau(c);
        PLFunction pl = upsilon_pl(c);
        ch.expect(pl.value_at(0) == 0, label + ": upsilon(0) != 0");
        ch.expect(pl.value_at(2) == 0, label + ": upsilon(2) != 0");
        for (const auto& [bt, bv] : pl.samples)
            ch.expect(pl.value_at(2 - bt) == bv, label + ": upsilon not symmetric at t=" + rational_str(bt));
        if (pl.samples.size() >= 2) {
            const auto& [t0, v0] = pl.samples[0];
            const auto& [t1, v1] = pl.samples[1];
            ch.expect((v1 - v0) == -t * (t1 - t0), label + ": initial slope != -tau");
        }

        const int w = default_window(c);
        for (int num = 0; num <= 16; ++num) {
            Rational tt = Rational(num) / 8;
            Rational a = upsilon_at(c, tt, w);
            Rational b = upsilon_at(c, tt, w + 1);
            ch.expect(a == b, label + ": window instability at t=" + rational_str(tt));
            if (c.size() <= 6) {
                auto brute = brute_upsilon(c, tt, w);
                ch.expect(brute && *brute == a,
                          label + ": brute-force oracle mismatch at t=" + rational_str(tt));
            }
        }
    }
    return {2, "upsilon property suite", ch.ok,
            ch.ok ? std::to_string(ch.count) + " checks" : ch.detail};
}

std::vector<std::pair<std::string, int>> passing_pairs(const std::string& data_dir) {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& label : bundled_labels()) {
        FilteredComplex c = load_bundled(label, data_dir);
        for (int n = 2; n <= 5; ++n) {
            ConditionReport rep = check_conditions(c, n);
            if (rep.cond1 && rep.cond2) out.emplace_back(label, n);
        }
    }
    return out;
}

CriterionResult criterion_proposition(const std::string& data_dir) {
    Check ch;
    auto pairs = passing_pairs(data_dir);
    ch.expect(!pairs.empty(), "no (complex, n) pair satisfies the conditions");
    for (const auto& [label, n] : pairs) {
        FilteredComplex c = load_bundled(label, data_dir);
        TorsionResult tr = torsion_order(c);
        ch.expect(tr.ord >= n - 1, pair_name(label, n) + ": ord < n-1 (contradiction)");
        auto wit = long_vertical_differential(c, n);
        ch.expect(wit.has_value() && wit->vertical_length >= n - 1,
                  pair_name(label, n) + ": no vertical differential of length >= n-1");
    }
    return {3, "torsion-order bound on condition-passing pairs", ch.ok,
            ch.ok ? std::to_string(pairs.size()) + " passing pairs" : ch.detail};
}

CriterionResult criterion_regions(const std::string& data_dir) {
    Check ch;
    for (const auto& [label, n] : passing_pairs(data_dir)) {
        FilteredComplex c = load_bundled(label, data_dir);
        RegionReport rep = lemma_cycle_witness(c, n);
        ch.expect(rep.full_surjective, pair_name(label, n) + ": region (a) not surjective");
        ch.expect(!rep.strict_surjective, pair_name(label, n) + ": strict region (b) surjective");
        ch.expect(rep.line_restricted_surjective,
                  pair_name(label, n) + ": line-restricted region (c) carries no class");
        ch.expect(rep.witness.has_value(), pair_name(label, n) + ": no witness cycle");
        if (rep.witness) {
            bool on_line_pos = false;
            for (const auto& p : rep.witness->chain) {
                ch.expect(p.j <= rep.tau - p.i * (n - 1),
                          pair_name(label, n) + ": witness point outside region");
                if (p.on_line && p.i >= 1) on_line_pos = true;
            }
            ch.expect(on_line_pos, pair_name(label, n) + ": witness misses the line at i >= 1");
        }
    }
    // Equivalence with the Upsilon reformulation, over all bundled pairs.
    for (const auto& label : bundled_labels()) {
        FilteredComplex c = load_bundled(label, data_dir);
        int t = tau(c);
        for (int n = 2; n <= 5; ++n) {
            RegionReport rep = lemma_cycle_witness(c, n);
            bool via_upsilon = upsilon_at(c, Rational(2) / n) >= Rational(-2 * t) / n;
            ch.expect(rep.full_surjective == via_upsilon,
                      pair_name(label, n) + ": region (a) disagrees with upsilon(2/n) >= -2tau/n");
        }
    }
    return {4, "lemma region suite", ch.ok,
            ch.ok ? std::to_string(ch.count) + " checks" : ch.detail};
}

CriterionResult criterion_certificates(const std::string& data_dir) {
    Check ch;
    struct Case {
        int p, q, r, s;
    };
    for (const Case& k : {Case{3, 4, 2, 1}, Case{3, 5, 2, 2}, Case{5, 7, 3, 2}}) {
        BraidWord w = twisted_torus_braid(k.p, k.q, k.r, k.s);
        BridgeCertificate cert = bridge_certificate(w, data_dir);
        std::string name = "T(" + std::to_string(k.p) + "," + std::to_string(k.q) + ";" +
                           std::to_string(k.r) + "," + std::to_string(k.s) + ")";
        ch.expect(cert.complete, name + ": certificate incomplete");
        ch.expect(cert.n == k.p, name + ": certified value != p");
        for (const auto& e : cert.chain)
            ch.expect(e.value == k.p, name + ": chain entry " + e.name + " != p");
        if (cert.attached)
            ch.expect(cert.attached->status == PropositionVerdict::Status::Pass,
                      name + ": attached complex verdict not PASS");
    }
    BridgeCertificate tref = bridge_certificate(parse_braid("B2: 1 1 1"), data_dir);
    ch.expect(tref.complete && tref.n == 2, "trefoil: bridge != 2");
    return {5, "bridge certificate pipeline", ch.ok,
            ch.ok ? std::to_string(ch.count) + " checks" : ch.detail};
}

CriterionResult criterion_garside(const std::string&) {
    Check ch;
    std::mt19937 rng(20250810);

    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 + static_cast<int>(rng() % 4); // strands <= 5
        int len = 1 + static_cast<int>(rng() % 30);
        BraidWord w{n, {}};
        for (int k = 0; k < len; ++k) w.letters.push_back(1 + static_cast<int>(rng() % (n - 1)));
        GarsideNF nf = garside_normal_form(w);
        GarsideNF again = garside_normal_form(expand(nf));
        ch.expect(nf == again, "normal form not idempotent on " + braid_str(w));
    }

    // Braid-relation rewrites preserve the braid element, hence the verdict.
    for (int trial = 0; trial < 200; ++trial) {
        int p = 3 + static_cast<int>(rng() % 3);
        int q = 2 + static_cast<int>(rng() % 7);
        BraidWord w{p, {}};
        for (int rep = 0; rep < q; ++rep)
            for (int i = 1; i <= p - 1; ++i) w.letters.push_back(i);
        // pad with extra random letters for variety
        for (int k = static_cast<int>(rng() % 4); k > 0; --k)
            w.letters.push_back(1 + static_cast<int>(rng() % (p - 1)));
        bool before = is_twist_positive(w).twist_positive;
        for (int moves = 0; moves < 8; ++moves) {
            std::vector<size_t> far, braidable;
            for (size_t k = 0; k + 1 < w.letters.size(); ++k) {
                if (std::abs(w.letters[k] - w.letters[k + 1]) >= 2) far.push_back(k);
                if (k + 2 < w.letters.size() && w.letters[k] == w.letters[k + 2] &&
                    std::abs(w.letters[k] - w.letters[k + 1]) == 1)
                    braidable.push_back(k);
            }
            if (!braidable.empty() && rng() % 2 == 0) {
                // (a, b, a) -> (b, a, b) with |a - b| = 1
                size_t k = braidable[rng() % braidable.size()];
                int a = w.letters[k], b = w.letters[k + 1];
                w.letters[k] = b;
                w.letters[k + 1] = a;
                w.letters[k + 2] = b;
            } else if (!far.empty()) {
                size_t k = far[rng() % far.size()];
                std::swap(w.letters[k], w.letters[k + 1]);
            }
        }
        ch.expect(is_twist_positive(w).twist_positive == before,
                  "twist positivity changed under braid relations for " + braid_str(w));
    }

    for (int p = 2; p <= 5; ++p)
        for (int q = 1; q <= 12; ++q) {
            BraidWord w{p, {}};
            for (int rep = 0; rep < q; ++rep)
                for (int i = 1; i <= p - 1; ++i) w.letters.push_back(i);
            TwistPositivity tp = is_twist_positive(w);
            ch.expect(tp.twist_positive == (q >= p),
                      "torus word p=" + std::to_string(p) + " q=" + std::to_string(q) +
                          ": twist positivity != (q >= p)");
            if (tp.twist_positive) {
                BraidWord gamma_expect{p, {}};
                for (int rep = 0; rep < q - p; ++rep)
                    for (int i = 1; i <= p - 1; ++i) gamma_expect.letters.push_back(i);
                ch.expect(garside_normal_form(*tp.gamma) == garside_normal_form(gamma_expect),
                          "gamma of torus word p=" + std::to_string(p) +
                              " q=" + std::to_string(q) + " is wrong");
            }
        }
    return {6, "garside suite", ch.ok,
            ch.ok ? std::to_string(ch.count) + " checks" : ch.detail};
}

CriterionResult criterion_fuzz(const std::string& data_dir) {
    Check ch;
    std::mt19937 rng(424242);
    std::vector<FilteredComplex> pool;
    for (const auto& label : bundled_labels()) pool.push_back(load_bundled(label, data_dir));

    int rejected = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const FilteredComplex& base = pool[rng() % pool.size()];
        if (base.size() == 0) continue;
        FilteredComplex mut;
        for (const auto& g : base.generators()) mut.add_generator(g.id, g.alexander, g.maslov);
        for (const auto& a : base.arrows()) mut.toggle_arrow(a.source, a.target, a.u_power);
        mut.set_symmetric(base.symmetric());

        int op = rng() % 3;
        if (op == 0 && !mut.arrows().empty()) {
            // remove one arrow
            const Arrow a = mut.arrows()[rng() % mut.arrows().size()];
            mut.toggle_arrow(a.source, a.target, a.u_power);
        } else if (op == 1 && !mut.arrows().empty()) {
            // flip one arrow: change its u_power or retarget it
            const Arrow a = mut.arrows()[rng() % mut.arrows().size()];
            mut.toggle_arrow(a.source, a.target, a.u_power);
            if (rng() % 2 == 0 || mut.size() == 1) {
                mut.toggle_arrow(a.source, a.target, a.u_power + 1 + static_cast<int>(rng() % 2));
            } else {
                int t = a.target;
                while (t == a.target) t = static_cast<int>(rng() % mut.size());
                mut.toggle_arrow(a.source, t, a.u_power);
            }
        } else {
            // add a fresh arrow
            for (;;) {
                int s = static_cast<int>(rng() % mut.size());
                int t = static_cast<int>(rng() % mut.size());
                int u = static_cast<int>(rng() % 4);
                bool exists = false;
                for (const auto& a : mut.arrows())
                    if (a.source == s && a.target == t && a.u_power == u) exists = true;
                if (!exists) {
                    mut.toggle_arrow(s, t, u);
                    break;
                }
            }
        }

        std::set<std::string> expect = oracle_violations(mut);
        ValidationReport got = validate(mut);
        std::set<std::string> got_set;
        for (const auto& v : got.violations) got_set.insert(v.law);
        ch.expect(got_set == expect, "mutation " + std::to_string(trial) +
                                         ": validator classes disagree with the oracle");
        // every bundled complex is symmetric, so any genuine one-arrow change
        // breaks at least the symmetry law
        ch.expect(!expect.empty(), "mutation " + std::to_string(trial) + " not rejected");
        if (!expect.empty()) ++rejected;
    }
    ch.expect(rejected == 500, "not every mutant was rejected");
    return {7, "validator fuzzing", ch.ok,
            ch.ok ? std::to_string(rejected) + "/500 mutants rejected" : ch.detail};
}

} // namespace

std::vector<CriterionResult> run_acceptance(const std::string& data_dir) {
    std::vector<CriterionResult> out;
    out.push_back(criterion_torus_invariants(data_dir));
    out.push_back(criterion_upsilon_properties(data_dir));
    out.push_back(criterion_proposition(data_dir));
    out.push_back(criterion_regions(data_dir));
    out.push_back(criterion_certificates(data_dir));
    out.push_back(criterion_garside(data_dir));
    out.push_back(criterion_fuzz(data_dir));
    return out;
}

} // namespace kfb
