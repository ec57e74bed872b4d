#include "kfb/verifier.hpp"

#include <algorithm>

namespace kfb {

namespace {

void require_n(int n) {
    if (n < 2) throw InputError("n must be at least 2");
}

} // namespace

ConditionReport check_conditions(const FilteredComplex& c, int n, std::optional<int> window) {
    require_n(n);
    ConditionReport rep;
    rep.n = n;
    rep.tau = tau(c);
    PLFunction pl = upsilon_pl(c, window);

    const Rational cut = Rational(2) / n;
    auto margin = [&](const Rational& t) { return pl.value_at(t) + rep.tau * t; };

    // Both sides are affine between breakpoints, so equality at the
    // breakpoints of [0, 2/n] and at its endpoints decides condition (1).
    std::vector<Rational> pts1{Rational(0), cut};
    for (const auto& [t, v] : pl.samples)
        if (t > 0 && t < cut) pts1.push_back(t);
    std::sort(pts1.begin(), pts1.end());
    rep.cond1 = true;
    for (const Rational& t : pts1) {
        Rational m = margin(t);
        rep.cond1_margins.emplace_back(t, m);
        if (m != 0) rep.cond1 = false;
    }

    // Strictness at the breakpoints of (2/n, 1] and at t = 1 extends to the
    // whole half-open interval once condition (1) pins the value at 2/n.
    std::vector<Rational> pts2{Rational(1)};
    for (const auto& [t, v] : pl.samples)
        if (t > cut && t < 1) pts2.push_back(t);
    std::sort(pts2.begin(), pts2.end());
    rep.cond2 = true;
    for (const Rational& t : pts2) {
        Rational m = margin(t);
        rep.cond2_margins.emplace_back(t, m);
        if (m <= 0) rep.cond2 = false;
    }
    return rep;
}

RegionReport lemma_cycle_witness(const FilteredComplex& c, int n, std::optional<int> window) {
    require_n(n);
    RegionReport rep;
    rep.n = n;
    rep.tau = tau(c);
    const int w = window.value_or(default_window(c));
    H0Lattice lat(c, w), lat_next(c, w + 1);

    // Region membership relative to the line j = tau - i(n-1).
    auto in_region = [&](const LatticePoint& p, int which) {
        long long line = static_cast<long long>(rep.tau) -
                         static_cast<long long>(p.i) * (n - 1);
        switch (which) {
            case 0: return p.j <= line;                          // (a) full
            case 1: return p.j < line;                           // (b) strict
            default: return p.j < line || (p.j == line && p.i >= 1); // (c)
        }
    };

    auto run = [&](const H0Lattice& l, int which) {
        std::vector<char> select(l.maslov0().size(), 0);
        for (size_t idx = 0; idx < l.maslov0().size(); ++idx) {
            const auto& p = l.maslov0()[idx];
            select[idx] = l.in_window(p) && in_region(p, which);
        }
        return l.nontrivial_class(select);
    };

    H0Lattice::ClassSearch searches[3];
    for (int which = 0; which < 3; ++which) {
        searches[which] = run(lat, which);
        auto again = run(lat_next, which);
        if (searches[which].surjective != again.surjective)
            throw InternalError("window_unstable: lemma region test differs between W and W+1");
    }
    rep.full_surjective = searches[0].surjective;
    rep.strict_surjective = searches[1].surjective;
    rep.line_restricted_surjective = searches[2].surjective;

    if (rep.lemma_holds()) {
        CycleWitness wit;
        wit.n = n;
        wit.tau = rep.tau;
        bool touches_line = false;
        for (int idx : searches[2].witness) {
            const auto& p = lat.maslov0()[idx];
            long long line = static_cast<long long>(rep.tau) -
                             static_cast<long long>(p.i) * (n - 1);
            WitnessPoint wp{c.gen(p.gen).id, p.k, p.i, p.j, p.j == line};
            if (p.j > line)
                throw InternalError("lemma witness escapes the region");
            if (wp.on_line) {
                if (p.i < 1) throw InternalError("lemma witness touches the line at i <= 0");
                touches_line = true;
            }
            wit.chain.push_back(wp);
        }
        // A cycle avoiding the line entirely would make the strict region
        // surjective, which we just excluded.
        if (!touches_line)
            throw InternalError("lemma witness does not touch the line");
        rep.witness = std::move(wit);
    }
    return rep;
}

std::optional<DiagnosticWitness> long_vertical_differential(const FilteredComplex& c, int n) {
    require_n(n);
    require_valid(c);

    bool reduced = true;
    for (const auto& a : c.arrows())
        if (a.u_power == 0 && c.gen(a.target).alexander == c.gen(a.source).alexander)
            reduced = false;
    const FilteredComplex& cx = c; // keep the reduced copy alive below
    FilteredComplex reduced_copy;
    const FilteredComplex* use = &cx;
    if (!reduced) {
        reduced_copy = reduce(c);
        use = &reduced_copy;
    }

    std::optional<DiagnosticWitness> best;
    for (int g = 0; g < use->size(); ++g) {
        std::optional<int> top;
        int top_gen = -1;
        for (const auto& a : use->arrows())
            if (a.source == g && a.u_power == 0) {
                int aj = use->gen(a.target).alexander;
                if (!top || aj > *top) {
                    top = aj;
                    top_gen = a.target;
                }
            }
        if (!top) continue;
        int len = use->gen(g).alexander - *top;
        if (len < n - 1) continue;
        int maslov = use->gen(g).maslov;
        // i-coordinate of the translate of y whose boundary sits at Maslov 0.
        int m = (maslov % 2 != 0) ? (1 - maslov) / 2 : -maslov / 2;
        bool better = !best || len > best->vertical_length ||
                      (len == best->vertical_length && maslov % 2 != 0 &&
                       use->find(best->y) && use->gen(*use->find(best->y)).maslov % 2 == 0);
        if (better)
            best = DiagnosticWitness{use->gen(g).id, use->gen(top_gen).id, len, m};
    }
    return best;
}

PropositionVerdict verify_proposition(const FilteredComplex& c, int n, std::optional<int> window) {
    PropositionVerdict v;
    v.conditions = check_conditions(c, n, window);
    v.regions = lemma_cycle_witness(c, n, window);
    v.vertical_witness = long_vertical_differential(c, n);
    TorsionResult tors = torsion_order(c);
    v.ord = tors.ord;
    v.module = tors.module;

    if (v.conditions.cond1 && v.conditions.cond2) {
        bool ord_ok = v.ord >= n - 1;
        bool lemma_ok = v.regions.lemma_holds();
        bool vertical_ok = v.vertical_witness && v.vertical_witness->vertical_length >= n - 1;
        v.status = (ord_ok && lemma_ok && vertical_ok)
                       ? PropositionVerdict::Status::Pass
                       : PropositionVerdict::Status::Contradiction;
    } else {
        v.status = PropositionVerdict::Status::NotApplicable;
    }
    return v;
}

bool simplest_case_configuration(const FilteredComplex& c, int n) {
    require_n(n);
    require_valid(c);
    int t = tau(c);
    H0Lattice lat(c, default_window(c));

    auto nontrivial_point = [&](int gen_index) {
        for (size_t idx = 0; idx < lat.maslov0().size(); ++idx) {
            const auto& p = lat.maslov0()[idx];
            if (p.gen != gen_index) continue;
            std::vector<char> select(lat.maslov0().size(), 0);
            select[idx] = 1;
            return lat.nontrivial_class(select).surjective;
        }
        return false;
    };

    for (int y = 0; y < c.size(); ++y) {
        int a = -1, cc = -1;
        int terms = 0;
        for (const auto& ar : c.arrows()) {
            if (ar.source != y) continue;
            ++terms;
            if (ar.u_power == 1 && c.gen(ar.target).alexander == c.gen(y).alexander + 1)
                a = ar.target;
            if (ar.u_power == 0 &&
                c.gen(ar.target).alexander == c.gen(y).alexander - (n - 1))
                cc = ar.target;
        }
        if (terms != 2 || a < 0 || cc < 0) continue;
        if (c.gen(a).alexander != t || c.gen(a).maslov != 0) continue;
        if (c.gen(cc).maslov != -2) continue;
        if (nontrivial_point(a) && nontrivial_point(cc)) return true;
    }
    return false;
}

} // namespace kfb
