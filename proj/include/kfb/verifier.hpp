#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kfb/invariants.hpp"

namespace kfb {

// Condition (1): Upsilon(t) = -tau*t on [0, 2/n]; condition (2):
// Upsilon(t) > -tau*t at the breakpoints in (2/n, 1] and at t = 1.
struct ConditionReport {
    int n = 0;
    int tau = 0;
    bool cond1 = false;
    bool cond2 = false;
    // (t, Upsilon(t) + tau*t): condition (1) needs margin 0, (2) needs > 0.
    std::vector<std::pair<Rational, Rational>> cond1_margins;
    std::vector<std::pair<Rational, Rational>> cond2_margins;
};

ConditionReport check_conditions(const FilteredComplex& c, int n,
                                 std::optional<int> window = std::nullopt);

struct WitnessPoint {
    std::string gen;
    int u_shift = 0; // the translate U^k gen
    int i = 0;
    int j = 0;
    bool on_line = false; // j = tau - i(n-1)
};

// A nontrivial cycle supported in {j <= tau - i(n-1)} touching the line only
// at points with i >= 1.
struct CycleWitness {
    int n = 0;
    int tau = 0;
    std::vector<WitnessPoint> chain;
};

struct RegionReport {
    int n = 0;
    int tau = 0;
    // (a) R = {j <= tau - i(n-1)} carries a nontrivial class.
    bool full_surjective = false;
    // (b) the strict region {j < tau - i(n-1)} carries one.
    bool strict_surjective = false;
    // (c) R minus the line points with i <= 0 carries one; together with (a)
    // and not-(b) this produces the witness.
    bool line_restricted_surjective = false;
    std::optional<CycleWitness> witness;
    bool lemma_holds() const {
        return full_surjective && !strict_surjective && line_restricted_surjective;
    }
};

RegionReport lemma_cycle_witness(const FilteredComplex& c, int n,
                                 std::optional<int> window = std::nullopt);

// A generator whose vertical differential drops by at least n-1.
struct DiagnosticWitness {
    std::string y;
    std::string x; // the top vertical target of y
    int vertical_length = 0;
    int m = 0; // i-coordinate of the Maslov-1 translate of y
};

std::optional<DiagnosticWitness> long_vertical_differential(const FilteredComplex& c, int n);

struct PropositionVerdict {
    enum class Status {
        Pass,          // conditions hold and ord >= n-1
        NotApplicable, // conditions fail; nothing asserted
        Contradiction, // conditions hold but ord < n-1: must never happen
    };
    Status status = Status::NotApplicable;
    ConditionReport conditions;
    RegionReport regions;
    std::optional<DiagnosticWitness> vertical_witness;
    int ord = 0;
    TorsionModule module;
};

PropositionVerdict verify_proposition(const FilteredComplex& c, int n,
                                      std::optional<int> window = std::nullopt);

// Remark-level diagnostic, asserting nothing: does the complex contain a
// three-generator configuration d(b) = a + U^{n-1} c with a at (0, tau)?
bool simplest_case_configuration(const FilteredComplex& c, int n);

} // namespace kfb
