#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kfb/complex.hpp"

namespace kfb {

// All t and s values are exact; no floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;

Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& r);

// Arrows with u_power = 0 (the i-grading preserving part of d).
std::vector<Arrow> vertical_differential(const FilteredComplex& c);
// Arrows with alexander(target) - u_power = alexander(source).
std::vector<Arrow> horizontal_differential(const FilteredComplex& c);

// Alexander drop to the highest vertical target: A(gen) - max A(target) over
// u_power-0 arrows; nullopt when d_V(gen) = 0.
std::optional<int> vertical_length(const FilteredComplex& c, const std::string& gen_id);

// Thrown when the vertical homology of (CFK-hat, d_V) is not one-dimensional
// in Maslov grading 0.
struct NotAKnotComplex : ValidationError {
    NotAKnotComplex() : ValidationError("not_a_knot_complex") {}
};

int tau(const FilteredComplex& c);

// Bigraded homology dimensions of CFK-hat under the (i,j)-preserving part of d.
using HfkTable = std::map<std::pair<int, int>, int>; // (alexander, maslov) -> dim

HfkTable hfk_hat(const FilteredComplex& c);

struct TorsionModule {
    int free_rank = 0;
    std::vector<int> torsion_orders; // sorted ascending, each >= 1
};

struct TorsionResult {
    int ord = 0; // max torsion order, 0 when torsion is empty
    TorsionModule module;
};

// HFK^- as the F2[U]-homology of (CFK^-, d_H), via Smith normal form.
TorsionResult torsion_order(const FilteredComplex& c);

// Default truncation window: (max A - min A) + 2.
int default_window(const FilteredComplex& c);

// Upsilon(t) by Livingston's formula, exact.
Rational upsilon_at(const FilteredComplex& c, const Rational& t,
                    std::optional<int> window = std::nullopt);

// Exact piecewise-linear function on [0,2], breakpoints included.
struct PLFunction {
    std::vector<std::pair<Rational, Rational>> samples; // (t, value), t increasing
    Rational value_at(const Rational& t) const;
    bool operator==(const PLFunction&) const = default;
};

PLFunction upsilon_pl(const FilteredComplex& c,
                      std::optional<int> window = std::nullopt);

// Cancels grading-preserving arrows; filtered homotopy equivalent output.
FilteredComplex reduce(const FilteredComplex& c);

// --- internal machinery shared with the verifier ---

// U-translate of a generator pinned to a fixed Maslov grading.
struct LatticePoint {
    int gen = 0; // generator index
    int k = 0;   // the translate U^k gen
    int i = 0;   // position: (i, j) = (-k, A(gen) - k)
    int j = 0;
};

// H0 machinery on the Maslov-normalized slices. Each generator contributes
// exactly one point per Maslov level, so cycles at Maslov 0 live on the
// even-Maslov generators and potential bounding chains on the odd ones.
class H0Lattice {
public:
    H0Lattice(const FilteredComplex& c, int window);

    const std::vector<LatticePoint>& maslov0() const { return m0_; }
    bool in_window(const LatticePoint& p) const;
    int window() const { return window_; }

    struct ClassSearch {
        bool surjective = false;
        std::vector<int> witness; // indices into maslov0() when surjective
    };
    // Does the span of the selected Maslov-0 points contain a cycle whose
    // class generates H0? select has maslov0().size() entries.
    ClassSearch nontrivial_class(const std::vector<char>& select) const;

private:
    const FilteredComplex& c_;
    int window_;
    std::vector<LatticePoint> m0_;
    std::vector<LatticePoint> m1_;
    std::vector<int> m0_index_; // generator index -> position in m0_, or -1
};

} // namespace kfb
