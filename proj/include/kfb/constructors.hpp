#pragma once

#include <string>
#include <vector>

#include "kfb/complex.hpp"

namespace kfb {

// Alexander polynomial with the staircase shape: strictly decreasing
// exponents, signs alternating +1, -1, ..., +1, symmetric under negation.
struct AlexTerm {
    int exponent = 0;
    int sign = 0; // +1 or -1
    bool operator==(const AlexTerm&) const = default;
};

class AlexPoly {
public:
    static AlexPoly from_terms(std::vector<AlexTerm> terms); // validates
    const std::vector<AlexTerm>& terms() const { return terms_; }
    std::string str() const;

private:
    std::vector<AlexTerm> terms_;
};

// Symmetrized Alexander polynomial of the (p,q)-torus knot, expanded exactly
// from (t^{pq}-1)(t-1)/((t^p-1)(t^q-1)).
AlexPoly torus_alexander(int p, int q);

// Staircase model of an L-space knot complex: one generator per term, the
// sign -1 generators carry d = (vertical neighbor) + U^h (horizontal
// neighbor), top generator normalized to Maslov 0.
FilteredComplex staircase_from_alexander(const AlexPoly& a);

FilteredComplex staircase_torus(int p, int q); // staircase of torus_alexander

// Graded Leibniz-rule product over F2; models connected sums.
FilteredComplex tensor_product(const FilteredComplex& c1, const FilteredComplex& c2);

std::vector<std::string> bundled_labels();

// Resolution order for the data directory: explicit argument, KFB_DATA_DIR
// environment variable, compiled-in source path.
std::string default_data_dir();
std::string bundled_path(const std::string& label, const std::string& data_dir = "");
FilteredComplex load_bundled(const std::string& label, const std::string& data_dir = "");

} // namespace kfb
