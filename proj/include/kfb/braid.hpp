#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kfb/verifier.hpp"

namespace kfb {

// Letters are nonzero integers: +i is sigma_i, -i its inverse, 1 <= i <= n-1.
struct BraidWord {
    int strands = 1;
    std::vector<int> letters;
    bool positive() const;
    bool operator==(const BraidWord&) const = default;
};

// Grammar: "B<n>: e1 e2 ... ek" (whitespace separated, empty list allowed).
BraidWord parse_braid(const std::string& text);
std::string braid_str(const BraidWord& b);

// perm[start position] = end position, 0-based.
using Perm = std::vector<int>;
Perm braid_permutation(const BraidWord& b);
bool closure_is_knot(const BraidWord& b);

// Left-weighted factorization Delta^inf A_1 ... A_k; each factor a proper
// nonempty divisor of Delta stored as its permutation.
struct GarsideNF {
    int strands = 1;
    int inf = 0;
    std::vector<Perm> factors;
    bool operator==(const GarsideNF&) const = default;
};

GarsideNF garside_normal_form(const BraidWord& b); // positive words only
BraidWord expand(const GarsideNF& nf);
std::string factor_word_str(const Perm& p); // reduced word of one factor

struct TwistPositivity {
    bool twist_positive = false;
    std::optional<BraidWord> gamma; // Delta^{inf-2} * factors, re-expanded
    GarsideNF nf;
};

// Definition: beta = Delta^2 gamma with gamma positive, decided by inf >= 2.
TwistPositivity is_twist_positive(const BraidWord& b);

struct GenusTau {
    int genus = 0;
    int tau = 0;
};

// Bennequin: for a positive braid knot, g = (c - n + 1)/2 and tau = g.
GenusTau positive_genus_tau(const BraidWord& b);

// (sigma_1...sigma_{p-1})^q (sigma_1...sigma_{r-1})^{r s} on p strands.
BraidWord twisted_torus_braid(int p, int q, int r, int s);

struct ChainEntry {
    std::string name;
    int value = 0;
    std::string provenance; // computed | trivial | cited(...)
};

struct BridgeCertificate {
    BraidWord word;
    GarsideNF nf;
    bool knot = false;
    bool twist_positive = false;
    std::optional<BraidWord> gamma;
    int genus = 0;
    int tau = 0;
    // complete: bridge = braid = n certified; otherwise only upper bounds.
    bool complete = false;
    int n = 0;            // certified common value (complete) or strand count
    int bridge_upper = 0; // always braid <= strands
    std::optional<int> ord_lower_bound;
    std::vector<ChainEntry> chain; // the instantiated inequality chain
    std::string basis;             // one-line justification
    std::optional<std::string> complex_label;      // bundled complex, if any
    std::optional<PropositionVerdict> attached;    // its verdict, if run
};

// data_dir feeds the optional bundled-complex cross-check; pass "" for the
// default resolution.
BridgeCertificate bridge_certificate(const BraidWord& b, const std::string& data_dir = "");

// Known braid words with a bundled complex for the same knot, keyed by braid
// element (strands + normal form).
std::optional<std::string> known_complex_for(const BraidWord& b);

} // namespace kfb
