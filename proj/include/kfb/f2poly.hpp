#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kfb/errors.hpp"

namespace kfb {

// Polynomial over F2[U], stored as the sorted set of exponents with
// coefficient 1. The empty set is the zero polynomial; addition is symmetric
// difference, so p + p = 0.
class UPoly {
public:
    UPoly() = default;
    UPoly(std::initializer_list<int> exponents);

    static UPoly one() { return monomial(0); }
    static UPoly monomial(int exponent);

    bool is_zero() const { return exps_.empty(); }
    bool is_one() const { return exps_.size() == 1 && exps_[0] == 0; }
    // True for U^d with a single term (includes 1 = U^0).
    bool is_monomial() const { return exps_.size() == 1; }
    // Degree of the zero polynomial is -1.
    int degree() const { return exps_.empty() ? -1 : exps_.back(); }
    int low_degree() const { return exps_.empty() ? -1 : exps_.front(); }
    const std::vector<int>& exponents() const { return exps_; }

    UPoly& operator+=(const UPoly& o);
    friend UPoly operator+(UPoly a, const UPoly& b) { a += b; return a; }
    UPoly operator*(const UPoly& o) const;
    bool operator==(const UPoly&) const = default;

    std::string str() const;

private:
    std::vector<int> exps_; // sorted ascending, no duplicates, all >= 0
};

struct PolyDivMod {
    UPoly quotient;
    UPoly remainder;
};

// Exact Euclidean division in F2[U]: a = q*b + r with deg r < deg b or r = 0.
// Throws InputError("zero divisor") when b = 0.
PolyDivMod poly_divmod(const UPoly& a, const UPoly& b);

UPoly poly_gcd(UPoly a, UPoly b);

// Sparse matrix over F2[U]; absent entries are zero, stored entries nonzero.
class UMat {
public:
    UMat(int rows, int cols);
    static UMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const UPoly& at(int r, int c) const;
    void set(int r, int c, UPoly p);
    void add_to(int r, int c, const UPoly& p);
    bool is_diagonal() const;

    UMat operator*(const UMat& o) const;
    bool operator==(const UMat&) const = default;

    void swap_rows(int a, int b);
    void swap_cols(int a, int b);
    // row[dst] += f * row[src]
    void add_row_multiple(int dst, int src, const UPoly& f);
    void add_col_multiple(int dst, int src, const UPoly& f);

    const std::map<std::pair<int, int>, UPoly>& entries() const { return entries_; }
    std::string str() const;

private:
    void check_index(int r, int c) const;
    int rows_ = 0;
    int cols_ = 0;
    std::map<std::pair<int, int>, UPoly> entries_;
};

struct SmithResult {
    // Diagonal of left*m*right, nonzero entries first, each dividing the next.
    std::vector<UPoly> diagonal;
    UMat left;
    UMat right;
    // Count of nonzero diagonal entries.
    int rank() const;
};

// Smith normal form over the PID F2[U]. Pivot selection: lowest-degree
// nonzero entry of the working submatrix, ties broken by (row, col) order.
SmithResult smith_normal_form(const UMat& m);

// Laplace expansion; intended for the small matrices in tests and SNF checks.
UPoly determinant(const UMat& m);

} // namespace kfb
