#include "kfb/f2poly.hpp"

#include <algorithm>
#include <sstream>

namespace kfb {

UPoly::UPoly(std::initializer_list<int> exponents) {
    for (int e : exponents) *this += monomial(e);
}

UPoly UPoly::monomial(int exponent) {
    if (exponent < 0) throw InputError("negative exponent in F2[U]");
    UPoly p;
    p.exps_.push_back(exponent);
    return p;
}

UPoly& UPoly::operator+=(const UPoly& o) {
    std::vector<int> out;
    out.reserve(exps_.size() + o.exps_.size());
    std::set_symmetric_difference(exps_.begin(), exps_.end(),
                                  o.exps_.begin(), o.exps_.end(),
                                  std::back_inserter(out));
    exps_ = std::move(out);
    return *this;
}

UPoly UPoly::operator*(const UPoly& o) const {
    UPoly out;
    for (int a : exps_) {
        UPoly shifted;
        shifted.exps_.reserve(o.exps_.size());
        for (int b : o.exps_) shifted.exps_.push_back(a + b);
        out += shifted;
    }
    return out;
}

std::string UPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = exps_.rbegin(); it != exps_.rend(); ++it) {
        if (!first) os << "+";
        first = false;
        if (*it == 0) os << "1";
        else if (*it == 1) os << "U";
        else os << "U^" << *it;
    }
    return os.str();
}

PolyDivMod poly_divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw InputError("zero divisor");
    UPoly q;
    UPoly r = a;
    const int db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
        UPoly m = UPoly::monomial(r.degree() - db);
        q += m;
        r += m * b;
    }
    return {q, r};
}

UPoly poly_gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = poly_divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

UMat::UMat(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
}

UMat UMat::identity(int n) {
    UMat m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, UPoly::one());
    return m;
}

void UMat::check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw InputError("matrix index out of range");
}

const UPoly& UMat::at(int r, int c) const {
    check_index(r, c);
    static const UPoly zero;
    auto it = entries_.find({r, c});
    return it == entries_.end() ? zero : it->second;
}

void UMat::set(int r, int c, UPoly p) {
    check_index(r, c);
    if (p.is_zero()) entries_.erase({r, c});
    else entries_[{r, c}] = std::move(p);
}

void UMat::add_to(int r, int c, const UPoly& p) {
    set(r, c, at(r, c) + p);
}

bool UMat::is_diagonal() const {
    for (const auto& [rc, p] : entries_)
        if (rc.first != rc.second && !p.is_zero()) return false;
    return true;
}

UMat UMat::operator*(const UMat& o) const {
    if (cols_ != o.rows_) throw InputError("matrix dimension mismatch");
    UMat out(rows_, o.cols_);
    for (const auto& [rc, p] : entries_) {
        for (int j = 0; j < o.cols_; ++j) {
            const UPoly& q = o.at(rc.second, j);
            if (!q.is_zero()) out.add_to(rc.first, j, p * q);
        }
    }
    return out;
}

void UMat::swap_rows(int a, int b) {
    if (a == b) return;
    check_index(a, 0 < cols_ ? 0 : 0);
    std::map<std::pair<int, int>, UPoly> moved;
    for (auto it = entries_.begin(); it != entries_.end();) {
        int r = it->first.first;
        if (r == a || r == b) {
            moved[{r == a ? b : a, it->first.second}] = std::move(it->second);
            it = entries_.erase(it);
        } else {
            ++it;
        }
    }
    for (auto& [rc, p] : moved) entries_[rc] = std::move(p);
}

void UMat::swap_cols(int a, int b) {
    if (a == b) return;
    std::map<std::pair<int, int>, UPoly> moved;
    for (auto it = entries_.begin(); it != entries_.end();) {
        int c = it->first.second;
        if (c == a || c == b) {
            moved[{it->first.first, c == a ? b : a}] = std::move(it->second);
            it = entries_.erase(it);
        } else {
            ++it;
        }
    }
    for (auto& [rc, p] : moved) entries_[rc] = std::move(p);
}

void UMat::add_row_multiple(int dst, int src, const UPoly& f) {
    if (f.is_zero()) return;
    std::vector<std::pair<int, UPoly>> terms;
    for (const auto& [rc, p] : entries_)
        if (rc.first == src) terms.emplace_back(rc.second, f * p);
    for (auto& [c, p] : terms) add_to(dst, c, p);
}

void UMat::add_col_multiple(int dst, int src, const UPoly& f) {
    if (f.is_zero()) return;
    std::vector<std::pair<int, UPoly>> terms;
    for (const auto& [rc, p] : entries_)
        if (rc.second == src) terms.emplace_back(rc.first, f * p);
    for (auto& [r, p] : terms) add_to(r, dst, p);
}

std::string UMat::str() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) {
        os << "[";
        for (int c = 0; c < cols_; ++c)
            os << (c ? ", " : " ") << at(r, c).str();
        os << " ]\n";
    }
    return os.str();
}

int SmithResult::rank() const {
    int r = 0;
    for (const auto& d : diagonal)
        if (!d.is_zero()) ++r;
    return r;
}

namespace {

// Lowest-degree nonzero entry of the submatrix starting at (k, k), ties by
// (row, col) order. Returns false when the submatrix is zero.
bool find_pivot(const UMat& m, int k, int& pr, int& pc) {
    int best = -1;
    for (const auto& [rc, p] : m.entries()) {
        if (rc.first < k || rc.second < k) continue;
        int d = p.degree();
        if (best == -1 || d < best ||
            (d == best && rc < std::make_pair(pr, pc))) {
            best = d;
            pr = rc.first;
            pc = rc.second;
        }
    }
    return best != -1;
}

} // namespace

SmithResult smith_normal_form(const UMat& m) {
    UMat work = m;
    UMat left = UMat::identity(m.rows());
    UMat right = UMat::identity(m.cols());
    const int steps = std::min(m.rows(), m.cols());

    for (int k = 0; k < steps; ++k) {
        int pr = 0, pc = 0;
        if (!find_pivot(work, k, pr, pc)) break;
        work.swap_rows(k, pr);
        left.swap_rows(k, pr);
        work.swap_cols(k, pc);
        right.swap_cols(k, pc);

        for (;;) {
            // Clear column k below the pivot.
            bool touched = false;
            for (int r = k + 1; r < work.rows(); ++r) {
                const UPoly& e = work.at(r, k);
                if (e.is_zero()) continue;
                UPoly q = poly_divmod(e, work.at(k, k)).quotient;
                work.add_row_multiple(r, k, q);
                left.add_row_multiple(r, k, q);
                touched = true;
            }
            // A nonzero remainder has lower degree than the pivot: promote it.
            bool smaller = false;
            for (int r = k + 1; r < work.rows() && !smaller; ++r)
                if (!work.at(r, k).is_zero()) {
                    work.swap_rows(k, r);
                    left.swap_rows(k, r);
                    smaller = true;
                }
            if (smaller) continue;

            for (int c = k + 1; c < work.cols(); ++c) {
                const UPoly& e = work.at(k, c);
                if (e.is_zero()) continue;
                UPoly q = poly_divmod(e, work.at(k, k)).quotient;
                work.add_col_multiple(c, k, q);
                right.add_col_multiple(c, k, q);
                touched = true;
            }
            smaller = false;
            for (int c = k + 1; c < work.cols() && !smaller; ++c)
                if (!work.at(k, c).is_zero()) {
                    work.swap_cols(k, c);
                    right.swap_cols(k, c);
                    smaller = true;
                }
            if (smaller) continue;
            if (!touched) {
                // Pivot divides everything in its row/col (both are clear);
                // enforce the divisibility chain on the rest.
                bool fixed = false;
                for (int r = k + 1; r < work.rows() && !fixed; ++r)
                    for (int c = k + 1; c < work.cols() && !fixed; ++c) {
                        const UPoly& e = work.at(r, c);
                        if (e.is_zero()) continue;
                        if (!poly_divmod(e, work.at(k, k)).remainder.is_zero()) {
                            work.add_row_multiple(k, r, UPoly::one());
                            left.add_row_multiple(k, r, UPoly::one());
                            fixed = true;
                        }
                    }
                if (!fixed) break;
            }
        }
    }

    SmithResult out{{}, std::move(left), std::move(right)};
    for (int k = 0; k < steps; ++k) out.diagonal.push_back(work.at(k, k));
    // Nonzero entries come first by construction; sanity-check the chain.
    for (size_t k = 0; k + 1 < out.diagonal.size(); ++k) {
        const UPoly& a = out.diagonal[k];
        const UPoly& b = out.diagonal[k + 1];
        if (a.is_zero() && !b.is_zero())
            throw InternalError("smith normal form: zero before nonzero on diagonal");
        if (!a.is_zero() && !b.is_zero() &&
            !poly_divmod(b, a).remainder.is_zero())
            throw InternalError("smith normal form: divisibility chain broken");
    }
    return out;
}

UPoly determinant(const UMat& m) {
    if (m.rows() != m.cols()) throw InputError("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return UPoly::one();
    if (n == 1) return m.at(0, 0);
    UPoly det;
    for (int c = 0; c < n; ++c) {
        const UPoly& e = m.at(0, c);
        if (e.is_zero()) continue;
        UMat minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r)
            for (int cc = 0; cc < n; ++cc) {
                if (cc == c) continue;
                const UPoly& v = m.at(r, cc);
                if (!v.is_zero()) minor.set(r - 1, cc < c ? cc : cc - 1, v);
            }
        det += e * determinant(minor); // signs are trivial over F2
    }
    return det;
}

} // namespace kfb
