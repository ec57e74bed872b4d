#pragma once

#include <cstdint>
#include <vector>

namespace kfb {

// Dense bit vector over F2.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}
    int size() const { return n_; }
    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void flip(int i) { w_[i >> 6] ^= (uint64_t{1} << (i & 63)); }
    void set(int i, bool v) { if (get(i) != v) flip(i); }
    BitVec& operator^=(const BitVec& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    int lowest_set() const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return static_cast<int>(k * 64) + __builtin_ctzll(w_[k]);
        return -1;
    }
    bool operator==(const BitVec&) const = default;

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

// Incremental Gaussian elimination: maintains an independent reduced basis.
class F2Span {
public:
    // Reduces v against the basis; returns the residue.
    BitVec reduce(BitVec v) const {
        for (const auto& b : basis_) {
            int p = b.lowest_set();
            if (v.get(p)) v ^= b;
        }
        return v;
    }
    // Adds v to the span. Returns true if it enlarged the span.
    bool insert(const BitVec& v) {
        BitVec r = reduce(v);
        if (!r.any()) return false;
        basis_.push_back(r);
        return true;
    }
    bool contains(const BitVec& v) const { return !reduce(v).any(); }
    int rank() const { return static_cast<int>(basis_.size()); }

private:
    std::vector<BitVec> basis_;
};

// Kernel of a matrix given by columns: all x with sum_{i in x} col_i = 0.
// Returns combinations as bit vectors over the column index space.
inline std::vector<BitVec> kernel_basis(const std::vector<BitVec>& cols, int ncols) {
    std::vector<BitVec> kernel;
    // pairs (reduced column, combination producing it)
    std::vector<std::pair<BitVec, BitVec>> pivots;
    for (int c = 0; c < ncols; ++c) {
        BitVec v = cols[c];
        BitVec combo(ncols);
        combo.flip(c);
        for (const auto& [pv, pc] : pivots) {
            int p = pv.lowest_set();
            if (v.get(p)) {
                v ^= pv;
                combo ^= pc;
            }
        }
        if (v.any()) pivots.emplace_back(v, combo);
        else kernel.push_back(combo);
    }
    return kernel;
}

} // namespace kfb
