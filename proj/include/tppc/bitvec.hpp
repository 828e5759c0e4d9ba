#pragma once
#include <cstdint>
#include <cstddef>
#include <vector>
#include <bit>
#include <stdexcept>

namespace tppc {

// packed bit vector, bit i lives in word i/64 at position i%64
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    // bits [pos, pos+len) as an integer, len <= 32, may straddle a word boundary
    std::uint32_t window(std::size_t pos, unsigned len) const {
        std::size_t wi = pos >> 6;
        unsigned off = pos & 63;
        std::uint64_t v = w_[wi] >> off;
        if (off + len > 64 && wi + 1 < w_.size()) v |= w_[wi + 1] << (64 - off);
        return std::uint32_t(v & ((len == 32) ? 0xffffffffu : ((1u << len) - 1)));
    }
    void set_window(std::size_t pos, unsigned len, std::uint32_t bits) {
        for (unsigned t = 0; t < len; ++t) set(pos + t, (bits >> t) & 1);
    }

    void xor_with(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    }
    // parity of AND with another vector of same size
    bool dot(const BitVec& o) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// dense binary matrix as row BitVecs
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), r_(rows, BitVec(cols)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    BitVec& row(std::size_t i) { return r_[i]; }
    const BitVec& row(std::size_t i) const { return r_[i]; }
    bool get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool v) { r_[i].set(j, v); }

    // H * c over GF(2)
    BitVec mul(const BitVec& c) const {
        if (c.size() != cols_) throw std::invalid_argument("BitMatrix::mul size");
        BitVec out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.set(i, r_[i].dot(c));
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> r_;
};

} // namespace tppc
