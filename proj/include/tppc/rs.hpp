#pragma once
#include "tppc/gf.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace tppc {

struct HardDecodeResult {
    bool success = false;
    std::vector<std::uint16_t> word;
    std::vector<int> error_positions;   // vector indices, data-first order
};

// narrow-sense Reed-Solomon, generator roots alpha^1..alpha^2t; shortened codes
// (n < q-1) use the same arithmetic on degree-(n-1) polynomials.
// vector position j holds the coefficient of x^{n-1-j}: data first, parity last
class RsCode {
public:
    RsCode(std::shared_ptr<const FieldContext> f, int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    int t() const { return t_; }
    const FieldContext& field() const { return *f_; }
    const std::vector<std::uint16_t>& generator() const { return gen_; }   // g_0..g_2t, monic

    std::vector<std::uint16_t> encode(std::span<const std::uint16_t> data) const;

    // S_1..S_2t; all zero iff word is a codeword
    std::vector<std::uint16_t> syndromes(std::span<const std::uint16_t> word) const;

    // Berlekamp-Massey + Chien + Forney; corrects any <= t errors, outputs only codewords
    HardDecodeResult bm_decode(std::span<const std::uint16_t> word) const;

    // erasure-only decoding, up to 2t positions; success iff the filled word is a codeword
    HardDecodeResult erasure_decode(std::span<const std::uint16_t> word,
                                    std::span<const int> erasures) const;

private:
    std::shared_ptr<const FieldContext> f_;
    int n_, k_, t_;
    std::vector<std::uint16_t> gen_;
};

} // namespace tppc
