#pragma once
#include "tppc/bitvec.hpp"
#include "tppc/epcc.hpp"
#include "tppc/rs.hpp"

#include <memory>
#include <span>
#include <vector>

namespace tppc {

// the signature-correcting component: a systematic code over GF(2^p1) whose
// codewords are the admissible per-symbol signature sequences
class SignatureCode {
public:
    virtual ~SignatureCode() = default;
    virtual int n() const = 0;
    virtual int k() const = 0;
    int p() const { return n() - k(); }
    virtual const FieldContext& field() const = 0;
    virtual std::vector<std::uint16_t> encode(std::span<const std::uint16_t> data) const = 0;
    virtual bool in_null_space(std::span<const std::uint16_t> word) const = 0;
    // explicit p x n parity-check rows, for tensor matrix assembly
    virtual std::vector<std::vector<std::uint16_t>> parity_rows() const = 0;
};

class RsSignatureCode final : public SignatureCode {
public:
    explicit RsSignatureCode(std::shared_ptr<const RsCode> rs) : rs_(std::move(rs)) {}
    int n() const override { return rs_->n(); }
    int k() const override { return rs_->k(); }
    const FieldContext& field() const override { return rs_->field(); }
    std::vector<std::uint16_t> encode(std::span<const std::uint16_t> d) const override {
        return rs_->encode(d);
    }
    bool in_null_space(std::span<const std::uint16_t> w) const override {
        auto s = rs_->syndromes(w);
        for (auto v : s) if (v) return false;
        return true;
    }
    std::vector<std::vector<std::uint16_t>> parity_rows() const override;
    const RsCode& rs() const { return *rs_; }

private:
    std::shared_ptr<const RsCode> rs_;
};

class TppcCode {
public:
    TppcCode(EpccCode c1, std::shared_ptr<const SignatureCode> c2);

    const EpccCode& c1() const { return c1_; }
    const SignatureCode& c2() const { return *c2_; }
    int n1() const { return c1_.l_T(); }
    int k1() const { return c1_.k(); }
    int p1() const { return c1_.p(); }
    int n2() const { return c2_->n(); }
    int k2() const { return c2_->k(); }
    int p2() const { return c2_->p(); }
    int n3() const { return n1() * n2(); }
    int k3() const { return n3() - p3(); }
    int p3() const { return p1() * p2(); }

    // data layout: first n1*k2 bits fill the all-data symbols column by column,
    // remaining k1*p2 bits fill the data part of the parity-bearing symbols
    BitVec encode(const BitVec& data) const;
    BitVec extract_data(const BitVec& word) const;   // inverse packing of encode

    std::vector<std::uint16_t> tensor_signatures(const BitVec& word) const;

    // p1-bit parity check of the pattern-correcting component, column t = x^t mod g
    BitMatrix c1_parity_check() const;
    BitMatrix parity_check() const;   // full binary tensor matrix

private:
    EpccCode c1_;
    std::shared_ptr<const SignatureCode> c2_;
};

// symbol-expanded Kronecker product: binary p1*p2 x n1*n2 matrix whose null
// space is exactly the words with c2-valid signature sequences
BitMatrix build_tensor_parity_check(const BitMatrix& c1_h,
                                    const std::vector<std::vector<std::uint16_t>>& c2_h,
                                    const FieldContext& f);

struct TensorDecodeResult {
    bool success = false;
    BitVec word;
    std::vector<int> failed_symbols;
};

// hard tensor decoding with an RS signature-correcting code: correct the
// signature sequence, then fix each flagged symbol by pattern decoding
TensorDecodeResult tppc_rs_hard_decode(const TppcCode& code, const BitVec& received,
                                       int max_tests = 16);

} // namespace tppc
