#pragma once
#include "tppc/gf.hpp"
#include "tppc/mlllr.hpp"
#include "tppc/tensor.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tppc {

// quasi-cyclic GF(2^p) LDPC: a rows_b x cols_b base grid of b x b circulants,
// each present block holding one cyclic shift and one nonzero edge label.
// expanded entry convention: H[i*b + u][j*b + (u + shift_ij) mod b] = label_ij
class QcLdpcCode {
public:
    QcLdpcCode(std::shared_ptr<const FieldContext> f, int rows_b, int cols_b, int b,
               std::vector<std::vector<int>> shifts,
               std::vector<std::vector<std::uint16_t>> labels, int w);

    const FieldContext& field() const { return *f_; }
    std::shared_ptr<const FieldContext> field_ptr() const { return f_; }
    int rows_b() const { return rows_b_; }
    int cols_b() const { return cols_b_; }
    int b() const { return b_; }
    int w() const { return w_; }
    int n() const { return cols_b_ * b_; }
    int m() const { return rows_b_ * b_; }
    int k() const { return n() - m(); }

    int shift(int i, int j) const { return shifts_[i][j]; }        // -1 when absent
    std::uint16_t label(int i, int j) const { return labels_[i][j]; }

    // expanded adjacency, built once: per check row and per variable column
    const std::vector<std::vector<std::pair<int, std::uint16_t>>>& row_adj() const {
        return row_adj_;
    }
    const std::vector<std::vector<std::pair<int, std::uint16_t>>>& col_adj() const {
        return col_adj_;
    }

    bool check_word(std::span<const std::uint16_t> word) const;
    // shortest cycle length in the expanded Tanner graph; INT_MAX when acyclic
    int girth() const;

private:
    std::shared_ptr<const FieldContext> f_;
    int rows_b_ = 0, cols_b_ = 0, b_ = 0, w_ = 0;
    std::vector<std::vector<int>> shifts_;
    std::vector<std::vector<std::uint16_t>> labels_;
    std::vector<std::vector<std::pair<int, std::uint16_t>>> row_adj_, col_adj_;
};

// progressive edge growth under the quasi-cyclic constraint: data columns get
// w circulants placed one at a time at the check farthest from the column in
// the current graph; the trailing rows_b parity columns are lower triangular
// so encoding is a linear-time back-substitution. labels are seeded uniform
// nonzero draws
QcLdpcCode peg_qc_construct(std::shared_ptr<const FieldContext> f, int rows_b,
                            int cols_b, int b, int w, std::uint64_t seed);

// systematic: data symbols first, the triangular parity columns solved per
// block row in order
std::vector<std::uint16_t> qc_encode(const QcLdpcCode& code,
                                     std::span<const std::uint16_t> data);

struct SpaResult {
    std::vector<MlLlr> posterior;
    std::vector<std::uint16_t> hard;
    bool converged = false;
    int iterations = 0;
};

// log-domain FFT sum-product over the additive group of GF(2^p): check updates
// via Walsh-Hadamard transforms of the exponentiated messages, every message
// recentred on slot 0; stops as soon as strict hard decisions satisfy all checks
SpaResult fft_spa_decode(const QcLdpcCode& code, const std::vector<MlLlr>& channel,
                         int max_iter = 50);

// sparse plain-text description: header then per-column neighbor lists with
// one GF label per entry; round-trips through import
std::string export_alist(const QcLdpcCode& code);
QcLdpcCode import_alist(const std::string& text);

class LdpcSignatureCode final : public SignatureCode {
public:
    explicit LdpcSignatureCode(std::shared_ptr<const QcLdpcCode> c) : c_(std::move(c)) {}
    int n() const override { return c_->n(); }
    int k() const override { return c_->k(); }
    const FieldContext& field() const override { return c_->field(); }
    std::vector<std::uint16_t> encode(std::span<const std::uint16_t> d) const override {
        return qc_encode(*c_, d);
    }
    bool in_null_space(std::span<const std::uint16_t> w) const override {
        return c_->check_word(w);
    }
    std::vector<std::vector<std::uint16_t>> parity_rows() const override;
    const QcLdpcCode& ldpc() const { return *c_; }

private:
    std::shared_ptr<const QcLdpcCode> c_;
};

} // namespace tppc
