#include "tppc/tensor.hpp"
#include "tppc/opcount.hpp"

#include <stdexcept>

namespace tppc {

thread_local std::uint64_t OpCount::units = 0;

std::vector<std::vector<std::uint16_t>> RsSignatureCode::parity_rows() const {
    // row m-1: evaluations alpha^{m * deg}, position j holds coefficient x^{n-1-j}
    const auto& f = rs_->field();
    int n = rs_->n(), r = 2 * rs_->t();
    std::vector<std::vector<std::uint16_t>> h(r, std::vector<std::uint16_t>(n));
    for (int m = 1; m <= r; ++m)
        for (int j = 0; j < n; ++j)
            h[m - 1][j] = f.alpha_pow(std::int64_t(m) * (n - 1 - j));
    return h;
}

TppcCode::TppcCode(EpccCode c1, std::shared_ptr<const SignatureCode> c2)
    : c1_(std::move(c1)), c2_(std::move(c2)) {
    if (!c2_) throw std::invalid_argument("tppc: null signature code");
    if (c2_->field().m() != c1_.p())
        throw std::invalid_argument("tppc: signature field degree != parity count");
}

BitVec TppcCode::encode(const BitVec& data) const {
    if (int(data.size()) != k3()) throw std::invalid_argument("tppc: data length != k3");
    const int N1 = n1(), K1 = k1(), K2 = k2(), P2 = p2();
    BitVec word{std::size_t(n3())};

    // all-data symbols pass through; collect their signatures as c2 data
    std::vector<std::uint16_t> sig(K2);
    for (int j = 0; j < K2; ++j) {
        std::uint32_t block = data.window(std::size_t(j) * N1, N1);
        word.set_window(std::size_t(j) * N1, N1, block);
        sig[j] = std::uint16_t(c1_.signature(block));
    }
    OpCount::add(std::uint64_t(K2) * N1);

    auto c2w = c2_->encode(sig);

    // parity-bearing symbols: data bits in front, parity solved per symbol to
    // land on the assigned signature
    const std::size_t gamma0 = std::size_t(N1) * K2;
    for (int i = 0; i < P2; ++i) {
        std::uint32_t d = data.window(gamma0 + std::size_t(i) * K1, K1);
        std::uint32_t block = c1_.solve_parity(d, c2w[K2 + i]);
        word.set_window(std::size_t(K2 + i) * N1, N1, block);
    }
    OpCount::add(std::uint64_t(P2) * 2 * N1);
    return word;
}

BitVec TppcCode::extract_data(const BitVec& word) const {
    if (int(word.size()) != n3()) throw std::invalid_argument("tppc: word length != n3");
    const int N1 = n1(), K1 = k1(), K2 = k2(), P2 = p2();
    BitVec data{std::size_t(k3())};
    for (int j = 0; j < K2; ++j)
        data.set_window(std::size_t(j) * N1, N1, word.window(std::size_t(j) * N1, N1));
    const std::size_t gamma0 = std::size_t(N1) * K2;
    for (int i = 0; i < P2; ++i)
        data.set_window(gamma0 + std::size_t(i) * K1, K1,
                        word.window(std::size_t(K2 + i) * N1, K1));
    return data;
}

std::vector<std::uint16_t> TppcCode::tensor_signatures(const BitVec& word) const {
    if (int(word.size()) != n3()) throw std::invalid_argument("tppc: word length != n3");
    std::vector<std::uint16_t> sig(n2());
    for (int j = 0; j < n2(); ++j)
        sig[j] = std::uint16_t(c1_.signature(word.window(std::size_t(j) * n1(), n1())));
    OpCount::add(std::uint64_t(n2()) * n1());
    return sig;
}

BitMatrix TppcCode::c1_parity_check() const {
    BitMatrix h(p1(), n1());
    for (int t = 0; t < n1(); ++t) {
        std::uint32_t col = c1_.syndrome_of(1, t);   // x^t * e^(1) = x^t mod g
        for (int r = 0; r < p1(); ++r) h.set(r, t, (col >> r) & 1);
    }
    return h;
}

BitMatrix TppcCode::parity_check() const {
    return build_tensor_parity_check(c1_parity_check(), c2_->parity_rows(), c2_->field());
}

BitMatrix build_tensor_parity_check(const BitMatrix& c1_h,
                                    const std::vector<std::vector<std::uint16_t>>& c2_h,
                                    const FieldContext& f) {
    const int p1 = int(c1_h.rows()), n1 = int(c1_h.cols());
    if (p1 != f.m()) throw std::invalid_argument("tensor: c1 rows != field degree");
    const int p2 = int(c2_h.size());
    if (p2 == 0) throw std::invalid_argument("tensor: empty c2 matrix");
    const int n2 = int(c2_h[0].size());

    // c1 columns as field symbols
    std::vector<std::uint16_t> h1(n1);
    for (int t = 0; t < n1; ++t) {
        std::uint16_t v = 0;
        for (int r = 0; r < p1; ++r)
            if (c1_h.get(r, t)) v |= std::uint16_t(1) << r;
        h1[t] = v;
    }

    BitMatrix h3(std::size_t(p1) * p2, std::size_t(n1) * n2);
    for (int r = 0; r < p2; ++r) {
        if (int(c2_h[r].size()) != n2) throw std::invalid_argument("tensor: ragged c2 matrix");
        for (int j = 0; j < n2; ++j) {
            std::uint16_t label = c2_h[r][j];
            if (!label) continue;
            for (int t = 0; t < n1; ++t) {
                std::uint16_t sym = f.mul(label, h1[t]);
                for (int rb = 0; rb < p1; ++rb)
                    if ((sym >> rb) & 1)
                        h3.set(std::size_t(r) * p1 + rb, std::size_t(j) * n1 + t, true);
            }
        }
    }
    return h3;
}

TensorDecodeResult tppc_rs_hard_decode(const TppcCode& code, const BitVec& received,
                                       int max_tests) {
    auto* rsc = dynamic_cast<const RsSignatureCode*>(&code.c2());
    if (!rsc) throw std::invalid_argument("hard decode needs an RS signature code");

    TensorDecodeResult out;
    out.word = received;
    auto sig = code.tensor_signatures(received);
    auto rs_res = rsc->rs().bm_decode(sig);
    if (!rs_res.success) return out;

    const auto& c1 = code.c1();
    for (int j = 0; j < code.n2(); ++j) {
        std::uint32_t e_syn = sig[j] ^ rs_res.word[j];
        if (e_syn == 0) continue;   // symbol clean, pattern decoder stays off
        std::uint32_t block = received.window(std::size_t(j) * code.n1(), code.n1());
        auto sd = c1.single_error_decode(e_syn, block);
        if (!sd.cands.empty()) {
            out.word.set_window(std::size_t(j) * code.n1(), code.n1(),
                                block ^ c1.pattern_mask(sd.cands[0].type, sd.cands[0].pos));
            continue;
        }
        // unrecognized or support-filtered out: test-word list toward the
        // corrected signature
        auto list = c1.list_decode(rs_res.word[j], block, nullptr, max_tests);
        if (!list.empty())
            out.word.set_window(std::size_t(j) * code.n1(), code.n1(), list[0].block);
        else
            out.failed_symbols.push_back(j);
    }
    out.success = out.failed_symbols.empty();
    return out;
}

} // namespace tppc
