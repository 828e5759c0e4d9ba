#include <doctest.h>
#include <tppc/tensor.hpp>
#include "oracles.hpp"

#include <random>
#include <set>

using namespace tppc;

namespace {

EpccCode epcc12() { return EpccCode::search_generator(make_run_targets(5), 8, 12); }
EpccCode epcc18() { return EpccCode::search_generator(make_run_targets(10), 10, 18); }

TppcCode small_rs_tensor() {
    // (12,6,6) pattern code with a t=6 RS signature code on GF(64)
    return TppcCode(epcc12(),
                    std::make_shared<RsSignatureCode>(
                        std::make_shared<RsCode>(FieldContext::shared(6), 63, 51)));
}

TppcCode hard_variant_tensor() {
    // (18,10,8) pattern code with the t=30 RS on GF(256)
    return TppcCode(epcc18(),
                    std::make_shared<RsSignatureCode>(
                        std::make_shared<RsCode>(FieldContext::shared(8), 255, 195)));
}

BitVec random_bits(std::size_t n, std::mt19937_64& rng) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
    return v;
}

} // namespace

TEST_SUITE("tensor") {

TEST_CASE("kronecker expansion with unit c2 matrix reproduces the component check") {
    auto code = small_rs_tensor();
    BitMatrix h1 = code.c1_parity_check();
    auto h3 = build_tensor_parity_check(h1, {{1}}, *FieldContext::shared(6));
    REQUIRE(h3.rows() == h1.rows());
    REQUIRE(h3.cols() == h1.cols());
    for (std::size_t r = 0; r < h1.rows(); ++r)
        for (std::size_t c = 0; c < h1.cols(); ++c)
            CHECK(h3.get(r, c) == h1.get(r, c));
    // column t of the component check is x^t mod g
    CHECK(h1.cols() == 12);
    for (int t = 0; t < 12; ++t) {
        std::uint32_t want = std::uint32_t(
            oracle::to_bits(oracle::poly_rem(oracle::from_bits(1ull << t), oracle::from_bits(0x6b))));
        std::uint32_t got = 0;
        for (int r = 0; r < 6; ++r) got |= std::uint32_t(h1.get(r, t)) << r;
        CHECK(got == want);
    }
}

TEST_CASE("toy kronecker expansion has exactly the right null space") {
    // p1 = 2 toy: the expanded binary matrix must annihilate precisely the words
    // whose per-symbol signatures satisfy the GF(4) check rows
    auto f = FieldContext::shared(2);
    BitMatrix c1h(2, 3);
    // columns: 1, x, 1+x  ->  symbols 1, 2, 3
    c1h.set(0, 0, 1);
    c1h.set(1, 1, 1);
    c1h.set(0, 2, 1);
    c1h.set(1, 2, 1);
    std::vector<std::vector<std::uint16_t>> c2h{{1, 2, 0}, {3, 1, 1}};
    auto h3 = build_tensor_parity_check(c1h, c2h, *f);
    REQUIRE(h3.rows() == 4);
    REQUIRE(h3.cols() == 9);

    std::uint16_t colsym[3] = {1, 2, 3};
    int null_words = 0;
    for (unsigned w = 0; w < 512; ++w) {
        BitVec bits(9);
        for (int i = 0; i < 9; ++i) bits.set(i, (w >> i) & 1);
        // oracle: per-symbol signatures via independent residue arithmetic
        bool sat = true;
        for (int r = 0; r < 2 && sat; ++r) {
            std::uint16_t acc = 0;
            for (int j = 0; j < 3; ++j) {
                std::uint16_t sg = 0;
                for (int t = 0; t < 3; ++t)
                    if ((w >> (3 * j + t)) & 1) sg ^= colsym[t];
                acc ^= std::uint16_t(oracle::gf_mul_residue(c2h[r][j], sg, 0b111));
            }
            sat = acc == 0;
        }
        bool annihilated = !h3.mul(bits).any();
        CHECK(annihilated == sat);
        null_words += annihilated;
    }
    CHECK(null_words == 32);   // 2^9 / 2^{p1 p2} = 512/16
}

TEST_CASE("dimension identities for the published geometries") {
    auto hard = hard_variant_tensor();
    CHECK(hard.n3() == 4590);
    CHECK(hard.k3() == 4110);
    CHECK(hard.p3() == 480);
    auto small = small_rs_tensor();
    CHECK(small.n3() == 756);
    CHECK(small.k3() == 684);
    CHECK(small.p3() == 72);
}

TEST_CASE("encoded words lie in the tensor null space") {
    auto code = small_rs_tensor();
    auto h3 = code.parity_check();
    REQUIRE(h3.rows() == std::size_t(code.p3()));
    REQUIRE(h3.cols() == std::size_t(code.n3()));

    CHECK(!code.encode(BitVec(code.k3())).any());

    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 50; ++trial) {
        BitVec data = random_bits(code.k3(), rng);
        BitVec w = code.encode(data);
        CHECK(!h3.mul(w).any());
        CHECK(code.c2().in_null_space(code.tensor_signatures(w)));
        // data recovery: all-data symbols first, then the data part of the rest
        for (int j = 0; j < code.k2(); ++j)
            CHECK(w.window(std::size_t(j) * code.n1(), code.n1()) ==
                  data.window(std::size_t(j) * code.n1(), code.n1()));
        for (int i = 0; i < code.p2(); ++i)
            CHECK(w.window(std::size_t(code.k2() + i) * code.n1(), code.k1()) ==
                  data.window(std::size_t(code.n1()) * code.k2() + std::size_t(i) * code.k1(),
                              code.k1()));
    }
    CHECK_THROWS(code.encode(BitVec(code.k3() - 1)));
}

TEST_CASE("extracting data from an encoded word returns the data") {
    for (auto make : {&small_rs_tensor, &hard_variant_tensor}) {
        auto code = (*make)();
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            BitVec data = random_bits(std::size_t(code.k3()), rng);
            CHECK(code.extract_data(code.encode(data)) == data);
        }
    }
}

TEST_CASE("most data-block signatures are nonzero") {
    auto code = small_rs_tensor();
    std::mt19937_64 rng(89);
    BitVec w = code.encode(random_bits(code.k3(), rng));
    auto sig = code.tensor_signatures(w);
    int nonzero = 0;
    for (int j = 0; j < code.k2(); ++j) nonzero += sig[j] != 0;
    CHECK(nonzero > code.k2() / 2);
}

TEST_CASE("signature sequence responds locally to symbol corruption") {
    auto code = small_rs_tensor();
    std::mt19937_64 rng(97);
    BitVec w = code.encode(random_bits(code.k3(), rng));
    auto base = code.tensor_signatures(w);
    auto v = w;
    int j = 17;
    v.flip(std::size_t(j) * code.n1() + 4);
    auto sig = code.tensor_signatures(v);
    for (int i = 0; i < code.n2(); ++i) {
        if (i == j) CHECK(sig[i] != base[i]);
        else CHECK(sig[i] == base[i]);
    }
}

TEST_CASE("hard decoder is the identity on codewords") {
    auto code = small_rs_tensor();
    std::mt19937_64 rng(101);
    BitVec w = code.encode(random_bits(code.k3(), rng));
    auto r = tppc_rs_hard_decode(code, w);
    CHECK(r.success);
    CHECK(r.word == w);
    CHECK(r.failed_symbols.empty());
}

TEST_CASE("hard decoder fixes targeted patterns across many symbols") {
    auto code = hard_variant_tensor();
    const auto& c1 = code.c1();
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 10; ++trial) {
        BitVec truth = code.encode(random_bits(code.k3(), rng));
        BitVec rx = truth;
        std::set<int> symbols;
        while (int(symbols.size()) < 30) symbols.insert(int(rng() % code.n2()));
        for (int j : symbols) {
            // sample a pattern whose support-filtered candidate set is a singleton;
            // ambiguous positions are an inherent limit of the component code
            for (int tries = 0;; ++tries) {
                REQUIRE(tries < 400);
                int type = 1 + int(rng() % c1.l_max());
                int pos = int(rng() % (c1.l_T() - c1.targets()[type - 1].length + 1));
                std::uint32_t block = truth.window(std::size_t(j) * code.n1(), code.n1());
                std::uint32_t corrupted = block ^ c1.pattern_mask(type, pos);
                auto sd = c1.single_error_decode(c1.syndrome_of(type, pos), corrupted);
                if (sd.cands.size() == 1 && sd.cands[0].type == type && sd.cands[0].pos == pos) {
                    rx.set_window(std::size_t(j) * code.n1(), code.n1(), corrupted);
                    break;
                }
            }
        }
        auto r = tppc_rs_hard_decode(code, rx);
        REQUIRE(r.success);
        CHECK(r.word == truth);
    }
}

TEST_CASE("hard decoder halts when the signature stage is overwhelmed") {
    auto code = hard_variant_tensor();
    std::mt19937_64 rng(107);
    BitVec truth = code.encode(random_bits(code.k3(), rng));
    BitVec rx = truth;
    std::set<int> symbols;
    while (int(symbols.size()) < 41) symbols.insert(int(rng() % code.n2()));
    for (int j : symbols) rx.flip(std::size_t(j) * code.n1() + (rng() % code.n1()));
    auto r = tppc_rs_hard_decode(code, rx);
    CHECK(!r.success);
    CHECK(r.word == rx);
}

} // TEST_SUITE
