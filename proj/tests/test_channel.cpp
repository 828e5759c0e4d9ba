#include <doctest.h>
#include <tppc/channel.hpp>

#include <cmath>
#include <random>

using namespace tppc;

namespace {

BitVec bits_of(std::initializer_list<int> v) {
    BitVec b(v.size());
    std::size_t i = 0;
    for (int x : v) b.set(i++, x);
    return b;
}

BitVec random_bits(std::size_t n, std::mt19937_64& rng) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
    return v;
}

// exhaustive maximum-metric word, same objective the detector optimizes
BitVec brute_ml(const ChannelModel& m, std::span<const double> r,
                std::span<const double> priors) {
    int n = int(r.size()) - (m.lh() - 1);
    double best = -1e300;
    unsigned best_w = 0;
    for (unsigned w = 0; w < (1u << n); ++w) {
        BitVec b(n);
        for (int i = 0; i < n; ++i) b.set(i, (w >> i) & 1);
        auto y = isi_response(m, b);
        double metric = 0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            double d = r[k] - y[k];
            metric -= d * d / (2 * m.sigma * m.sigma);
        }
        if (!priors.empty())
            for (int k = 0; k < n; ++k)
                metric += (b.get(k) ? 1.0 : -1.0) * priors[k] * 0.5;
        if (metric > best) { best = metric; best_w = w; }
    }
    BitVec out(n);
    for (int i = 0; i < n; ++i) out.set(i, (best_w >> i) & 1);
    return out;
}

} // namespace

TEST_SUITE("channel") {

TEST_CASE("noise scale follows the rate-penalized law") {
    ChannelModel m;
    CHECK(m.lh() == 2);
    CHECK(m.e_free() == 1);
    CHECK(m.tap_energy() == doctest::Approx(1.0 + 0.85 * 0.85));

    double s10 = snr_to_sigma(m, 10.0, 1.0, 1.0);
    CHECK(s10 * s10 == doctest::Approx((1.7225 / 2.0) * 0.1));
    // frozen golden for the working-rate case
    double s = snr_to_sigma(m, 10.0, 0.9, 1.0);
    CHECK(s == doctest::Approx(std::sqrt(0.86125 * 0.1 / 0.9)).epsilon(1e-12));
    // halving the rate doubles the variance at delta = 1
    double a = snr_to_sigma(m, 8.0, 0.8, 1.0), b = snr_to_sigma(m, 8.0, 0.4, 1.0);
    CHECK(b * b == doctest::Approx(2.0 * a * a));
    // delta = 2 squares the penalty
    double c = snr_to_sigma(m, 8.0, 0.5, 2.0);
    CHECK(c * c == doctest::Approx(4.0 * snr_to_sigma(m, 8.0, 1.0, 2.0) *
                                   snr_to_sigma(m, 8.0, 1.0, 2.0)));
    CHECK_THROWS(snr_to_sigma(m, 10.0, 0.0, 1.0));
    CHECK_THROWS(snr_to_sigma(m, 10.0, -0.5, 1.0));
}

TEST_CASE("noiseless response with boundary padding") {
    ChannelModel m;
    auto y = isi_response(m, bits_of({1, 0, 1}));
    REQUIRE(y.size() == 4);
    CHECK(y[0] == doctest::Approx(1.85));    // preamble +1 behind the first bit
    CHECK(y[1] == doctest::Approx(-0.15));
    CHECK(y[2] == doctest::Approx(0.15));
    CHECK(y[3] == doctest::Approx(1.85));    // postamble +1 on top of the last bit
    auto ones = isi_response(m, bits_of({1, 1, 1, 1, 1}));
    for (double v : ones) CHECK(v == doctest::Approx(1.85));
}

TEST_CASE("transmit is deterministic and centered on the response") {
    ChannelModel m;
    m.sigma = 0.3;
    std::mt19937_64 r1(123), r2(123);
    BitVec b(64);
    for (int i = 0; i < 64; ++i) b.set(i, (i * 7) % 3 == 0);
    auto f1 = transmit(m, b, r1);
    auto f2 = transmit(m, b, r2);
    CHECK(f1.received == f2.received);
    CHECK(f1.noiseless == isi_response(m, b));
    REQUIRE(f1.received.size() == 65);

    m.sigma = 1e-12;
    std::mt19937_64 r3(5);
    auto f3 = transmit(m, b, r3);
    for (std::size_t k = 0; k < f3.received.size(); ++k)
        CHECK(f3.received[k] == doctest::Approx(f3.noiseless[k]).epsilon(1e-9));
    CHECK_THROWS(transmit(m, BitVec(), r3));
}

TEST_CASE("detector recovers the sector as noise vanishes") {
    ChannelModel m;
    m.sigma = 1e-6;
    std::mt19937_64 rng(211);
    for (int t = 0; t < 20; ++t) {
        BitVec b = random_bits(200, rng);
        auto f = transmit(m, b, rng);
        CHECK(viterbi_detect(m, f.received) == b);
    }
}

TEST_CASE("overwhelming priors dictate the output") {
    ChannelModel m;
    m.sigma = 0.5;
    std::mt19937_64 rng(223);
    BitVec b = random_bits(40, rng);
    auto f = transmit(m, b, rng);
    std::vector<double> lam(40);
    BitVec want(40);
    for (int i = 0; i < 40; ++i) {
        bool v = (i % 3) == 1;
        want.set(i, v);
        lam[i] = v ? 1e3 : -1e3;
    }
    CHECK(viterbi_detect(m, f.received, lam) == want);
}

TEST_CASE("trellis search equals exhaustive search on short blocks") {
    ChannelModel m;
    std::mt19937_64 rng(227);
    for (int trial = 0; trial < 200; ++trial) {
        int n = trial % 2 ? 8 : 12;
        m.sigma = 0.3 + 0.2 * (trial % 5);
        BitVec b = random_bits(n, rng);
        auto f = transmit(m, b, rng);
        std::vector<double> lam;
        if (trial % 3 == 0) {
            lam.resize(n);
            std::normal_distribution<double> g(0.0, 2.0);
            for (auto& v : lam) v = g(rng);
        }
        auto got = viterbi_detect(m, f.received, lam);
        auto want = brute_ml(m, f.received, lam);
        CHECK(got == want);
    }
}

TEST_CASE("round-trip error rate falls with rising snr") {
    ChannelModel m;
    std::mt19937_64 rng(229);
    double prev = 1.0;
    for (double snr : {6.0, 9.0, 12.0, 15.0}) {
        m.sigma = snr_to_sigma(m, snr, 1.0, 1.0);
        int errs = 0, bits = 0;
        for (int t = 0; t < 60; ++t) {
            BitVec b = random_bits(256, rng);
            auto f = transmit(m, b, rng);
            auto d = viterbi_detect(m, f.received);
            for (int i = 0; i < 256; ++i) errs += d.get(i) != b.get(i);
            bits += 256;
        }
        double ber = double(errs) / bits;
        CHECK(ber <= prev);
        prev = ber;
    }
    CHECK(prev < 0.01);
}

} // TEST_SUITE
