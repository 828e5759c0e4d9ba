#include "tppc/rs.hpp"

#include <algorithm>
#include <stdexcept>

namespace tppc {

namespace {

// ascending-coefficient polynomials over GF(q)
using Fp = std::vector<std::uint16_t>;

std::uint16_t eval(const FieldContext& f, const Fp& p, std::uint16_t x) {
    std::uint16_t acc = 0;
    for (int i = int(p.size()) - 1; i >= 0; --i) acc = f.add(f.mul(acc, x), p[i]);
    return acc;
}

Fp mul_trunc(const FieldContext& f, const Fp& a, const Fp& b, std::size_t cap) {
    Fp r(std::min(cap, a.size() + b.size() - 1), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size() && i + j < cap; ++j)
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    return r;
}

std::uint16_t formal_derivative_at(const FieldContext& f, const Fp& p, std::uint16_t x) {
    // char 2: even-power terms vanish
    Fp d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(i % 2 ? p[i] : std::uint16_t(0));
    if (d.empty()) return 0;
    return eval(f, d, x);
}

} // namespace

RsCode::RsCode(std::shared_ptr<const FieldContext> f, int n, int k)
    : f_(std::move(f)), n_(n), k_(k), t_((n - k) / 2) {
    if (!f_) throw std::invalid_argument("rs: null field");
    if (n_ < 2 || k_ < 1 || k_ >= n_) throw std::invalid_argument("rs: bad (n,k)");
    if ((n_ - k_) % 2 != 0) throw std::invalid_argument("rs: n-k must be even");
    if (n_ > f_->q() - 1) throw std::invalid_argument("rs: n exceeds q-1");
    // G(x) = prod_{m=1}^{2t} (x + alpha^m)
    gen_ = {1};
    for (int m = 1; m <= 2 * t_; ++m) {
        std::uint16_t root = f_->alpha_pow(m);
        Fp next(gen_.size() + 1, 0);
        for (std::size_t i = 0; i < gen_.size(); ++i) {
            next[i + 1] = f_->add(next[i + 1], gen_[i]);         // x * gen
            next[i] = f_->add(next[i], f_->mul(root, gen_[i]));  // root * gen
        }
        gen_ = std::move(next);
    }
}

std::vector<std::uint16_t> RsCode::encode(std::span<const std::uint16_t> data) const {
    if (int(data.size()) != k_) throw std::invalid_argument("rs: data length != k");
    const int r = 2 * t_;
    // systematic division: remainder of D(x) x^{2t} by G, high coefficient first
    std::vector<std::uint16_t> rem(r, 0);   // rem[0] = highest-degree slot
    for (int j = 0; j < k_; ++j) {
        std::uint16_t fb = f_->add(data[j], rem[0]);
        std::rotate(rem.begin(), rem.begin() + 1, rem.end());
        rem[r - 1] = 0;
        if (fb)
            for (int i = 0; i < r; ++i)
                rem[i] = f_->add(rem[i], f_->mul(fb, gen_[r - 1 - i]));
    }
    std::vector<std::uint16_t> cw(data.begin(), data.end());
    cw.insert(cw.end(), rem.begin(), rem.end());
    return cw;
}

std::vector<std::uint16_t> RsCode::syndromes(std::span<const std::uint16_t> word) const {
    if (int(word.size()) != n_) throw std::invalid_argument("rs: word length != n");
    std::vector<std::uint16_t> s(2 * t_);
    for (int m = 1; m <= 2 * t_; ++m) {
        std::uint16_t x = f_->alpha_pow(m), acc = 0;
        for (int j = 0; j < n_; ++j) acc = f_->add(f_->mul(acc, x), word[j]);
        s[m - 1] = acc;
    }
    return s;
}

HardDecodeResult RsCode::bm_decode(std::span<const std::uint16_t> word) const {
    HardDecodeResult res;
    res.word.assign(word.begin(), word.end());
    auto S = syndromes(word);
    if (std::all_of(S.begin(), S.end(), [](auto v) { return v == 0; })) {
        res.success = true;
        return res;
    }
    // Berlekamp-Massey over S_1..S_2t
    Fp lam{1}, B{1};
    int L = 0, m = 1;
    std::uint16_t b = 1;
    for (int r = 0; r < 2 * t_; ++r) {
        std::uint16_t delta = 0;
        for (int i = 0; i <= L && i < int(lam.size()); ++i)
            if (r - i >= 0) delta = f_->add(delta, f_->mul(lam[i], S[r - i]));
        if (delta == 0) {
            ++m;
            continue;
        }
        std::uint16_t coef = f_->div(delta, b);
        Fp T = lam;
        if (lam.size() < B.size() + m) lam.resize(B.size() + m, 0);
        for (std::size_t i = 0; i < B.size(); ++i)
            lam[i + m] = f_->add(lam[i + m], f_->mul(coef, B[i]));
        if (2 * L <= r) {
            L = r + 1 - L;
            B = std::move(T);
            b = delta;
            m = 1;
        } else {
            ++m;
        }
    }
    while (!lam.empty() && lam.back() == 0) lam.pop_back();
    if (L > t_ || int(lam.size()) - 1 != L) return res;   // failure

    // Chien over coefficient positions, Forney for values
    Fp omega = mul_trunc(*f_, S, lam, 2 * t_);
    int found = 0;
    for (int i = 0; i < n_; ++i) {                         // i = coefficient index
        std::uint16_t xinv = f_->alpha_pow(-i);            // candidate root lam(X^-1)=0
        if (eval(*f_, lam, xinv) != 0) continue;
        ++found;
        std::uint16_t den = formal_derivative_at(*f_, lam, xinv);
        if (den == 0) return res;
        std::uint16_t e = f_->div(eval(*f_, omega, xinv), den);
        int j = n_ - 1 - i;
        res.word[j] = f_->add(res.word[j], e);
        res.error_positions.push_back(j);
    }
    if (found != L) {
        res.word.assign(word.begin(), word.end());
        res.error_positions.clear();
        return res;
    }
    auto S2 = syndromes(res.word);
    if (!std::all_of(S2.begin(), S2.end(), [](auto v) { return v == 0; })) {
        res.word.assign(word.begin(), word.end());
        res.error_positions.clear();
        return res;
    }
    std::sort(res.error_positions.begin(), res.error_positions.end());
    res.success = true;
    return res;
}

HardDecodeResult RsCode::erasure_decode(std::span<const std::uint16_t> word,
                                        std::span<const int> erasures) const {
    HardDecodeResult res;
    res.word.assign(word.begin(), word.end());
    if (int(erasures.size()) > 2 * t_) return res;
    for (int j : erasures) {
        if (j < 0 || j >= n_) throw std::invalid_argument("rs: erasure out of range");
        res.word[j] = 0;
    }
    auto S = syndromes(res.word);
    if (!erasures.empty()) {
        // erasure locator over known positions, then Forney fills the values
        Fp gam{1};
        for (int j : erasures) {
            std::uint16_t X = f_->alpha_pow(n_ - 1 - j);
            Fp next(gam.size() + 1, 0);
            for (std::size_t i = 0; i < gam.size(); ++i) {
                next[i] = f_->add(next[i], gam[i]);
                next[i + 1] = f_->add(next[i + 1], f_->mul(X, gam[i]));
            }
            gam = std::move(next);
        }
        Fp omega = mul_trunc(*f_, S, gam, 2 * t_);
        for (int j : erasures) {
            std::uint16_t X = f_->alpha_pow(n_ - 1 - j);
            std::uint16_t xinv = f_->inv(X);
            std::uint16_t den = formal_derivative_at(*f_, gam, xinv);
            if (den == 0) return res;
            res.word[j] = f_->div(eval(*f_, omega, xinv), den);
        }
        S = syndromes(res.word);
    }
    if (!std::all_of(S.begin(), S.end(), [](auto v) { return v == 0; })) {
        res.word.assign(word.begin(), word.end());
        return res;
    }
    res.error_positions.assign(erasures.begin(), erasures.end());
    std::sort(res.error_positions.begin(), res.error_positions.end());
    res.success = true;
    return res;
}

} // namespace tppc
