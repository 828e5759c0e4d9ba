#pragma once
#include <bit>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace tppc {

// binary polynomial, bit i = coefficient of x^i; degree <= 63
struct Gf2Poly {
    std::uint64_t bits = 0;

    Gf2Poly() = default;
    explicit Gf2Poly(std::uint64_t b) : bits(b) {}

    int degree() const { return bits ? 63 - std::countl_zero(bits) : -1; }
    bool is_zero() const { return bits == 0; }
    bool coeff(int i) const { return (bits >> i) & 1; }
    bool operator==(const Gf2Poly&) const = default;
};

Gf2Poly poly_mod(Gf2Poly a, Gf2Poly g);
Gf2Poly poly_mul(Gf2Poly a, Gf2Poly b);
// smallest P with x^P = 1 mod g; requires g(0)=1, deg g >= 1
int poly_order(Gf2Poly g);

// GF(2^m) via exp/log tables, alpha = residue class of x
class FieldContext {
public:
    FieldContext(int m, Gf2Poly primitive_poly);

    // fixed default primitive polynomials, recorded in config output
    static std::shared_ptr<const FieldContext> shared(int m);
    static Gf2Poly default_primitive_poly(int m);

    int m() const { return m_; }
    int q() const { return q_; }
    Gf2Poly primitive_poly() const { return prim_; }

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return a ^ b; }
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
        if (!a || !b) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    std::uint16_t inv(std::uint16_t a) const {
        if (!a) throw std::domain_error("gf inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    std::uint16_t div(std::uint16_t a, std::uint16_t b) const { return mul(a, inv(b)); }
    // alpha^k for any integer k (negative allowed)
    std::uint16_t alpha_pow(long long k) const {
        long long e = k % (q_ - 1);
        if (e < 0) e += q_ - 1;
        return exp_[e];
    }
    int log_of(std::uint16_t a) const {
        if (!a) throw std::domain_error("gf log of zero");
        return log_[a];
    }

private:
    int m_, q_;
    Gf2Poly prim_;
    std::vector<std::uint16_t> exp_, log_;
};

// bit i -> coefficient of x^i; the element value is just the packed bits
std::uint16_t gf_map(const FieldContext& f, std::span<const std::uint8_t> bits);
void gf_unmap(const FieldContext& f, std::uint16_t v, std::span<std::uint8_t> bits);

} // namespace tppc
