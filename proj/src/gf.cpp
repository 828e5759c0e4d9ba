#include "tppc/gf.hpp"

#include <map>
#include <mutex>

namespace tppc {

Gf2Poly poly_mod(Gf2Poly a, Gf2Poly g) {
    if (g.is_zero()) throw std::domain_error("poly_mod by zero");
    int dg = g.degree();
    int da = a.degree();
    while (da >= dg) {
        a.bits ^= g.bits << (da - dg);
        da = a.degree();
    }
    return a;
}

Gf2Poly poly_mul(Gf2Poly a, Gf2Poly b) {
    std::uint64_t r = 0;
    for (std::uint64_t x = a.bits, y = b.bits; y; y >>= 1, x <<= 1)
        if (y & 1) r ^= x;
    return Gf2Poly(r);
}

int poly_order(Gf2Poly g) {
    if (!g.coeff(0) || g.degree() < 1)
        throw std::domain_error("poly_order needs g(0)=1, deg >= 1");
    // iterate s <- x*s mod g starting from s = x mod g
    Gf2Poly s = poly_mod(Gf2Poly(2), g);
    int p = 1;
    const int cap = 1 << g.degree();   // order divides 2^deg - 1 ... bounded by it
    while (s.bits != 1) {
        s = poly_mod(Gf2Poly(s.bits << 1), g);
        if (++p > cap) throw std::runtime_error("poly_order: no finite order (g shares factor x?)");
    }
    return p;
}

FieldContext::FieldContext(int m, Gf2Poly prim) : m_(m), q_(1 << m), prim_(prim) {
    if (m < 1 || m > 16) throw std::invalid_argument("field degree out of range");
    if (prim.degree() != m) throw std::invalid_argument("primitive poly degree != m");
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    std::uint32_t b = 1;
    for (int i = 0; i < q_ - 1; ++i) {
        if (b == 1 && i > 0)
            throw std::invalid_argument("poly not primitive: alpha order < q-1");
        exp_[i] = std::uint16_t(b);
        log_[b] = std::uint16_t(i);
        b <<= 1;
        if (b & q_) b ^= std::uint32_t(prim.bits);
    }
    // table bijectivity: every nonzero element must have appeared exactly once
    std::vector<bool> seen(q_, false);
    for (auto e : exp_) {
        if (seen[e]) throw std::invalid_argument("poly not primitive: repeated element");
        seen[e] = true;
    }
}

Gf2Poly FieldContext::default_primitive_poly(int m) {
    switch (m) {
        case 1:  return Gf2Poly(0b11);          // 1+x
        case 2:  return Gf2Poly(0b111);         // 1+x+x^2
        case 3:  return Gf2Poly(0b1011);        // 1+x+x^3
        case 4:  return Gf2Poly(0b10011);       // 1+x+x^4
        case 5:  return Gf2Poly(0b100101);      // 1+x^2+x^5
        case 6:  return Gf2Poly(0b1000011);     // 1+x+x^6
        case 7:  return Gf2Poly(0b10001001);    // 1+x^3+x^7
        case 8:  return Gf2Poly(0b100011101);   // 1+x^2+x^3+x^4+x^8
        case 9:  return Gf2Poly(0b1000010001);  // 1+x^4+x^9
        case 10: return Gf2Poly(0b10000001001); // 1+x^3+x^10
        default: throw std::invalid_argument("no default primitive poly for this m");
    }
}

std::shared_ptr<const FieldContext> FieldContext::shared(int m) {
    static std::mutex mx;
    static std::map<int, std::shared_ptr<const FieldContext>> cache;
    std::lock_guard<std::mutex> lk(mx);
    auto it = cache.find(m);
    if (it == cache.end())
        it = cache.emplace(m, std::make_shared<FieldContext>(m, default_primitive_poly(m))).first;
    return it->second;
}

std::uint16_t gf_map(const FieldContext& f, std::span<const std::uint8_t> bits) {
    if (int(bits.size()) != f.m()) throw std::invalid_argument("gf_map: bit count != m");
    std::uint16_t v = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) v |= std::uint16_t(1) << i;
    return v;
}

void gf_unmap(const FieldContext& f, std::uint16_t v, std::span<std::uint8_t> bits) {
    if (int(bits.size()) != f.m()) throw std::invalid_argument("gf_unmap: bit count != m");
    for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = (v >> i) & 1;
}

} // namespace tppc
