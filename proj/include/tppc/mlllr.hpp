#pragma once
#include "tppc/correlator.hpp"
#include "tppc/epcc.hpp"

#include <cmath>
#include <vector>

namespace tppc {

// log-domain probability addition; exact for the NEG_INF sentinel
inline double max_star(double a, double b) {
    if (a <= kNegInf / 2) return b;
    if (b <= kNegInf / 2) return a;
    return (a > b ? a : b) + std::log1p(std::exp(-std::abs(a - b)));
}

// length-q log-likelihood vector over GF(q); slot 0 pinned to 0 after
// normalization, unpopulated slots carry the NEG_INF sentinel
struct MlLlr {
    std::vector<double> v;

    MlLlr() = default;
    explicit MlLlr(int q) : v(std::size_t(q), kNegInf) {}
    int q() const { return int(v.size()); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
};

// recentring on the zero element: slot 0 becomes exactly 0, other slots are
// shifted by an underflow-floored reference and capped, sentinels preserved
void recenter_on_zero(MlLlr& g);

// signature log-p.m.f. of one tensor symbol from the top error hypotheses:
// multiplicity 1..M combinations with pairwise clean gaps > e_free, closed so
// the probability mass sums to one, then recentred on the zero element
MlLlr build_signature_mlllr(const EpccCode& code, std::uint32_t ml_block,
                            const ErrorHypothesisList& hyps, int M, int e_free,
                            int combo_cap = 64);

// log-domain group convolution: gamma(b) = max* over a^c = b of ch(a)+post(c),
// recentred on the zero element
MlLlr syndrome_convolve(const MlLlr& ch, const MlLlr& post);

} // namespace tppc
