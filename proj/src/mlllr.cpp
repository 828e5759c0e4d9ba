#include "tppc/mlllr.hpp"

#include <algorithm>
#include <stdexcept>

namespace tppc {

namespace {
constexpr double kUnderflow = -700.0;   // exp() is flush-to-zero below this
constexpr double kCap = 700.0;
constexpr double kMlFloor = -27.631021115928547;   // log 1e-12
} // namespace

void recenter_on_zero(MlLlr& g) {
    double ref = std::max(g[0], kUnderflow);
    for (std::size_t i = 1; i < g.v.size(); ++i) {
        if (g.v[i] <= kNegInf / 2) continue;
        g.v[i] = std::min(g.v[i] - ref, kCap);
    }
    g.v[0] = 0.0;
}

MlLlr build_signature_mlllr(const EpccCode& code, std::uint32_t ml_block,
                            const ErrorHypothesisList& hyps, int M, int e_free,
                            int combo_cap) {
    if (M < 1) throw std::invalid_argument("mlllr: M < 1");
    const int q = 1 << code.p();
    MlLlr g(q);
    const std::uint32_t beta_ml = code.signature(ml_block);

    // independence: clean gap between two runs must exceed the channel's
    // error-free distance
    auto gap_ok = [&](const ErrorHypothesis& a, const ErrorHypothesis& b) {
        int ea = a.pos + code.targets()[a.type - 1].length;
        int eb = b.pos + code.targets()[b.type - 1].length;
        int gap = (b.pos >= ea) ? b.pos - ea : (a.pos >= eb ? a.pos - eb : -1);
        return gap > e_free;
    };

    // enumerate multiplicity-m combinations in hypothesis-rank order, capped;
    // combinations whose combined pattern lies in the component null space
    // land on the ml slot itself
    int emitted = 0;
    std::vector<int> pick;
    auto emit = [&](double metric) {
        std::uint32_t w = ml_block;
        for (int id : pick) w ^= code.pattern_mask(hyps[id].type, hyps[id].pos);
        std::uint32_t beta = code.signature(w);
        g.v[beta] = max_star(g.v[beta], metric);
        ++emitted;
    };
    for (int m = 1; m <= M && emitted < combo_cap; ++m) {
        // fixed-multiplicity pass so singles outrank pairs under the cap
        auto fixed = [&](auto&& self, int start, int depth, double acc) -> void {
            if (emitted >= combo_cap) return;
            if (depth == m) { emit(acc); return; }
            for (int i = start; i < int(hyps.size()) && emitted < combo_cap; ++i) {
                bool ok = true;
                for (int id : pick)
                    if (!gap_ok(hyps[id], hyps[i])) { ok = false; break; }
                if (!ok) continue;
                pick.push_back(i);
                self(self, i + 1, depth + 1, acc + hyps[i].metric);
                pick.pop_back();
            }
        };
        fixed(fixed, 0, 0, 0.0);
    }

    // close the p.m.f.: the ml word itself carries unit ratio mass, null-space
    // combinations add to its slot, everything is scaled to sum to one
    double others = kNegInf;
    for (int b = 0; b < q; ++b)
        if (std::uint32_t(b) != beta_ml) others = max_star(others, g.v[b]);
    double null_mass = g.v[beta_ml];
    double z = max_star(max_star(0.0, null_mass), others);
    double ml_slot = max_star(0.0, null_mass) - z;
    ml_slot = std::clamp(ml_slot, kMlFloor, 0.0);
    g.v[beta_ml] = ml_slot;
    for (int b = 0; b < q; ++b) {
        if (std::uint32_t(b) == beta_ml || g.v[b] <= kNegInf / 2) continue;
        g.v[b] -= z;
    }
    recenter_on_zero(g);
    return g;
}

MlLlr syndrome_convolve(const MlLlr& ch, const MlLlr& post) {
    if (ch.q() != post.q()) throw std::invalid_argument("mlllr: size mismatch");
    const int q = ch.q();
    MlLlr out(q);
    for (int a = 0; a < q; ++a) {
        if (ch.v[a] <= kNegInf / 2) continue;
        for (int c = 0; c < q; ++c) {
            if (post.v[c] <= kNegInf / 2) continue;
            int b = a ^ c;
            out.v[b] = max_star(out.v[b], ch.v[a] + post.v[c]);
        }
    }
    recenter_on_zero(out);
    return out;
}

} // namespace tppc
