#include "tppc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace tppc {

double snr_to_sigma(const ChannelModel& m, double snr_db, double rate, double delta) {
    if (!(rate > 0.0) || rate > 1.0) throw std::invalid_argument("rate outside (0,1]");
    double var = (m.tap_energy() / 2.0) * std::pow(10.0, -snr_db / 10.0) *
                 std::pow(1.0 / rate, delta);
    return std::sqrt(var);
}

std::vector<double> isi_response(const ChannelModel& m, const BitVec& bits) {
    const int n = int(bits.size()), lh = m.lh();
    auto bip = [&](int i) {
        if (i < 0 || i >= n) return 1.0;   // sector boundary convention
        return bits.get(i) ? 1.0 : -1.0;
    };
    std::vector<double> y(n + lh - 1);
    for (int k = 0; k < int(y.size()); ++k) {
        double acc = 0;
        for (int j = 0; j < lh; ++j) acc += m.taps[j] * bip(k - j);
        y[k] = acc;
    }
    return y;
}

SectorFrame transmit(const ChannelModel& m, const BitVec& bits, std::mt19937_64& rng) {
    if (bits.empty()) throw std::invalid_argument("transmit: empty sector");
    SectorFrame f;
    f.coded = bits;
    f.noiseless = isi_response(m, bits);
    f.received = f.noiseless;
    std::normal_distribution<double> gauss(0.0, m.sigma);
    for (auto& r : f.received) r += gauss(rng);
    return f;
}

BitVec viterbi_detect(const ChannelModel& m, std::span<const double> r,
                      std::span<const double> priors) {
    const int lh = m.lh();
    if (lh < 2) throw std::invalid_argument("viterbi: need at least two taps");
    const int n = int(r.size()) - (lh - 1);
    if (n < 1) throw std::invalid_argument("viterbi: too few samples");
    if (!priors.empty() && int(priors.size()) != n)
        throw std::invalid_argument("viterbi: prior length mismatch");

    const int S = 1 << (lh - 1);            // state bit j = bit at lag j+1
    const int mask = S - 1;
    const double inv2s2 = 1.0 / (2.0 * m.sigma * m.sigma);
    std::vector<double> cur(S, -1e300), nxt(S);
    cur[mask] = 0.0;                        // boundary bits are +1
    std::vector<std::uint8_t> parent(std::size_t(r.size()) * S);

    for (int k = 0; k < int(r.size()); ++k) {
        std::fill(nxt.begin(), nxt.end(), -1e300);
        const bool forced = k >= n;         // postamble bits fixed to +1
        for (int s = 0; s < S; ++s) {
            if (cur[s] <= -1e299) continue;
            double tail = 0;                // ISI from bits already decided
            for (int j = 1; j < lh; ++j)
                tail += m.taps[j] * (((s >> (j - 1)) & 1) ? 1.0 : -1.0);
            for (int b = forced ? 1 : 0; b < 2; ++b) {
                double y = m.taps[0] * (b ? 1.0 : -1.0) + tail;
                double d = r[k] - y;
                double metric = cur[s] - d * d * inv2s2;
                if (!priors.empty() && k < n)
                    metric += (b ? 1.0 : -1.0) * priors[k] * 0.5;
                int s2 = ((s << 1) | b) & mask;
                if (metric > nxt[s2]) {
                    nxt[s2] = metric;
                    parent[std::size_t(k) * S + s2] = std::uint8_t(s);
                }
            }
        }
        cur.swap(nxt);
    }

    BitVec out{std::size_t(n)};
    int s = mask;                           // path ends in the all-ones boundary state
    for (int k = int(r.size()) - 1; k >= 0; --k) {
        if (k < n) out.set(k, s & 1);       // arriving state carries the newest bit
        s = parent[std::size_t(k) * S + s];
    }
    return out;
}

} // namespace tppc
