#include "tppc/correlator.hpp"
#include "tppc/mlllr.hpp"

#include <algorithm>

namespace tppc {

ErrorResponse error_response(const ChannelModel& m, int length, int sector_pos,
                             const BitVec& ml_word) {
    ErrorResponse er;
    const int n = int(ml_word.size());
    if (length < 1 || sector_pos < 0 || sector_pos + length > n) return er;
    // a run event flips an alternating stretch of the detected word
    for (int k = 1; k < length; ++k)
        if (ml_word.get(sector_pos + k) == ml_word.get(sector_pos + k - 1)) return er;

    std::vector<double> e(std::size_t(length), 0.0);
    for (int k = 0; k < length; ++k)
        e[k] = ml_word.get(sector_pos + k) ? -2.0 : 2.0;
    er.s.assign(std::size_t(length + m.lh() - 1), 0.0);
    for (int k = 0; k < int(er.s.size()); ++k)
        for (int j = 0; j < m.lh(); ++j) {
            int t = k - j;
            if (t >= 0 && t < length) er.s[k] += m.taps[j] * e[t];
        }
    er.feasible = true;
    return er;
}

double local_metric(const ChannelModel& m, std::span<const double> q,
                    std::span<const double> s, std::span<const double> priors,
                    const BitVec& ml_word, int pos, int length) {
    const double inv2s2 = 1.0 / (2.0 * m.sigma * m.sigma);
    double c = 0.0;
    for (int w = 0; w < int(s.size()); ++w) {
        int k = pos + w;
        if (k < 0 || k >= int(q.size())) continue;
        c += (q[k] * q[k] - (q[k] - s[w]) * (q[k] - s[w])) * inv2s2;
    }
    if (!priors.empty()) {
        for (int k = pos; k < pos + length; ++k) {
            if (k < 0 || k >= int(priors.size())) continue;
            c -= (ml_word.get(k) ? 1.0 : -1.0) * priors[k];
        }
    }
    return c;
}

ReliabilityMatrix build_reliability_matrix(const ChannelModel& m, const EpccCode& code,
                                           std::span<const double> q, const BitVec& ml_word,
                                           std::span<const double> priors, int symbol_index) {
    ReliabilityMatrix c(code.l_max(), code.l_T(), m.e_free());
    for (int type = 1; type <= code.l_max(); ++type) {
        const int len = code.targets()[type - 1].length;
        for (int j = c.j_min(); j < c.l_T(); ++j) {
            int pos = symbol_index * code.l_T() + j;
            ErrorResponse er = error_response(m, len, pos, ml_word);
            if (!er.feasible) continue;
            c.set(type, j, local_metric(m, q, er.s, priors, ml_word, pos, len));
        }
    }
    return c;
}

void boundary_modify(ReliabilityMatrix& c) {
    const int l_max = c.l_max(), l_T = c.l_T();

    // leading edge: a parent run of type k entering from the previous symbol
    // covers the first i = k + j bits here, so it competes with the type-i
    // event at column 0; fold, then drop the parent columns
    for (int i = 1; i <= l_max; ++i) {
        double v = c.entry(i, 0);
        for (int k = i + 1; k <= l_max; ++k) v = max_star(v, c.entry(k, i - k));
        c.set(i, 0, v);
    }
    for (int j = c.j_min(); j < 0; ++j)
        for (int type = 1; type <= l_max; ++type) c.set(type, j, kNegInf);

    // trailing edge: a run of type k > i starting at column l_T - i spills into
    // the next symbol and looks like the type-i event here; fold and nullify so
    // every surviving entry fits inside the symbol
    for (int i = 1; i < l_max; ++i) {
        int j = l_T - i;
        if (j < 0) break;
        double v = c.entry(i, j);
        for (int k = i + 1; k <= l_max; ++k) v = max_star(v, c.entry(k, j));
        c.set(i, j, v);
        for (int k = i + 1; k <= l_max; ++k) c.set(k, j, kNegInf);
    }
}

ErrorHypothesisList top_hypotheses(const ReliabilityMatrix& c, int L) {
    ErrorHypothesisList out;
    for (int j = 0; j < c.l_T(); ++j)
        for (int type = 1; type <= c.l_max(); ++type) {
            double v = c.entry(type, j);
            if (v <= kNegInf / 2) continue;
            out.push_back({j * c.l_max() + (type - 1), type, j, v});
        }
    std::sort(out.begin(), out.end(), [](const ErrorHypothesis& a, const ErrorHypothesis& b) {
        if (a.metric != b.metric) return a.metric > b.metric;
        return a.flat < b.flat;
    });
    if (int(out.size()) > L) out.resize(std::size_t(L));
    return out;
}

} // namespace tppc
