#pragma once
#include "tppc/channel.hpp"
#include "tppc/epcc.hpp"

#include <span>
#include <vector>

namespace tppc {

// log-metric table C(e_j^(i)) for one tensor symbol; rows = type 1..l_max,
// columns j in [-(l_max-1), l_T): the negative-j columns hold parent events
// that start in the preceding symbol and are consumed by boundary folding
class ReliabilityMatrix {
public:
    ReliabilityMatrix() = default;
    ReliabilityMatrix(int l_max, int l_T, int e_free)
        : l_max_(l_max), l_T_(l_T), e_free_(e_free),
          m_(std::size_t(l_max) * (l_T + l_max - 1), kNegInf) {}

    int l_max() const { return l_max_; }
    int l_T() const { return l_T_; }
    int e_free() const { return e_free_; }
    int j_min() const { return -(l_max_ - 1); }

    double entry(int type, int j) const {
        if (type < 1 || type > l_max_ || j < j_min() || j >= l_T_) return kNegInf;
        return m_[idx(type, j)];
    }
    void set(int type, int j, double v) { m_[idx(type, j)] = v; }

private:
    std::size_t idx(int type, int j) const {
        return std::size_t(j - j_min()) * l_max_ + (type - 1);
    }
    int l_max_ = 0, l_T_ = 0, e_free_ = 0;
    std::vector<double> m_;
};

struct ErrorHypothesis {
    int flat = 0;        // j*l_max + (type-1), in-symbol flat index
    int type = 0;
    int pos = 0;         // in-symbol start
    double metric = 0.0;
};
using ErrorHypothesisList = std::vector<ErrorHypothesis>;

// response of the hypothesized event (flips of the ml word over the run) through
// the channel; infeasible when the ml word does not alternate over the run or
// the run leaves the sector
struct ErrorResponse {
    bool feasible = false;
    std::vector<double> s;   // length l_i + lh - 1
};
ErrorResponse error_response(const ChannelModel& m, int length, int sector_pos,
                             const BitVec& ml_word);

// C = sum_w (q^2 - (q-s)^2)/(2 sigma^2) - [sum_{ml=+1} lambda - sum_{ml=-1} lambda]
// window w = [pos, pos + len + lh - 2] clipped to the available samples
double local_metric(const ChannelModel& m, std::span<const double> q,
                    std::span<const double> s, std::span<const double> priors,
                    const BitVec& ml_word, int pos, int length);

// per-symbol matrix over the sector-wide error samples q_k = r_k - y(ml)_k
ReliabilityMatrix build_reliability_matrix(const ChannelModel& m, const EpccCode& code,
                                           std::span<const double> q, const BitVec& ml_word,
                                           std::span<const double> priors, int symbol_index);

// the two-part boundary procedure: (a) fold parents into the j=0 column,
// (b) trailing-edge fold-and-nullify marching (i,j) from (1, l_T-1)
void boundary_modify(ReliabilityMatrix& c);

ErrorHypothesisList top_hypotheses(const ReliabilityMatrix& c, int L);

} // namespace tppc
