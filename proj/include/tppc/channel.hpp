#pragma once
#include "tppc/bitvec.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tppc {

struct ChannelModel {
    std::vector<double> taps{1.0, 0.85};
    double sigma = 1.0;

    int lh() const { return int(taps.size()); }
    int e_free() const { return lh() - 1; }
    double tap_energy() const {
        double e = 0;
        for (double h : taps) e += h * h;
        return e;
    }
};

// sigma^2 = (E_h/2) * 10^(-snr/10) * (1/R)^delta
double snr_to_sigma(const ChannelModel& m, double snr_db, double rate, double delta);

struct SectorFrame {
    BitVec coded;                      // transmitted code bits
    std::vector<double> noiseless;     // n + lh - 1 samples, +1 padding outside the sector
    std::vector<double> received;
};

SectorFrame transmit(const ChannelModel& m, const BitVec& bits, std::mt19937_64& rng);

// ISI response of a bipolar word with +1 padding; n + lh - 1 samples
std::vector<double> isi_response(const ChannelModel& m, const BitVec& bits);

// a-priori-aware Viterbi, 2^(lh-1) states, boundary states forced to +1;
// branch metric -(r-y)^2/(2*sigma^2) + c*lambda/2
BitVec viterbi_detect(const ChannelModel& m, std::span<const double> r,
                      std::span<const double> priors = {});

} // namespace tppc
