#pragma once
#include "tppc/turbo.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tppc {

// seeded Monte-Carlo sector-error-rate sweep over an SNR grid, for either the
// soft iterative system (a TurboSystem preset) or the hard-decoded tensor-RS
// variant
struct SweepConfig {
    std::string system = "tppc_qldpc";   // or "tppc_rs_hard"
    std::string preset = "TPPC-C";       // tppc_qldpc geometry; "custom" uses the fields below
    SystemGeometry custom;               // consulted only when preset == "custom"
    double snr_start = 14.0;
    double snr_stop = 14.0;
    double snr_step = 0.5;
    double delta = 1.0;                  // rate-penalty exponent in the SNR definition
    long sectors = 1000;                 // budget per SNR point
    std::uint64_t seed = 1;
    bool noiseless = false;              // transmit without noise (decoder keeps its sigma)
    int global_iters = 3;
    int ldpc_iters = 50;
    int threads = 0;                     // 0 = hardware concurrency

    void validate() const;               // throws std::invalid_argument
    std::vector<double> grid() const;    // strictly increasing SNR points
};

struct SweepPoint {
    double snr_db = 0.0;
    long sectors = 0;            // sectors actually run (early termination)
    long sector_errors = 0;
    long long bit_errors = 0;
    double ser = 0.0;
    double ber = 0.0;
    double mean_iters = 0.0;
    double seconds = 0.0;        // wall time, excluded from determinism guarantees
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepPoint> points;
};

// per-point early termination after min(budget, 200 sector errors), checked at
// a fixed chunk granularity so the sector set is thread-count independent
inline constexpr long kSweepErrorCap = 200;
inline constexpr long kSweepChunk = 256;

// deterministic given config.seed; sector seeds derived by a fixed splitmix64
// splitting rule, aggregation is an order-independent sum
SweepResult run_sweep(const SweepConfig& cfg);

// csv header: snr_db,sectors,sector_errors,ser,ber,mean_iters,seconds
void emit_csv(const SweepResult& r, std::ostream& os);
void emit_text(const SweepResult& r, std::ostream& os);
void emit(const SweepResult& r, const std::string& format, std::ostream& os);

// plain-text "key = value" lines, '#' comments; unknown keys throw
SweepConfig parse_config(std::istream& is);
// every field, parseable back by parse_config
void dump_config(const SweepConfig& cfg, std::ostream& os);

} // namespace tppc
