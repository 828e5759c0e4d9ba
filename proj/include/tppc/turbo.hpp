#pragma once
#include "tppc/channel.hpp"
#include "tppc/correlator.hpp"
#include "tppc/mlllr.hpp"
#include "tppc/qldpc.hpp"
#include "tppc/rs.hpp"
#include "tppc/tensor.hpp"

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace tppc {

struct DecoderConfig {
    int global_iters = 3;
    int ldpc_iters = 50;
    int syndrome_candidates = 3;   // syndrome slots decoded in parallel when on
    double lambda_max = 10.0;      // feedback clamp
    double beta0 = 0.3;            // unanimity scaling, first iteration
    double beta_step = 0.35;       // added per later iteration, capped at 1
    int hypotheses = 8;            // error events kept per symbol (L)
    int multiplicity = 2;          // events combined per signature hypothesis (M)
    int max_tests = 16;            // test words per list decode
    int errors_threshold = 6;      // halt when RS corrects fewer symbol errors
    int erasures_threshold = 12;   // erasure-decode when fewer symbols erased
    std::ostream* trace = nullptr; // optional per-iteration diagnostics

    void validate() const;         // throws std::invalid_argument
};

// min(1, beta0 + beta_step*(iter-1)), iter counted from 1
double beta_schedule(const DecoderConfig& cfg, int iter);

enum class SectorStatus { clean, rs_corrected, erasure_corrected, failure };

struct SectorResult {
    SectorStatus status = SectorStatus::failure;
    BitVec user_bits;
    int iterations = 0;      // global iterations consumed
    int epcc_active = 0;     // tensor symbols with the pattern decoder on, last pass
    int rs_errors = 0;       // outer symbol errors corrected
    int erasures = 0;        // outer symbols erased, when erasure decoding ran
};

// one full coding system: inner tensor code with its LDPC signature component,
// the outer RS over GF(2^10) bridging the data payload, and the channel model.
// pad_bits reconciles the payload length with the serialized RS word: positive
// means that many structurally-zero low bits of the last data symbol are not
// transmitted, negative that many zero filler bits pad the payload tail
struct TurboSystem {
    std::shared_ptr<const TppcCode> code;
    std::shared_ptr<const QcLdpcCode> ldpc;
    std::shared_ptr<const RsCode> outer;
    int pad_bits = 0;
    ChannelModel channel;
    DecoderConfig config;    // preset-matched thresholds

    int user_bits() const { return outer->k() * 10 - (pad_bits > 0 ? pad_bits : 0); }
};

// geometry knobs behind a preset: LDPC circulant size and block columns, outer
// RS length and dimension, sector halting thresholds
struct SystemGeometry {
    int b = 0;
    int cols_b = 0;
    int outer_n = 0;
    int outer_k = 0;
    int errors_threshold = 0;
    int erasures_threshold = 0;
};

TurboSystem make_system(const SystemGeometry& geo);

// presets TPPC-A, TPPC-B, TPPC-C, TPPC-D
TurboSystem make_system(const std::string& preset);

// user bits -> outer RS codeword serialized as the tensor data payload
BitVec outer_encode(const TurboSystem& sys, const BitVec& user);
// tensor data payload -> outer RS word (symbols, data first)
std::vector<std::uint16_t> outer_extract(const TurboSystem& sys, const BitVec& payload);
// outer RS word -> user bits
BitVec outer_user_bits(const TurboSystem& sys, const std::vector<std::uint16_t>& rs_word);
// user bits -> sector codeword
BitVec system_encode(const TurboSystem& sys, const BitVec& user);

struct EpccStageResult {
    bool active = false;                   // most likely error syndrome nonzero
    bool erased = false;                   // on, but no candidate found
    std::vector<ListDecodeCandidate> cands;// union over tried syndromes, biased, sorted
    std::uint32_t word = 0;                // hard block released for this symbol
};

// pattern decoding of one tensor symbol driven by the error-syndrome mlLLR:
// off when the zero syndrome dominates (the best correlator hypothesis with
// positive metric is still applied as a side product), otherwise list decoding
// toward each of the top syndrome values with likelihoods biased by the
// syndrome mass
EpccStageResult epcc_stage(const EpccCode& c1, std::uint32_t ml_block, const MlLlr& syn,
                           const ErrorHypothesisList& hyps, const ReliabilityMatrix& rel,
                           int e_free, const DecoderConfig& cfg);

// per-bit feedback for one symbol, positive favors 1: candidate disagreement
// gives a clamped two-group max* log-ratio, unanimity and pattern-decoder-off
// give the scaled hard decision, erased symbols give zeros
std::vector<double> bit_llr_feedback(const EpccStageResult& st, int n1, double beta,
                                     const DecoderConfig& cfg);

enum class StopAction { halt_zero, halt_rs, halt_erasure, iterate };

struct StoppingDecision {
    StopAction action = StopAction::iterate;
    std::vector<std::uint16_t> word;   // released outer word on the halt actions
    bool decoded = false;              // erasure decoding produced a codeword
    int rs_errors = 0;
    int erasures = 0;
};

// after each pass: zero outer syndrome halts at once; otherwise correction
// halts when it finds fewer errors than the threshold; otherwise fewer erasure
// candidates than their threshold triggers erasure decoding and halts either
// way; otherwise run another pass
StoppingDecision stopping_check(const TurboSystem& sys,
                                const std::vector<std::uint16_t>& rs_word,
                                const std::vector<int>& erasure_candidates,
                                const DecoderConfig& cfg);

SectorResult decode_sector(const TurboSystem& sys, const SectorFrame& frame,
                           const DecoderConfig& cfg);

} // namespace tppc
