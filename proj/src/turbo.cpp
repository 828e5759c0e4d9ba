#include "tppc/turbo.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace tppc {

void DecoderConfig::validate() const {
    if (global_iters < 1 || ldpc_iters < 1 || syndrome_candidates < 1 || hypotheses < 1 ||
        multiplicity < 1 || max_tests < 1 || errors_threshold < 1 || erasures_threshold < 1)
        throw std::invalid_argument("decoder config: counts must be >= 1");
    if (!(beta0 > 0.0) || beta0 > 1.0 || beta_step < 0.0)
        throw std::invalid_argument("decoder config: beta0 in (0,1], beta_step >= 0");
    if (!(lambda_max > 0.0))
        throw std::invalid_argument("decoder config: lambda_max must be positive");
}

double beta_schedule(const DecoderConfig& cfg, int iter) {
    double b = cfg.beta0 + cfg.beta_step * (iter - 1);
    return b < 1.0 ? b : 1.0;
}

TurboSystem make_system(const SystemGeometry& geo) {
    if (geo.b < 1 || geo.cols_b < 1 || geo.outer_n < 2 || geo.outer_k < 1 ||
        geo.outer_k >= geo.outer_n || geo.errors_threshold < 1 || geo.erasures_threshold < 1)
        throw std::invalid_argument("system geometry: invalid field");

    auto epcc = EpccCode::from_generator(Gf2Poly{0x6b}, make_run_targets(5), 12);
    auto ldpc = std::make_shared<const QcLdpcCode>(
        peg_qc_construct(FieldContext::shared(6), 3, geo.cols_b, geo.b, 3, 97));

    TurboSystem sys;
    sys.code = std::make_shared<const TppcCode>(std::move(epcc),
                                                std::make_shared<LdpcSignatureCode>(ldpc));
    sys.ldpc = ldpc;
    sys.outer =
        std::make_shared<const RsCode>(FieldContext::shared(10), geo.outer_n, geo.outer_k);
    sys.pad_bits = geo.outer_n * 10 - sys.code->k3();
    sys.config.errors_threshold = geo.errors_threshold;
    sys.config.erasures_threshold = geo.erasures_threshold;
    return sys;
}

TurboSystem make_system(const std::string& preset) {
    SystemGeometry geo;
    if (preset == "TPPC-A")      geo = {26, 15, 421, 409, 6, 12};
    else if (preset == "TPPC-B") geo = {52, 15, 842, 818, 12, 24};
    else if (preset == "TPPC-C") geo = {19, 20, 422, 410, 6, 12};
    else if (preset == "TPPC-D") geo = {38, 20, 844, 820, 12, 24};
    else throw std::invalid_argument("unknown preset: " + preset);
    return make_system(geo);
}

namespace {

// serialized wire position -> bit index into the outer word, 10s+t meaning bit
// 9-t of symbol s; a positive pad skips the untransmitted low bits of the last
// data symbol
std::size_t rs_bit_index(const TurboSystem& sys, std::size_t w) {
    if (sys.pad_bits > 0) {
        std::size_t cut = std::size_t(sys.outer->k()) * 10 - std::size_t(sys.pad_bits);
        if (w >= cut) return w + std::size_t(sys.pad_bits);
    }
    return w;
}

// tensor symbol holding payload (data-coordinate) bit gamma
int payload_symbol(const TppcCode& code, std::size_t gamma) {
    const std::size_t head = std::size_t(code.n1()) * std::size_t(code.k2());
    if (gamma < head) return int(gamma / std::size_t(code.n1()));
    return code.k2() + int((gamma - head) / std::size_t(code.k1()));
}

} // namespace

BitVec outer_encode(const TurboSystem& sys, const BitVec& user) {
    if (int(user.size()) != sys.user_bits())
        throw std::invalid_argument("outer encode: user length mismatch");
    auto data = std::vector<std::uint16_t>(std::size_t(sys.outer->k()), 0);
    for (std::size_t w = 0; w < user.size(); ++w)
        if (user.get(w)) data[w / 10] |= std::uint16_t(std::uint16_t(1) << (9 - w % 10));
    auto word = sys.outer->encode(data);

    BitVec payload{std::size_t(sys.code->k3())};
    const std::size_t wire =
        std::min(payload.size(), std::size_t(sys.outer->n()) * 10);
    for (std::size_t w = 0; w < wire; ++w) {
        std::size_t v = rs_bit_index(sys, w);
        payload.set(w, (word[v / 10] >> (9 - v % 10)) & 1);
    }
    return payload;   // a negative pad leaves zero filler at the tail
}

std::vector<std::uint16_t> outer_extract(const TurboSystem& sys, const BitVec& payload) {
    if (int(payload.size()) != sys.code->k3())
        throw std::invalid_argument("outer extract: payload length mismatch");
    auto word = std::vector<std::uint16_t>(std::size_t(sys.outer->n()), 0);
    const std::size_t wire =
        std::min(payload.size(), std::size_t(sys.outer->n()) * 10);
    for (std::size_t w = 0; w < wire; ++w) {
        std::size_t v = rs_bit_index(sys, w);
        if (payload.get(w)) word[v / 10] |= std::uint16_t(std::uint16_t(1) << (9 - v % 10));
    }
    return word;
}

BitVec outer_user_bits(const TurboSystem& sys, const std::vector<std::uint16_t>& rs_word) {
    BitVec user{std::size_t(sys.user_bits())};
    for (std::size_t w = 0; w < user.size(); ++w)
        user.set(w, (rs_word[w / 10] >> (9 - w % 10)) & 1);
    return user;
}

BitVec system_encode(const TurboSystem& sys, const BitVec& user) {
    return sys.code->encode(outer_encode(sys, user));
}

EpccStageResult epcc_stage(const EpccCode& c1, std::uint32_t ml_block, const MlLlr& syn,
                           const ErrorHypothesisList& hyps, const ReliabilityMatrix& rel,
                           int e_free, const DecoderConfig& cfg) {
    EpccStageResult out;
    out.word = ml_block;
    int best = 0;
    for (int s = 1; s < syn.q(); ++s)
        if (syn[std::size_t(s)] > syn[std::size_t(best)]) best = s;
    if (best == 0) {
        // off: the strongest correlator hypothesis, when more likely than the
        // no-event explanation, is still applied as a side product
        if (!hyps.empty() && hyps.front().metric > 0)
            out.word = ml_block ^ c1.pattern_mask(hyps.front().type, hyps.front().pos);
        return out;
    }
    out.active = true;

    std::vector<int> order;
    for (int s = 0; s < syn.q(); ++s)
        if (syn[std::size_t(s)] > kNegInf / 2) order.push_back(s);
    std::sort(order.begin(), order.end(),
              [&syn](int a, int b) { return syn[std::size_t(a)] > syn[std::size_t(b)]; });
    if (int(order.size()) > cfg.syndrome_candidates)
        order.resize(std::size_t(cfg.syndrome_candidates));

    // candidates for distinct syndromes have distinct signatures, so the union
    // is duplicate-free by construction
    const std::uint32_t beta_ml = c1.signature(ml_block);
    for (int s : order) {
        auto list = c1.list_decode(beta_ml ^ std::uint32_t(s), ml_block, &rel,
                                   cfg.max_tests, e_free);
        for (auto& cand : list) {
            cand.loglik += syn[std::size_t(s)];
            out.cands.push_back(cand);
        }
    }
    std::sort(out.cands.begin(), out.cands.end(), [](const auto& a, const auto& b) {
        if (a.loglik != b.loglik) return a.loglik > b.loglik;
        return a.block < b.block;
    });
    if (out.cands.empty()) out.erased = true;
    else out.word = out.cands.front().block;
    return out;
}

std::vector<double> bit_llr_feedback(const EpccStageResult& st, int n1, double beta,
                                     const DecoderConfig& cfg) {
    auto lam = std::vector<double>(std::size_t(n1), 0.0);
    if (st.erased) return lam;
    if (!st.active) {
        for (int k = 0; k < n1; ++k)
            lam[std::size_t(k)] =
                beta * cfg.lambda_max * (((st.word >> k) & 1) ? 1.0 : -1.0);
        return lam;
    }
    for (int k = 0; k < n1; ++k) {
        double sp = kNegInf, sm = kNegInf;
        for (const auto& c : st.cands) {
            if ((c.block >> k) & 1) sp = max_star(sp, c.loglik);
            else sm = max_star(sm, c.loglik);
        }
        if (sm <= kNegInf / 2) lam[std::size_t(k)] = beta * cfg.lambda_max;
        else if (sp <= kNegInf / 2) lam[std::size_t(k)] = -beta * cfg.lambda_max;
        else lam[std::size_t(k)] = std::clamp(sp - sm, -cfg.lambda_max, cfg.lambda_max);
    }
    return lam;
}

StoppingDecision stopping_check(const TurboSystem& sys,
                                const std::vector<std::uint16_t>& rs_word,
                                const std::vector<int>& erasure_candidates,
                                const DecoderConfig& cfg) {
    StoppingDecision d;
    auto synd = sys.outer->syndromes(rs_word);
    bool zero = true;
    for (auto v : synd)
        if (v) { zero = false; break; }
    if (zero) {
        d.action = StopAction::halt_zero;
        d.word = rs_word;
        return d;
    }
    auto bm = sys.outer->bm_decode(rs_word);
    if (bm.success && int(bm.error_positions.size()) < cfg.errors_threshold) {
        d.action = StopAction::halt_rs;
        d.word = std::move(bm.word);
        d.rs_errors = int(bm.error_positions.size());
        return d;
    }
    if (int(erasure_candidates.size()) < cfg.erasures_threshold) {
        d.action = StopAction::halt_erasure;
        d.erasures = int(erasure_candidates.size());
        auto er = sys.outer->erasure_decode(rs_word, erasure_candidates);
        d.decoded = er.success;
        d.word = er.success ? std::move(er.word) : rs_word;
        return d;
    }
    return d;
}

namespace {

// outer symbols overlapping any pattern-decoder-on tensor symbol; never-sent
// pad bits cannot trigger an erasure
std::vector<int> erased_outer_symbols(const TurboSystem& sys,
                                      const std::vector<EpccStageResult>& stage) {
    const int n = sys.outer->n(), k = sys.outer->k(), pad = sys.pad_bits;
    std::vector<int> out;
    for (int s = 0; s < n; ++s) {
        bool hit = false;
        for (int t = 0; t < 10 && !hit; ++t) {
            std::size_t v = std::size_t(s) * 10 + std::size_t(t);
            std::size_t w = v;
            if (pad > 0) {
                std::size_t cut = std::size_t(k) * 10 - std::size_t(pad);
                if (v >= cut && v < std::size_t(k) * 10) continue;
                if (v >= cut) w = v - std::size_t(pad);
            }
            hit = stage[std::size_t(payload_symbol(*sys.code, w))].active;
        }
        if (hit) out.push_back(s);
    }
    return out;
}

} // namespace

SectorResult decode_sector(const TurboSystem& sys, const SectorFrame& frame,
                           const DecoderConfig& cfg) {
    cfg.validate();
    const TppcCode& code = *sys.code;
    const EpccCode& c1 = code.c1();
    const ChannelModel& m = sys.channel;
    const int n1 = code.n1(), n2 = code.n2(), n3 = code.n3();
    const int e_free = m.e_free();
    if (int(frame.received.size()) != n3 + m.lh() - 1)
        throw std::invalid_argument("decode: frame length mismatch");

    SectorResult res;
    std::vector<double> priors;   // empty on the first pass
    BitVec w_hat{std::size_t(n3)};

    for (int iter = 1; iter <= cfg.global_iters; ++iter) {
        res.iterations = iter;
        BitVec ml = viterbi_detect(m, frame.received, priors);
        auto y = isi_response(m, ml);
        auto q = std::vector<double>(y.size());
        for (std::size_t t = 0; t < y.size(); ++t) q[t] = frame.received[t] - y[t];

        auto g = std::vector<MlLlr>(std::size_t(n2));
        auto hyps = std::vector<ErrorHypothesisList>(std::size_t(n2));
        auto rel = std::vector<ReliabilityMatrix>(std::size_t(n2));
        for (int i = 0; i < n2; ++i) {
            rel[std::size_t(i)] = build_reliability_matrix(m, c1, q, ml, priors, i);
            boundary_modify(rel[std::size_t(i)]);
            hyps[std::size_t(i)] = top_hypotheses(rel[std::size_t(i)], cfg.hypotheses);
            g[std::size_t(i)] =
                build_signature_mlllr(c1, ml.window(std::size_t(i) * n1, unsigned(n1)),
                                      hyps[std::size_t(i)], cfg.multiplicity, e_free);
        }

        auto spa = fft_spa_decode(*sys.ldpc, g, cfg.ldpc_iters);

        auto stage = std::vector<EpccStageResult>(std::size_t(n2));
        int active = 0, erased_syms = 0;
        for (int i = 0; i < n2; ++i) {
            MlLlr syn = syndrome_convolve(g[std::size_t(i)], spa.posterior[std::size_t(i)]);
            stage[std::size_t(i)] =
                epcc_stage(c1, ml.window(std::size_t(i) * n1, unsigned(n1)), syn,
                           hyps[std::size_t(i)], rel[std::size_t(i)], e_free, cfg);
            active += stage[std::size_t(i)].active ? 1 : 0;
            erased_syms += stage[std::size_t(i)].erased ? 1 : 0;
            w_hat.set_window(std::size_t(i) * n1, unsigned(n1), stage[std::size_t(i)].word);
        }
        res.epcc_active = active;

        auto rs_word = outer_extract(sys, code.extract_data(w_hat));
        auto d = stopping_check(sys, rs_word, erased_outer_symbols(sys, stage), cfg);
        if (cfg.trace)
            *cfg.trace << "iter " << iter << " epcc_on " << active << " erased "
                       << erased_syms << " stop " << int(d.action) << "\n";

        switch (d.action) {
        case StopAction::halt_zero: {
            bool tensor_ok = code.c2().in_null_space(code.tensor_signatures(w_hat));
            res.status = tensor_ok ? SectorStatus::clean : SectorStatus::rs_corrected;
            res.user_bits = outer_user_bits(sys, d.word);
            return res;
        }
        case StopAction::halt_rs:
            res.status = SectorStatus::rs_corrected;
            res.rs_errors = d.rs_errors;
            res.user_bits = outer_user_bits(sys, d.word);
            return res;
        case StopAction::halt_erasure:
            res.status = d.decoded ? SectorStatus::erasure_corrected : SectorStatus::failure;
            res.erasures = d.erasures;
            res.user_bits = outer_user_bits(sys, d.word);
            return res;
        case StopAction::iterate:
            break;
        }

        if (iter < cfg.global_iters) {
            const double beta = beta_schedule(cfg, iter);
            priors.assign(std::size_t(n3), 0.0);
            for (int i = 0; i < n2; ++i) {
                auto lam = bit_llr_feedback(stage[std::size_t(i)], n1, beta, cfg);
                for (int k = 0; k < n1; ++k)
                    priors[std::size_t(i) * n1 + std::size_t(k)] = lam[std::size_t(k)];
            }
        }
    }

    res.status = SectorStatus::failure;
    res.user_bits = outer_user_bits(sys, outer_extract(sys, code.extract_data(w_hat)));
    return res;
}

} // namespace tppc
