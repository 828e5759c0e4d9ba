#include "tppc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace tppc {

void SweepConfig::validate() const {
    if (system != "tppc_qldpc" && system != "tppc_rs_hard")
        throw std::invalid_argument("sweep config: unknown system " + system);
    if (system == "tppc_qldpc" && preset != "TPPC-A" && preset != "TPPC-B" &&
        preset != "TPPC-C" && preset != "TPPC-D" && preset != "custom")
        throw std::invalid_argument("sweep config: unknown preset " + preset);
    if (!(snr_step > 0.0))
        throw std::invalid_argument("sweep config: snr_step must be positive");
    if (snr_stop < snr_start - 1e-12)
        throw std::invalid_argument("sweep config: snr_stop below snr_start");
    if (!(delta > 0.0))
        throw std::invalid_argument("sweep config: delta must be positive");
    if (sectors < 1) throw std::invalid_argument("sweep config: sectors must be >= 1");
    if (global_iters < 1 || ldpc_iters < 1)
        throw std::invalid_argument("sweep config: iteration counts must be >= 1");
    if (threads < 0) throw std::invalid_argument("sweep config: threads must be >= 0");
}

std::vector<double> SweepConfig::grid() const {
    long n = long(std::floor((snr_stop - snr_start) / snr_step + 1e-9)) + 1;
    std::vector<double> g;
    g.reserve(std::size_t(n));
    for (long i = 0; i < n; ++i) g.push_back(snr_start + double(i) * snr_step);
    return g;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// the fixed seed-splitting rule: one hash per point, one per sector under it
std::uint64_t sector_seed(std::uint64_t master, int point, long sector) {
    std::uint64_t h = splitmix64(master + std::uint64_t(point) * 0x9e3779b97f4a7c15ULL);
    return splitmix64(h + std::uint64_t(sector));
}

BitVec random_bits(std::size_t n, std::mt19937_64& rng) {
    BitVec v{n};
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
    return v;
}

long long bit_diff(const BitVec& a, const BitVec& b) {
    long long d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a.get(i) != b.get(i);
    return d;
}

SectorFrame noiseless_frame(const ChannelModel& m, const BitVec& w) {
    SectorFrame f;
    f.coded = w;
    f.noiseless = isi_response(m, w);
    f.received = f.noiseless;
    return f;
}

struct SectorOutcome {
    bool error = false;
    long long bit_errors = 0;
    int iterations = 1;
};

class SectorSim {
public:
    virtual ~SectorSim() = default;
    virtual SectorOutcome run(double sigma, std::uint64_t seed, bool noiseless) const = 0;
    virtual double rate() const = 0;
    virtual long payload_bits() const = 0;
};

class SoftSim final : public SectorSim {
public:
    explicit SoftSim(TurboSystem sys) : sys_(std::move(sys)) {}

    SectorOutcome run(double sigma, std::uint64_t seed, bool noiseless) const override {
        TurboSystem sys = sys_;
        sys.channel.sigma = sigma;
        std::mt19937_64 rng(seed);
        BitVec user = random_bits(std::size_t(sys.user_bits()), rng);
        BitVec w = system_encode(sys, user);
        SectorFrame f =
            noiseless ? noiseless_frame(sys.channel, w) : transmit(sys.channel, w, rng);
        auto res = decode_sector(sys, f, sys.config);
        SectorOutcome out;
        out.bit_errors = bit_diff(res.user_bits, user);
        out.error = out.bit_errors != 0;
        out.iterations = res.iterations;
        return out;
    }

    double rate() const override { return double(sys_.user_bits()) / sys_.code->n3(); }
    long payload_bits() const override { return sys_.user_bits(); }

private:
    TurboSystem sys_;
};

class HardSim final : public SectorSim {
public:
    HardSim()
        : code_(EpccCode::from_generator(Gf2Poly{0x16d}, make_run_targets(10), 18),
                std::make_shared<RsSignatureCode>(
                    std::make_shared<RsCode>(FieldContext::shared(8), 255, 195))) {}

    SectorOutcome run(double sigma, std::uint64_t seed, bool noiseless) const override {
        ChannelModel m;
        m.sigma = sigma;
        std::mt19937_64 rng(seed);
        BitVec data = random_bits(std::size_t(code_.k3()), rng);
        BitVec w = code_.encode(data);
        SectorFrame f = noiseless ? noiseless_frame(m, w) : transmit(m, w, rng);
        BitVec ml = viterbi_detect(m, f.received);
        auto r = tppc_rs_hard_decode(code_, ml);
        BitVec got = code_.extract_data(r.success ? r.word : ml);
        SectorOutcome out;
        out.bit_errors = bit_diff(got, data);
        out.error = out.bit_errors != 0;
        return out;
    }

    double rate() const override { return double(code_.k3()) / code_.n3(); }
    long payload_bits() const override { return code_.k3(); }

private:
    TppcCode code_;
};

struct Tally {
    long errors = 0;
    long long bits = 0;
    long long iters = 0;
};

Tally run_chunk(const SectorSim& sim, double sigma, const SweepConfig& cfg, int point,
                long first, long count, int nthreads) {
    std::atomic<long> next{0};
    auto parts = std::vector<Tally>(std::size_t(nthreads));
    auto body = [&](int t) {
        Tally& acc = parts[std::size_t(t)];
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= count) break;
            auto o = sim.run(sigma, sector_seed(cfg.seed, point, first + i), cfg.noiseless);
            acc.errors += o.error ? 1 : 0;
            acc.bits += o.bit_errors;
            acc.iters += o.iterations;
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(body, t);
    body(0);
    for (auto& th : pool) th.join();
    Tally sum;
    for (auto& p : parts) {
        sum.errors += p.errors;
        sum.bits += p.bits;
        sum.iters += p.iters;
    }
    return sum;
}

} // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();

    std::unique_ptr<SectorSim> sim;
    ChannelModel reference;   // tap energy enters the SNR definition
    if (cfg.system == "tppc_qldpc") {
        TurboSystem sys =
            cfg.preset == "custom" ? make_system(cfg.custom) : make_system(cfg.preset);
        sys.config.global_iters = cfg.global_iters;
        sys.config.ldpc_iters = cfg.ldpc_iters;
        sim = std::make_unique<SoftSim>(std::move(sys));
    } else {
        sim = std::make_unique<HardSim>();
    }

    int nthreads = cfg.threads > 0 ? cfg.threads : int(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;

    SweepResult result;
    result.config = cfg;
    auto snrs = cfg.grid();
    for (int p = 0; p < int(snrs.size()); ++p) {
        const double sigma = snr_to_sigma(reference, snrs[std::size_t(p)], sim->rate(),
                                          cfg.delta);
        auto t0 = std::chrono::steady_clock::now();
        Tally tally;
        long done = 0;
        while (done < cfg.sectors && tally.errors < kSweepErrorCap) {
            long count = std::min(kSweepChunk, cfg.sectors - done);
            Tally part = run_chunk(*sim, sigma, cfg, p, done, count, nthreads);
            tally.errors += part.errors;
            tally.bits += part.bits;
            tally.iters += part.iters;
            done += count;
        }
        auto t1 = std::chrono::steady_clock::now();

        SweepPoint pt;
        pt.snr_db = snrs[std::size_t(p)];
        pt.sectors = done;
        pt.sector_errors = tally.errors;
        pt.bit_errors = tally.bits;
        pt.ser = double(tally.errors) / double(done);
        pt.ber = double(tally.bits) / (double(done) * double(sim->payload_bits()));
        pt.mean_iters = double(tally.iters) / double(done);
        pt.seconds = std::chrono::duration<double>(t1 - t0).count();
        result.points.push_back(pt);
    }
    return result;
}

namespace {

std::string point_fields(const SweepPoint& p) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.3f,%ld,%ld,%.8e,%.8e,%.4f,%.3f", p.snr_db, p.sectors,
                  p.sector_errors, p.ser, p.ber, p.mean_iters, p.seconds);
    return buf;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void emit_csv(const SweepResult& r, std::ostream& os) {
    os << "snr_db,sectors,sector_errors,ser,ber,mean_iters,seconds\n";
    for (const auto& p : r.points) os << point_fields(p) << "\n";
}

void emit_text(const SweepResult& r, std::ostream& os) {
    const auto& c = r.config;
    os << "sweep system=" << c.system << " preset=" << c.preset << " delta=" << fmt_double(c.delta)
       << " sectors=" << c.sectors << " seed=" << c.seed << "\n";
    for (const auto& p : r.points) {
        char buf[240];
        std::snprintf(buf, sizeof buf,
                      "point snr_db=%.3f sectors=%ld sector_errors=%ld ser=%.8e ber=%.8e "
                      "mean_iters=%.4f seconds=%.3f",
                      p.snr_db, p.sectors, p.sector_errors, p.ser, p.ber, p.mean_iters,
                      p.seconds);
        os << buf << "\n";
    }
}

void emit(const SweepResult& r, const std::string& format, std::ostream& os) {
    if (format == "csv") emit_csv(r, os);
    else if (format == "text") emit_text(r, os);
    else throw std::invalid_argument("emit: unknown format " + format);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("config: bad number for " + key);
    return x;
}

long long parse_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("config: bad integer for " + key);
    return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    unsigned long long x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("config: bad integer for " + key);
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true") return true;
    if (v == "0" || v == "false") return false;
    throw std::invalid_argument("config: bad flag for " + key);
}

} // namespace

SweepConfig parse_config(std::istream& is) {
    SweepConfig cfg;
    std::string line;
    while (std::getline(is, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value, got: " + line);
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));

        if (key == "system") cfg.system = val;
        else if (key == "preset") cfg.preset = val;
        else if (key == "custom-b") cfg.custom.b = int(parse_int(key, val));
        else if (key == "custom-cols") cfg.custom.cols_b = int(parse_int(key, val));
        else if (key == "custom-outer-n") cfg.custom.outer_n = int(parse_int(key, val));
        else if (key == "custom-outer-k") cfg.custom.outer_k = int(parse_int(key, val));
        else if (key == "custom-errors")
            cfg.custom.errors_threshold = int(parse_int(key, val));
        else if (key == "custom-erasures")
            cfg.custom.erasures_threshold = int(parse_int(key, val));
        else if (key == "snr-start") cfg.snr_start = parse_double(key, val);
        else if (key == "snr-stop") cfg.snr_stop = parse_double(key, val);
        else if (key == "snr-step") cfg.snr_step = parse_double(key, val);
        else if (key == "delta") cfg.delta = parse_double(key, val);
        else if (key == "sectors") cfg.sectors = long(parse_int(key, val));
        else if (key == "seed") cfg.seed = parse_uint(key, val);
        else if (key == "noiseless") cfg.noiseless = parse_bool(key, val);
        else if (key == "global-iters") cfg.global_iters = int(parse_int(key, val));
        else if (key == "ldpc-iters") cfg.ldpc_iters = int(parse_int(key, val));
        else if (key == "threads") cfg.threads = int(parse_int(key, val));
        else throw std::invalid_argument("config: unknown key " + key);
    }
    return cfg;
}

void dump_config(const SweepConfig& cfg, std::ostream& os) {
    os << "system = " << cfg.system << "\n";
    os << "preset = " << cfg.preset << "\n";
    os << "custom-b = " << cfg.custom.b << "\n";
    os << "custom-cols = " << cfg.custom.cols_b << "\n";
    os << "custom-outer-n = " << cfg.custom.outer_n << "\n";
    os << "custom-outer-k = " << cfg.custom.outer_k << "\n";
    os << "custom-errors = " << cfg.custom.errors_threshold << "\n";
    os << "custom-erasures = " << cfg.custom.erasures_threshold << "\n";
    os << "snr-start = " << fmt_double(cfg.snr_start) << "\n";
    os << "snr-stop = " << fmt_double(cfg.snr_stop) << "\n";
    os << "snr-step = " << fmt_double(cfg.snr_step) << "\n";
    os << "delta = " << fmt_double(cfg.delta) << "\n";
    os << "sectors = " << cfg.sectors << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "noiseless = " << (cfg.noiseless ? 1 : 0) << "\n";
    os << "global-iters = " << cfg.global_iters << "\n";
    os << "ldpc-iters = " << cfg.ldpc_iters << "\n";
    os << "threads = " << cfg.threads << "\n";
}

} // namespace tppc
