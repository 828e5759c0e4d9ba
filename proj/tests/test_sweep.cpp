#include <doctest.h>
#include <tppc/sweep.hpp>

#include <sstream>
#include <string>
#include <vector>

using namespace tppc;

namespace {

// parse one emitted csv row back into numbers
std::vector<double> csv_row(const std::string& line) {
    std::vector<double> out;
    std::size_t at = 0;
    while (at <= line.size()) {
        std::size_t comma = line.find(',', at);
        if (comma == std::string::npos) comma = line.size();
        out.push_back(std::stod(line.substr(at, comma - at)));
        at = comma + 1;
    }
    return out;
}

void strip_seconds(SweepResult& r) {
    for (auto& p : r.points) p.seconds = 0.0;
}

} // namespace

TEST_SUITE("sweep") {

TEST_CASE("config validation accepts the defaults and rejects bad knobs") {
    SweepConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    auto rejects = [](auto&& mutate) {
        SweepConfig c;
        mutate(c);
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    };
    rejects([](SweepConfig& c) { c.system = "tppc_magic"; });
    rejects([](SweepConfig& c) { c.preset = "TPPC-E"; });
    rejects([](SweepConfig& c) { c.snr_step = 0.0; });
    rejects([](SweepConfig& c) { c.snr_step = -0.5; });
    rejects([](SweepConfig& c) { c.snr_stop = c.snr_start - 1.0; });
    rejects([](SweepConfig& c) { c.delta = 0.0; });
    rejects([](SweepConfig& c) { c.sectors = 0; });
    rejects([](SweepConfig& c) { c.global_iters = 0; });
    rejects([](SweepConfig& c) { c.ldpc_iters = 0; });
    rejects([](SweepConfig& c) { c.threads = -1; });

    // the hard system has a single fixed geometry, so the preset is ignored
    SweepConfig hard;
    hard.system = "tppc_rs_hard";
    hard.preset = "whatever";
    CHECK_NOTHROW(hard.validate());
}

TEST_CASE("the snr grid is inclusive and evenly spaced") {
    SweepConfig cfg;
    cfg.snr_start = 10.0;
    cfg.snr_stop = 12.0;
    cfg.snr_step = 1.0;
    auto g = cfg.grid();
    REQUIRE(g.size() == 3);
    CHECK(g[0] == doctest::Approx(10.0));
    CHECK(g[1] == doctest::Approx(11.0));
    CHECK(g[2] == doctest::Approx(12.0));

    cfg.snr_stop = 11.0;
    cfg.snr_step = 0.5;
    g = cfg.grid();
    REQUIRE(g.size() == 3);
    CHECK(g[1] == doctest::Approx(10.5));

    cfg.snr_stop = 10.0;   // single point
    g = cfg.grid();
    REQUIRE(g.size() == 1);
    CHECK(g[0] == doctest::Approx(10.0));

    cfg.snr_stop = 10.4;   // step overshoots the span
    g = cfg.grid();
    CHECK(g.size() == 1);
}

TEST_CASE("config dump and parse round trip") {
    SweepConfig cfg;
    cfg.system = "tppc_rs_hard";
    cfg.preset = "custom";
    cfg.custom = {26, 15, 421, 409, 6, 12};
    cfg.snr_start = 11.25;
    cfg.snr_stop = 13.75;
    cfg.snr_step = 0.25;
    cfg.delta = 2.0;
    cfg.sectors = 12345;
    cfg.seed = 987654321;
    cfg.noiseless = true;
    cfg.global_iters = 5;
    cfg.ldpc_iters = 30;
    cfg.threads = 4;

    std::ostringstream dumped;
    dump_config(cfg, dumped);
    std::istringstream in(dumped.str());
    SweepConfig back = parse_config(in);

    CHECK(back.system == cfg.system);
    CHECK(back.preset == cfg.preset);
    CHECK(back.custom.b == cfg.custom.b);
    CHECK(back.custom.cols_b == cfg.custom.cols_b);
    CHECK(back.custom.outer_n == cfg.custom.outer_n);
    CHECK(back.custom.outer_k == cfg.custom.outer_k);
    CHECK(back.custom.errors_threshold == cfg.custom.errors_threshold);
    CHECK(back.custom.erasures_threshold == cfg.custom.erasures_threshold);
    CHECK(back.snr_start == cfg.snr_start);
    CHECK(back.snr_stop == cfg.snr_stop);
    CHECK(back.snr_step == cfg.snr_step);
    CHECK(back.delta == cfg.delta);
    CHECK(back.sectors == cfg.sectors);
    CHECK(back.seed == cfg.seed);
    CHECK(back.noiseless == cfg.noiseless);
    CHECK(back.global_iters == cfg.global_iters);
    CHECK(back.ldpc_iters == cfg.ldpc_iters);
    CHECK(back.threads == cfg.threads);
}

TEST_CASE("config parsing tolerates comments and rejects junk") {
    std::istringstream ok("# a comment\n"
                          "\n"
                          "  seed = 42   # trailing note\n"
                          "preset = TPPC-A\n");
    SweepConfig cfg = parse_config(ok);
    CHECK(cfg.seed == 42);
    CHECK(cfg.preset == "TPPC-A");

    std::istringstream unknown("speed = 9\n");
    CHECK_THROWS_AS(parse_config(unknown), std::invalid_argument);
    std::istringstream noeq("sectors 10\n");
    CHECK_THROWS_AS(parse_config(noeq), std::invalid_argument);
    std::istringstream badnum("sectors = ten\n");
    CHECK_THROWS_AS(parse_config(badnum), std::invalid_argument);
    std::istringstream badflag("noiseless = maybe\n");
    CHECK_THROWS_AS(parse_config(badflag), std::invalid_argument);
}

TEST_CASE("emitters format a canned result exactly") {
    SweepResult r;
    r.config.system = "tppc_qldpc";
    r.config.preset = "TPPC-C";
    r.config.sectors = 10000;
    r.config.seed = 9;
    SweepPoint a;
    a.snr_db = 14.0;
    a.sectors = 10000;
    a.sector_errors = 37;
    a.bit_errors = 512;
    a.ser = 0.0037;
    a.ber = 0.0000005;
    a.mean_iters = 1.25;
    a.seconds = 3.5;
    SweepPoint b;
    b.snr_db = 14.5;
    b.sectors = 2048;
    b.sector_errors = 0;
    b.ser = 0.0;
    b.ber = 0.0;
    b.mean_iters = 1.0;
    b.seconds = 0.75;
    r.points = {a, b};

    std::ostringstream csv;
    emit(r, "csv", csv);
    CHECK(csv.str() ==
          "snr_db,sectors,sector_errors,ser,ber,mean_iters,seconds\n"
          "14.000,10000,37,3.70000000e-03,5.00000000e-07,1.2500,3.500\n"
          "14.500,2048,0,0.00000000e+00,0.00000000e+00,1.0000,0.750\n");

    // every row parses back to the stored values at this precision
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "snr_db,sectors,sector_errors,ser,ber,mean_iters,seconds");
    for (const auto& p : r.points) {
        std::getline(lines, line);
        auto v = csv_row(line);
        REQUIRE(v.size() == 7);
        CHECK(v[0] == p.snr_db);
        CHECK(v[1] == double(p.sectors));
        CHECK(v[2] == double(p.sector_errors));
        CHECK(v[3] == p.ser);
        CHECK(v[4] == p.ber);
        CHECK(v[5] == p.mean_iters);
        CHECK(v[6] == p.seconds);
    }

    std::ostringstream text;
    emit(r, "text", text);
    CHECK(text.str() ==
          "sweep system=tppc_qldpc preset=TPPC-C delta=1 sectors=10000 seed=9\n"
          "point snr_db=14.000 sectors=10000 sector_errors=37 ser=3.70000000e-03 "
          "ber=5.00000000e-07 mean_iters=1.2500 seconds=3.500\n"
          "point snr_db=14.500 sectors=2048 sector_errors=0 ser=0.00000000e+00 "
          "ber=0.00000000e+00 mean_iters=1.0000 seconds=0.750\n");

    std::ostringstream sink;
    CHECK_THROWS_AS(emit(r, "yaml", sink), std::invalid_argument);
}

TEST_CASE("a noiseless soft sweep sees zero errors") {
    SweepConfig cfg;
    cfg.system = "tppc_qldpc";
    cfg.preset = "TPPC-C";
    cfg.snr_start = cfg.snr_stop = 14.0;
    cfg.sectors = 3;
    cfg.seed = 7;
    cfg.noiseless = true;
    auto r = run_sweep(cfg);
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].sectors == 3);
    CHECK(r.points[0].sector_errors == 0);
    CHECK(r.points[0].bit_errors == 0);
    CHECK(r.points[0].ser == 0.0);
    CHECK(r.points[0].ber == 0.0);
    CHECK(r.points[0].mean_iters == 1.0);
}

TEST_CASE("a noiseless hard sweep sees zero errors") {
    SweepConfig cfg;
    cfg.system = "tppc_rs_hard";
    cfg.snr_start = cfg.snr_stop = 14.0;
    cfg.sectors = 2;
    cfg.seed = 5;
    cfg.noiseless = true;
    auto r = run_sweep(cfg);
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].sectors == 2);
    CHECK(r.points[0].sector_errors == 0);
    CHECK(r.points[0].ser == 0.0);
    CHECK(r.points[0].mean_iters == 1.0);
}

TEST_CASE("a fixed seed reproduces the sweep byte for byte") {
    SweepConfig cfg;
    cfg.system = "tppc_rs_hard";
    cfg.snr_start = 8.0;
    cfg.snr_stop = 9.0;
    cfg.snr_step = 1.0;
    cfg.sectors = 12;
    cfg.seed = 11;
    auto r1 = run_sweep(cfg);
    auto r2 = run_sweep(cfg);
    REQUIRE(r1.points.size() == r2.points.size());
    for (std::size_t i = 0; i < r1.points.size(); ++i) {
        CHECK(r1.points[i].snr_db == r2.points[i].snr_db);
        CHECK(r1.points[i].sectors == r2.points[i].sectors);
        CHECK(r1.points[i].sector_errors == r2.points[i].sector_errors);
        CHECK(r1.points[i].bit_errors == r2.points[i].bit_errors);
        CHECK(r1.points[i].ser == r2.points[i].ser);
        CHECK(r1.points[i].ber == r2.points[i].ber);
        CHECK(r1.points[i].mean_iters == r2.points[i].mean_iters);
    }
    strip_seconds(r1);
    strip_seconds(r2);
    std::ostringstream a, b, at, bt;
    emit(r1, "csv", a);
    emit(r2, "csv", b);
    CHECK(a.str() == b.str());
    emit(r1, "text", at);
    emit(r2, "text", bt);
    CHECK(at.str() == bt.str());
}

TEST_CASE("a fixed seed reproduces a noisy soft sector run") {
    SweepConfig cfg;
    cfg.system = "tppc_qldpc";
    cfg.preset = "TPPC-C";
    cfg.snr_start = cfg.snr_stop = 13.5;
    cfg.sectors = 2;
    cfg.seed = 21;
    auto r1 = run_sweep(cfg);
    auto r2 = run_sweep(cfg);
    REQUIRE(r1.points.size() == 1);
    CHECK(r1.points[0].sector_errors == r2.points[0].sector_errors);
    CHECK(r1.points[0].bit_errors == r2.points[0].bit_errors);
    CHECK(r1.points[0].mean_iters == r2.points[0].mean_iters);
}

TEST_CASE("a hopeless point terminates early at the chunk boundary") {
    SweepConfig cfg;
    cfg.system = "tppc_rs_hard";
    cfg.snr_start = cfg.snr_stop = -3.0;
    cfg.sectors = 5000;
    cfg.seed = 3;
    auto r = run_sweep(cfg);
    REQUIRE(r.points.size() == 1);
    // every sector fails, so the 200-error cap trips at the first chunk check
    CHECK(r.points[0].sectors == kSweepChunk);
    CHECK(r.points[0].sector_errors == kSweepChunk);
    CHECK(r.points[0].ser == 1.0);
    CHECK(r.points[0].sector_errors >= kSweepErrorCap);
}

} // TEST_SUITE
