#include <tppc/sweep.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    using namespace tppc;

    SweepConfig cfg;
    // the config file seeds the defaults, flags override
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) {
                std::cerr << "cannot open config file: " << argv[i + 1] << "\n";
                return 1;
            }
            try {
                cfg = parse_config(in);
            } catch (const std::exception& e) {
                std::cerr << e.what() << "\n";
                return 1;
            }
        }

    std::string out = "-", format = "csv", config_path;
    bool dump = false;

    CLI::App app{"seeded Monte-Carlo sector-error-rate sweeps for tensor-product "
                 "pattern-correcting codes on an ISI channel"};
    app.add_option("--config", config_path, "key = value config file (flags override it)");
    app.add_option("--system", cfg.system, "tppc_qldpc or tppc_rs_hard")
        ->capture_default_str();
    app.add_option("--preset", cfg.preset, "TPPC-A..TPPC-D, or custom")
        ->capture_default_str();
    app.add_option("--snr-start", cfg.snr_start, "first SNR point, dB")->capture_default_str();
    app.add_option("--snr-stop", cfg.snr_stop, "last SNR point, dB")->capture_default_str();
    app.add_option("--snr-step", cfg.snr_step, "SNR grid step, dB")->capture_default_str();
    app.add_option("--delta", cfg.delta, "rate-penalty exponent")->capture_default_str();
    app.add_option("--sectors", cfg.sectors, "sector budget per SNR point")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    app.add_flag("--noiseless", cfg.noiseless, "transmit without noise");
    app.add_option("--global-iters", cfg.global_iters, "global decoding passes")
        ->capture_default_str();
    app.add_option("--ldpc-iters", cfg.ldpc_iters, "message-passing iterations per pass")
        ->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads, 0 = all cores")
        ->capture_default_str();
    app.add_option("--out", out, "output path, - for stdout")->capture_default_str();
    app.add_option("--format", format, "csv or text")->capture_default_str();
    app.add_flag("--dump-config", dump, "print the effective config and exit");

    CLI11_PARSE(app, argc, argv);

    if (dump) {
        dump_config(cfg, std::cout);
        return 0;
    }

    try {
        cfg.validate();
        auto result = run_sweep(cfg);
        if (out == "-") {
            emit(result, format, std::cout);
        } else {
            std::ofstream os(out);
            if (!os) {
                std::cerr << "cannot open output path: " << out << "\n";
                return 1;
            }
            emit(result, format, os);
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
