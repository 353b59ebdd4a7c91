// pes-denoise: generate test signals, denoise them, inspect spectra and run
// the Monte-Carlo SNR experiment.
//
// Exit codes: 0 success, 2 invalid configuration, 1 runtime failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pesl1/denoise.hpp"
#include "pesl1/filter_bank.hpp"
#include "pesl1/harness.hpp"
#include "pesl1/signals.hpp"
#include "pesl1/spectrum.hpp"

namespace fs = std::filesystem;
using namespace pesl1;

namespace {

struct Options {
    std::vector<std::string> signals;
    std::vector<double> noise;
    std::vector<std::string> methods;
    std::size_t trials = 300;
    std::uint64_t seed = 0;
    std::size_t levels = 0; // 0: automatic
    std::string bank = "daub4";
    double gamma = 1.0;
    double alpha = 3.0;
    std::size_t window = 9;
    std::size_t max_levels = 6;
    std::size_t taps = 129;
    std::size_t n = 1024;
    std::string out = ".";
    bool strict_paper = false;
};

std::vector<TestSignal> selected_signals(const Options& o)
{
    if (o.signals.empty() || (o.signals.size() == 1 && o.signals[0] == "all")) return all_test_signals();
    std::vector<TestSignal> out;
    for (const auto& s : o.signals) out.push_back(parse_test_signal(s));
    return out;
}

std::vector<DenoiseConfig> selected_methods(const Options& o)
{
    std::vector<Method> methods;
    if (o.methods.empty() || (o.methods.size() == 1 && o.methods[0] == "all")) {
        methods = all_methods();
    } else {
        for (const auto& m : o.methods) methods.push_back(parse_method(m));
    }
    std::vector<DenoiseConfig> cfgs;
    for (Method m : methods) {
        DenoiseConfig cfg;
        cfg.method = m;
        cfg.bank = o.bank;
        if (o.levels > 0) cfg.levels = o.levels;
        cfg.gamma = o.gamma;
        cfg.pyramid_taps = o.taps;
        cfg.strict_paper = o.strict_paper;
        cfg.bandwidth = BandwidthOptions{o.alpha, o.window, o.max_levels};
        validate(cfg);
        resolve_filter_bank(cfg.bank); // fail early on a bad bank
        cfgs.push_back(cfg);
    }
    return cfgs;
}

std::string fraction_tag(double f)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", f);
    return buf;
}

std::string file_safe(std::string s)
{
    std::replace(s.begin(), s.end(), '/', '_');
    return s;
}

fs::path output_dir(const Options& o)
{
    fs::path dir(o.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (f == nullptr) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
    if (std::fclose(f) != 0 || !ok) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void check_fractions(const std::vector<double>& fractions)
{
    for (double f : fractions)
        if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("--noise values must lie in (0, 1]");
}

void run_generate(const Options& o)
{
    const auto signals = selected_signals(o);
    check_fractions(o.noise);
    const fs::path dir = output_dir(o);
    for (TestSignal s : signals) {
        const Signal v = generate_test_signal(s, o.n);
        const std::string name(to_string(s));
        write_signal_csv(dir / (name + ".csv"), v);
        for (double f : o.noise) {
            write_signal_csv(dir / (name + "_noisy_" + fraction_tag(f) + ".csv"),
                             add_gaussian_noise(v, NoiseSpec{f, o.seed}));
        }
        std::cout << (dir / (name + ".csv")).string() << '\n';
    }
}

void run_denoise(const Options& o)
{
    const auto signals = selected_signals(o);
    const auto methods = selected_methods(o);
    const std::vector<double> fractions = o.noise.empty() ? std::vector<double>{0.2} : o.noise;
    check_fractions(fractions);
    const fs::path dir = output_dir(o);

    std::string summary = "signal,fraction,method,levels,input_snr_db,output_snr_db\n";
    for (TestSignal s : signals) {
        const Signal v = generate_test_signal(s, o.n);
        const std::string name(to_string(s));
        write_signal_csv(dir / (name + ".csv"), v);
        for (double f : fractions) {
            const Signal x = add_gaussian_noise(v, NoiseSpec{f, o.seed});
            const std::string tag = fraction_tag(f);
            write_signal_csv(dir / (name + "_noisy_" + tag + ".csv"), x);
            for (const auto& cfg : methods) {
                const DenoiseResult r = denoise_detailed(x, cfg);
                const std::string label = method_label(cfg);
                write_signal_csv(dir / (name + "_" + tag + "_" + file_safe(label) + ".csv"), r.output);
                char line[256];
                std::snprintf(line, sizeof line, "%s,%.4f,%s,%zu,%.4f,%.4f\n", name.c_str(), f, label.c_str(),
                              r.levels, snr_db(v, x), snr_db(v, r.output));
                summary += line;
            }
        }
    }
    write_text(dir / "denoise.csv", summary);
    std::cout << summary;
}

void run_spectrum(const Options& o)
{
    const auto signals = selected_signals(o);
    const std::vector<double> fractions = o.noise.empty() ? std::vector<double>{0.2} : o.noise;
    check_fractions(fractions);
    const BandwidthOptions bw{o.alpha, o.window, o.max_levels};
    if (!(bw.alpha > 1.0)) throw std::invalid_argument("--alpha must exceed 1");
    if (bw.smooth_window % 2 == 0) throw std::invalid_argument("--window must be odd");
    const fs::path dir = output_dir(o);

    std::string summary = "signal,fraction,omega0,noise_floor,levels,degenerate\n";
    for (TestSignal s : signals) {
        const Signal v = generate_test_signal(s, o.n);
        const std::string name(to_string(s));
        for (double f : fractions) {
            const Signal x = add_gaussian_noise(v, NoiseSpec{f, o.seed});
            write_text(dir / (name + "_spectrum_" + fraction_tag(f) + ".csv"), spectrum_csv(x));
            const BandwidthEstimate est = estimate_bandwidth(magnitude_spectrum(x), x.size(), bw);
            char line[256];
            std::snprintf(line, sizeof line, "%s,%.4f,%.6f,%.6f,%zu,%d\n", name.c_str(), f, est.omega0,
                          est.noise_floor, est.levels, est.degenerate ? 1 : 0);
            summary += line;
        }
    }
    write_text(dir / "bandwidth.csv", summary);
    std::cout << summary;
}

void run_experiment_cmd(const Options& o)
{
    ExperimentSpec spec;
    spec.signals = selected_signals(o);
    if (!o.noise.empty()) spec.noise_fractions = o.noise;
    spec.trials = o.trials;
    spec.methods = selected_methods(o);
    spec.base_seed = o.seed;
    spec.n = o.n;
    validate(spec);
    const fs::path dir = output_dir(o);

    const ExperimentReport report = run_experiment(spec);
    const std::string csv = emit_csv(report);
    write_text(dir / "report.csv", csv);
    write_text(dir / "report.json", emit_json(report));
    std::cout << csv;
    for (const auto& row : report.rows) {
        if (!row.error.empty())
            std::cerr << "error: " << row.signal << " " << row.fraction << " " << row.method << ": " << row.error << '\n';
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Wavelet and pyramid denoising with l1-epigraph thresholds"};
    app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--signal", o.signals, "Test signal(s): blocks, bumps, heavy-sine, doppler, piece-regular, cusp, all");
    app.add_option("--noise", o.noise, "Noise std as a fraction of peak amplitude (repeatable)");
    app.add_option("--method", o.methods, "pes-l1-pyramid, pes-l1-wavelet, universal, three-sigma, all");
    app.add_option("--trials", o.trials, "Monte-Carlo trials per cell")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Base noise seed");
    app.add_option("--levels", o.levels, "Decomposition levels (0 = from spectrum)");
    app.add_option("--bank", o.bank, "haar, daub4, farras, or a tap file");
    app.add_option("--gamma", o.gamma, "Universal threshold multiplier");
    app.add_option("--alpha", o.alpha, "Noise-floor multiple marking the band edge");
    app.add_option("--window", o.window, "Spectrum smoothing window (odd)");
    app.add_option("--max-levels", o.max_levels, "Upper bound on automatic levels")->check(CLI::PositiveNumber);
    app.add_option("--taps", o.taps, "Pyramid low-pass length (odd)");
    app.add_option("--n", o.n, "Signal length");
    app.add_option("--out", o.out, "Output directory");
    app.add_flag("--strict-paper", o.strict_paper, "Divide by K+1 in the hyperplane step even when w has zeros");

    auto* generate = app.add_subcommand("generate", "Write clean (and optionally noisy) test signals");
    auto* denoise = app.add_subcommand("denoise", "Denoise one noisy realisation per signal and report SNR");
    auto* spectrum = app.add_subcommand("spectrum", "Write magnitude spectra and the estimated band edge");
    auto* experiment = app.add_subcommand("experiment", "Monte-Carlo SNR table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*generate) run_generate(o);
        else if (*denoise) run_denoise(o);
        else if (*spectrum) run_spectrum(o);
        else if (*experiment) run_experiment_cmd(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
