#include "pesl1/harness.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "pesl1/spectrum.hpp"
#include "text_io.hpp"

namespace pesl1 {

namespace {

constexpr std::string_view kCsvHeader = "signal,fraction,method,input_snr_db,output_snr_db,stddev_db,trials";

struct TrialOutcome {
    double input_snr = 0.0;
    std::vector<double> output_snr; // per method
    std::vector<std::string> error; // per method, empty on success
};

} // namespace

void validate(const ExperimentSpec& spec)
{
    if (spec.signals.empty()) throw std::invalid_argument("experiment needs at least one signal");
    if (spec.methods.empty()) throw std::invalid_argument("experiment needs at least one method");
    if (spec.noise_fractions.empty()) throw std::invalid_argument("experiment needs at least one noise level");
    if (spec.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (spec.n < 16) throw std::invalid_argument("signal length must be at least 16");
    for (double f : spec.noise_fractions) {
        if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("noise fractions must lie in (0, 1]");
    }
    for (const auto& m : spec.methods) validate(m);
}

std::string method_label(const DenoiseConfig& cfg)
{
    std::string label(to_string(cfg.method));
    if (cfg.method != Method::PesL1Pyramid && cfg.bank != "daub4")
        label += "/" + std::filesystem::path(cfg.bank).stem().string();
    if (cfg.strict_paper && (cfg.method == Method::PesL1Pyramid || cfg.method == Method::PesL1Wavelet))
        label += "/strict";
    return label;
}

std::size_t default_worker_count()
{
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PES_DENOISE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) workers = std::min(workers, static_cast<std::size_t>(v));
    }
    return workers;
}

ExperimentReport run_experiment(const ExperimentSpec& spec, std::size_t workers)
{
    validate(spec);
    if (workers == 0) workers = default_worker_count();

    std::vector<Signal> clean;
    clean.reserve(spec.signals.size());
    for (TestSignal s : spec.signals) clean.push_back(generate_test_signal(s, spec.n));

    const std::size_t cells = spec.signals.size() * spec.noise_fractions.size();
    const std::size_t tasks = cells * spec.trials;
    std::vector<TrialOutcome> outcomes(tasks);

    auto run_task = [&](std::size_t task) {
        const std::size_t cell = task / spec.trials;
        const std::size_t trial = task % spec.trials;
        const Signal& v = clean[cell / spec.noise_fractions.size()];
        const double fraction = spec.noise_fractions[cell % spec.noise_fractions.size()];

        const Signal x = add_gaussian_noise(v, NoiseSpec{fraction, spec.base_seed + trial});
        TrialOutcome& out = outcomes[task];
        out.input_snr = snr_db(v, x);
        out.output_snr.assign(spec.methods.size(), std::numeric_limits<double>::quiet_NaN());
        out.error.assign(spec.methods.size(), {});
        for (std::size_t m = 0; m < spec.methods.size(); ++m) {
            try {
                out.output_snr[m] = snr_db(v, denoise(x, spec.methods[m]));
            } catch (const std::exception& e) {
                out.error[m] = e.what();
            }
        }
    };

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (std::size_t task = next++; task < tasks && !failed; task = next++) {
            try {
                run_task(task);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < std::min(workers, tasks); ++w) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentReport report;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const TestSignal sig = spec.signals[cell / spec.noise_fractions.size()];
        const double fraction = spec.noise_fractions[cell % spec.noise_fractions.size()];
        const auto first = outcomes.begin() + static_cast<std::ptrdiff_t>(cell * spec.trials);

        double input_sum = 0.0;
        for (std::size_t t = 0; t < spec.trials; ++t) input_sum += first[static_cast<std::ptrdiff_t>(t)].input_snr;
        const double mean_input = input_sum / static_cast<double>(spec.trials);

        for (std::size_t m = 0; m < spec.methods.size(); ++m) {
            ExperimentRow row;
            row.signal = std::string(to_string(sig));
            row.fraction = fraction;
            row.method = method_label(spec.methods[m]);
            row.mean_input_snr_db = mean_input;
            row.trials = spec.trials;

            std::vector<double> finite;
            for (std::size_t t = 0; t < spec.trials && row.error.empty(); ++t) {
                const TrialOutcome& o = first[static_cast<std::ptrdiff_t>(t)];
                if (!o.error[m].empty()) {
                    row.error = "trial " + std::to_string(t) + ": " + o.error[m];
                } else if (std::isinf(o.output_snr[m])) {
                    ++row.excluded;
                } else {
                    finite.push_back(o.output_snr[m]);
                }
            }

            if (!row.error.empty()) {
                row.mean_output_snr_db = std::numeric_limits<double>::quiet_NaN();
                row.stddev_output_snr_db = std::numeric_limits<double>::quiet_NaN();
            } else if (finite.empty()) {
                row.mean_output_snr_db = std::numeric_limits<double>::infinity();
                row.stddev_output_snr_db = 0.0;
            } else {
                double sum = 0.0;
                for (double s : finite) sum += s;
                const double mean = sum / static_cast<double>(finite.size());
                double sq = 0.0;
                for (double s : finite) sq += (s - mean) * (s - mean);
                row.mean_output_snr_db = mean;
                row.stddev_output_snr_db =
                    finite.size() > 1 ? std::sqrt(sq / static_cast<double>(finite.size() - 1)) : 0.0;
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

std::string emit_csv(const ExperimentReport& report)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : report.rows) {
        out += r.signal + ',' + detail::fixed4(r.fraction) + ',' + r.method + ',' +
               detail::fixed4(r.mean_input_snr_db) + ',' + detail::fixed4(r.mean_output_snr_db) + ',' +
               detail::fixed4(r.stddev_output_snr_db) + ',' + std::to_string(r.trials) + '\n';
    }
    return out;
}

ExperimentReport parse_report_csv(std::string_view text)
{
    const auto lines = detail::split_lines(text);
    if (lines.empty() || lines.front() != kCsvHeader)
        throw std::invalid_argument("report CSV: missing or unexpected header");
    ExperimentReport report;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (detail::trim(lines[i]).empty()) continue;
        const auto fields = detail::split(lines[i], ',');
        if (fields.size() != 7)
            throw std::invalid_argument("report CSV line " + std::to_string(i + 1) + ": expected 7 fields");
        ExperimentRow row;
        row.signal = std::string(fields[0]);
        row.fraction = detail::parse_double(fields[1]);
        row.method = std::string(fields[2]);
        row.mean_input_snr_db = detail::parse_double(fields[3]);
        row.mean_output_snr_db = detail::parse_double(fields[4]);
        row.stddev_output_snr_db = detail::parse_double(fields[5]);
        row.trials = static_cast<std::size_t>(detail::parse_double(fields[6]));
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string emit_json(const ExperimentReport& report)
{
    auto num = [](double v) -> nlohmann::json {
        if (std::isfinite(v)) return v;
        return detail::shortest(v);
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json row = {
            {"signal", r.signal},
            {"fraction", r.fraction},
            {"method", r.method},
            {"input_snr_db", num(r.mean_input_snr_db)},
            {"output_snr_db", num(r.mean_output_snr_db)},
            {"stddev_db", num(r.stddev_output_snr_db)},
            {"trials", r.trials},
            {"excluded", r.excluded},
        };
        if (!r.error.empty()) row["error"] = r.error;
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"rows", rows}}.dump(2) + "\n";
}

std::string spectrum_csv(const Signal& x)
{
    const std::vector<double> mag = magnitude_spectrum(x);
    const double bin = 2.0 * std::numbers::pi / static_cast<double>(x.size());
    std::string out = "omega,magnitude\n";
    for (std::size_t k = 0; k < mag.size(); ++k)
        out += detail::shortest(bin * static_cast<double>(k)) + ',' + detail::shortest(mag[k]) + '\n';
    return out;
}

} // namespace pesl1
