#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pesl1/denoise.hpp"
#include "pesl1/signals.hpp"

namespace pesl1 {

struct ExperimentSpec {
    std::vector<TestSignal> signals = all_test_signals();
    std::vector<double> noise_fractions = {0.10, 0.20, 0.30};
    std::size_t trials = 300;
    std::vector<DenoiseConfig> methods;
    std::uint64_t base_seed = 0;
    std::size_t n = 1024;
};

void validate(const ExperimentSpec& spec);

/// Row label of a method: its name, plus the bank for non-default wavelet banks.
std::string method_label(const DenoiseConfig& cfg);

struct ExperimentRow {
    std::string signal;
    double fraction = 0.0;
    std::string method;
    double mean_input_snr_db = 0.0;
    double mean_output_snr_db = 0.0;
    double stddev_output_snr_db = 0.0; // sample std-dev over finite trials
    std::size_t trials = 0;
    std::size_t excluded = 0;          // trials with an exact (+inf dB) reconstruction
    std::string error;                 // non-empty if the cell aborted

    friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;
};

/// Worker count: PES_DENOISE_THREADS when set (>= 1), else hardware concurrency.
std::size_t default_worker_count();

/// Every (signal, fraction, trial) draws noise with seed base_seed + trial and
/// all methods denoise that same noisy instance. Output does not depend on
/// the worker count.
ExperimentReport run_experiment(const ExperimentSpec& spec, std::size_t workers = 0);

/// signal,fraction,method,input_snr_db,output_snr_db,stddev_db,trials with
/// four decimals and '\n' line endings.
std::string emit_csv(const ExperimentReport& report);
ExperimentReport parse_report_csv(std::string_view text);
std::string emit_json(const ExperimentReport& report);

/// omega,magnitude for bins 0..N/2.
std::string spectrum_csv(const Signal& x);

} // namespace pesl1
