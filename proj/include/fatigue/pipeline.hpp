#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "fatigue/correction.hpp"
#include "fatigue/fcp.hpp"
#include "fatigue/life.hpp"
#include "fatigue/surrogate.hpp"

namespace fatigue {

struct PipelineConfig {
    WalkerConfig walker;
    RetardationParams retardation;
    SnCurve sn;
    PdfConfig pdf;
    SpectralConfig spectral;
    CrackGeometry geometry;
    GrowthLaw growth;
    ClosureParams closure;
    SimOptions sim;
    double overload_amplitude_scale = 70.0;  // MPa, moment normalization
    bool run_simulator = true;
};

struct CaseReport {
    static constexpr int kSchemaVersion = 1;

    std::string label;
    std::string source;
    LoadStatistics stats;
    std::size_t n_reversals = 0;
    double n_cycles = 0.0;  // rainflow counts per block (halves weighted)
    std::map<std::string, std::size_t> overload_counts;  // per class A-D
    std::array<double, 4> overload_moments{};
    double nu_peak = 0.0;
    double lambda_ol_raw = 1.0;
    double lambda_ol = 1.0;  // clamped pipeline value
    std::map<std::string, double> ctf;  // miner, retarded, retarded_corrected,
                                        // spectral_baseline, simulated
};

/// count -> identify -> retard -> correct -> estimate -> (optionally) simulate.
CaseReport run_case(const LoadHistory& load, const PipelineConfig& config,
                    const std::optional<CorrectionModel>& model = std::nullopt);

void write_case_report(const std::filesystem::path& path, const CaseReport& report);
CaseReport read_case_report(const std::filesystem::path& path);

/// Grid search over (rho_ol, N_c) minimizing the mean |log(CTF_retarded /
/// CTF_simulated)| over already-simulated case reports re-evaluated on their
/// loads. Returns the best parameters.
RetardationParams calibrate_retardation(const std::vector<LoadHistory>& loads,
                                        const std::vector<double>& simulated_ctfs,
                                        const PipelineConfig& config,
                                        const std::vector<double>& rho_grid,
                                        const std::vector<double>& nc_grid);

/// Training rows (overload moments, lambda target) from completed reports.
/// The target is ctf["retarded"] / ctf["simulated"].
std::vector<TrainingRow> training_rows_from_reports(const std::vector<CaseReport>& reports);

}  // namespace fatigue
