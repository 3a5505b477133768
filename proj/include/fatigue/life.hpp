#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fatigue/load_history.hpp"

namespace fatigue {

/// S-N curve: per-cycle damage sigma_a^k / C, failure at damage 1.
struct SnCurve {
    double k = 5.0;
    double C = 1.5e15;  // MPa^k * cycles; calibration knob, cancels in ratios
};

enum class PdfEstimator { histogram, kde };

struct PdfConfig {
    PdfEstimator estimator = PdfEstimator::histogram;
    std::size_t bins = 64;
    double kde_bandwidth = 0.0;  // <= 0: Silverman rule
};

struct AmplitudePdf {
    std::vector<double> bin_edges;  // bins + 1 edges over [0, max]
    std::vector<double> density;    // 1/MPa, integrates to 1
    PdfEstimator estimator = PdfEstimator::histogram;
};

struct RateEstimates {
    double nu_peak = 0.0;     // local maxima per block
    double nu_upcross = 0.0;  // upward mean crossings per block
};

enum class LifeMethod { miner, retarded, retarded_corrected, spectral_baseline };

struct LifeEstimate {
    double damage_per_block = 0.0;
    double ctf = 0.0;  // cycles
    LifeMethod method = LifeMethod::miner;
    bool infinite_life = false;
};

AmplitudePdf estimate_pdf(const std::vector<double>& amplitudes, const PdfConfig& config);

/// Total-variation distance of two PDFs binned on a common grid.
double total_variation_distance(const std::vector<double>& a, const std::vector<double>& b,
                                std::size_t bins);

/// Miner life from a binned amplitude PDF; rate.nu_upcross carries the
/// cycles-per-block scale.
LifeEstimate miner_life(const AmplitudePdf& pdf, const SnCurve& sn, const RateEstimates& rate);

/// Discrete-sample Miner damage over counted cycles (halves weighted 0.5).
/// This is the default pipeline path; the binned route mirrors it within 1%.
LifeEstimate miner_life_discrete(const std::vector<double>& amplitudes,
                                 const std::vector<double>& counts, const SnCurve& sn);

/// Modified estimator: sigma_rar PDF, peak rate, and the overload rate
/// correction factor lambda_ol scaling the damage rate.
LifeEstimate corrected_life(const AmplitudePdf& pdf_rar, const SnCurve& sn,
                            const RateEstimates& rate, double lambda_ol);

LifeEstimate corrected_life_discrete(const std::vector<double>& amplitudes,
                                     const std::vector<double>& counts, const SnCurve& sn,
                                     double lambda_ol);

RateEstimates count_rates(const LoadHistory& load);

enum class SpectralAmplitudeModel { deterministic, rayleigh };

struct SpectralConfig {
    std::size_t segment_length = 4096;  // Welch segments, 50% overlap, Hann window
    SpectralAmplitudeModel amplitude_model = SpectralAmplitudeModel::deterministic;
};

/// Narrow-band spectral baseline from Welch PSD moments m0, m2, m4.
LifeEstimate spectral_baseline_life(const LoadHistory& load, const SnCurve& sn,
                                    const SpectralConfig& config = {});

}  // namespace fatigue
