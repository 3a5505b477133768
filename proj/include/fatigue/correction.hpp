#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fatigue/overload.hpp"

namespace fatigue {

/// Raw moments (orders 1-4) of the overload-amplitude sample plus the
/// per-amplitude-level occurrence-rate curve. Moments are computed on
/// sigma_ol scaled by amplitude_scale (the load's 70 MPa standard deviation
/// by convention).
struct OverloadStatistics {
    std::array<double, 4> moments{};  // m1..m4
    struct RateEntry {
        double sigma_ol_mid;
        double nu_ol;  // 1 / mean reversal-index gap
    };
    std::vector<RateEntry> nu_ol_curve;  // bins with < 2 occurrences omitted
};

/// Degree-2 polynomial features in the four moments: constant, linear, and
/// the six pairwise interactions. Column order matches the printed model:
/// [1, m1, m2, m3, m4, m1m2, m1m3, m1m4, m2m3, m2m4, m3m4].
inline constexpr std::size_t kCorrectionFeatures = 11;

struct CorrectionModel {
    std::array<double, kCorrectionFeatures> beta{};
};

/// The published coefficient vector.
CorrectionModel paper_correction_model();

std::array<double, kCorrectionFeatures> correction_features(const std::array<double, 4>& moments);

/// Occurrence rate of overloads per discretized amplitude level.
std::vector<OverloadStatistics::RateEntry> overload_rate_curve(const OverloadSet& overloads,
                                                               std::size_t n_levels);

OverloadStatistics overload_moments(const OverloadSet& overloads, double amplitude_scale = 70.0,
                                    std::size_t n_levels = 16);

double evaluate_lambda(const CorrectionModel& model, const std::array<double, 4>& moments);

/// The polynomial evaluated at the published coefficients.
double lambda_from_paper(const std::array<double, 4>& moments);

/// Pipeline guard on raw lambda values.
double clamp_lambda(double lambda, double lo = 0.05, double hi = 20.0);

struct SingularFitError : std::runtime_error {
    double condition_number;
    SingularFitError(const std::string& msg, double cond)
        : std::runtime_error(msg), condition_number(cond) {}
};

struct TrainingRow {
    std::array<double, 4> moments;
    double lambda_target;  // (retarded-model CTF without correction) / (simulator CTF)
};

/// Ordinary least squares on the 11-column design matrix.
CorrectionModel fit_correction(const std::vector<TrainingRow>& training);

}  // namespace fatigue
