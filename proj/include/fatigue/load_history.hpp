#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatigue {

enum class LoadSource { chaotic, surrogate, external };

/// Uniformly sampled stress time series in MPa.
struct LoadHistory {
    std::vector<double> samples;
    double dt = 1.0;
    std::string label;
    LoadSource source = LoadSource::external;

    std::size_t size() const { return samples.size(); }
};

/// Summary statistics of a load history. Std is the population (biased)
/// estimate; kurtosis is Pearson (non-excess). When the series is constant
/// the standardized moments are undefined and higher_moments_valid is false.
struct LoadStatistics {
    double mean = 0.0;
    double std = 0.0;
    double rms = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    bool higher_moments_valid = false;
};

LoadStatistics compute_statistics(const LoadHistory& load);

/// Affine map onto the requested mean/std. Throws std::domain_error on a
/// zero-variance input.
LoadHistory normalize_to_stress(const std::vector<double>& raw, double target_mean,
                                double target_std, const std::string& label = "",
                                double dt = 1.0, LoadSource source = LoadSource::external);

/// Randomly pick n_segments equal-length segments with distinct start
/// offsets, reproducible under the seed.
std::vector<LoadHistory> select_segments(const LoadHistory& load, std::size_t n_segments,
                                         std::size_t segment_len, std::uint64_t seed);

}  // namespace fatigue
