#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fatigue/load_history.hpp"

namespace fatigue {

struct SurrogateConfig {
    std::size_t max_iterations = 200;
    double psd_tolerance = 1e-3;
    std::uint64_t seed = 0;
};

struct SurrogateResult {
    LoadHistory amplitude_matched;   // exact amplitude multiset of the original
    LoadHistory frequency_matched;   // exact spectral magnitudes of the original
    std::size_t iterations_used = 0;
    double final_psd_error = 0.0;
    bool converged = false;
};

/// One-sided FFT magnitudes of a real series (bins 0..n/2).
std::vector<double> spectral_magnitudes(const std::vector<double>& x);

/// Relative L2 distance between one-sided magnitude spectra, DC excluded.
double psd_error(const std::vector<double>& mag_a, const std::vector<double>& mag_b);

LoadHistory random_permutation(const LoadHistory& load, std::uint64_t seed);

/// Impose the reference spectral magnitudes while keeping the candidate's
/// phases; the output is real by conjugate-symmetric construction.
std::vector<double> spectral_match(const std::vector<double>& candidate,
                                   const std::vector<double>& reference_magnitudes);

/// Rank-order remap: the k-th largest candidate value is replaced by the
/// k-th largest reference value (ties broken by original index).
std::vector<double> amplitude_match(const std::vector<double>& candidate,
                                    const std::vector<double>& reference);

/// Iterative amplitude-adjusted Fourier surrogate. The amplitude-matched
/// series is the downstream load; label gets an "s" suffix.
SurrogateResult generate_surrogate(const LoadHistory& load, const SurrogateConfig& config);

}  // namespace fatigue
