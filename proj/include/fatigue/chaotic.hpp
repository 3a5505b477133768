#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fatigue/load_history.hpp"

namespace fatigue {

enum class OdeName { Duffing, Lorenz };

/// A chaotic source system together with the exported coordinate.
/// Duffing is the forced double-well oscillator
///   x'' + 0.25 x' - 0.6 x + x^3 = 0.2 cos(t)
/// integrated as (x, v) with explicit time. Lorenz is the standard
/// sigma=10, rho=28, beta=8/3 system.
struct OdeSystem {
    OdeName name = OdeName::Duffing;
    std::size_t coordinate_index = 0;
    double duffing_forcing = 0.2;  // harmonic forcing amplitude (Duffing only)

    std::size_t state_dim() const { return name == OdeName::Duffing ? 2 : 3; }
};

struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed-step classical RK4. Returns states at dt_internal spacing with the
/// first transient_discard time units dropped. Throws DivergenceError when
/// any state magnitude exceeds the bound.
std::vector<std::array<double, 3>> integrate(const OdeSystem& system,
                                             std::array<double, 3> initial_state,
                                             double t_span, double dt_internal,
                                             double transient_discard,
                                             double divergence_bound = 1e6);

/// Every stride-th value of the selected coordinate.
std::vector<double> sample_coordinate(const std::vector<std::array<double, 3>>& trajectory,
                                      std::size_t coordinate_index, std::size_t stride);

/// Canonical generation settings per case label (D1, D2, L1, L3).
struct ChaoticCaseConfig {
    OdeSystem system;
    double dt_internal;
    double transient_discard;
    std::size_t stride;
};

/// Lookup for the four study cases. Throws on unknown label.
ChaoticCaseConfig chaotic_case(const std::string& label);

///// Full generation path: integrate, sample, normalize to (mean, std).
LoadHistory generate_chaotic_load(const std::string& label, std::size_t n_samples,
                                  double target_mean = 25.0, double target_std = 70.0,
                                  std::uint64_t seed = 0);

}  // namespace fatigue
