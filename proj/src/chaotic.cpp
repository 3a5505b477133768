#include "fatigue/chaotic.hpp"

#include <cmath>
#include <random>

namespace fatigue {

namespace {

using State = std::array<double, 3>;

State duffing_rhs(const State& s, double t, double forcing) {
    // s = (x, v, unused)
    return {s[1], -0.25 * s[1] + 0.6 * s[0] - s[0] * s[0] * s[0] + forcing * std::cos(t), 0.0};
}

State lorenz_rhs(const State& s, double) {
    return {10.0 * (s[1] - s[0]), -s[0] * s[2] + 28.0 * s[0] - s[1],
            s[0] * s[1] - (8.0 / 3.0) * s[2]};
}

State rhs(const OdeSystem& sys, const State& s, double t) {
    return sys.name == OdeName::Duffing ? duffing_rhs(s, t, sys.duffing_forcing) : lorenz_rhs(s, t);
}

State axpy(const State& a, double h, const State& b) {
    return {a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2]};
}

}  // namespace

std::vector<State> integrate(const OdeSystem& system, State state, double t_span,
                             double dt_internal, double transient_discard,
                             double divergence_bound) {
    if (dt_internal <= 0.0) throw std::invalid_argument("integrate: dt_internal > 0 required");
    if (transient_discard < 0.0 || t_span < transient_discard)
        throw std::invalid_argument("integrate: need t_span > transient_discard >= 0");

    const auto n_total = static_cast<std::size_t>(std::llround(t_span / dt_internal));
    const auto n_skip = static_cast<std::size_t>(std::llround(transient_discard / dt_internal));

    std::vector<State> out;
    if (n_total > n_skip) out.reserve(n_total - n_skip);

    double t = 0.0;
    for (std::size_t i = 0; i < n_total; ++i) {
        const State k1 = rhs(system, state, t);
        const State k2 = rhs(system, axpy(state, 0.5 * dt_internal, k1), t + 0.5 * dt_internal);
        const State k3 = rhs(system, axpy(state, 0.5 * dt_internal, k2), t + 0.5 * dt_internal);
        const State k4 = rhs(system, axpy(state, dt_internal, k3), t + dt_internal);
        for (std::size_t d = 0; d < 3; ++d)
            state[d] += dt_internal / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
        t += dt_internal;

        for (double v : state)
            if (!std::isfinite(v) || std::abs(v) > divergence_bound)
                throw DivergenceError("integrate: trajectory diverged at t=" + std::to_string(t));
        if (i >= n_skip) out.push_back(state);
    }
    return out;
}

std::vector<double> sample_coordinate(const std::vector<State>& trajectory,
                                      std::size_t coordinate_index, std::size_t stride) {
    if (stride < 1) throw std::invalid_argument("sample_coordinate: stride >= 1 required");
    if (coordinate_index >= 3) throw std::out_of_range("sample_coordinate: coordinate index");
    std::vector<double> out;
    out.reserve(trajectory.size() / stride + 1);
    for (std::size_t i = 0; i < trajectory.size(); i += stride)
        out.push_back(trajectory[i][coordinate_index]);
    return out;
}

ChaoticCaseConfig chaotic_case(const std::string& label) {
    // Strides tuned so ~2^18 retained samples carry ~1e4 turning points.
    if (label == "D1") return {{OdeName::Duffing, 0}, 0.01, 100.0, 24};
    if (label == "D2") return {{OdeName::Duffing, 1}, 0.01, 100.0, 24};
    if (label == "L1") return {{OdeName::Lorenz, 0}, 0.005, 100.0, 6};
    if (label == "L3") return {{OdeName::Lorenz, 2}, 0.005, 100.0, 6};
    throw std::invalid_argument("chaotic_case: unknown label " + label);
}

LoadHistory generate_chaotic_load(const std::string& label, std::size_t n_samples,
                                  double target_mean, double target_std, std::uint64_t seed) {
    const ChaoticCaseConfig cfg = chaotic_case(label);

    // Seed only perturbs the initial condition; the flow itself is deterministic.
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    std::array<double, 3> x0{1.0 + jitter(rng), jitter(rng), 1.0 + jitter(rng)};

    const double t_span =
        cfg.transient_discard + static_cast<double>(n_samples * cfg.stride + 1) * cfg.dt_internal;
    const auto traj = integrate(cfg.system, x0, t_span, cfg.dt_internal, cfg.transient_discard);
    auto raw = sample_coordinate(traj, cfg.system.coordinate_index, cfg.stride);
    if (raw.size() > n_samples) raw.resize(n_samples);

    LoadHistory load = normalize_to_stress(raw, target_mean, target_std, label,
                                           cfg.dt_internal * static_cast<double>(cfg.stride),
                                           LoadSource::chaotic);
    return load;
}

}  // namespace fatigue
