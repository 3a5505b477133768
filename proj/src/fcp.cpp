#include "fatigue/fcp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fatigue {

double closure_factor(double r_ratio, double c_f0) {
    if (r_ratio > 1.0) throw std::invalid_argument("closure_factor: R <= 1 required");
    return 1.0 - (1.0 - c_f0) * (1.0 + 0.6 * r_ratio) * (1.0 - r_ratio);
}

double sif_correction(double a_over_w) {
    if (a_over_w <= 0.0 || a_over_w > 0.6)
        throw std::out_of_range("sif_correction: a/W outside (0, 0.6]");
    // Brown-Srawley polynomial, three-point bending, S/W = 4
    const double u = a_over_w;
    return 1.090 - 1.735 * u + 8.20 * u * u - 14.18 * u * u * u + 14.57 * u * u * u * u;
}

double sif(const CrackGeometry& geometry, double a, double stress) {
    return stress * std::sqrt(M_PI * a) * sif_correction(a / geometry.width);
}

namespace {

double growth_increment(const GrowthLaw& law, double delta_k, double r_eff) {
    if (delta_k <= 0.0) return 0.0;
    if (law.kind == GrowthLaw::Kind::paris)
        return law.paris.c * std::pow(delta_k, law.paris.m);

    // tabular: nearest R group, log-log interpolation in delta_k
    if (law.table.empty()) throw std::invalid_argument("growth_increment: empty rate table");
    double best_r = law.table.front().r_ratio;
    for (const auto& row : law.table)
        if (std::abs(row.r_ratio - r_eff) < std::abs(best_r - r_eff)) best_r = row.r_ratio;

    const TabularRateRow* lo = nullptr;
    const TabularRateRow* hi = nullptr;
    for (const auto& row : law.table) {
        if (row.r_ratio != best_r) continue;
        if (row.delta_k <= delta_k && (!lo || row.delta_k > lo->delta_k)) lo = &row;
        if (row.delta_k >= delta_k && (!hi || row.delta_k < hi->delta_k)) hi = &row;
    }
    if (!lo && !hi) throw std::invalid_argument("growth_increment: no rows for R group");
    if (!lo) return hi->dadn;  // below table: clamp
    if (!hi || hi == lo) return lo->dadn;
    const double t = (std::log(delta_k) - std::log(lo->delta_k)) /
                     (std::log(hi->delta_k) - std::log(lo->delta_k));
    return std::exp(std::log(lo->dadn) + t * (std::log(hi->dadn) - std::log(lo->dadn)));
}

}  // namespace

SimResult simulate(const ReversalSequence& reversals, const CrackGeometry& geometry,
                   const GrowthLaw& growth, const ClosureParams& closure,
                   const SimOptions& options) {
    if (reversals.size() < 2) throw std::invalid_argument("simulate: need >= 2 reversals");
    if (!(closure.c_f0 > 0.0 && closure.c_f0 < 1.0))
        throw std::invalid_argument("simulate: C_f0 in (0, 1) required");
    if (!(geometry.initial_a > 0.0 && geometry.initial_a < geometry.final_a &&
          geometry.final_a < geometry.width))
        throw std::invalid_argument("simulate: inconsistent crack geometry");

    const auto& v = reversals.values;
    const std::size_t cycles_per_block = reversals.size() / 2;  // (min, max) pairs
    if (cycles_per_block == 0) throw std::invalid_argument("simulate: no full cycle in block");

    SimResult result;
    double a = geometry.initial_a;
    double k_op = 0.0;
    bool k_op_seeded = false;
    std::uint64_t cycle = 0;

    const double c_f0 = closure.c_f0;

    while (a < geometry.final_a) {
        if (cycle >= options.max_cycles) {
            result.termination = SimTermination::spectrum_exhausted;
            break;
        }
        const double a_block_start = a;

        for (std::size_t i = 0; i < cycles_per_block && a < geometry.final_a; ++i, ++cycle) {
            const double s_min = v[2 * i];
            const double s_max = v[2 * i + 1];
            const double k_max = sif(geometry, a, s_max);
            const double k_min_applied = sif(geometry, a, s_min);
            if (k_max <= 0.0) continue;  // fully compressive cycle

            // opening level the applied cycle would sustain on its own; the
            // clipped ratio is deliberately not fed back here, otherwise
            // small cycles ratchet the opening SIF up by themselves
            const double r_applied = std::max(k_min_applied / k_max, -1.0);
            const double k_op_sustained =
                std::clamp(closure_factor(r_applied, c_f0), c_f0, 0.95) * k_max;

            if (!k_op_seeded) {
                k_op = c_f0 * k_max;
                k_op_seeded = true;
            }
            double k_min = k_min_applied;
            if (k_min < k_op) k_min = k_op;

            const double r_k = k_min / k_max;
            if (r_k >= 1.0) {
                // opening level at or above the peak: no effective range,
                // relax the opening SIF and move on
                k_op += (k_op_sustained - k_op) / options.k_op_relax_cycles;
                continue;
            }
            const double c_f = closure_factor(r_k, c_f0);

            const double discr =
                std::max(0.0, std::pow(0.4 * (1.0 - c_f0), 2) -
                                  4.0 * (0.6 * (1.0 - c_f0) * (c_f0 - c_f)));
            const double r_eq =
                (0.4 * (c_f0 - 1.0) + std::sqrt(discr)) / (1.2 * (1.0 - c_f0));

            double r_eff;
            if (r_eq > options.r_h || r_eq > c_f)
                r_eff = c_f;
            else if (r_k < 0.0 && r_k <= r_eq)
                r_eff = r_k;
            else
                r_eff = r_eq;

            const double dk_eff = k_max - k_min;
            const double dk = r_eff >= 0.0 ? dk_eff * (1.0 - r_eff) / (1.0 - c_f)
                                           : dk_eff / (1.0 - c_f);
            if (dk > growth.delta_k_ic) {
                result.termination = SimTermination::fracture_toughness_exceeded;
                result.ctf = static_cast<double>(cycle);
                result.crack_history.emplace_back(result.ctf, a);
                return result;
            }

            a += growth_increment(growth, dk, r_eff);

            // crack opening memory: a larger cycle raises the opening SIF
            // immediately, smaller ones let it relax toward their own level
            if (k_op_sustained > k_op)
                k_op = k_op_sustained;
            else
                k_op += (k_op_sustained - k_op) / options.k_op_relax_cycles;
        }

        result.crack_history.emplace_back(static_cast<double>(cycle), a);
        if (a <= a_block_start) {
            result.termination = SimTermination::crack_arrested;
            break;
        }
    }

    if (a >= geometry.final_a) result.termination = SimTermination::reached_final_a;
    result.ctf = static_cast<double>(cycle);
    return result;
}

}  // namespace fatigue
