#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fatigue/rainflow.hpp"

namespace fatigue {

enum class OverloadClass { A, B, C, D };

/// One identified overload reversal. sigma_ol is the drop from the overload
/// peak to the next peak (floored at zero); alpha is the overload ratio
/// between the same two maxima, falling back to 1 when undefined.
struct OverloadRecord {
    std::size_t reversal_index = 0;
    OverloadClass cls = OverloadClass::A;
    double sigma_ol = 0.0;
    double alpha = 1.0;
};

struct OverloadSet {
    std::vector<OverloadRecord> records;  // strictly increasing reversal_index

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

struct RetardationParams {
    double rho_ol = 0.2;  // initial residual-stress fraction
    double n_c = 50.0;    // proportionality constant, cycles
    double r = 0.1;       // residual fraction left at N = N_eq*
};

struct RetardedAmplitudeSeries {
    std::vector<double> sigma_ar;
    std::vector<double> sigma_rar;
    // per cycle: index into OverloadSet::records of the governing overload
    std::vector<std::optional<std::size_t>> active_overload;
};

/// Four-way classification: A/B from half cycles (end of loading, onset of
/// unloading), C/D from full cycles whose corrected amplitude exceeds its
/// successor/predecessor. Union deduplicated, sorted by reversal index.
OverloadSet identify_overloads(const ReversalSequence& reversals, const RainflowSet& rainflow,
                               const std::vector<double>& sigma_ar);

/// N_eq* = N_c * exp(alpha)
double equilibrium_period(double alpha, const RetardationParams& params);

/// sigma_Rd* = rho_ol * sigma_ol * exp(N / N_eq* * log(r))
double dynamic_residual_stress(double n_since_overload, double sigma_ol, double alpha,
                               const RetardationParams& params);

/// sigma_rar = max(0, sigma_ar - sigma_Rd*), with N counted in cycle
/// ordinals since the most recent overload; a new overload cancels the
/// previous residual stress immediately.
RetardedAmplitudeSeries apply_retardation(const RainflowSet& rainflow,
                                          const std::vector<double>& sigma_ar,
                                          const OverloadSet& overloads,
                                          const RetardationParams& params);

}  // namespace fatigue
