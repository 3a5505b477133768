#include "fatigue/overload.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fatigue {

OverloadSet identify_overloads(const ReversalSequence& reversals, const RainflowSet& rainflow,
                               const std::vector<double>& sigma_ar) {
    if (sigma_ar.size() != rainflow.cycles.size())
        throw std::invalid_argument("identify_overloads: sigma_ar misaligned with cycles");

    std::map<std::size_t, OverloadClass> found;  // reversal index -> first class
    auto add = [&](std::size_t idx, OverloadClass cls) { found.emplace(idx, cls); };

    const auto& cycles = rainflow.cycles;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        const auto& c = cycles[i];
        if (!c.is_full()) {
            if (c.onset_is_odd())
                add(c.end_index, OverloadClass::A);  // loading half: peak at its end
            else
                add(c.onset_index, OverloadClass::B);  // unloading half: peak at onset
        } else {
            if (c.onset_is_odd()) {
                if (i + 1 < cycles.size() && sigma_ar[i] > sigma_ar[i + 1])
                    add(c.end_index, OverloadClass::C);
            } else {
                if (i > 0 && sigma_ar[i] > sigma_ar[i - 1])
                    add(c.onset_index, OverloadClass::D);
            }
        }
    }

    OverloadSet set;
    const auto& v = reversals.values;
    for (const auto& [idx, cls] : found) {
        OverloadRecord rec;
        rec.reversal_index = idx;
        rec.cls = cls;
        // next peak sits two reversals further (alternating sequence)
        if (idx + 2 < v.size()) {
            rec.sigma_ol = std::max(0.0, v[idx] - v[idx + 2]);
            rec.alpha = (v[idx] > 0.0 && v[idx + 2] > 0.0) ? v[idx] / v[idx + 2] : 1.0;
        } else {
            rec.sigma_ol = 0.0;
            rec.alpha = 1.0;  // no successor peak
        }
        set.records.push_back(rec);
    }
    return set;
}

double equilibrium_period(double alpha, const RetardationParams& params) {
    if (params.n_c <= 0.0) throw std::invalid_argument("equilibrium_period: N_c > 0 required");
    return params.n_c * std::exp(alpha);
}

double dynamic_residual_stress(double n_since_overload, double sigma_ol, double alpha,
                               const RetardationParams& params) {
    if (n_since_overload < 0.0)
        throw std::invalid_argument("dynamic_residual_stress: N >= 0 required");
    if (params.rho_ol < 0.0 || params.r <= 0.0 || params.r >= 1.0)
        throw std::invalid_argument("dynamic_residual_stress: bad params");
    const double n_eq = equilibrium_period(alpha, params);
    return params.rho_ol * sigma_ol * std::exp(n_since_overload / n_eq * std::log(params.r));
}

RetardedAmplitudeSeries apply_retardation(const RainflowSet& rainflow,
                                          const std::vector<double>& sigma_ar,
                                          const OverloadSet& overloads,
                                          const RetardationParams& params) {
    if (sigma_ar.size() != rainflow.cycles.size())
        throw std::invalid_argument("apply_retardation: sigma_ar misaligned with cycles");

    RetardedAmplitudeSeries out;
    out.sigma_ar = sigma_ar;
    out.sigma_rar = sigma_ar;
    out.active_overload.assign(sigma_ar.size(), std::nullopt);

    if (overloads.empty()) return out;

    // Map each overload to the first cycle ordinal it governs.
    std::vector<std::size_t> first_cycle(overloads.size());
    {
        std::size_t c = 0;
        for (std::size_t k = 0; k < overloads.size(); ++k) {
            while (c < rainflow.cycles.size() &&
                   rainflow.cycles[c].onset_index < overloads.records[k].reversal_index)
                ++c;
            first_cycle[k] = c;
        }
    }

    std::size_t next = 0;
    std::optional<std::size_t> active;
    for (std::size_t c = 0; c < rainflow.cycles.size(); ++c) {
        // newest overload at or before this cycle wins
        while (next < overloads.size() && first_cycle[next] <= c) active = next++;
        if (!active) continue;
        const auto& ol = overloads.records[*active];
        const double n = static_cast<double>(c - first_cycle[*active]);
        const double rd = dynamic_residual_stress(n, ol.sigma_ol, ol.alpha, params);
        out.sigma_rar[c] = std::max(0.0, sigma_ar[c] - rd);
        out.active_overload[c] = *active;
    }
    return out;
}

}  // namespace fatigue
