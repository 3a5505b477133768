#include "fatigue/rainflow.hpp"

#include <algorithm>
#include <cmath>

namespace fatigue {

ReversalSequence find_reversals(const LoadHistory& load) {
    const auto& x = load.samples;
    if (x.size() < 3) throw std::invalid_argument("find_reversals: need >= 3 samples");

    ReversalSequence seq;
    int prev_dir = 0;            // direction of the last non-zero step
    std::size_t turn_start = 0;  // first sample of the current plateau/turn

    for (std::size_t i = 1; i < x.size(); ++i) {
        const double d = x[i] - x[i - 1];
        if (d == 0.0) continue;  // plateau: keep the first plateau sample
        const int dir = d > 0.0 ? 1 : -1;
        if (prev_dir != 0 && dir != prev_dir) {
            seq.values.push_back(x[turn_start]);
            seq.source_indices.push_back(turn_start);
        }
        prev_dir = dir;
        turn_start = i;
    }

    // drop a leading maximum so the sequence starts at a minimum
    if (seq.values.size() >= 2 && seq.values[0] > seq.values[1]) {
        seq.values.erase(seq.values.begin());
        seq.source_indices.erase(seq.source_indices.begin());
    }
    if (seq.values.size() == 1) {  // a lone maximum carries no cycle content
        seq.values.clear();
        seq.source_indices.clear();
    }
    seq.starts_with_minimum = !seq.empty();
    return seq;
}

RainflowSet rainflow_count(const ReversalSequence& reversals) {
    if (reversals.size() < 2) throw std::invalid_argument("rainflow_count: need >= 2 reversals");

    const auto& v = reversals.values;
    RainflowSet set;
    set.total_excursions = reversals.size() - 1;

    auto emit = [&](std::size_t onset, std::size_t end, double count) {
        CycleRecord c;
        c.onset_index = onset;
        c.end_index = end;
        c.range = std::abs(v[end] - v[onset]);
        c.mean = 0.5 * (v[end] + v[onset]);
        c.count = count;
        set.cycles.push_back(c);
    };

    // One-pass four-point extraction; ranges touching the sequence start are
    // never closed here and fall through to the residue.
    std::vector<std::size_t> stack;
    for (std::size_t j = 0; j < reversals.size(); ++j) {
        stack.push_back(j);
        while (stack.size() >= 4) {
            const std::size_t n = stack.size();
            const double r_prev = std::abs(v[stack[n - 3]] - v[stack[n - 4]]);
            const double r_mid = std::abs(v[stack[n - 2]] - v[stack[n - 3]]);
            const double r_next = std::abs(v[stack[n - 1]] - v[stack[n - 2]]);
            if (r_mid > r_prev || r_mid > r_next) break;
            emit(stack[n - 3], stack[n - 2], 1.0);
            stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(n - 3),
                        stack.begin() + static_cast<std::ptrdiff_t>(n - 1));
        }
    }

    // Residue: successive loading/unloading excursion pairs become full
    // cycles; a trailing unpaired excursion is a half cycle.
    std::size_t j = 0;
    while (j + 2 < stack.size()) {
        emit(stack[j], stack[j + 1], 1.0);
        j += 2;
    }
    if (j + 1 < stack.size()) emit(stack[j], stack[j + 1], 0.5);

    std::sort(set.cycles.begin(), set.cycles.end(),
              [](const CycleRecord& a, const CycleRecord& b) { return a.onset_index < b.onset_index; });
    return set;
}

std::vector<double> mean_stress_correct(const RainflowSet& cycles, const WalkerConfig& cfg) {
    if (cfg.gamma <= 0.0 || cfg.gamma > 1.0)
        throw std::invalid_argument("mean_stress_correct: gamma in (0, 1] required");
    std::vector<double> sigma_ar;
    sigma_ar.reserve(cycles.cycles.size());
    for (const auto& c : cycles.cycles) {
        const double sigma_max = c.mean + 0.5 * c.range;
        const double operand = cfg.operand == WalkerOperand::mean ? c.mean : 0.5 * c.range;
        const double prod = sigma_max * operand;
        sigma_ar.push_back(prod > 0.0 ? std::pow(prod, cfg.gamma) : 0.0);
    }
    return sigma_ar;
}

}  // namespace fatigue
