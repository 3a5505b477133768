#pragma once

#include <cstddef>
#include <vector>

#include "fatigue/load_history.hpp"

namespace fatigue {

/// Strictly alternating local extrema of a load history. Per the min-first
/// cycle convention the first retained reversal is a local minimum; any
/// leading maximum and non-extremal boundary samples are dropped.
struct ReversalSequence {
    std::vector<double> values;
    std::vector<std::size_t> source_indices;  // into LoadHistory::samples
    bool starts_with_minimum = false;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    /// Under min-first, maxima sit at odd 0-based ordinals.
    bool is_peak(std::size_t ordinal) const { return ordinal % 2 == 1; }
};

/// One counted cycle with provenance into the reversal sequence.
/// onset_is_odd uses 1-based reversal numbering: an odd onset
/// is a loading (min->max) excursion under the min-first convention.
struct CycleRecord {
    double range = 0.0;
    double mean = 0.0;
    double count = 1.0;  // 1.0 full, 0.5 half
    std::size_t onset_index = 0;  // reversal ordinal where the cycle starts
    std::size_t end_index = 0;

    bool onset_is_odd() const { return onset_index % 2 == 0; }  // 1-based odd
    bool is_full() const { return count == 1.0; }
};

/// Rainflow decomposition sorted by onset ordinal. total_excursions is the
/// number of reversal-to-reversal excursions consumed; every cycle consumes
/// two (full) or one (half), so 2 * sum(count) == total_excursions.
struct RainflowSet {
    std::vector<CycleRecord> cycles;
    std::size_t total_excursions = 0;

    double total_count() const {
        double s = 0.0;
        for (const auto& c : cycles) s += c.count;
        return s;
    }
};

ReversalSequence find_reversals(const LoadHistory& load);

/// ASTM E1049-style counting adapted to the min-first convention: interior
/// cycles closed by the four-point rule are full cycles; the leftover
/// residue is folded pairwise into full cycles with a final unpaired
/// excursion counted as a half cycle.
RainflowSet rainflow_count(const ReversalSequence& reversals);

enum class WalkerOperand { mean, amplitude };

struct WalkerConfig {
    double gamma = 0.5;
    WalkerOperand operand = WalkerOperand::mean;
};

/// Walker mean-stress correction sigma_ar = (sigma_max * sigma_m)^gamma,
/// evaluated per cycle; zero whenever the product is non-positive.
std::vector<double> mean_stress_correct(const RainflowSet& cycles, const WalkerConfig& cfg);

}  // namespace fatigue
