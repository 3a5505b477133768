#pragma once

#include <cstdint>
#include <vector>

#include "fatigue/rainflow.hpp"

namespace fatigue {

struct ClosureParams {
    double c_f0 = 0.3;  // initial crack closure factor, (0, 1)
};

/// Single-edge crack in three-point bending (S/W = 4). Stress is the outer
/// fiber bending stress at the crack plane.
struct CrackGeometry {
    double width = 0.012;       // W, m
    double initial_a = 1.27e-3; // m
    double final_a = 6.0e-3;    // m
};

struct ParisLaw {
    double c = 1.42e-11;  // m/cycle at Delta K in MPa sqrt(m)
    double m = 3.59;      // Al 2024-T3 handbook values
};

struct TabularRateRow {
    double delta_k;  // MPa sqrt(m)
    double dadn;     // m/cycle
    double r_ratio;
};

struct GrowthLaw {
    enum class Kind { paris, tabular } kind = Kind::paris;
    ParisLaw paris;
    std::vector<TabularRateRow> table;  // sorted by (r_ratio, delta_k)
    double delta_k_ic = 37.0;           // fracture toughness, MPa sqrt(m)
};

struct SimOptions {
    double r_h = 0.7;                   // effective-R case threshold
    double k_op_relax_cycles = 30.0;    // opening-SIF relaxation constant
    std::uint64_t max_cycles = 50'000'000;
    std::size_t history_stride = 0;     // 0: record per block
};

enum class SimTermination { reached_final_a, fracture_toughness_exceeded, spectrum_exhausted,
                            crack_arrested };

struct SimResult {
    double ctf = 0.0;  // cycles
    std::vector<std::pair<double, double>> crack_history;  // (cycle, a)
    SimTermination termination = SimTermination::reached_final_a;
};

/// Closure factor C_f = 1 - (1 - C_f0)(1 + 0.6 R)(1 - R).
double closure_factor(double r_ratio, double c_f0);

/// Boundary-correction factor F(a/W) for the SE(B) geometry; valid a/W <= 0.6.
double sif_correction(double a_over_w);

/// K = stress * sqrt(pi a) * F(a/W), stress in MPa, a in m.
double sif(const CrackGeometry& geometry, double a, double stress);

/// Cycle-by-cycle crack-closure propagation. The reversal block is applied
/// repeatedly until the crack reaches final_a or a termination event fires.
SimResult simulate(const ReversalSequence& reversals, const CrackGeometry& geometry,
                   const GrowthLaw& growth, const ClosureParams& closure,
                   const SimOptions& options = {});

}  // namespace fatigue
