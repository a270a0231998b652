#pragma once

#include <utility>
#include <vector>

#include "dd/coherence.hpp"

namespace dd {

struct Dip {
  double tau_center = 0.0;  // [s], deepest point of the merged dip
  double depth = 0.0;       // baseline - L_min, in [0, 2]
  double width = 0.0;       // [s], extent at half depth
  std::string zone_label;   // "I", "II", ... by tau order
};

// Finds local minima lying at least min_depth below the local baseline. The
// baseline is the upper envelope interpolated linearly through local maxima
// (curve endpoints always anchor it). Sub-threshold minima closer than one
// dip width merge into a single Dip centered at the deepest point.
std::vector<Dip> detect_dips(const CoherenceCurve& curve, double min_depth);

// Envelope-free dip depth of a single spin: 1 - min M(tau) over the window
// tau_res * [1/2, 3/2] around the k = 1 resonance, where tau_res solves
// wbar * n * tau = 2pi * dominant_peak_position(family, n, 1) with wbar the
// mean of the conditional frequencies. The cpmg family uses its own k = 1
// position n/2.
double signal_magnitude(const NuclearSpin& spin, double b_field,
                        const SequenceSpec& spec,
                        const PhysicalConstants& c = {});

// Same scan with an explicit peak position (omega_t / 2pi units); lets tests
// and the degeneracy checks pin the window independently of the family tag.
double magnitude_in_window(const NuclearSpin& spin, double b_field,
                           const PulseSequence& seq, double peak_position,
                           const PhysicalConstants& c = {});

// signal_magnitude of the designed3 family across an r grid.
std::vector<std::pair<double, double>> magnitude_vs_r(
    const NuclearSpin& spin, double b_field, int n,
    const std::vector<double>& r_grid, const PhysicalConstants& c = {},
    Exec exec = Exec::parallel);

// Dip depth over nuclear positions (d_par, d_perp); values[i][j] is the
// magnitude of the spin at (d_par_axis[i], d_perp_axis[j]).
struct MagnitudeMap {
  std::vector<double> d_par_axis;           // [m]
  std::vector<double> d_perp_axis;          // [m]
  std::vector<std::vector<double>> values;  // [i_par][j_perp]
  SequenceSpec seq;
  double b_field = 0.0;
  bool is_difference = false;
  SequenceSpec seq_b;  // subtrahend parameters when is_difference
};

MagnitudeMap magnitude_map(double b_field, const SequenceSpec& spec,
                           const std::vector<double>& d_par_axis,
                           const std::vector<double>& d_perp_axis,
                           const PhysicalConstants& c = {},
                           Exec exec = Exec::parallel);

// Element-wise a - b; axes must match exactly.
MagnitudeMap map_difference(const MagnitudeMap& a, const MagnitudeMap& b);

struct OptimizeResult {
  SequenceSpec best;
  double score = 0.0;
  double target_magnitude = 0.0;
  double max_interferer_magnitude = 0.0;
};

// Exhaustive grid search over r (designed3) or the p < q simplex (designed5)
// on the interior grid {1/2 * i / (grid_resolution + 1)}. Score is
// magnitude(target) - suppression_weight * max_i magnitude(interferer_i);
// ties break deterministically toward the smallest r, then p, then q.
OptimizeResult optimize_params(const NuclearSpin& target,
                               const std::vector<NuclearSpin>& interferers,
                               double b_field, SequenceFamily family, int n,
                               int grid_resolution, double suppression_weight,
                               const PhysicalConstants& c = {},
                               Exec exec = Exec::parallel);

}  // namespace dd
