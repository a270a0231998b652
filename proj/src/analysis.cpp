#include "dd/analysis.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dd/filter_function.hpp"

namespace dd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMagnitudeScanSamples = 2001;

std::string roman_numeral(int value) {
  static constexpr std::pair<int, const char*> units[] = {
      {1000, "M"}, {900, "CM"}, {500, "D"}, {400, "CD"}, {100, "C"},
      {90, "XC"},  {50, "L"},   {40, "XL"}, {10, "X"},   {9, "IX"},
      {5, "V"},    {4, "IV"},   {1, "I"}};
  std::string out;
  for (const auto& [base, glyph] : units) {
    while (value >= base) {
      out += glyph;
      value -= base;
    }
  }
  return out;
}

struct Candidate {
  int index;
  double tau;
  double depth;
  double left;   // half-depth extent
  double right;
};

}  // namespace

std::vector<Dip> detect_dips(const CoherenceCurve& curve, double min_depth) {
  const auto& tau = curve.tau_values;
  const auto& level = curve.l_values;
  const int count = static_cast<int>(tau.size());
  if (count < 3)
    throw std::invalid_argument("detect_dips: curve needs at least 3 points");
  if (!(min_depth >= 0.0))
    throw std::invalid_argument("detect_dips: min_depth must be >= 0");

  // Upper envelope through local maxima; endpoints always anchor it.
  std::vector<int> anchors{0};
  for (int i = 1; i + 1 < count; ++i)
    if (level[i] >= level[i - 1] && level[i] >= level[i + 1]) anchors.push_back(i);
  anchors.push_back(count - 1);

  std::vector<double> baseline(count);
  for (std::size_t a = 0; a + 1 < anchors.size(); ++a) {
    const int lo = anchors[a];
    const int hi = anchors[a + 1];
    for (int i = lo; i <= hi; ++i) {
      const double t = (hi == lo) ? 0.0
                                  : (tau[i] - tau[lo]) / (tau[hi] - tau[lo]);
      baseline[i] = level[lo] + t * (level[hi] - level[lo]);
    }
  }

  std::vector<double> residual(count);
  for (int i = 0; i < count; ++i)
    residual[i] = std::max(baseline[i] - level[i], 0.0);

  // Sub-threshold local minima of L with their half-depth extents.
  std::vector<Candidate> candidates;
  for (int i = 1; i + 1 < count; ++i) {
    if (!(level[i] < level[i - 1] && level[i] <= level[i + 1])) continue;
    if (residual[i] < min_depth) continue;
    const double half = residual[i] / 2.0;
    double left = tau.front();
    for (int j = i; j > 0; --j) {
      if (residual[j - 1] < half && residual[j] >= half) {
        const double t = (half - residual[j - 1]) / (residual[j] - residual[j - 1]);
        left = tau[j - 1] + t * (tau[j] - tau[j - 1]);
        break;
      }
    }
    double right = tau.back();
    for (int j = i; j + 1 < count; ++j) {
      if (residual[j + 1] < half && residual[j] >= half) {
        const double t = (half - residual[j + 1]) / (residual[j] - residual[j + 1]);
        right = tau[j + 1] - t * (tau[j + 1] - tau[j]);
        break;
      }
    }
    candidates.push_back({i, tau[i], residual[i], left, right});
  }

  // Merge neighbors closer than one dip width; the deepest point wins and the
  // merged width is the union of the half-depth extents.
  std::vector<Dip> dips;
  std::size_t i = 0;
  while (i < candidates.size()) {
    Candidate merged = candidates[i];
    double deepest = merged.depth;
    std::size_t j = i + 1;
    while (j < candidates.size()) {
      const Candidate& next = candidates[j];
      const double gap = next.tau - candidates[j - 1].tau;
      const double width_scale =
          std::max(merged.right - merged.left, next.right - next.left);
      if (gap > width_scale) break;
      merged.left = std::min(merged.left, next.left);
      merged.right = std::max(merged.right, next.right);
      if (next.depth > deepest) {
        deepest = next.depth;
        merged.tau = next.tau;
        merged.index = next.index;
      }
      ++j;
    }
    Dip dip;
    dip.tau_center = merged.tau;
    dip.depth = deepest;
    dip.width = std::max(merged.right - merged.left, 0.0);
    dips.push_back(dip);
    i = j;
  }

  for (std::size_t z = 0; z < dips.size(); ++z)
    dips[z].zone_label = roman_numeral(static_cast<int>(z) + 1);
  return dips;
}

double magnitude_in_window(const NuclearSpin& spin, double b_field,
                           const PulseSequence& seq, double peak_position,
                           const PhysicalConstants& c) {
  if (!(peak_position > 0.0))
    throw std::invalid_argument("magnitude_in_window: peak_position must be > 0");
  const auto [omega0, omega1] = effective_frequencies(spin, b_field, c);
  const double wbar = 0.5 * (omega0 + omega1);
  if (!(wbar > 0.0)) return 0.0;

  const int n = seq.pulse_count();
  const double tau_res = kTwoPi * peak_position / (n * wbar);
  double min_m = 1.0;
  for (int i = 0; i < kMagnitudeScanSamples; ++i) {
    const double tau =
        tau_res * (0.5 + static_cast<double>(i) / (kMagnitudeScanSamples - 1));
    min_m = std::min(min_m, spin_coherence(spin, b_field, seq, n * tau, c));
  }
  return 1.0 - min_m;
}

double signal_magnitude(const NuclearSpin& spin, double b_field,
                        const SequenceSpec& spec, const PhysicalConstants& c) {
  const PulseSequence seq = build_sequence(spec);
  const double position = dominant_peak_position(spec.family, spec.n, 1);
  return magnitude_in_window(spin, b_field, seq, position, c);
}

std::vector<std::pair<double, double>> magnitude_vs_r(
    const NuclearSpin& spin, double b_field, int n,
    const std::vector<double>& r_grid, const PhysicalConstants& c, Exec exec) {
  for (double r : r_grid)
    if (!(r > 0.0 && r < 0.5))
      throw std::invalid_argument("magnitude_vs_r: r values must lie in (0, 1/2)");

  std::vector<std::pair<double, double>> series(r_grid.size());
  const auto evaluate = [&](int i) {
    const SequenceSpec spec{SequenceFamily::designed3, n, r_grid[i], 0.0, 0.0};
    series[i] = {r_grid[i], signal_magnitude(spin, b_field, spec, c)};
  };
  const int count = static_cast<int>(r_grid.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) evaluate(i);
  } else {
    for (int i = 0; i < count; ++i) evaluate(i);
  }
  return series;
}

MagnitudeMap magnitude_map(double b_field, const SequenceSpec& spec,
                           const std::vector<double>& d_par_axis,
                           const std::vector<double>& d_perp_axis,
                           const PhysicalConstants& c, Exec exec) {
  const auto check_axis = [](const std::vector<double>& axis, const char* name) {
    if (axis.empty())
      throw std::invalid_argument(std::string("magnitude_map: empty axis ") + name);
    double prev = 0.0;
    for (double v : axis) {
      if (!(v > prev))
        throw std::invalid_argument(
            std::string("magnitude_map: axis must be positive and strictly "
                        "increasing: ") +
            name);
      prev = v;
    }
  };
  check_axis(d_par_axis, "d_par");
  check_axis(d_perp_axis, "d_perp");
  build_sequence(spec);  // validate parameters before the sweep

  MagnitudeMap map;
  map.d_par_axis = d_par_axis;
  map.d_perp_axis = d_perp_axis;
  map.seq = spec;
  map.b_field = b_field;
  const int rows = static_cast<int>(d_par_axis.size());
  const int cols = static_cast<int>(d_perp_axis.size());
  map.values.assign(rows, std::vector<double>(cols, 0.0));

  const auto evaluate = [&](int i, int j) {
    const double d = std::hypot(d_par_axis[i], d_perp_axis[j]);
    const double theta = std::atan2(d_perp_axis[j], d_par_axis[i]);
    const NuclearSpin spin = spin_from_geometry(d, theta, c);
    map.values[i][j] = signal_magnitude(spin, b_field, spec, c);
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) evaluate(i, j);
  } else {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) evaluate(i, j);
  }
  return map;
}

MagnitudeMap map_difference(const MagnitudeMap& a, const MagnitudeMap& b) {
  if (a.d_par_axis != b.d_par_axis || a.d_perp_axis != b.d_perp_axis)
    throw std::invalid_argument("map_difference: axes do not match");
  MagnitudeMap diff = a;
  diff.is_difference = true;
  diff.seq_b = b.seq;
  for (std::size_t i = 0; i < diff.values.size(); ++i)
    for (std::size_t j = 0; j < diff.values[i].size(); ++j)
      diff.values[i][j] = a.values[i][j] - b.values[i][j];
  return diff;
}

OptimizeResult optimize_params(const NuclearSpin& target,
                               const std::vector<NuclearSpin>& interferers,
                               double b_field, SequenceFamily family, int n,
                               int grid_resolution, double suppression_weight,
                               const PhysicalConstants& c, Exec exec) {
  if (grid_resolution < 10)
    throw std::invalid_argument("optimize_params: grid_resolution must be >= 10");
  if (!(suppression_weight >= 0.0))
    throw std::invalid_argument("optimize_params: suppression_weight must be >= 0");

  std::vector<SequenceSpec> grid;
  const auto grid_value = [&](int i) {
    return 0.5 * i / (grid_resolution + 1);
  };
  if (family == SequenceFamily::designed3) {
    for (int i = 1; i <= grid_resolution; ++i)
      grid.push_back({family, n, grid_value(i), 0.0, 0.0});
  } else if (family == SequenceFamily::designed5) {
    for (int i = 1; i <= grid_resolution; ++i)
      for (int j = i + 1; j <= grid_resolution; ++j)
        grid.push_back({family, n, 0.0, grid_value(i), grid_value(j)});
  } else {
    throw std::invalid_argument(
        "optimize_params: family must be designed3 or designed5");
  }
  if (grid.empty()) throw std::invalid_argument("optimize_params: empty grid");

  struct Scored {
    double score, target_mag, worst;
  };
  std::vector<Scored> scored(grid.size());
  const auto evaluate = [&](int i) {
    const double mag = signal_magnitude(target, b_field, grid[i], c);
    double worst = 0.0;
    for (const auto& interferer : interferers)
      worst = std::max(worst, signal_magnitude(interferer, b_field, grid[i], c));
    scored[i] = {mag - suppression_weight * worst, mag, worst};
  };
  const int count = static_cast<int>(grid.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) evaluate(i);
  } else {
    for (int i = 0; i < count; ++i) evaluate(i);
  }

  // The grid is ordered by ascending r (then p, then q), so keeping the first
  // strict maximum realizes the smallest-parameter tie-break.
  int best = 0;
  for (int i = 1; i < count; ++i)
    if (scored[i].score > scored[best].score) best = i;

  return {grid[best], scored[best].score, scored[best].target_mag,
          scored[best].worst};
}

}  // namespace dd
