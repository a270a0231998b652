#include "dd/spin_bath.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dd {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-site uniform variate in [0, 1), independent of enumeration order.
double site_variate(std::uint64_t seed, int ci, int cj, int ck, int m) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(ci)));
  h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(cj)));
  h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(ck)));
  h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(m)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// fcc lattice with a two-atom basis, in units of the cubic cell edge.
constexpr std::array<std::array<double, 3>, 8> kDiamondBasis{{
    {0.00, 0.00, 0.00},
    {0.00, 0.50, 0.50},
    {0.50, 0.00, 0.50},
    {0.50, 0.50, 0.00},
    {0.25, 0.25, 0.25},
    {0.25, 0.75, 0.75},
    {0.75, 0.25, 0.75},
    {0.75, 0.75, 0.25},
}};

struct CandidateSite {
  double dist;
  double theta;
  int ci, cj, ck, m;
};

bool site_order(const CandidateSite& a, const CandidateSite& b) {
  if (a.dist != b.dist) return a.dist < b.dist;
  if (a.ci != b.ci) return a.ci < b.ci;
  if (a.cj != b.cj) return a.cj < b.cj;
  if (a.ck != b.ck) return a.ck < b.ck;
  return a.m < b.m;
}

}  // namespace

std::pair<double, double> hyperfine_from_geometry(double d, double theta,
                                                  const PhysicalConstants& c) {
  if (!(d > 0.0))
    throw std::invalid_argument("hyperfine_from_geometry: d must be > 0");
  if (!(theta >= 0.0 && theta <= kPi))
    throw std::invalid_argument("hyperfine_from_geometry: theta must lie in [0, pi]");
  const double b =
      c.mu0_over_4pi * c.hbar * c.gamma_e * c.gamma_c13 / (d * d * d);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  return {b * (3.0 * ct * ct - 1.0), std::abs(3.0 * b * st * ct)};
}

NuclearSpin spin_from_geometry(double d, double theta,
                               const PhysicalConstants& c) {
  const auto [a_par, a_perp] = hyperfine_from_geometry(d, theta, c);
  return {a_par, a_perp, SpinGeometry{d, theta}};
}

double larmor_frequency(double b_field, const PhysicalConstants& c) {
  if (!(b_field >= 0.0))
    throw std::invalid_argument("larmor_frequency: B must be >= 0");
  return c.gamma_c13 * b_field;
}

std::pair<double, double> effective_frequencies(const NuclearSpin& spin,
                                                double b_field,
                                                const PhysicalConstants& c) {
  const double omega0 = larmor_frequency(b_field, c);
  const double omega1 = std::hypot(omega0 + spin.a_par, spin.a_perp);
  return {omega0, omega1};
}

std::vector<NuclearSpin> sample_bath(std::uint64_t seed, double abundance,
                                     double shell_min, double shell_max,
                                     double coupling_cutoff,
                                     const PhysicalConstants& c, Exec exec) {
  if (!(abundance > 0.0 && abundance < 1.0))
    throw std::invalid_argument("sample_bath: abundance must lie in (0, 1)");
  if (!(shell_min > 0.0 && shell_min < shell_max))
    throw std::invalid_argument("sample_bath: need 0 < shell_min < shell_max");
  if (!(coupling_cutoff > 0.0))
    throw std::invalid_argument("sample_bath: coupling_cutoff must be > 0");

  const double a = c.lattice_constant;
  const int rmax = static_cast<int>(std::ceil(shell_max / a)) + 1;
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);

  std::vector<CandidateSite> sites;
  const auto scan_cell_plane = [&](int ci, std::vector<CandidateSite>& out) {
    for (int cj = -rmax; cj <= rmax; ++cj) {
      for (int ck = -rmax; ck <= rmax; ++ck) {
        for (int m = 0; m < 8; ++m) {
          const double x = (ci + kDiamondBasis[m][0]) * a;
          const double y = (cj + kDiamondBasis[m][1]) * a;
          const double z = (ck + kDiamondBasis[m][2]) * a;
          const double dist = std::sqrt(x * x + y * y + z * z);
          if (dist < shell_min || dist > shell_max) continue;
          if (site_variate(seed, ci, cj, ck, m) >= abundance) continue;
          // NV axis along [111].
          const double cos_theta =
              std::clamp((x + y + z) * inv_sqrt3 / dist, -1.0, 1.0);
          out.push_back({dist, std::acos(cos_theta), ci, cj, ck, m});
        }
      }
    }
  };

  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      std::vector<CandidateSite> local;
#pragma omp for schedule(static) nowait
      for (int ci = -rmax; ci <= rmax; ++ci) scan_cell_plane(ci, local);
#pragma omp critical
      sites.insert(sites.end(), local.begin(), local.end());
    }
  } else {
    for (int ci = -rmax; ci <= rmax; ++ci) scan_cell_plane(ci, sites);
  }
  std::sort(sites.begin(), sites.end(), site_order);

  std::vector<NuclearSpin> bath;
  bath.reserve(sites.size());
  for (const auto& site : sites) {
    NuclearSpin spin = spin_from_geometry(site.dist, site.theta, c);
    if (std::abs(spin.a_par) > coupling_cutoff || spin.a_perp > coupling_cutoff)
      continue;
    bath.push_back(spin);
  }
  return bath;
}

std::vector<SpectrumPeak> noise_spectrum(const std::vector<NuclearSpin>& bath,
                                         double b_field,
                                         const PhysicalConstants& c) {
  std::vector<SpectrumPeak> peaks;
  peaks.reserve(bath.size());
  for (const auto& spin : bath) {
    const auto [omega0, omega1] = effective_frequencies(spin, b_field, c);
    peaks.push_back(
        {0.5 * (omega0 + omega1), kSpectrumWeightScale * spin.a_perp * spin.a_perp});
  }
  std::sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) {
    return a.omega != b.omega ? a.omega < b.omega : a.weight < b.weight;
  });
  return peaks;
}

}  // namespace dd
