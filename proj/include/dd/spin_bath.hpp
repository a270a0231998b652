#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "dd/constants.hpp"
#include "dd/exec.hpp"

namespace dd {

struct SpinGeometry {
  double d = 0.0;      // sensor-nucleus distance [m]
  double theta = 0.0;  // inclination of the bond vector from the NV axis [rad]
};

// Hyperfine pair in angular frequency units. a_perp >= 0 (the phase convention
// absorbs its sign); a_par may have either sign.
struct NuclearSpin {
  double a_par = 0.0;   // [rad/s]
  double a_perp = 0.0;  // [rad/s]
  std::optional<SpinGeometry> origin;
};

// One discrete line of the bath noise spectrum,
// S(w) = sum_j weight_j * delta(w - omega_j).
struct SpectrumPeak {
  double omega = 0.0;   // [rad/s]
  double weight = 0.0;  // [rad^2 s^-2]
};

// Point-dipole couplings: b = (mu0/4pi) hbar gamma_e gamma_c13 / d^3,
// a_par = b (3 cos^2 theta - 1), a_perp = |3 b sin theta cos theta|.
// Scales exactly as d^-3: doubling d divides both components by 8.
std::pair<double, double> hyperfine_from_geometry(double d, double theta,
                                                  const PhysicalConstants& c = {});

NuclearSpin spin_from_geometry(double d, double theta,
                               const PhysicalConstants& c = {});

double larmor_frequency(double b_field, const PhysicalConstants& c = {});

// Conditional nuclear precession frequencies: omega0 = gamma_c13 B for the
// electron in m_s = 0, omega1 = sqrt((omega0 + a_par)^2 + a_perp^2) for m_s = 1.
std::pair<double, double> effective_frequencies(const NuclearSpin& spin,
                                                double b_field,
                                                const PhysicalConstants& c = {});

// Spins with |a_par| or a_perp above this are dropped by sample_bath; the
// strongly coupled shell is resolved by level splitting instead of DD.
inline constexpr double kDefaultCouplingCutoff = 2.0 * std::numbers::pi * 200e3;

// Enumerates diamond-lattice sites (fcc + two-atom basis, NV axis along [111])
// with distance in [shell_min, shell_max] from the sensor, keeps each site
// independently with probability `abundance`, and converts survivors to spins
// via hyperfine_from_geometry. Inclusion decisions are hashed per site from
// the seed, so the result is deterministic and independent of enumeration
// order; output is sorted by distance, then lexicographic site index.
std::vector<NuclearSpin> sample_bath(std::uint64_t seed, double abundance,
                                     double shell_min, double shell_max,
                                     double coupling_cutoff = kDefaultCouplingCutoff,
                                     const PhysicalConstants& c = {},
                                     Exec exec = Exec::parallel);

// Line weight per spin: (pi/8) a_perp^2. A precessing unpolarized spin-1/2
// acts as a classical field of amplitude a_perp/2, whose one-sided spectrum
// carries delta weight pi b^2 / 2. Any monotone function of a_perp^2 gives
// the same qualitative spectrum; this one makes the semiclassical coherence
// match the weak-coupling quantum dip scale.
inline constexpr double kSpectrumWeightScale = std::numbers::pi / 8.0;

// One peak per spin at the mean conditional frequency (omega0 + omega1) / 2,
// sorted by omega ascending.
std::vector<SpectrumPeak> noise_spectrum(const std::vector<NuclearSpin>& bath,
                                         double b_field,
                                         const PhysicalConstants& c = {});

}  // namespace dd
