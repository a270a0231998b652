#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "dd/exec.hpp"
#include "dd/pulse_sequence.hpp"
#include "dd/spin_bath.hpp"

namespace dd {

// Axis-angle rotation; axis is unit length and angle lies in [0, 2pi]
// (the antipodal identity reports exactly 2pi, everything else < 2pi).
struct Rotation {
  double angle = 0.0;
  std::array<double, 3> axis{0.0, 0.0, 1.0};
};

// Nuclear rotation accumulated over `duration` conditioned on the electron
// branch: state 0 precesses at omega0 about z, state 1 at omega1 about the
// tilted unit axis (a_perp, 0, omega0 + a_par) / omega1.
Rotation conditioned_rotation(const NuclearSpin& spin, double b_field,
                              double duration, int electron_state,
                              const PhysicalConstants& c = {});

// Stretched-exponential envelope exp[-(t/t2)^stretch]; t2 may be infinite.
struct DecayEnvelope {
  double t2 = std::numeric_limits<double>::infinity();  // [s]
  double stretch = 3.0;

  double operator()(double t) const;
};

// Single-spin coherence modulation M = Re Tr(U0 U1^dag) / 2, where U0 and U1
// are the branch propagators composed from conditioned rotations over the
// inter-pulse intervals (branch 0 sees electron states 0,1,0,... and branch 1
// the complement). Computed in quaternion form; M is in [-1, 1] and equals 1
// for an uncoupled spin or zero time.
double spin_coherence(const NuclearSpin& spin, double b_field,
                      const PulseSequence& seq, double total_time,
                      const PhysicalConstants& c = {});

// Independent-spin product times the decay envelope:
// L = prod_j M_j * exp[-(t/t2)^stretch].
double total_coherence(const std::vector<NuclearSpin>& bath, double b_field,
                       const PulseSequence& seq, double total_time,
                       const DecayEnvelope& envelope,
                       const PhysicalConstants& c = {});

// Discrete-spectrum overlap: L = exp[- sum_j (weight_j/pi) F(omega_j t) / omega_j^2].
// Heuristic counterpart of the quantum product; requires total_time > 0.
double semiclassical_coherence(const std::vector<SpectrumPeak>& spectrum,
                               const PulseSequence& seq, double total_time);

enum class Engine { quantum, semiclassical };

std::string engine_name(Engine engine);
Engine engine_from_name(const std::string& name);

struct CurveMetadata {
  SequenceSpec seq;
  std::string bath_id;
  DecayEnvelope envelope;
  double b_field = 0.0;
  Engine engine = Engine::quantum;
};

// Sampled L(tau) with tau = t/n strictly increasing.
struct CoherenceCurve {
  std::vector<double> tau_values;  // [s]
  std::vector<double> l_values;
  CurveMetadata meta;
};

// Uniform tau grid over [tau_min, tau_max] with total_time = n * tau per point.
CoherenceCurve coherence_curve(const std::vector<NuclearSpin>& bath,
                               double b_field, const SequenceSpec& spec,
                               double tau_min, double tau_max, int steps,
                               const DecayEnvelope& envelope, Engine engine,
                               const PhysicalConstants& c = {},
                               Exec exec = Exec::parallel);

}  // namespace dd
