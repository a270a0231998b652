#include "dd/coherence.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dd/filter_function.hpp"

namespace dd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unit quaternion (w, v) standing for the SU(2) rotation by angle phi about
// unit axis n: w = cos(phi/2), v = sin(phi/2) n. The branch overlap
// Re Tr(U0 U1^dag)/2 is the plain four-component dot product.
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;
};

inline Quat qmul(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline double qdot(const Quat& a, const Quat& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

struct SpinFrame {
  double omega0 = 0.0;
  double omega1 = 0.0;
  double ax = 0.0;  // tilted axis, x component (y is zero by convention)
  double az = 1.0;
};

SpinFrame spin_frame(const NuclearSpin& spin, double b_field,
                     const PhysicalConstants& c) {
  SpinFrame f;
  const auto [w0, w1] = effective_frequencies(spin, b_field, c);
  f.omega0 = w0;
  f.omega1 = w1;
  if (w1 > 0.0) {
    f.ax = spin.a_perp / w1;
    f.az = (w0 + spin.a_par) / w1;
  }
  return f;
}

inline Quat z_rotation(double angle) {
  return {std::cos(angle / 2.0), 0.0, 0.0, std::sin(angle / 2.0)};
}

inline Quat tilted_rotation(double angle, const SpinFrame& f) {
  const double h = angle / 2.0;
  const double s = std::sin(h);
  return {std::cos(h), s * f.ax, 0.0, s * f.az};
}

void check_envelope(const DecayEnvelope& envelope) {
  if (!(envelope.t2 > 0.0))
    throw std::invalid_argument("DecayEnvelope: t2 must be > 0");
  if (!(envelope.stretch > 0.0))
    throw std::invalid_argument("DecayEnvelope: stretch must be > 0");
}

}  // namespace

Rotation conditioned_rotation(const NuclearSpin& spin, double b_field,
                              double duration, int electron_state,
                              const PhysicalConstants& c) {
  if (!(duration >= 0.0))
    throw std::invalid_argument("conditioned_rotation: duration must be >= 0");
  if (electron_state != 0 && electron_state != 1)
    throw std::invalid_argument("conditioned_rotation: electron_state must be 0 or 1");

  const SpinFrame f = spin_frame(spin, b_field, c);
  const double rate = (electron_state == 0) ? f.omega0 : f.omega1;
  const Quat q = (electron_state == 0)
                     ? z_rotation(rate * duration)
                     : tilted_rotation(rate * duration, f);

  // Canonical axis-angle: half-angle from atan2 keeps the quaternion intact
  // while mapping the angle into [0, 2pi].
  Rotation rot;
  const double norm = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  rot.angle = 2.0 * std::atan2(norm, q.w);
  if (norm > 0.0)
    rot.axis = {q.x / norm, q.y / norm, q.z / norm};
  else
    rot.axis = {0.0, 0.0, 1.0};
  return rot;
}

double DecayEnvelope::operator()(double t) const {
  return std::exp(-std::pow(t / t2, stretch));
}

double spin_coherence(const NuclearSpin& spin, double b_field,
                      const PulseSequence& seq, double total_time,
                      const PhysicalConstants& c) {
  if (!(total_time >= 0.0))
    throw std::invalid_argument("spin_coherence: total_time must be >= 0");
  if (total_time == 0.0) return 1.0;

  const SpinFrame f = spin_frame(spin, b_field, c);

  // Built-in families repeat at most a few distinct gap lengths; caching the
  // per-duration rotation pair skips most of the trig.
  struct Entry {
    double dt;
    Quat q0, q1;
  };
  constexpr int kCacheCap = 8;
  Entry cache[kCacheCap];
  int cached = 0;

  Quat u0, u1;
  double prev = 0.0;
  int state = 0;
  const int n = seq.pulse_count();
  for (int j = 0; j <= n; ++j) {
    const double next = (j < n) ? seq.fractions[j] : 1.0;
    const double dt = (next - prev) * total_time;
    prev = next;

    const Quat* q0 = nullptr;
    const Quat* q1 = nullptr;
    for (int i = 0; i < cached; ++i) {
      if (cache[i].dt == dt) {
        q0 = &cache[i].q0;
        q1 = &cache[i].q1;
        break;
      }
    }
    Quat fresh0, fresh1;
    if (q0 == nullptr) {
      fresh0 = z_rotation(f.omega0 * dt);
      fresh1 = tilted_rotation(f.omega1 * dt, f);
      if (cached < kCacheCap) {
        cache[cached] = {dt, fresh0, fresh1};
        ++cached;
      }
      q0 = &fresh0;
      q1 = &fresh1;
    }

    if (state == 0) {
      u0 = qmul(*q0, u0);
      u1 = qmul(*q1, u1);
    } else {
      u0 = qmul(*q1, u0);
      u1 = qmul(*q0, u1);
    }
    state ^= 1;
  }
  return qdot(u0, u1);
}

double total_coherence(const std::vector<NuclearSpin>& bath, double b_field,
                       const PulseSequence& seq, double total_time,
                       const DecayEnvelope& envelope,
                       const PhysicalConstants& c) {
  check_envelope(envelope);
  double product = 1.0;
  for (const auto& spin : bath)
    product *= spin_coherence(spin, b_field, seq, total_time, c);
  return product * envelope(total_time);
}

double semiclassical_coherence(const std::vector<SpectrumPeak>& spectrum,
                               const PulseSequence& seq, double total_time) {
  if (!(total_time > 0.0))
    throw std::invalid_argument("semiclassical_coherence: total_time must be > 0");
  double chi = 0.0;
  for (const auto& peak : spectrum) {
    chi += peak.weight / std::numbers::pi *
           filter_numeric(seq, peak.omega * total_time) /
           (peak.omega * peak.omega);
  }
  return std::exp(-chi);
}

std::string engine_name(Engine engine) {
  return engine == Engine::quantum ? "quantum" : "semiclassical";
}

Engine engine_from_name(const std::string& name) {
  if (name == "quantum") return Engine::quantum;
  if (name == "semiclassical") return Engine::semiclassical;
  throw std::invalid_argument("unknown engine: " + name);
}

CoherenceCurve coherence_curve(const std::vector<NuclearSpin>& bath,
                               double b_field, const SequenceSpec& spec,
                               double tau_min, double tau_max, int steps,
                               const DecayEnvelope& envelope, Engine engine,
                               const PhysicalConstants& c, Exec exec) {
  if (!(tau_min >= 0.0 && tau_min < tau_max))
    throw std::invalid_argument("coherence_curve: need 0 <= tau_min < tau_max");
  if (steps < 2) throw std::invalid_argument("coherence_curve: steps must be >= 2");
  if (engine == Engine::semiclassical && tau_min <= 0.0)
    throw std::invalid_argument(
        "coherence_curve: semiclassical engine needs tau_min > 0");
  check_envelope(envelope);

  const PulseSequence seq = build_sequence(spec);
  const std::vector<SpectrumPeak> spectrum =
      (engine == Engine::semiclassical) ? noise_spectrum(bath, b_field, c)
                                        : std::vector<SpectrumPeak>{};

  CoherenceCurve curve;
  curve.meta = {spec, "", envelope, b_field, engine};
  curve.tau_values.resize(steps);
  curve.l_values.resize(steps);
  for (int i = 0; i < steps; ++i)
    curve.tau_values[i] = tau_min + (tau_max - tau_min) * i / (steps - 1);

  const auto evaluate = [&](int i) {
    const double t = spec.n * curve.tau_values[i];
    if (engine == Engine::quantum) {
      double product = 1.0;
      for (const auto& spin : bath)
        product *= spin_coherence(spin, b_field, seq, t, c);
      curve.l_values[i] = product * envelope(t);
    } else {
      curve.l_values[i] = semiclassical_coherence(spectrum, seq, t) * envelope(t);
    }
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < steps; ++i) evaluate(i);
  } else {
    for (int i = 0; i < steps; ++i) evaluate(i);
  }
  return curve;
}

}  // namespace dd
