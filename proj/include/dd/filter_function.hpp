#pragma once

#include <stdexcept>

#include "dd/pulse_sequence.hpp"

namespace dd {

// Dimensionless filter amplitude at phase omega_t = w * t, defined with
// boundary fractions s_0 = 0, s_{n+1} = 1 as
//   F = 1/2 | sum_j (-1)^j (e^{i wt s_{j+1}} - e^{i wt s_j}) |^2 .
// Free evolution (no pulses) gives F = 2 sin^2(wt/2).
double filter_numeric(const PulseSequence& seq, double omega_t);

// Closed form for the three-pulse-unit family,
//   F = 8 sin^2(wt/2) / cos^2(3wt/2n) * (cos^2(3wt/4n) - cos(3r wt/n))^2 .
// The zeros of the cosine denominator are removable; within 1e-9 of one the
// value is taken as the average of the evaluations at omega_t -+ 1e-6.
double filter_designed3(int n, double r, double omega_t);

// Five-pulse-unit closed form,
//   F = 8 sin^2(wt/2) / cos^2(5wt/2n) * (sin^2(5wt/4n) - cos(5p wt/n) + cos(5q wt/n))^2 ,
// with the same removable-singularity handling.
double filter_designed5(int n, double p, double q, double omega_t);

// Height of the k-th dominant peak, (2/9) n^2 (1 - 2 cos((2k-1) pi r))^2.
double peak_height3(int n, double r, int k);

// Height of the k-th dominant peak,
// (2/25) n^2 (1 - 2 cos((2k-1) pi p) + 2 cos((2k-1) pi q))^2.
double peak_height5(int n, double p, double q, int k);

// Center of the k-th dominant peak in units of omega_t / 2pi:
// (2k-1) n/2 for cpmg, (2k-1) n/6 for designed3, (2k-1) n/10 for designed5.
double dominant_peak_position(SequenceFamily family, int n, int k);

struct PeakReport {
  int k = 1;
  double center_omega_t_over_2pi = 0.0;
  double height = 0.0;
  double width_at_half_max = 0.0;  // same omega_t / 2pi units as the center
};

struct NoPeakError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maximum of filter_numeric over a window given in omega_t / 2pi units:
// dense scan (2000 samples per window unit, at least 2001 total) followed by
// golden-section refinement to relative position tolerance 1e-8. Width is the
// full width at half maximum from linear interpolation between scan samples.
// Throws NoPeakError if no sample exceeds 1e-12.
PeakReport locate_peak_numeric(const PulseSequence& seq, double window_lo,
                               double window_hi);

}  // namespace dd
