#include "dd/filter_function.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace dd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSingularCos = 1e-9;  // |cos| below this counts as a zero
constexpr double kSingularEps = 1e-6;  // offset used to straddle the zero

double square(double x) { return x * x; }

void check_designed3_params(int n, double r) {
  if (n < 6 || n % 6 != 0)
    throw std::invalid_argument("filter_designed3: n must be divisible by 6");
  if (!(r > 0.0 && r < 0.5))
    throw std::invalid_argument("filter_designed3: r must lie in (0, 1/2)");
}

void check_designed5_params(int n, double p, double q) {
  if (n < 10 || n % 10 != 0)
    throw std::invalid_argument("filter_designed5: n must be divisible by 10");
  if (!(p > 0.0 && p < q && q < 0.5))
    throw std::invalid_argument("filter_designed5: need 0 < p < q < 1/2");
}

double designed3_direct(int n, double r, double wt) {
  const double s = std::sin(wt / 2.0);
  const double den = std::cos(3.0 * wt / (2.0 * n));
  const double bracket =
      square(std::cos(3.0 * wt / (4.0 * n))) - std::cos(3.0 * r * wt / n);
  return 8.0 * s * s / (den * den) * square(bracket);
}

double designed5_direct(int n, double p, double q, double wt) {
  const double s = std::sin(wt / 2.0);
  const double den = std::cos(5.0 * wt / (2.0 * n));
  const double bracket = square(std::sin(5.0 * wt / (4.0 * n))) -
                         std::cos(5.0 * p * wt / n) +
                         std::cos(5.0 * q * wt / n);
  return 8.0 * s * s / (den * den) * square(bracket);
}

}  // namespace

double filter_numeric(const PulseSequence& seq, double omega_t) {
  if (!(omega_t >= 0.0))
    throw std::invalid_argument("filter_numeric: omega_t must be >= 0");
  // The phasor sum telescopes to boundary terms plus twice the alternating
  // sum over pulse times.
  std::complex<double> acc(-1.0, 0.0);
  double sign = 2.0;
  for (double s : seq.fractions) {
    acc += sign * std::polar(1.0, omega_t * s);
    sign = -sign;
  }
  const double boundary = (seq.pulse_count() % 2 == 0) ? 1.0 : -1.0;
  acc += boundary * std::polar(1.0, omega_t);
  return 0.5 * std::norm(acc);
}

double filter_designed3(int n, double r, double omega_t) {
  check_designed3_params(n, r);
  if (!(omega_t >= 0.0))
    throw std::invalid_argument("filter_designed3: omega_t must be >= 0");
  if (std::abs(std::cos(3.0 * omega_t / (2.0 * n))) < kSingularCos)
    return 0.5 * (designed3_direct(n, r, omega_t - kSingularEps) +
                  designed3_direct(n, r, omega_t + kSingularEps));
  return designed3_direct(n, r, omega_t);
}

double filter_designed5(int n, double p, double q, double omega_t) {
  check_designed5_params(n, p, q);
  if (!(omega_t >= 0.0))
    throw std::invalid_argument("filter_designed5: omega_t must be >= 0");
  if (std::abs(std::cos(5.0 * omega_t / (2.0 * n))) < kSingularCos)
    return 0.5 * (designed5_direct(n, p, q, omega_t - kSingularEps) +
                  designed5_direct(n, p, q, omega_t + kSingularEps));
  return designed5_direct(n, p, q, omega_t);
}

double peak_height3(int n, double r, int k) {
  check_designed3_params(n, r);
  if (k < 1) throw std::invalid_argument("peak_height3: k must be >= 1");
  const double g = 1.0 - 2.0 * std::cos((2 * k - 1) * std::numbers::pi * r);
  // n-independent factor first so that h / n^2 is reproducible across n.
  return ((2.0 / 9.0) * square(g)) * (n * n);
}

double peak_height5(int n, double p, double q, int k) {
  check_designed5_params(n, p, q);
  if (k < 1) throw std::invalid_argument("peak_height5: k must be >= 1");
  const double g = 1.0 - 2.0 * std::cos((2 * k - 1) * std::numbers::pi * p) +
                   2.0 * std::cos((2 * k - 1) * std::numbers::pi * q);
  return ((2.0 / 25.0) * square(g)) * (n * n);
}

double dominant_peak_position(SequenceFamily family, int n, int k) {
  if (n < 1) throw std::invalid_argument("dominant_peak_position: n must be >= 1");
  if (k < 1) throw std::invalid_argument("dominant_peak_position: k must be >= 1");
  switch (family) {
    case SequenceFamily::cpmg: return (2 * k - 1) * n / 2.0;
    case SequenceFamily::designed3: return (2 * k - 1) * n / 6.0;
    case SequenceFamily::designed5: return (2 * k - 1) * n / 10.0;
    case SequenceFamily::custom: break;
  }
  throw std::invalid_argument(
      "dominant_peak_position: no closed form for this family");
}

PeakReport locate_peak_numeric(const PulseSequence& seq, double window_lo,
                               double window_hi) {
  if (!(window_lo >= 0.0 && window_hi > window_lo))
    throw std::invalid_argument(
        "locate_peak_numeric: need 0 <= window_lo < window_hi");

  const double span = window_hi - window_lo;
  const int samples =
      std::max(2001, static_cast<int>(std::ceil(2000.0 * span)) + 1);
  std::vector<double> xs(samples), fs(samples);
  int best = 0;
  for (int i = 0; i < samples; ++i) {
    xs[i] = window_lo + span * i / (samples - 1);
    fs[i] = filter_numeric(seq, kTwoPi * xs[i]);
    if (fs[i] > fs[best]) best = i;
  }
  if (fs[best] <= 1e-12)
    throw NoPeakError("locate_peak_numeric: no sample above 1e-12 in window");

  // Golden-section refinement around the best sample.
  double a = xs[std::max(0, best - 1)];
  double b = xs[std::min(samples - 1, best + 1)];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = filter_numeric(seq, kTwoPi * x1);
  double f2 = filter_numeric(seq, kTwoPi * x2);
  const double tol = 1e-8 * std::max(1.0, std::abs(xs[best]));
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = filter_numeric(seq, kTwoPi * x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = filter_numeric(seq, kTwoPi * x1);
    }
  }
  const double center = 0.5 * (a + b);
  const double height =
      std::max({fs[best], f1, f2, filter_numeric(seq, kTwoPi * center)});

  // Full width at half maximum from the scan, linear interpolation at the
  // crossings; clamps to the window if the level is never reached.
  const double half = height / 2.0;
  double left = window_lo;
  for (int i = best; i > 0; --i) {
    if (fs[i - 1] < half && fs[i] >= half) {
      const double t = (half - fs[i - 1]) / (fs[i] - fs[i - 1]);
      left = xs[i - 1] + t * (xs[i] - xs[i - 1]);
      break;
    }
  }
  double right = window_hi;
  for (int i = best; i < samples - 1; ++i) {
    if (fs[i + 1] < half && fs[i] >= half) {
      const double t = (half - fs[i + 1]) / (fs[i] - fs[i + 1]);
      right = xs[i + 1] - t * (xs[i + 1] - xs[i]);
      break;
    }
  }

  PeakReport report;
  report.k = 1;
  report.center_omega_t_over_2pi = center;
  report.height = height;
  report.width_at_half_max = std::max(right - left, 0.0);
  return report;
}

}  // namespace dd
