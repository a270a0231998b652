#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dd/filter_function.hpp"
#include "dd/pulse_sequence.hpp"
#include "doctest.h"

using namespace dd;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Distance from omega_t to the nearest zero of cos(c * omega_t), i.e. to the
// nearest odd multiple of pi / (2c).
double distance_to_denominator_zero(double omega_t, double c) {
  const double period = std::numbers::pi / c;
  const double first = period / 2.0;
  const double k = std::round((omega_t - first) / period);
  return std::abs(omega_t - (first + k * period));
}

}  // namespace

TEST_SUITE_BEGIN("filter_function");

TEST_CASE("free evolution anchor") {
  const PulseSequence none = custom_sequence({});
  CHECK(filter_numeric(none, std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(filter_numeric(none, 0.0) == doctest::Approx(0.0));
  // Hahn echo closed form 8 sin^4(wt/4).
  const PulseSequence hahn = build_cpmg(1);
  for (double wt : {0.3, 1.7, 9.2}) {
    const double expected = 8.0 * std::pow(std::sin(wt / 4.0), 4);
    CHECK(filter_numeric(hahn, wt) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("filter accepts only nonnegative phase") {
  CHECK_THROWS_AS(filter_numeric(build_cpmg(2), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(filter_designed3(30, 0.3, -1.0), std::invalid_argument);
}

TEST_CASE("designed3 closed form matches the numeric filter") {
  CHECK(filter_designed3(30, 1.0 / 3.0, 1.0) ==
        doctest::Approx(filter_numeric(build_cpmg(30), 1.0)).epsilon(1e-9));
  CHECK(filter_designed3(30, 0.3, 0.0) == doctest::Approx(0.0));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> draw_r(0.02, 0.48);
  const int ns[] = {6, 12, 30, 60};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = ns[trial % 4];
    const double r = draw_r(rng);
    const auto seq = build_designed3(n, r);
    std::uniform_real_distribution<double> draw_wt(0.0, kTwoPi * n);
    for (int pt = 0; pt < 50; ++pt) {
      const double wt = draw_wt(rng);
      if (distance_to_denominator_zero(wt, 3.0 / (2.0 * n)) < 1e-4) continue;
      const double analytic = filter_designed3(n, r, wt);
      const double numeric = filter_numeric(seq, wt);
      CHECK(std::abs(analytic - numeric) <= 1e-9 * std::max(1.0, numeric));
    }
  }
}

TEST_CASE("designed5 closed form matches the numeric filter") {
  CHECK(filter_designed5(30, 0.2, 0.4, 1.0) ==
        doctest::Approx(filter_numeric(build_cpmg(30), 1.0)).epsilon(1e-9));
  CHECK(filter_designed5(30, 0.15, 0.425, 0.0) == doctest::Approx(0.0));

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> draw(0.02, 0.48);
  const int ns[] = {10, 20, 30, 60};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = ns[trial % 4];
    double p = draw(rng), q = draw(rng);
    if (p > q) std::swap(p, q);
    if (p == q) continue;
    const auto seq = build_designed5(n, p, q);
    std::uniform_real_distribution<double> draw_wt(0.0, kTwoPi * n);
    for (int pt = 0; pt < 50; ++pt) {
      const double wt = draw_wt(rng);
      if (distance_to_denominator_zero(wt, 5.0 / (2.0 * n)) < 1e-4) continue;
      const double analytic = filter_designed5(n, p, q, wt);
      const double numeric = filter_numeric(seq, wt);
      CHECK(std::abs(analytic - numeric) <= 1e-9 * std::max(1.0, numeric));
    }
  }
}

TEST_CASE("filters are nonnegative") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> draw_wt(0.0, 300.0);
  const auto seq = build_designed3(30, 0.29);
  for (int i = 0; i < 500; ++i) {
    CHECK(filter_numeric(seq, draw_wt(rng)) >= 0.0);
    CHECK(filter_designed3(30, 0.29, draw_wt(rng)) >= 0.0);
    CHECK(filter_designed5(30, 0.11, 0.37, draw_wt(rng)) >= 0.0);
  }
}

TEST_CASE("peak height closed forms") {
  CHECK(peak_height3(30, 1.0 / 3.0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(peak_height3(30, 1.0 / 3.0, 2) == doctest::Approx(1800.0).epsilon(1e-12));
  CHECK(peak_height3(30, 0.3, 1) == doctest::Approx(6.16500041604).epsilon(1e-10));
  CHECK(peak_height3(30, 7.0 / 38.0, 1) ==
        doctest::Approx(90.9449872512).epsilon(1e-10));
  CHECK(peak_height5(30, 1.0 / 5.0, 2.0 / 5.0, 1) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(peak_height5(30, 0.15, 0.425, 1) ==
        doctest::Approx(7.14974954265).epsilon(1e-10));
  // squared factor vanishes whenever the brace does
  CHECK(peak_height5(10, 1.0 / 5.0, 2.0 / 5.0, 1) <= 1e-24);
}

TEST_CASE("peak height parameter validation") {
  CHECK_THROWS_AS(peak_height3(31, 0.3, 1), std::invalid_argument);
  CHECK_THROWS_AS(peak_height3(30, 0.3, 0), std::invalid_argument);
  CHECK_THROWS_AS(peak_height5(30, 0.4, 0.2, 1), std::invalid_argument);
}

TEST_CASE("peak height n^2 scaling holds to the last bit") {
  // The ratio h / n^2 is a multiply-then-divide round trip, so it may sit one
  // ulp off the n-independent factor; assert adjacency, not identity.
  const auto within_one_ulp = [](double a, double b) {
    return a == b || std::nextafter(a, b) == b;
  };
  for (double r : {0.3, 7.0 / 38.0, 5.0 / 18.0, 0.41}) {
    const double base = peak_height3(6, r, 1) / (6 * 6);
    for (int n : {12, 30, 60})
      CHECK(within_one_ulp(peak_height3(n, r, 1) / (n * n), base));
  }
  for (int k : {1, 2, 3}) {
    const double base = peak_height5(10, 0.15, 0.425, k) / (10 * 10);
    for (int n : {20, 30, 60})
      CHECK(within_one_ulp(peak_height5(n, 0.15, 0.425, k) / (n * n), base));
  }
}

TEST_CASE("dominant peak positions") {
  CHECK(dominant_peak_position(SequenceFamily::designed3, 30, 1) == 5.0);
  CHECK(dominant_peak_position(SequenceFamily::cpmg, 30, 1) == 15.0);
  CHECK(dominant_peak_position(SequenceFamily::designed5, 30, 1) == 3.0);
  CHECK(dominant_peak_position(SequenceFamily::cpmg, 30, 2) == 45.0);
  CHECK_THROWS_AS(dominant_peak_position(SequenceFamily::custom, 30, 1),
                  std::invalid_argument);
}

TEST_CASE("locate_peak_numeric finds the designed peaks") {
  const auto d3 = locate_peak_numeric(build_designed3(30, 0.3), 4.0, 6.0);
  CHECK(std::abs(d3.center_omega_t_over_2pi - 5.0) <= 0.05);
  CHECK(d3.height == doctest::Approx(peak_height3(30, 0.3, 1)).epsilon(0.01));
  CHECK(d3.width_at_half_max > 0.0);

  const auto cp15 = locate_peak_numeric(build_cpmg(30), 14.0, 16.0);
  CHECK(std::abs(cp15.center_omega_t_over_2pi - 15.0) <= 0.05);
  CHECK(cp15.height == doctest::Approx(1805.995).epsilon(0.005));

  // The (3/20, 17/40) first lobe is skewed: F passes through the Eq-5 value
  // at x = 3 but keeps rising to its true maximum near x = 3.18.
  const auto d5 = locate_peak_numeric(build_designed5(30, 0.15, 0.425), 2.0, 4.0);
  CHECK(d5.center_omega_t_over_2pi == doctest::Approx(3.18041).epsilon(2e-3));
  CHECK(d5.height == doctest::Approx(8.0225).epsilon(2e-3));
  const double at_position =
      filter_designed5(30, 0.15, 0.425, kTwoPi * 3.0);
  CHECK(at_position ==
        doctest::Approx(peak_height5(30, 0.15, 0.425, 1)).epsilon(1e-3));

  // CPMG has no dominant peak near n/6: everything in that window stays small.
  const auto cp = locate_peak_numeric(build_cpmg(30), 4.0, 6.0);
  CHECK(cp.height < 0.5);
}

// The k = 1 lobe maximum drifts off the closed-form position (and above the
// closed-form height) in proportion to the bracket slope there; the formulas
// describe the lobe only where it is symmetric to first order. These proxies
// measure that slope in omega_t/2pi units so draws can stay in that region.
namespace {

double lobe_skew3(int n, double r) {
  const double pi = std::numbers::pi;
  const double b = 0.5 - std::cos(pi * r);
  const double db = -1.5 * pi / n + (6.0 * pi * r / n) * std::sin(pi * r);
  return std::abs(db / b);
}

double lobe_skew5(int n, double p, double q) {
  const double pi = std::numbers::pi;
  const double b = 0.5 - std::cos(pi * p) + std::cos(pi * q);
  const double db = 2.5 * pi / n + (10.0 * pi * p / n) * std::sin(pi * p) -
                    (10.0 * pi * q / n) * std::sin(pi * q);
  return std::abs(db / b);
}

}  // namespace

TEST_CASE("locate_peak_numeric matches the height formulas on random draws") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> draw(0.02, 0.48);
  const int n3[] = {6, 12, 30, 60};
  int done = 0;
  while (done < 25) {
    const int n = n3[static_cast<unsigned>(rng()) % 4];
    const double r = draw(rng);
    if (peak_height3(n, r, 1) < 1.0) continue;
    if (lobe_skew3(n, r) > 0.15) continue;
    const double pos = dominant_peak_position(SequenceFamily::designed3, n, 1);
    const auto peak = locate_peak_numeric(build_designed3(n, r), pos - 1.0, pos + 1.0);
    CHECK(peak.height == doctest::Approx(peak_height3(n, r, 1)).epsilon(0.01));
    CHECK(std::abs(peak.center_omega_t_over_2pi - pos) < 0.1);
    ++done;
  }
  const int n5[] = {10, 20, 30, 60};
  done = 0;
  while (done < 25) {
    const int n = n5[static_cast<unsigned>(rng()) % 4];
    double p = draw(rng), q = draw(rng);
    if (p >= q) continue;
    if (peak_height5(n, p, q, 1) < 1.0) continue;
    if (lobe_skew5(n, p, q) > 0.15) continue;
    const double pos = dominant_peak_position(SequenceFamily::designed5, n, 1);
    const auto peak =
        locate_peak_numeric(build_designed5(n, p, q), pos - 1.0, pos + 1.0);
    CHECK(peak.height == doctest::Approx(peak_height5(n, p, q, 1)).epsilon(0.01));
    CHECK(std::abs(peak.center_omega_t_over_2pi - pos) < 0.1);
    ++done;
  }
}

TEST_CASE("locate_peak_numeric raises on an empty window") {
  // The filter of any sequence vanishes like (wt)^2 near zero, so a window
  // tight around the origin has no sample above threshold.
  CHECK_THROWS_AS(locate_peak_numeric(build_cpmg(30), 0.0, 1e-9), NoPeakError);
}

TEST_CASE("degenerate families agree away from singularities") {
  std::mt19937 rng(29);
  const int n = 30;
  std::uniform_real_distribution<double> draw_wt(0.0, kTwoPi * n);
  const auto cp = build_cpmg(n);
  for (int i = 0; i < 200; ++i) {
    const double wt = draw_wt(rng);
    if (distance_to_denominator_zero(wt, 3.0 / (2.0 * n)) < 1e-4) continue;
    if (distance_to_denominator_zero(wt, 5.0 / (2.0 * n)) < 1e-4) continue;
    const double reference = filter_numeric(cp, wt);
    CHECK(std::abs(filter_designed3(n, 1.0 / 3.0, wt) - reference) <=
          1e-9 * std::max(1.0, reference));
    CHECK(std::abs(filter_designed5(n, 0.2, 0.4, wt) - reference) <=
          1e-9 * std::max(1.0, reference));
  }
}

TEST_SUITE_END();
