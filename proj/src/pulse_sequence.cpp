#include "dd/pulse_sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace dd {

std::string family_name(SequenceFamily family) {
  switch (family) {
    case SequenceFamily::cpmg: return "cpmg";
    case SequenceFamily::designed3: return "designed3";
    case SequenceFamily::designed5: return "designed5";
    case SequenceFamily::custom: return "custom";
  }
  throw std::invalid_argument("family_name: unknown family tag");
}

SequenceFamily family_from_name(const std::string& name) {
  if (name == "cpmg") return SequenceFamily::cpmg;
  if (name == "designed3") return SequenceFamily::designed3;
  if (name == "designed5") return SequenceFamily::designed5;
  if (name == "custom") return SequenceFamily::custom;
  throw std::invalid_argument("unknown sequence family: " + name);
}

namespace {

void check_fractions(const std::vector<double>& fractions) {
  double prev = 0.0;
  for (double f : fractions) {
    if (!(f > prev && f < 1.0))
      throw std::invalid_argument(
          "pulse fractions must be strictly increasing within (0,1)");
    prev = f;
  }
}

}  // namespace

PulseSequence build_cpmg(int n) {
  if (n < 1) throw std::invalid_argument("build_cpmg: n must be >= 1");
  PulseSequence seq;
  seq.spec = {SequenceFamily::cpmg, n, 0.0, 0.0, 0.0};
  seq.fractions.reserve(n);
  for (int j = 0; j < n; ++j)
    seq.fractions.push_back((2 * j + 1) / (2.0 * n));
  return seq;
}

PulseSequence build_designed3(int n, double r) {
  if (n < 6 || n % 6 != 0)
    throw std::invalid_argument("build_designed3: n must be divisible by 6");
  if (!(r > 0.0 && r < 0.5))
    throw std::invalid_argument("build_designed3: r must lie in (0, 1/2)");
  PulseSequence seq;
  seq.spec = {SequenceFamily::designed3, n, r, 0.0, 0.0};
  seq.fractions.reserve(n);
  // Offsets held in units of t/n so that r = 1/3 lands bit-exactly on the
  // cpmg fractions (3 * (1/3) rounds to 1.0 and integer/2 halves are exact).
  const double offset = 3.0 * r;
  for (int u = 0; u < n / 3; ++u) {
    const double center = (3 * (2 * u + 1)) / 2.0;
    seq.fractions.push_back((center - offset) / n);
    seq.fractions.push_back(center / n);
    seq.fractions.push_back((center + offset) / n);
  }
  check_fractions(seq.fractions);
  return seq;
}

PulseSequence build_designed5(int n, double p, double q) {
  if (n < 10 || n % 10 != 0)
    throw std::invalid_argument("build_designed5: n must be divisible by 10");
  if (!(p > 0.0 && p < q && q < 0.5))
    throw std::invalid_argument("build_designed5: need 0 < p < q < 1/2");
  PulseSequence seq;
  seq.spec = {SequenceFamily::designed5, n, 0.0, p, q};
  seq.fractions.reserve(n);
  const double po = 5.0 * p;
  const double qo = 5.0 * q;
  for (int u = 0; u < n / 5; ++u) {
    const double center = (5 * (2 * u + 1)) / 2.0;
    seq.fractions.push_back((center - qo) / n);
    seq.fractions.push_back((center - po) / n);
    seq.fractions.push_back(center / n);
    seq.fractions.push_back((center + po) / n);
    seq.fractions.push_back((center + qo) / n);
  }
  check_fractions(seq.fractions);
  return seq;
}

PulseSequence build_sequence(const SequenceSpec& spec) {
  switch (spec.family) {
    case SequenceFamily::cpmg: return build_cpmg(spec.n);
    case SequenceFamily::designed3: return build_designed3(spec.n, spec.r);
    case SequenceFamily::designed5:
      return build_designed5(spec.n, spec.p, spec.q);
    case SequenceFamily::custom:
      throw std::invalid_argument(
          "build_sequence: custom sequences need explicit fractions");
  }
  throw std::invalid_argument("build_sequence: unknown family tag");
}

PulseSequence custom_sequence(std::vector<double> fractions) {
  check_fractions(fractions);
  PulseSequence seq;
  seq.spec = {SequenceFamily::custom, static_cast<int>(fractions.size()), 0.0,
              0.0, 0.0};
  seq.fractions = std::move(fractions);
  return seq;
}

int switching_value(const PulseSequence& seq, double s) {
  if (!(s >= 0.0 && s <= 1.0))
    throw std::invalid_argument("switching_value: s must lie in [0, 1]");
  const auto first_not_less =
      std::lower_bound(seq.fractions.begin(), seq.fractions.end(), s);
  const auto flips = first_not_less - seq.fractions.begin();
  return (flips % 2 == 0) ? 1 : -1;
}

}  // namespace dd
