#pragma once

#include <string>
#include <vector>

namespace dd {

enum class SequenceFamily { cpmg, designed3, designed5, custom };

std::string family_name(SequenceFamily family);
SequenceFamily family_from_name(const std::string& name);

// Family tag plus the parameters that define a built-in sequence.
// r applies to designed3, (p, q) to designed5.
struct SequenceSpec {
  SequenceFamily family = SequenceFamily::cpmg;
  int n = 0;
  double r = 0.0;
  double p = 0.0;
  double q = 0.0;
};

// Ideal zero-width pi pulses at fixed fractions of the total evolution time.
// Invariants: fractions strictly increasing, all in (0,1), size == spec.n;
// built-in families are time symmetric, fraction[i] + fraction[n-1-i] == 1.
struct PulseSequence {
  SequenceSpec spec;
  std::vector<double> fractions;

  int pulse_count() const { return static_cast<int>(fractions.size()); }
};

// n uniformly spaced pulses: fraction[j] = (2j+1) / (2n).
PulseSequence build_cpmg(int n);

// n/3 units of length 3t/n; per unit the middle pulse sits at the unit center
// and the outer pulses at center -+ 3r/n. r = 1/3 reproduces build_cpmg(n)
// element-wise exactly. Requires n divisible by 6 and 0 < r < 1/2.
PulseSequence build_designed3(int n, double r);

// n/10 units of length 5t/n with pulses at center + {-5q, -5p, 0, +5p, +5q}/n.
// p = 1/5, q = 2/5 reproduces build_cpmg(n) exactly. Requires n divisible by
// 10 and 0 < p < q < 1/2.
PulseSequence build_designed5(int n, double p, double q);

PulseSequence build_sequence(const SequenceSpec& spec);

// Validates and wraps an arbitrary increasing fraction list.
PulseSequence custom_sequence(std::vector<double> fractions);

// Modulation sign at fraction s of the evolution: +1 before the first pulse,
// flipping at every pulse. Equals (-1)^(number of fractions strictly below s).
int switching_value(const PulseSequence& seq, double s);

}  // namespace dd
