#pragma once

namespace dd {

// Grid-style kernels come in two flavors: a serial reference and an OpenMP
// version. Every kernel is a pure function evaluated independently per grid
// point, so both flavors must produce bit-identical results; the test suite
// compares them directly and the benchmark tool times them against each other.
enum class Exec { serial, parallel };

}  // namespace dd
