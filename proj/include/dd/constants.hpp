#pragma once

namespace dd {

// Physical constants in SI units, frozen in one place.
// gamma_e is the CODATA 2018 electron gyromagnetic ratio; gamma_c13 follows
// the 13C value gamma/2pi = 10.7084 MHz/T; the lattice constant is the
// conventional diamond cubic cell edge.
struct PhysicalConstants {
  double gamma_e = 1.76085963052e11;    // electron gyromagnetic ratio [rad s^-1 T^-1]
  double gamma_c13 = 6.728284e7;        // 13C gyromagnetic ratio [rad s^-1 T^-1]
  double mu0_over_4pi = 1e-7;           // mu0 / 4pi [T m A^-1]
  double hbar = 1.054571817e-34;        // reduced Planck constant [J s]
  double lattice_constant = 3.567e-10;  // diamond cubic cell edge [m]
};

}  // namespace dd
