#pragma once

// Physical constants for the NV + 13C bath simulator.
//
// Unit conventions used throughout the library:
//   * energies / frequencies are angular (rad/s) unless a name carries _hz
//   * lengths are meters, magnetic fields are tesla, times are seconds
//   * hbar = 1 for all Hamiltonians (energies stored as angular frequencies)

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dnp {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * kPi;

// reduced Planck constant [J s] and vacuum permeability over 4 pi [T m / A]
inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kMu0Over4Pi = 1.0e-7;

struct PhysicalConstants {
  double D = kTwoPi * 2.870e9;     // NV ground-state zero-field splitting [rad/s]
  double g = 2.003;                // electron Lande factor
  double muB = 9.2740100783e-24;   // Bohr magneton [J/T]
  double gammaC = 6.728e7;         // 13C gyromagnetic ratio [rad/(s T)]
  double a0 = 0.3567e-9;           // diamond cubic lattice constant [m]
  double abundance = 0.011;        // natural 13C abundance

  // electron gyromagnetic ratio g*muB/hbar [rad/(s T)]
  double gamma_e() const { return g * muB / kHbar; }

  // 13C Larmor frequency at field B [rad/s]
  double nuclear_larmor(double field_tesla) const { return gammaC * field_tesla; }

  void validate() const {
    if (!(D > 0 && g > 0 && muB > 0 && gammaC > 0 && a0 > 0 && abundance >= 0))
      throw std::invalid_argument("PhysicalConstants: all values must be strictly positive");
    if (abundance > 1.0)
      throw std::invalid_argument("PhysicalConstants: abundance must lie in [0,1]");
  }
};

// composite Hilbert-space cap: 3 * 2^kDefaultMaxBathSpins
inline constexpr int kDefaultMaxBathSpins = 10;

}  // namespace dnp
