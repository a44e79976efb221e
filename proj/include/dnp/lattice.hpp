#pragma once

// 13C bath sampling from the diamond lattice and point-dipole hyperfine
// couplings.
//
// Positions are expressed in the NV frame: origin at the vacancy site, z axis
// along the NV symmetry axis ([111] of the crystal). The nitrogen site (the
// nearest neighbor along -z) is excluded from sampling; no 13C can occupy it.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "dnp/constants.hpp"

namespace dnp {

struct HyperfineCouplings {
  double a_par;   // secular part a_z' [rad/s]
  double a_perp;  // pseudo-secular part a_x' [rad/s]
};

struct BathNucleus {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // [m], NV frame
  double a_par = 0.0;                                  // [rad/s]
  double a_perp = 0.0;                                 // [rad/s]
  bool has_position = false;  // baths may be specified by couplings alone

  double coupling_magnitude() const;
};

struct SpinSystem {
  PhysicalConstants constants;
  double field_tesla = 0.175;
  double theta = 0.0;  // angle of B from the NV axis [rad]
  std::vector<BathNucleus> nuclei;
  int max_bath_spins = kDefaultMaxBathSpins;

  int n_nuclei() const { return static_cast<int>(nuclei.size()); }
  Eigen::Index dim() const { return 3 * (Eigen::Index(1) << nuclei.size()); }
  double nuclear_larmor() const { return constants.nuclear_larmor(field_tesla); }
  void validate() const;
};

// Point-dipole hyperfine constants for a 13C at `position` (NV frame, z along
// the NV axis). Fermi-contact terms are excluded.
HyperfineCouplings hyperfine_from_position(const Eigen::Vector3d& position_m,
                                           const PhysicalConstants& constants);

// All carbon sites of the diamond lattice with 0.15 nm < |r| <= radius,
// rotated into the NV frame, in a deterministic order. Excludes the vacancy
// and the nitrogen site.
std::vector<Eigen::Vector3d> enumerate_lattice_sites(double radius_m,
                                                     const PhysicalConstants& constants);

// Seeded 13C placement on the lattice sites; one draw per site in enumeration
// order. Exposed separately so the marking statistics can be tested without
// the coupling filter.
std::vector<Eigen::Vector3d> mark_c13_sites(const std::vector<Eigen::Vector3d>& sites,
                                            std::uint64_t seed, double abundance);

// Full bath sampler: enumerate, mark, compute couplings, drop couplings below
// min_coupling, keep the max_spins strongest. Deterministic for fixed seed.
std::vector<BathNucleus> sample_bath(std::uint64_t seed, double radius_m,
                                     double min_coupling, int max_spins,
                                     const PhysicalConstants& constants);

// Derives the per-bath RNG stream from a master seed (splitmix64 mixing), so
// sweeps are bit-reproducible across platforms and thread counts.
std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t index);

// JSON document: {seed, radius_nm, nuclei: [{pos_nm:[x,y,z], a_par_hz, a_perp_hz}]}
// Frequencies are stored in Hz (cycles) and converted to angular internally.
std::string bath_to_json(const std::vector<BathNucleus>& nuclei, std::uint64_t seed,
                         double radius_m);
std::vector<BathNucleus> bath_from_json(const std::string& text);

}  // namespace dnp
