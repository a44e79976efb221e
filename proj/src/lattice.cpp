#include "dnp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace dnp {

namespace {

constexpr double kMinDistance = 0.15e-9;  // [m]
constexpr double kMaxSampleRadius = 5.0e-9;
constexpr int kMaxSampleSpins = 12;

// uniform double in [0,1) from the top 53 bits; bit-stable across platforms,
// unlike std::uniform_real_distribution
double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// rotation taking crystal coordinates to the NV frame (z' along [111])
Eigen::Matrix3d crystal_to_nv_frame() {
  Eigen::Matrix3d r;
  r.row(0) = Eigen::Vector3d(1, 1, -2).normalized();
  r.row(1) = Eigen::Vector3d(-1, 1, 0).normalized();
  r.row(2) = Eigen::Vector3d(1, 1, 1).normalized();
  return r;
}

}  // namespace

double BathNucleus::coupling_magnitude() const {
  return std::hypot(a_par, a_perp);
}

void SpinSystem::validate() const {
  constants.validate();
  if (field_tesla < 0) throw std::invalid_argument("SpinSystem: field_magnitude must be >= 0");
  if (theta < 0 || theta > kPi / 2)
    throw std::invalid_argument("SpinSystem: theta must lie in [0, pi/2]");
  if (n_nuclei() > max_bath_spins)
    throw std::invalid_argument("SpinSystem: Hilbert-space dimension cap exceeded");
  for (const auto& n : nuclei) {
    if (n.has_position && n.position.norm() <= kMinDistance)
      throw std::invalid_argument("SpinSystem: nucleus closer than 0.15 nm to the NV site");
  }
}

HyperfineCouplings hyperfine_from_position(const Eigen::Vector3d& position_m,
                                           const PhysicalConstants& constants) {
  const double r = position_m.norm();
  if (r <= kMinDistance)
    throw std::domain_error("hyperfine_from_position: position closer than 0.15 nm to the NV");
  // dipolar scale b(r) = (mu0/4pi) g muB gammaC / r^3, angular
  const double b = kMu0Over4Pi * constants.g * constants.muB * constants.gammaC / (r * r * r);
  const double cos_t = position_m.z() / r;
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  return {b * (1.0 - 3.0 * cos_t * cos_t), 3.0 * b * sin_t * cos_t};
}

std::vector<Eigen::Vector3d> enumerate_lattice_sites(double radius_m,
                                                     const PhysicalConstants& constants) {
  const double a = constants.a0;
  // FCC lattice with a two-atom basis; NV vacancy at the origin, nitrogen at
  // the tetrahedral neighbor along -[111]
  const Eigen::Vector3d v1(0, a / 2, a / 2);
  const Eigen::Vector3d v2(a / 2, 0, a / 2);
  const Eigen::Vector3d v3(a / 2, a / 2, 0);
  const Eigen::Vector3d basis[2] = {Eigen::Vector3d::Zero(),
                                    Eigen::Vector3d(a / 4, a / 4, a / 4)};
  const Eigen::Vector3d nitrogen = -basis[1];

  const int nmax = static_cast<int>(std::ceil(radius_m / (a / 2))) + 2;
  const Eigen::Matrix3d rot = crystal_to_nv_frame();
  const double tol = 1e-4 * a;

  std::vector<Eigen::Vector3d> sites;
  for (int i = -nmax; i <= nmax; ++i)
    for (int j = -nmax; j <= nmax; ++j)
      for (int k = -nmax; k <= nmax; ++k)
        for (const auto& b : basis) {
          const Eigen::Vector3d pos = i * v1 + j * v2 + k * v3 + b;
          const double r = pos.norm();
          if (r <= kMinDistance || r > radius_m) continue;
          if ((pos - nitrogen).norm() < tol) continue;
          sites.push_back(rot * pos);
        }

  // deterministic order independent of loop structure
  std::sort(sites.begin(), sites.end(), [](const Eigen::Vector3d& p, const Eigen::Vector3d& q) {
    const double rp = p.norm(), rq = q.norm();
    if (rp != rq) return rp < rq;
    if (p.x() != q.x()) return p.x() < q.x();
    if (p.y() != q.y()) return p.y() < q.y();
    return p.z() < q.z();
  });
  return sites;
}

std::vector<Eigen::Vector3d> mark_c13_sites(const std::vector<Eigen::Vector3d>& sites,
                                            std::uint64_t seed, double abundance) {
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<Eigen::Vector3d> marked;
  for (const auto& s : sites) {
    if (uniform_unit(rng) < abundance) marked.push_back(s);
  }
  return marked;
}

std::vector<BathNucleus> sample_bath(std::uint64_t seed, double radius_m,
                                     double min_coupling, int max_spins,
                                     const PhysicalConstants& constants) {
  constants.validate();
  if (radius_m > kMaxSampleRadius)
    throw std::invalid_argument("sample_bath: radius exceeds the 5 nm cap");
  if (max_spins > kMaxSampleSpins)
    throw std::invalid_argument("sample_bath: max_spins exceeds the cap of 12");
  if (max_spins < 0) throw std::invalid_argument("sample_bath: max_spins must be >= 0");

  const auto sites = enumerate_lattice_sites(radius_m, constants);
  const auto marked = mark_c13_sites(sites, seed, constants.abundance);

  std::vector<BathNucleus> bath;
  for (const auto& pos : marked) {
    const auto hf = hyperfine_from_position(pos, constants);
    BathNucleus n;
    n.position = pos;
    n.a_par = hf.a_par;
    n.a_perp = hf.a_perp;
    n.has_position = true;
    if (n.coupling_magnitude() >= min_coupling) bath.push_back(n);
  }

  // strongest first; strict total order via position tie-break
  std::sort(bath.begin(), bath.end(), [](const BathNucleus& p, const BathNucleus& q) {
    const double cp = p.coupling_magnitude(), cq = q.coupling_magnitude();
    if (cp != cq) return cp > cq;
    if (p.position.x() != q.position.x()) return p.position.x() < q.position.x();
    if (p.position.y() != q.position.y()) return p.position.y() < q.position.y();
    return p.position.z() < q.position.z();
  });
  if (static_cast<int>(bath.size()) > max_spins) bath.resize(max_spins);
  return bath;
}

std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

std::string bath_to_json(const std::vector<BathNucleus>& nuclei, std::uint64_t seed,
                         double radius_m) {
  nlohmann::json doc;
  doc["seed"] = seed;
  doc["radius_nm"] = radius_m * 1e9;
  doc["nuclei"] = nlohmann::json::array();
  for (const auto& n : nuclei) {
    nlohmann::json j;
    if (n.has_position)
      j["pos_nm"] = {n.position.x() * 1e9, n.position.y() * 1e9, n.position.z() * 1e9};
    j["a_par_hz"] = n.a_par / kTwoPi;
    j["a_perp_hz"] = n.a_perp / kTwoPi;
    doc["nuclei"].push_back(j);
  }
  return doc.dump(2);
}

std::vector<BathNucleus> bath_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<BathNucleus> nuclei;
  for (const auto& j : doc.at("nuclei")) {
    BathNucleus n;
    if (j.contains("pos_nm")) {
      const auto& p = j.at("pos_nm");
      n.position = Eigen::Vector3d(p.at(0).get<double>(), p.at(1).get<double>(),
                                   p.at(2).get<double>()) *
                   1e-9;
      n.has_position = true;
    }
    n.a_par = j.at("a_par_hz").get<double>() * kTwoPi;
    n.a_perp = j.at("a_perp_hz").get<double>() * kTwoPi;
    nuclei.push_back(n);
  }
  return nuclei;
}

}  // namespace dnp
