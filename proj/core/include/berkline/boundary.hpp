#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "berkline/schottky.hpp"

namespace berkline::group {

// The part of the boundary beyond `label`, seen from the Gauss point.
struct Cylinder {
  BerkPoint label;          // vertex at rho-depth D on the path from the Gauss point
  Rational representative;  // a type I point of the cylinder
  std::string name;         // first D letters of the first orbit word reaching it
  double weight = 0.0;
};

// Orbital-counting approximation of a Patterson-Sullivan measure: every orbit
// point gamma zeta carries e^{-s rho(zeta, gamma zeta)} / total.
struct BoundarySample {
  PrimeContext ctx{2};
  double s = 0.0;
  std::size_t depth = 0;
  double total = 0.0;  // sum of e^{-s rho} over all enumerated words
  std::vector<Cylinder> cylinders;
  std::vector<BerkPoint> orbit_points;
  std::vector<double> orbit_weights;  // already divided by total
};

BoundarySample ps_measure_estimate(const SchottkyGroup& g, double s, std::size_t L, std::size_t depth,
                                   std::size_t threads = 1);
BoundarySample ps_measure_estimate(const SchottkyGroup& g, const std::vector<OrbitEntry>& orbit, double s,
                                   std::size_t depth);

// Mass of the orbit points x with v on the geodesic [o, x].
double region_mass(const BoundarySample& mu, const BerkPoint& o, const BerkPoint& v);
// Index of the cylinder containing xi, or npos when no orbit word reached it.
std::size_t cylinder_of(const BoundarySample& mu, const P1Point& xi);
// p^{e - 1} above the Gauss point, the disk center otherwise.
Rational cylinder_representative(const PrimeContext& ctx, const BerkPoint& label);

struct QuasiconformalityRow {
  std::size_t cylinder = 0;
  double ratio = 0.0;     // mu(gamma^-1 Z) / mu(Z)
  double predicted = 0.0; // delta * B(gamma, xi_Z), natural log of the expected ratio
  double deviation = 0.0; // |ln ratio - predicted| / |predicted|, absolute when predicted = 0
};
struct QuasiconformalityReport {
  std::vector<QuasiconformalityRow> rows;
  double max_deviation = 0.0;
};
// Throws EmptyCylinder when either side of a ratio has no mass.
QuasiconformalityReport quasiconformality_report(const SchottkyGroup& g, const BoundarySample& mu, double delta,
                                                 const MoebiusMap& gamma);

// Sum over gamma of f_gamma U_gamma; f_gamma holds one value per cylinder of the sample.
struct CrossedElement {
  std::map<GroupWord, std::vector<std::complex<double>>> coeffs;
};

CrossedElement monomial(const BoundarySample& mu, const GroupWord& w, std::vector<std::complex<double>> f);
// Multiplies f_gamma by e^{it B(gamma, xi_Z)}.
CrossedElement time_evolve(const SchottkyGroup& g, const BoundarySample& mu, const CrossedElement& a, double t);
// alpha_{i beta}: multiplies f_gamma by e^{-beta B(gamma, xi_Z)}.
CrossedElement imaginary_evolve(const SchottkyGroup& g, const BoundarySample& mu, const CrossedElement& a,
                                double beta);
// (xy)_gamma = sum over gamma1 gamma2 = gamma of x_{gamma1} (y_{gamma2} o gamma1^-1).
CrossedElement multiply(const SchottkyGroup& g, const BoundarySample& mu, const CrossedElement& x,
                        const CrossedElement& y);
// sum_Z x_e(xi_Z) mu(Z). Throws EmptyMeasure.
std::complex<double> kms_state(const BoundarySample& mu, const CrossedElement& x);

struct KmsReport {
  std::complex<double> lhs;  // phi(ab)
  std::complex<double> rhs;  // phi(b alpha_{i beta}(a))
  double residual = 0.0;
};
inline constexpr double kKmsEpsilon = 1e-12;
KmsReport kms_residual(const SchottkyGroup& g, const BoundarySample& mu, const CrossedElement& a,
                       const CrossedElement& b, double beta);

// Basis slots (cylinder, word) for the Hamiltonian.
using HamiltonianSlot = std::pair<std::size_t, GroupWord>;
std::vector<HamiltonianSlot> hamiltonian_basis(const CrossedElement& a);
std::vector<double> hamiltonian_diagonal(const SchottkyGroup& g, const BoundarySample& mu,
                                         const std::vector<HamiltonianSlot>& basis);
std::vector<std::complex<double>> hamiltonian_apply(const SchottkyGroup& g, const BoundarySample& mu,
                                                    const std::vector<HamiltonianSlot>& basis,
                                                    const std::vector<std::complex<double>>& v);
std::vector<std::complex<double>> to_vector(const CrossedElement& a, const std::vector<HamiltonianSlot>& basis);

}  // namespace berkline::group
