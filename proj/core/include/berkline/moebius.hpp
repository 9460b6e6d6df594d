#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "berkline/point.hpp"

namespace berkline::group {

using line::BerkPoint;
using padic::Magnitude;
using padic::PrimeContext;

// A point of P^1(Q); nullopt is infinity.
using P1Point = std::optional<Rational>;

// z -> (az + b)/(cz + d), compared projectively.
class MoebiusMap {
 public:
  // Throws SingularMatrix when ad - bc = 0.
  MoebiusMap(Rational a, Rational b, Rational c, Rational d);
  static MoebiusMap identity() { return MoebiusMap(1, 0, 0, 1); }

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  const Rational& c() const noexcept { return c_; }
  const Rational& d() const noexcept { return d_; }
  Rational det() const { return a_ * d_ - b_ * c_; }

  MoebiusMap inverse() const;
  // Scaled to coprime integers with the first nonzero of (c, d) positive.
  MoebiusMap normalized() const;
  P1Point apply(const P1Point& z) const;

  friend MoebiusMap operator*(const MoebiusMap& x, const MoebiusMap& y);
  friend bool operator==(const MoebiusMap& x, const MoebiusMap& y);

  std::string str() const;

 private:
  Rational a_, b_, c_, d_;
};

// Image of a point of the Berkovich line. Disks containing the pole are
// handled through z -> 1/z. Throws PoleInsideDisk when a type I point maps to
// infinity, which has no disk coordinates.
BerkPoint act_on_point(const PrimeContext& ctx, const MoebiusMap& g, const BerkPoint& x);

// [[p^rExp, a], [0, 1]]; throws NonIntegralExponent.
MoebiusMap gauss_to(const PrimeContext& ctx, const Rational& a, const Rational& r_exp);

Rational isometry_residual(const PrimeContext& ctx, const MoebiusMap& g, const BerkPoint& x, const BerkPoint& y);

// |z| for g = [[z, a], [0, 1]] up to scale; throws NotUpperTriangular.
Magnitude rn_derivative(const PrimeContext& ctx, const MoebiusMap& g);

// Busemann cocycle of the Gauss point: log_p of the spherical derivative of
// g^-1 at xi, i.e. lim rho(G, x) - rho(G, g^-1 x) as x -> xi. Defined on all of P^1(Q).
Rational busemann(const PrimeContext& ctx, const MoebiusMap& g, const P1Point& xi);
// log_p(|ad - bc| / |c xi + d|^2) for g^-1 = [[a, b], [c, d]]; agrees with
// busemann when xi and g^-1 xi lie in the closed unit disk. Throws PoleAtBoundaryPoint.
Rational busemann_affine(const PrimeContext& ctx, const MoebiusMap& g, const P1Point& xi);
// p^busemann as a magnitude.
Magnitude j_factor(const PrimeContext& ctx, const MoebiusMap& g, const P1Point& xi);

using BoundaryFunction = std::function<std::complex<double>(const Rational&)>;

// max over the sample of |(U_s(g) pi(a) U_s(g)^* f)(x) - a(g x) f(x)| with
// (U_s(g) f)(x) = e^{is} w(x)^{1/2} f(g x), w = rn_derivative or j_factor.
double covariance_residual(const PrimeContext& ctx, const MoebiusMap& g, const BoundaryFunction& a,
                           const BoundaryFunction& f, const std::vector<Rational>& sample, double s);

}  // namespace berkline::group
