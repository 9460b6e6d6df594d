#include "berkline/moebius.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "berkline/errors.hpp"

namespace berkline::group {

using padic::ExtRational;
using padic::valuation;

MoebiusMap::MoebiusMap(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  a_.canonicalize();
  b_.canonicalize();
  c_.canonicalize();
  d_.canonicalize();
  if (det() == 0) throw SingularMatrix("ad - bc = 0 for " + str());
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }

MoebiusMap MoebiusMap::normalized() const {
  mpz_class l = 1, g = 0;
  for (const Rational* q : {&a_, &b_, &c_, &d_}) l = lcm(l, q->get_den());
  std::array<mpz_class, 4> n;
  int i = 0;
  for (const Rational* q : {&a_, &b_, &c_, &d_}) {
    n[i] = q->get_num() * (l / q->get_den());
    g = gcd(g, n[i]);
    ++i;
  }
  for (auto& v : n) v /= g;
  int sign = sgn(n[2]) != 0 ? sgn(n[2]) : sgn(n[3]);
  if (sign < 0)
    for (auto& v : n) v = -v;
  return MoebiusMap(Rational(n[0]), Rational(n[1]), Rational(n[2]), Rational(n[3]));
}

P1Point MoebiusMap::apply(const P1Point& z) const {
  if (!z) {
    if (c_ == 0) return std::nullopt;
    return Rational(a_ / c_);
  }
  Rational den = c_ * *z + d_;
  if (den == 0) return std::nullopt;
  return Rational((a_ * *z + b_) / den);
}

MoebiusMap operator*(const MoebiusMap& x, const MoebiusMap& y) {
  return MoebiusMap(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
                    x.c_ * y.b_ + x.d_ * y.d_);
}

bool operator==(const MoebiusMap& x, const MoebiusMap& y) {
  MoebiusMap u = x.normalized(), v = y.normalized();
  return u.a_ == v.a_ && u.b_ == v.b_ && u.c_ == v.c_ && u.d_ == v.d_;
}

std::string MoebiusMap::str() const {
  return "[[" + to_string(a_) + "," + to_string(b_) + "],[" + to_string(c_) + "," + to_string(d_) + "]]";
}

namespace {

// v(x) for x != 0.
Rational val(const PrimeContext& ctx, const Rational& x) { return valuation(ctx, x).value(); }

}  // namespace

BerkPoint act_on_point(const PrimeContext& ctx, const MoebiusMap& g, const BerkPoint& x) {
  if (!x.is_hyperbolic()) {
    P1Point y = g.apply(x.center());
    if (!y) throw PoleInsideDisk("type I point " + x.str() + " maps to infinity under " + g.str());
    return BerkPoint::classical(*y);
  }
  const Rational& e = x.radius_exp().value();
  if (g.c() == 0) {
    Rational center = (g.a() * x.center() + g.b()) / g.d();
    return BerkPoint(center, Rational(e + val(ctx, g.a()) - val(ctx, g.d())), x.irrational());
  }
  // g(z) = a/c - (det/c^2) / (z + d/c).
  Rational alpha = x.center() + g.d() / g.c();
  Rational center;
  Rational exp;
  ExtRational va = valuation(ctx, alpha);
  if (va >= ExtRational(e)) {
    center = 0;
    exp = -e;
  } else {
    center = 1 / alpha;
    exp = e - 2 * va.value();
  }
  Rational k = -g.det() / (g.c() * g.c());
  center *= k;
  exp += val(ctx, k);
  center += g.a() / g.c();
  return BerkPoint(center, exp, x.irrational());
}

MoebiusMap gauss_to(const PrimeContext& ctx, const Rational& a, const Rational& r_exp) {
  if (!is_integer(r_exp)) throw NonIntegralExponent("radius exponent " + to_string(r_exp));
  return MoebiusMap(ctx.power(r_exp.get_num().get_si()), a, 0, 1);
}

Rational isometry_residual(const PrimeContext& ctx, const MoebiusMap& g, const BerkPoint& x, const BerkPoint& y) {
  Rational before = line::big_metric(ctx, x, y);
  Rational after = line::big_metric(ctx, act_on_point(ctx, g, x), act_on_point(ctx, g, y));
  return abs(Rational(after - before));
}

Magnitude rn_derivative(const PrimeContext& ctx, const MoebiusMap& g) {
  if (g.c() != 0) throw NotUpperTriangular(g.str());
  return Magnitude(ExtRational(val(ctx, g.a()) - val(ctx, g.d())));
}

Rational busemann(const PrimeContext& ctx, const MoebiusMap& g, const P1Point& xi) {
  MoebiusMap h = g.inverse();
  Rational exp = val(ctx, h.det());
  if (!xi) {
    ExtRational m = padic::min(valuation(ctx, h.a()), valuation(ctx, h.c()));
    exp -= 2 * m.value();
  } else {
    ExtRational vxi = valuation(ctx, *xi);
    ExtRational m0 = padic::min(ExtRational(0), vxi);
    ExtRational m = padic::min(valuation(ctx, h.a() * *xi + h.b()), valuation(ctx, h.c() * *xi + h.d()));
    exp += 2 * m0.value() - 2 * m.value();
  }
  return -exp;
}

Rational busemann_affine(const PrimeContext& ctx, const MoebiusMap& g, const P1Point& xi) {
  MoebiusMap h = g.inverse();
  if (!xi) throw PoleAtBoundaryPoint("infinity is outside the affine chart");
  Rational den = h.c() * *xi + h.d();
  if (den == 0) throw PoleAtBoundaryPoint(to_string(*xi) + " is the pole of " + h.str());
  return -(val(ctx, h.det()) - 2 * val(ctx, den));
}

Magnitude j_factor(const PrimeContext& ctx, const MoebiusMap& g, const P1Point& xi) {
  return Magnitude(ExtRational(Rational(-busemann(ctx, g, xi))));
}

double covariance_residual(const PrimeContext& ctx, const MoebiusMap& g, const BoundaryFunction& a,
                           const BoundaryFunction& f, const std::vector<Rational>& sample, double s) {
  MoebiusMap ginv = g.inverse();
  // Derivative weight of g at x.
  auto weight = [&](const Rational& x) {
    if (g.c() == 0) return rn_derivative(ctx, g).to_double(ctx);
    return j_factor(ctx, ginv, x).to_double(ctx);
  };
  const std::complex<double> phase = std::polar(1.0, s);
  auto u_star_f = [&](const Rational& y) {
    Rational x = *ginv.apply(y);
    return std::conj(phase) * f(x) / std::sqrt(weight(x));
  };
  double worst = 0.0;
  for (const Rational& x : sample) {
    P1Point gx = g.apply(x);
    if (!gx) continue;
    std::complex<double> lhs = phase * std::sqrt(weight(x)) * (a(*gx) * u_star_f(*gx));
    std::complex<double> rhs = a(*gx) * f(x);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace berkline::group
