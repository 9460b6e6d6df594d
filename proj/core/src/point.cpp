#include "berkline/point.hpp"

#include <cmath>

#include "berkline/errors.hpp"

namespace berkline::line {

std::string to_string(Kind k) {
  switch (k) {
    case Kind::I: return "I";
    case Kind::II: return "II";
    case Kind::III: return "III";
  }
  return "?";
}

BerkPoint::BerkPoint(Rational center, ExtRational radius_exp, bool irrational)
    : center_(std::move(center)), e_(std::move(radius_exp)), irrational_(irrational && !e_.is_infinite()) {}

Kind BerkPoint::kind() const noexcept {
  if (e_.is_infinite()) return Kind::I;
  return irrational_ ? Kind::III : Kind::II;
}

std::string BerkPoint::str() const {
  std::string r = e_.is_infinite() ? "0" : "p^" + berkline::to_string(Rational(-e_.value()));
  return "zeta(" + berkline::to_string(center_) + ", " + r + (irrational_ ? "*" : "") + ")";
}

bool same_point(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y) {
  if (x.radius_exp() != y.radius_exp() || x.irrational() != y.irrational()) return false;
  return padic::abs_p(ctx, x.center() - y.center()) <= x.radius();
}

bool leq(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y) {
  return padic::abs_p(ctx, x.center() - y.center()) <= y.radius() && x.radius() <= y.radius();
}

BerkPoint join(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y) {
  Magnitude gap = padic::abs_p(ctx, x.center() - y.center());
  Magnitude m = max(x.radius(), y.radius());
  if (gap > m) return BerkPoint(x.center(), gap.exponent());
  // The result inherits the flag of whichever radius attains the maximum.
  bool flag = (x.radius() == m && x.irrational()) || (y.radius() == m && y.irrational());
  return BerkPoint(x.center(), m.exponent(), flag);
}

Magnitude diam(const BerkPoint& x) { return x.radius(); }

MetricValue small_metric(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y) {
  BerkPoint j = join(ctx, x, y);
  Magnitude dj = diam(j), dx = diam(x), dy = diam(y);
  MetricValue out;
  if (dj.is_exact() && dx.is_exact() && dy.is_exact()) {
    Rational d = 2 * dj.to_rational(ctx) - dx.to_rational(ctx) - dy.to_rational(ctx);
    out.value = to_double(d);
    out.exact = std::move(d);
  } else {
    out.value = 2.0 * dj.to_double(ctx) - dx.to_double(ctx) - dy.to_double(ctx);
  }
  return out;
}

Rational big_metric(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y) {
  if (!x.is_hyperbolic() || !y.is_hyperbolic())
    throw TypeIPoint("big metric is undefined at " + (x.is_hyperbolic() ? y : x).str());
  BerkPoint j = join(ctx, x, y);
  return x.radius_exp().value() + y.radius_exp().value() - 2 * j.radius_exp().value();
}

Rational gromov_product(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y, const BerkPoint& z) {
  Rational s = big_metric(ctx, x, z) + big_metric(ctx, y, z) - big_metric(ctx, x, y);
  return s / 2;
}

BerkPoint median(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y, const BerkPoint& z) {
  BerkPoint a = join(ctx, x, y), b = join(ctx, y, z), c = join(ctx, x, z);
  if (leq(ctx, a, b) && leq(ctx, a, c)) return a;
  if (leq(ctx, b, c)) return b;
  return c;
}

Rational kappa_gauss(const BerkPoint& x) {
  if (!x.is_hyperbolic()) throw TypeIPoint("kappa undefined at " + x.str());
  return x.radius_exp().value();
}

BerkPoint geodesic_point(const PrimeContext& ctx, const BerkPoint& from, const BerkPoint& to, const Rational& t) {
  if (!from.is_hyperbolic()) throw TypeIPoint("geodesic start " + from.str());
  BerkPoint j = join(ctx, from, to);
  Rational up = from.radius_exp().value() - j.radius_exp().value();
  if (t <= up) return BerkPoint(from.center(), ExtRational(Rational(from.radius_exp().value() - t)), from.irrational() && t == 0);
  ExtRational e(Rational(j.radius_exp().value() + (t - up)));
  if (e > to.radius_exp()) throw std::out_of_range("geodesic_point: distance beyond segment end");
  return BerkPoint(to.center(), e, e == to.radius_exp() && to.irrational());
}

}  // namespace berkline::line
