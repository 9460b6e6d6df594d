#pragma once

#include <optional>
#include <string>

#include "berkline/padic.hpp"

namespace berkline::line {

using padic::ExtRational;
using padic::Magnitude;
using padic::PrimeContext;

enum class Kind { I, II, III };
std::string to_string(Kind k);

// The disk point zeta_{a,r} with r = p^(-radiusExp). Type III radii keep a
// rational stand-in exponent plus a flag; metric code ignores the flag.
class BerkPoint {
 public:
  BerkPoint() = default;
  BerkPoint(Rational center, ExtRational radius_exp, bool irrational = false);

  static BerkPoint classical(const Rational& a) { return BerkPoint(a, ExtRational::infinity()); }
  static BerkPoint gauss() { return BerkPoint(Rational(0), ExtRational(0)); }

  const Rational& center() const noexcept { return center_; }
  const ExtRational& radius_exp() const noexcept { return e_; }
  bool irrational() const noexcept { return irrational_; }
  Magnitude radius() const { return Magnitude(e_); }
  Kind kind() const noexcept;
  bool is_hyperbolic() const noexcept { return !e_.is_infinite(); }

  std::string str() const;

 private:
  Rational center_{0};
  ExtRational e_{0};
  bool irrational_ = false;
};

// Disk equality: same radius and |a - a'| <= r.
bool same_point(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y);
bool leq(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y);
BerkPoint join(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y);
Magnitude diam(const BerkPoint& x);

struct MetricValue {
  std::optional<Rational> exact;  // present when every exponent involved is an integer
  double value = 0.0;
};

MetricValue small_metric(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y);
// rho = e_x + e_y - 2 e_join; throws TypeIPoint.
Rational big_metric(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y);
Rational gromov_product(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y, const BerkPoint& z);
// The lowest of the three pairwise joins.
BerkPoint median(const PrimeContext& ctx, const BerkPoint& x, const BerkPoint& y, const BerkPoint& z);
Rational kappa_gauss(const BerkPoint& x);

// Point at rho-distance t from `from` along [from, to]; `from` must be hyperbolic
// and t at most the length of the segment.
BerkPoint geodesic_point(const PrimeContext& ctx, const BerkPoint& from, const BerkPoint& to, const Rational& t);

}  // namespace berkline::line
