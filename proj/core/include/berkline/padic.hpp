#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace berkline {

using Rational = mpq_class;

// Accepts "n", "n/d" and "-n/d"; throws ParseError otherwise.
Rational parse_rational(std::string_view text);
// Always "num/den", den > 0.
std::string to_string(const Rational& q);
double to_double(const Rational& q);
bool is_integer(const Rational& q);

}  // namespace berkline

namespace berkline::padic {

class PrimeContext {
 public:
  explicit PrimeContext(long p);
  long p() const noexcept { return p_; }
  // p^k for any integer k.
  Rational power(long k) const;
  bool operator==(const PrimeContext&) const = default;

 private:
  long p_;
};

// Element of Q ∪ {+inf}.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(const Rational& v) : value_(v) {}  // NOLINT: implicit by design
  ExtRational(long v) : value_(v) {}             // NOLINT
  static ExtRational infinity() {
    ExtRational e;
    e.inf_ = true;
    return e;
  }

  bool is_infinite() const noexcept { return inf_; }
  // Throws std::domain_error on +inf.
  const Rational& value() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);
  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);

  std::string str() const;

 private:
  Rational value_{0};
  bool inf_ = false;
};

const ExtRational& min(const ExtRational& a, const ExtRational& b);
const ExtRational& max(const ExtRational& a, const ExtRational& b);

// The value p^(-e), kept as its exponent e. Exponent +inf is the zero magnitude.
class Magnitude {
 public:
  Magnitude() = default;
  explicit Magnitude(ExtRational exponent) : e_(std::move(exponent)) {}
  static Magnitude zero() { return Magnitude(ExtRational::infinity()); }
  static Magnitude one() { return Magnitude(ExtRational(0)); }

  const ExtRational& exponent() const noexcept { return e_; }
  bool is_zero() const noexcept { return e_.is_infinite(); }

  // Larger magnitude means smaller exponent.
  friend bool operator==(const Magnitude&, const Magnitude&) = default;
  friend std::strong_ordering operator<=>(const Magnitude& a, const Magnitude& b) {
    return b.e_ <=> a.e_;
  }
  friend Magnitude operator*(const Magnitude& a, const Magnitude& b) {
    return Magnitude(a.e_ + b.e_);
  }

  // Exact value when the exponent is an integer or +inf.
  bool is_exact() const;
  Rational to_rational(const PrimeContext& ctx) const;
  double to_double(const PrimeContext& ctx) const;

 private:
  ExtRational e_{0};
};

const Magnitude& max(const Magnitude& a, const Magnitude& b);
const Magnitude& min(const Magnitude& a, const Magnitude& b);

// v_p(x); +inf for x = 0.
ExtRational valuation(const PrimeContext& ctx, const Rational& x);
Magnitude abs_p(const PrimeContext& ctx, const Rational& x);

}  // namespace berkline::padic
