#include "berkline/padic.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "berkline/errors.hpp"

namespace berkline {

namespace {

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(zn, zd);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace berkline

namespace berkline::padic {

PrimeContext::PrimeContext(long p) : p_(p) {
  if (p < 2) throw CompositeModulus("p = " + std::to_string(p) + " is not prime");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw CompositeModulus("p = " + std::to_string(p) + " is divisible by " + std::to_string(d));
}

Rational PrimeContext::power(long k) const {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? Rational(z) : Rational(mpz_class(1), z);
}

const Rational& ExtRational::value() const {
  if (inf_) throw std::domain_error("value() of +inf");
  return value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
  int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if (a.inf_ || b.inf_) return ExtRational::infinity();
  return ExtRational(Rational(a.value_ + b.value_));
}

std::string ExtRational::str() const { return inf_ ? "inf" : to_string(value_); }

const ExtRational& min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }
const ExtRational& max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

bool Magnitude::is_exact() const { return e_.is_infinite() || is_integer(e_.value()); }

Rational Magnitude::to_rational(const PrimeContext& ctx) const {
  if (e_.is_infinite()) return Rational(0);
  if (!is_integer(e_.value())) throw NonIntegralExponent("magnitude p^(-" + e_.str() + ") is irrational");
  return ctx.power(-e_.value().get_num().get_si());
}

double Magnitude::to_double(const PrimeContext& ctx) const {
  if (e_.is_infinite()) return 0.0;
  return std::pow(static_cast<double>(ctx.p()), -e_.value().get_d());
}

const Magnitude& max(const Magnitude& a, const Magnitude& b) { return a < b ? b : a; }
const Magnitude& min(const Magnitude& a, const Magnitude& b) { return b < a ? b : a; }

ExtRational valuation(const PrimeContext& ctx, const Rational& x) {
  if (x == 0) return ExtRational::infinity();
  mpz_class p(ctx.p()), rest;
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  long vn = static_cast<long>(mpz_remove(rest.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()));
  return ExtRational(vn - vd);
}

Magnitude abs_p(const PrimeContext& ctx, const Rational& x) { return Magnitude(valuation(ctx, x)); }

}  // namespace berkline::padic
