#include "berkline/exact_matrix.hpp"

#include <algorithm>
#include <map>

#include "berkline/errors.hpp"

namespace berkline {

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({i, Rational(1)});
  return m;
}

ExactMatrix ExactMatrix::diagonal(const std::vector<Rational>& d) {
  ExactMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) m.rows_[i].push_back({i, d[i]});
  return m;
}

void ExactMatrix::add(std::size_t i, std::size_t j, const Rational& v) {
  if (i >= rows_.size() || j >= cols_) throw DimensionMismatch("entry out of range");
  auto& r = rows_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
  if (it != r.end() && it->first == j) {
    it->second += v;
    if (it->second == 0) r.erase(it);
  } else if (v != 0) {
    r.insert(it, {j, v});
  }
}

Rational ExactMatrix::at(std::size_t i, std::size_t j) const {
  const auto& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != r.end() && it->first == j) ? it->second : Rational(0);
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [j, v] : rows_[i]) t.rows_[j].push_back({i, v});
  return t;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("product of incompatible matrices");
  ExactMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [k, v] : a.rows_[i])
      for (const auto& [j, w] : b.rows_[k]) acc[j] += v * w;
    for (auto& [j, v] : acc)
      if (v != 0) c.rows_[i].push_back({j, std::move(v)});
  }
  return c;
}

namespace {

ExactMatrix combine(const ExactMatrix& a, const ExactMatrix& b, int sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("sum of incompatible matrices");
  ExactMatrix c = a;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (const auto& [j, v] : b.row(i)) c.add(i, j, sign > 0 ? Rational(v) : Rational(-v));
  return c;
}

}  // namespace

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) { return combine(a, b, -1); }
ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) { return combine(a, b, +1); }

Rational ExactMatrix::max_abs() const {
  Rational m(0);
  for (const auto& r : rows_)
    for (const auto& e : r) m = std::max(m, Rational(abs(e.second)));
  return m;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

}  // namespace berkline
