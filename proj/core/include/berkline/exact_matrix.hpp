#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "berkline/padic.hpp"

namespace berkline {

// Row-compressed sparse matrix over Q. Rows hold (column, value) pairs sorted
// by column with no explicit zeros.
class ExactMatrix {
 public:
  using Row = std::vector<std::pair<std::size_t, Rational>>;

  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix diagonal(const std::vector<Rational>& d);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const Row& row(std::size_t i) const { return rows_.at(i); }

  // Adds v to entry (i, j).
  void add(std::size_t i, std::size_t j, const Rational& v);
  Rational at(std::size_t i, std::size_t j) const;

  ExactMatrix transpose() const;
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);

  // max |entry|; zero for the zero matrix.
  Rational max_abs() const;
  bool is_zero() const;
  std::size_t nonzeros() const;

 private:
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

}  // namespace berkline
