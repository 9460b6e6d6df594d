#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "berkline/dendrite.hpp"
#include "berkline/exact_matrix.hpp"

namespace berkline::shift {

using dendrite::CombSystem;
using dendrite::SymbolicPoint;
using dendrite::Word;
using cvec = std::vector<std::complex<double>>;

// Points (w, t): w an admissible word over letters 1..N with total power <= D,
// t a letter tail q_n^inf or end tail b_n^inf (n <= N) that may follow w.
// Tail-only points (empty w) come first, then words in lexicographic order.
class TruncatedBasis {
 public:
  TruncatedBasis(CombSystem cs, std::size_t n, std::size_t d);

  const CombSystem& comb() const noexcept { return cs_; }
  std::size_t alphabet() const noexcept { return n_; }
  std::size_t depth() const noexcept { return d_; }
  std::size_t size() const noexcept { return points_.size(); }
  const SymbolicPoint& point(std::size_t i) const { return points_.at(i); }
  std::size_t prefix_length(std::size_t i) const { return points_.at(i).prefix.total_power(); }
  std::optional<std::size_t> index_of(const SymbolicPoint& x) const;
  // Empty word first, then enumerate_cylinders(N, D).
  const std::vector<Word>& words() const noexcept { return words_; }

 private:
  using Key = std::pair<std::vector<std::pair<std::size_t, unsigned>>, std::pair<int, std::size_t>>;
  static std::optional<Key> key_of(const SymbolicPoint& x);

  CombSystem cs_;
  std::size_t n_, d_;
  std::vector<SymbolicPoint> points_;
  std::vector<Word> words_;
  std::map<Key, std::size_t> index_;
};

// Coordinate-list operator on a truncated basis.
struct SparseOperator {
  std::size_t dim = 0;
  std::vector<std::tuple<std::size_t, std::size_t, std::complex<double>>> entries;  // (row, col, value)

  cvec apply(const cvec& v) const;
  SparseOperator adjoint() const;
  std::string to_csv() const;
};

struct ApplyResult {
  cvec v;
  bool truncated = false;  // some image fell outside the depth budget
};

// S_q e_x = e_{qx} for x in F(q) when qx is in the basis. Throws UnknownLetter.
ApplyResult S_apply(const TruncatedBasis& tb, std::size_t q, const cvec& v);
ApplyResult S_adjoint_apply(const TruncatedBasis& tb, std::size_t q, const cvec& v);
ExactMatrix S_matrix(const TruncatedBasis& tb, std::size_t q);
// S_alpha = S_{a_1} ... S_{a_m}; the identity for the empty word.
ExactMatrix S_word_matrix(const TruncatedBasis& tb, const Word& alpha);

// Boolean combinations of the sets C(alpha, beta); complements are relative to the basis.
struct SetExpr {
  enum class Op { Full, Empty, C, And, Or, Not };
  Op op = Op::Full;
  Word alpha, beta;
  std::vector<SetExpr> args;

  static SetExpr full() { return {}; }
  static SetExpr empty() { return {Op::Empty, {}, {}, {}}; }
  static SetExpr C(Word alpha, Word beta) { return {Op::C, std::move(alpha), std::move(beta), {}}; }
  static SetExpr cylinder(Word beta) { return C({}, std::move(beta)); }
  static SetExpr follower(Word alpha) { return C(std::move(alpha), {}); }
  static SetExpr both(SetExpr a, SetExpr b) { return {Op::And, {}, {}, {std::move(a), std::move(b)}}; }
  static SetExpr either(SetExpr a, SetExpr b) { return {Op::Or, {}, {}, {std::move(a), std::move(b)}}; }
  static SetExpr complement(SetExpr a) { return {Op::Not, {}, {}, {std::move(a)}}; }
};

// Throws InadmissibleWord.
bool contains(const TruncatedBasis& tb, const SetExpr& s, const SymbolicPoint& x);
ExactMatrix P_matrix(const TruncatedBasis& tb, const SetExpr& s);
cvec P_apply(const TruncatedBasis& tb, const SetExpr& s, const cvec& v);

struct RelationResult {
  std::string relation;
  std::string words;   // worst instance
  Rational residual;   // max over instances
  std::size_t instances = 0;
};

struct RelationReport {
  std::vector<RelationResult> relations;
  bool ok() const;
};

// (i)-(iv), the defining relation for C(alpha, beta) and the partial-isometry
// law, each restricted to basis vectors whose images stay inside the depth budget.
RelationReport verify_relations(const TruncatedBasis& tb);

struct PartitionReport {
  Rational residual;                  // on the nonempty-prefix subspace
  std::vector<std::size_t> excluded;  // tail-only points
};
PartitionReport partition_identity(const TruncatedBasis& tb);

ExactMatrix perron_frobenius_matrix(const TruncatedBasis& tb);
ExactMatrix transfer_matrix(const TruncatedBasis& tb);
cvec perron_frobenius_apply(const TruncatedBasis& tb, const cvec& v);
cvec transfer_apply(const TruncatedBasis& tb, const cvec& v);
// Indices of points with nonempty prefix.
std::vector<std::size_t> nonempty_prefix_points(const TruncatedBasis& tb);

struct PvmReport {
  Rational refinement_residual;
  Rational orthogonality_residual;
  std::size_t refinements = 0;
  std::size_t orthogonal_pairs = 0;
  bool ok() const { return refinement_residual == 0 && orthogonality_residual == 0; }
};
PvmReport pvm_consistency(const TruncatedBasis& tb);

// f = sum_i c_i chi_{Z(Q_i)}.
using SimpleFunction = std::vector<std::pair<std::complex<double>, Word>>;
// Throws InadmissibleWord.
SparseOperator spectral_integral(const TruncatedBasis& tb, const SimpleFunction& f);
// Pointwise value of f on each basis point.
cvec simple_values(const TruncatedBasis& tb, const SimpleFunction& f);
SimpleFunction product(const SimpleFunction& f, const SimpleFunction& g);
SimpleFunction conjugate(const SimpleFunction& f);
double operator_norm(const SparseOperator& op);

struct CyclicReport {
  std::map<std::size_t, double> mu;  // word index in tb.words() -> mu_f(Z(Q))
  double max_residual = 0.0;         // | ||S_Q S_Q^* f||^2 - mu_f(Z(Q)) |
  double inner_residual = 0.0;       // | <W_f chi_Q, W_f chi_R> - mu_f(Z(Q) ∩ Z(R)) |
};
// Throws ZeroVector.
CyclicReport cyclic_isometry_check(const TruncatedBasis& tb, const cvec& f);

}  // namespace berkline::shift
