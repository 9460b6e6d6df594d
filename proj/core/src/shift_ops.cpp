#include "berkline/shift_ops.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "berkline/errors.hpp"

namespace berkline::shift {

using dendrite::EndTail;
using dendrite::LetterTail;
using dendrite::Tail;

TruncatedBasis::TruncatedBasis(CombSystem cs, std::size_t n, std::size_t d) : cs_(std::move(cs)), n_(n), d_(d) {
  if (n == 0 || n > cs_.size()) throw UnknownLetter("alphabet size " + std::to_string(n) + " outside the comb");
  words_.push_back(Word{});
  if (d > 0) {
    auto ws = dendrite::enumerate_cylinders(cs_, n, d);
    words_.insert(words_.end(), ws.begin(), ws.end());
  }
  std::vector<Tail> tails;
  for (std::size_t i = 1; i <= n; ++i) tails.push_back(LetterTail{i});
  for (std::size_t i = 1; i <= n; ++i) tails.push_back(EndTail{i});
  for (const auto& w : words_)
    for (const auto& t : tails) {
      if (!w.empty() && !dendrite::tail_follows(cs_, w.last(), t)) continue;
      SymbolicPoint x{w, t};
      index_.emplace(*key_of(x), points_.size());
      points_.push_back(std::move(x));
    }
}

std::optional<TruncatedBasis::Key> TruncatedBasis::key_of(const SymbolicPoint& x) {
  Key k;
  for (const auto& l : x.prefix.letters()) k.first.push_back({l.index, l.power});
  if (const auto* t = std::get_if<LetterTail>(&x.tail))
    k.second = {0, t->index};
  else if (const auto* e = std::get_if<EndTail>(&x.tail))
    k.second = {1, e->index};
  else
    return std::nullopt;
  return k;
}

std::optional<std::size_t> TruncatedBasis::index_of(const SymbolicPoint& x) const {
  auto k = key_of(x);
  if (!k) return std::nullopt;
  auto it = index_.find(*k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

cvec SparseOperator::apply(const cvec& v) const {
  if (v.size() != dim) throw DimensionMismatch("vector size differs from operator dimension");
  cvec out(dim);
  for (const auto& [r, c, x] : entries) out[r] += x * v[c];
  return out;
}

SparseOperator SparseOperator::adjoint() const {
  SparseOperator a{dim, {}};
  for (const auto& [r, c, x] : entries) a.entries.emplace_back(c, r, std::conj(x));
  std::sort(a.entries.begin(), a.entries.end(), [](const auto& l, const auto& r) {
    return std::tie(std::get<0>(l), std::get<1>(l)) < std::tie(std::get<0>(r), std::get<1>(r));
  });
  return a;
}

std::string SparseOperator::to_csv() const {
  std::ostringstream os;
  os.precision(15);
  os << "row,col,re,im\n";
  for (const auto& [r, c, x] : entries) os << r << "," << c << "," << x.real() << "," << x.imag() << "\n";
  return os.str();
}

namespace {

void check_letter(const TruncatedBasis& tb, std::size_t q) {
  if (q == 0 || q > tb.alphabet()) throw UnknownLetter("letter " + std::to_string(q) + " outside the alphabet");
}

// Image index of x under S_q; nullopt outside F(q); `truncated` marks a
// follower whose image exceeds the depth budget.
std::optional<std::size_t> s_image(const TruncatedBasis& tb, std::size_t q, std::size_t x, bool& truncated) {
  const auto& pt = tb.point(x);
  if (!dendrite::in_follower(tb.comb(), Word{{q, 1}}, pt)) return std::nullopt;
  SymbolicPoint y = pt;
  y.prefix.push_front(q);
  auto idx = tb.index_of(y);
  if (!idx) truncated = true;
  return idx;
}

ExactMatrix projection(const TruncatedBasis& tb, const std::function<bool(const SymbolicPoint&)>& in) {
  std::vector<Rational> d(tb.size());
  for (std::size_t i = 0; i < tb.size(); ++i) d[i] = in(tb.point(i)) ? 1 : 0;
  return ExactMatrix::diagonal(d);
}

Rational residual_on(const TruncatedBasis& tb, const ExactMatrix& m, const std::function<bool(std::size_t)>& col) {
  Rational best(0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i))
      if (col(j)) best = std::max(best, Rational(abs(v)));
  (void)tb;
  return best;
}

cvec apply_exact(const ExactMatrix& m, const cvec& v) {
  if (v.size() != m.cols()) throw DimensionMismatch("vector size differs from basis size");
  cvec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, x] : m.row(i)) out[i] += x.get_d() * v[j];
  return out;
}

void require_admissible(const TruncatedBasis& tb, const Word& w) {
  if (!dendrite::is_admissible(tb.comb(), w))
    throw InadmissibleWord(dendrite::word_to_string(tb.comb(), w));
}

}  // namespace

ExactMatrix S_matrix(const TruncatedBasis& tb, std::size_t q) {
  check_letter(tb, q);
  ExactMatrix m(tb.size(), tb.size());
  bool truncated = false;
  for (std::size_t x = 0; x < tb.size(); ++x)
    if (auto y = s_image(tb, q, x, truncated)) m.add(*y, x, Rational(1));
  return m;
}

ApplyResult S_apply(const TruncatedBasis& tb, std::size_t q, const cvec& v) {
  check_letter(tb, q);
  if (v.size() != tb.size()) throw DimensionMismatch("vector size differs from basis size");
  ApplyResult r{cvec(tb.size()), false};
  for (std::size_t x = 0; x < tb.size(); ++x) {
    if (v[x] == 0.0) continue;
    bool truncated = false;
    if (auto y = s_image(tb, q, x, truncated)) r.v[*y] += v[x];
    r.truncated = r.truncated || truncated;
  }
  return r;
}

ApplyResult S_adjoint_apply(const TruncatedBasis& tb, std::size_t q, const cvec& v) {
  check_letter(tb, q);
  if (v.size() != tb.size()) throw DimensionMismatch("vector size differs from basis size");
  ApplyResult r{cvec(tb.size()), false};
  for (std::size_t x = 0; x < tb.size(); ++x) {
    bool truncated = false;
    if (auto y = s_image(tb, q, x, truncated)) r.v[x] += v[*y];
  }
  return r;
}

ExactMatrix S_word_matrix(const TruncatedBasis& tb, const Word& alpha) {
  ExactMatrix m = ExactMatrix::identity(tb.size());
  const auto& ls = alpha.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
    ExactMatrix s = S_matrix(tb, it->index);
    for (unsigned k = 0; k < it->power; ++k) m = s * m;
  }
  return m;
}

bool contains(const TruncatedBasis& tb, const SetExpr& s, const SymbolicPoint& x) {
  switch (s.op) {
    case SetExpr::Op::Full: return true;
    case SetExpr::Op::Empty: return false;
    case SetExpr::Op::C:
      require_admissible(tb, s.alpha);
      require_admissible(tb, s.beta);
      return dendrite::in_C(tb.comb(), s.alpha, s.beta, x);
    case SetExpr::Op::And: return contains(tb, s.args.at(0), x) && contains(tb, s.args.at(1), x);
    case SetExpr::Op::Or: return contains(tb, s.args.at(0), x) || contains(tb, s.args.at(1), x);
    case SetExpr::Op::Not: return !contains(tb, s.args.at(0), x);
  }
  return false;
}

ExactMatrix P_matrix(const TruncatedBasis& tb, const SetExpr& s) {
  return projection(tb, [&](const SymbolicPoint& x) { return contains(tb, s, x); });
}

cvec P_apply(const TruncatedBasis& tb, const SetExpr& s, const cvec& v) { return apply_exact(P_matrix(tb, s), v); }

bool RelationReport::ok() const {
  return std::all_of(relations.begin(), relations.end(), [](const RelationResult& r) { return r.residual == 0; });
}

RelationReport verify_relations(const TruncatedBasis& tb) {
  const auto& cs = tb.comb();
  const auto& words = tb.words();
  const long D = static_cast<long>(tb.depth());
  auto len = [&](std::size_t j) { return static_cast<long>(tb.prefix_length(j)); };
  auto wlen = [](const Word& w) { return static_cast<long>(w.total_power()); };
  auto name = [&](const Word& w) { return w.empty() ? std::string("()") : dendrite::word_to_string(cs, w); };

  std::vector<ExactMatrix> S, St, left, right;  // S_a, S_a^*, S_a^* S_a, S_a S_a^*
  for (const auto& w : words) {
    S.push_back(S_word_matrix(tb, w));
    St.push_back(S.back().transpose());
    left.push_back(St.back() * S.back());
    right.push_back(S.back() * St.back());
  }

  RelationReport rep;
  // Keeps the first instance attaining the largest residual.
  auto record = [](RelationResult& r, const Rational& v, const std::string& w) {
    if (r.instances++ == 0 || v > r.residual) {
      r.residual = v;
      r.words = w;
    }
  };

  RelationResult r1{"(i) S_q^* S_p = delta_qp P_F(q)", "", 0, 0};
  for (std::size_t q = 1; q <= tb.alphabet(); ++q)
    for (std::size_t p = 1; p <= tb.alphabet(); ++p) {
      Word wq{{q, 1}}, wp{{p, 1}};
      ExactMatrix lhs = S_matrix(tb, q).transpose() * S_matrix(tb, p);
      ExactMatrix rhs = q == p ? P_matrix(tb, SetExpr::follower(wq)) : ExactMatrix(tb.size(), tb.size());
      record(r1, residual_on(tb, lhs - rhs, [&](std::size_t j) { return len(j) <= D - 1; }),
             "q=" + name(wq) + " p=" + name(wp));
    }

  RelationResult r2{"(ii) [S_a^* S_a, S_b^* S_b] = 0", "", 0, 0};
  RelationResult r3{"(iii) [S_a^* S_a, S_b S_b^*] = 0", "", 0, 0};
  RelationResult r4{"(iv) S_a S_b = 0 for inadmissible ab", "", 0, 0};
  RelationResult r5{"(v) S_b S_a^* S_a S_b^* = P_C(a,b)", "", 0, 0};
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = 0; b < words.size(); ++b) {
      const Word &wa = words[a], &wb = words[b];
      std::string label = "a=" + name(wa) + " b=" + name(wb);
      long la = wlen(wa), lb = wlen(wb);

      ExactMatrix c2 = left[a] * left[b] - left[b] * left[a];
      record(r2, residual_on(tb, c2, [&](std::size_t j) { return len(j) <= D - std::max(la, lb); }), label);

      ExactMatrix c3 = left[a] * right[b] - right[b] * left[a];
      record(r3, residual_on(tb, c3, [&](std::size_t j) { return len(j) <= D - la; }), label);

      if (!wa.empty() && !wb.empty() && !dendrite::admissible_pair(cs, wa.last(), wb.first()))
        record(r4, (S[a] * S[b]).max_abs(), label);

      ExactMatrix lhs = S[b] * left[a] * St[b];
      ExactMatrix rhs = P_matrix(tb, SetExpr::C(wa, wb));
      record(r5,
             residual_on(tb, lhs - rhs,
                         [&](std::size_t j) {
                           return !dendrite::in_cylinder(cs, wb, tb.point(j)) || len(j) - lb + la <= D;
                         }),
             label);
    }

  RelationResult r6{"S_q S_q^* S_q = S_q", "", 0, 0};
  for (std::size_t q = 1; q <= tb.alphabet(); ++q) {
    ExactMatrix s = S_matrix(tb, q);
    record(r6, (s * s.transpose() * s - s).max_abs(), "q=" + name(Word{{q, 1}}));
  }

  rep.relations = {r1, r2, r3, r4, r5, r6};
  return rep;
}

PartitionReport partition_identity(const TruncatedBasis& tb) {
  ExactMatrix sum(tb.size(), tb.size());
  for (std::size_t q = 1; q <= tb.alphabet(); ++q) {
    ExactMatrix s = S_matrix(tb, q);
    sum = sum + s * s.transpose();
  }
  PartitionReport r;
  ExactMatrix target = projection(tb, [](const SymbolicPoint& x) { return !x.prefix.empty(); });
  r.residual = (sum - target).max_abs();
  for (std::size_t i = 0; i < tb.size(); ++i)
    if (tb.point(i).prefix.empty()) r.excluded.push_back(i);
  return r;
}

ExactMatrix perron_frobenius_matrix(const TruncatedBasis& tb) {
  ExactMatrix sum(tb.size(), tb.size());
  for (std::size_t q = 1; q <= tb.alphabet(); ++q) sum = sum + S_matrix(tb, q).transpose();
  return sum;
}

ExactMatrix transfer_matrix(const TruncatedBasis& tb) {
  ExactMatrix t(tb.size(), tb.size());
  for (std::size_t x = 0; x < tb.size(); ++x) {
    auto y = tb.index_of(dendrite::shift(tb.point(x)));
    if (!y) throw std::logic_error("truncated basis is not shift-closed");
    t.add(x, *y, Rational(1));
  }
  return t;
}

cvec perron_frobenius_apply(const TruncatedBasis& tb, const cvec& v) {
  return apply_exact(perron_frobenius_matrix(tb), v);
}

cvec transfer_apply(const TruncatedBasis& tb, const cvec& v) { return apply_exact(transfer_matrix(tb), v); }

std::vector<std::size_t> nonempty_prefix_points(const TruncatedBasis& tb) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tb.size(); ++i)
    if (!tb.point(i).prefix.empty()) out.push_back(i);
  return out;
}

PvmReport pvm_consistency(const TruncatedBasis& tb) {
  const auto& cs = tb.comb();
  const auto& words = tb.words();
  PvmReport r;
  for (const auto& Q : words) {
    if (Q.total_power() >= tb.depth()) continue;
    ExactMatrix diff = P_matrix(tb, SetExpr::cylinder(Q));
    for (std::size_t q = 1; q <= tb.alphabet(); ++q) {
      if (!Q.empty() && !dendrite::admissible_pair(cs, Q.last(), q)) continue;
      Word child = Q;
      child.push_back(q);
      diff = diff - P_matrix(tb, SetExpr::cylinder(child));
    }
    auto deep = [&](std::size_t j) { return tb.prefix_length(j) > Q.total_power(); };
    r.refinement_residual = std::max(r.refinement_residual, residual_on(tb, diff, deep));
    ++r.refinements;
  }
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = a + 1; b < words.size(); ++b) {
      if (dendrite::is_prefix(words[a], words[b]) || dendrite::is_prefix(words[b], words[a])) continue;
      ExactMatrix prod = P_matrix(tb, SetExpr::cylinder(words[a])) * P_matrix(tb, SetExpr::cylinder(words[b]));
      r.orthogonality_residual = std::max(r.orthogonality_residual, prod.max_abs());
      ++r.orthogonal_pairs;
    }
  return r;
}

cvec simple_values(const TruncatedBasis& tb, const SimpleFunction& f) {
  for (const auto& [c, Q] : f) require_admissible(tb, Q);
  cvec d(tb.size());
  for (std::size_t i = 0; i < tb.size(); ++i)
    for (const auto& [c, Q] : f)
      if (dendrite::in_cylinder(tb.comb(), Q, tb.point(i))) d[i] += c;
  return d;
}

SparseOperator spectral_integral(const TruncatedBasis& tb, const SimpleFunction& f) {
  cvec d = simple_values(tb, f);
  SparseOperator op{tb.size(), {}};
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0.0) op.entries.emplace_back(i, i, d[i]);
  return op;
}

SimpleFunction product(const SimpleFunction& f, const SimpleFunction& g) {
  SimpleFunction out;
  for (const auto& [c, Q] : f)
    for (const auto& [d, R] : g) {
      if (dendrite::is_prefix(Q, R))
        out.emplace_back(c * d, R);
      else if (dendrite::is_prefix(R, Q))
        out.emplace_back(c * d, Q);
    }
  return out;
}

SimpleFunction conjugate(const SimpleFunction& f) {
  SimpleFunction out;
  for (const auto& [c, Q] : f) out.emplace_back(std::conj(c), Q);
  return out;
}

double operator_norm(const SparseOperator& op) {
  bool diagonal = std::all_of(op.entries.begin(), op.entries.end(),
                              [](const auto& e) { return std::get<0>(e) == std::get<1>(e); });
  if (diagonal) {
    std::vector<std::complex<double>> acc(op.dim);
    for (const auto& [r, c, x] : op.entries) acc[r] += x;
    double best = 0.0;
    for (const auto& x : acc) best = std::max(best, std::abs(x));
    return best;
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(op.dim), static_cast<Eigen::Index>(op.dim));
  for (const auto& [r, c, x] : op.entries) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += x;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

CyclicReport cyclic_isometry_check(const TruncatedBasis& tb, const cvec& f) {
  if (f.size() != tb.size()) throw DimensionMismatch("vector size differs from basis size");
  if (std::all_of(f.begin(), f.end(), [](const auto& x) { return x == 0.0; })) throw ZeroVector("f = 0");
  const auto& cs = tb.comb();
  const auto& words = tb.words();
  CyclicReport r;
  std::vector<cvec> images;
  for (std::size_t k = 0; k < words.size(); ++k) {
    double mu = 0.0;
    for (std::size_t i = 0; i < tb.size(); ++i)
      if (dendrite::in_cylinder(cs, words[k], tb.point(i))) mu += std::norm(f[i]);
    r.mu[k] = mu;
    ExactMatrix s = S_word_matrix(tb, words[k]);
    cvec w = apply_exact(s * s.transpose(), f);
    double norm2 = 0.0;
    for (const auto& x : w) norm2 += std::norm(x);
    r.max_residual = std::max(r.max_residual, std::abs(norm2 - mu));
    images.push_back(std::move(w));
  }
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = 0; b < words.size(); ++b) {
      std::complex<double> ip = 0.0;
      for (std::size_t i = 0; i < tb.size(); ++i) ip += images[a][i] * std::conj(images[b][i]);
      double expect = 0.0;
      if (dendrite::is_prefix(words[a], words[b]))
        expect = r.mu[b];
      else if (dendrite::is_prefix(words[b], words[a]))
        expect = r.mu[a];
      r.inner_residual = std::max(r.inner_residual, std::abs(ip - expect));
    }
  return r;
}

}  // namespace berkline::shift
