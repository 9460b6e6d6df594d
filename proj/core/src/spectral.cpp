#include "berkline/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "berkline/errors.hpp"

namespace berkline::spectral {

SpectralTriple::SpectralTriple(FiniteTree tree, std::size_t multiplicity)
    : tree_(std::move(tree)), mult_(multiplicity == 0 ? 1 : multiplicity) {
  const std::size_t n = tree_.size();
  first_slot_.assign(n, {});
  std::vector<Slot> base;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : tree_.neighbors(v)) {
      first_slot_[v].push_back(base.size());
      base.push_back({v, w, +1, 0});
      base.push_back({v, w, -1, 0});
    }
  for (std::size_t c = 0; c < mult_; ++c)
    for (Slot s : base) {
      s.copy = c;
      basis_.push_back(s);
    }

  dirac_ = ExactMatrix(basis_.size(), basis_.size());
  std::vector<Rational> g(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); i += 2) {
    const Slot& s = basis_[i];
    Rational inv = 1 / tree_.edge_length(s.v, s.vplus);
    dirac_.add(i, i + 1, inv);
    dirac_.add(i + 1, i, inv);
    g[i] = 1;
    g[i + 1] = -1;
  }
  grading_ = ExactMatrix::diagonal(g);
}

std::size_t SpectralTriple::slot_index(std::size_t v, std::size_t vplus, int spin, std::size_t copy) const {
  const auto& nb = tree_.neighbors(v);
  auto it = std::lower_bound(nb.begin(), nb.end(), vplus);
  if (it == nb.end() || *it != vplus || copy >= mult_) throw std::out_of_range("no such slot");
  std::size_t base = basis_.size() / mult_;
  return copy * base + first_slot_[v][static_cast<std::size_t>(it - nb.begin())] + (spin > 0 ? 0 : 1);
}

Eigen::MatrixXd SpectralTriple::dirac_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i)
    for (const auto& [j, v] : dirac_.row(i)) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v.get_d();
  return d;
}

SpectralTriple assemble_triple(const FiniteTree& tree, std::size_t multiplicity) {
  return SpectralTriple(tree, multiplicity);
}

ExactMatrix rep_matrix(const SpectralTriple& st, const std::vector<Rational>& f) {
  if (f.size() != st.tree().size()) throw DimensionMismatch("function size differs from vertex count");
  std::vector<Rational> d(st.dim());
  for (std::size_t i = 0; i < st.dim(); ++i) {
    const Slot& s = st.basis()[i];
    d[i] = s.spin > 0 ? f[s.vplus] : f[s.v];
  }
  return ExactMatrix::diagonal(d);
}

std::vector<std::complex<double>> rep_apply(const SpectralTriple& st, const std::vector<std::complex<double>>& f,
                                            const std::vector<std::complex<double>>& psi) {
  if (f.size() != st.tree().size()) throw DimensionMismatch("function size differs from vertex count");
  if (psi.size() != st.dim()) throw DimensionMismatch("vector size differs from basis size");
  std::vector<std::complex<double>> out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Slot& s = st.basis()[i];
    out[i] = (s.spin > 0 ? f[s.vplus] : f[s.v]) * psi[i];
  }
  return out;
}

std::vector<double> spectrum(const SpectralTriple& st) {
  if (st.dim() > kMaxDenseSlots)
    throw SpectrumTooLarge(std::to_string(st.dim()) + " slots exceed the dense limit");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(st.dirac_dense(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<double> analytic_spectrum(const SpectralTriple& st) {
  std::vector<double> out;
  for (std::size_t c = 0; c < st.multiplicity(); ++c)
    for (const auto& e : st.tree().edges()) {
      double inv = 1.0 / e.length.get_d();
      out.insert(out.end(), {inv, inv, -inv, -inv});
    }
  std::sort(out.begin(), out.end());
  return out;
}

Rational operator_norm(const SpectralTriple& st) {
  Rational best(0);
  for (const auto& e : st.tree().edges()) best = std::max(best, Rational(1 / e.length));
  return best;
}

double commutator_norm(const SpectralTriple& st, const std::vector<double>& f) {
  if (f.size() != st.tree().size()) throw DimensionMismatch("function size differs from vertex count");
  double best = 0.0;
  for (const auto& e : st.tree().edges())
    best = std::max(best, std::abs(f[e.u] - f[e.w]) / e.length.get_d());
  return best;
}

Eigen::MatrixXd commutator_dense(const SpectralTriple& st, const std::vector<double>& f) {
  if (f.size() != st.tree().size()) throw DimensionMismatch("function size differs from vertex count");
  Eigen::VectorXd pi(static_cast<Eigen::Index>(st.dim()));
  for (std::size_t i = 0; i < st.dim(); ++i) {
    const Slot& s = st.basis()[i];
    pi(static_cast<Eigen::Index>(i)) = s.spin > 0 ? f[s.vplus] : f[s.v];
  }
  Eigen::MatrixXd d = st.dirac_dense();
  return d * pi.asDiagonal() - pi.asDiagonal() * d;
}

double lipschitz_constant(const FiniteTree& tree, const std::vector<double>& f) {
  if (f.size() != tree.size()) throw DimensionMismatch("function size differs from vertex count");
  double best = 0.0;
  const auto& vs = tree.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      double rho = line::big_metric(tree.context(), vs[i], vs[j]).get_d();
      best = std::max(best, std::abs(f[i] - f[j]) / rho);
    }
  return best;
}

bool EvenTripleReport::ok() const {
  return grading_selfadjoint == 0 && grading_square == 0 && anticommutator == 0 && rep_commutator == 0 &&
         dirac_symmetric == 0;
}

EvenTripleReport check_even_triple(const SpectralTriple& st, const std::vector<std::vector<Rational>>& samples) {
  const ExactMatrix& g = st.grading();
  const ExactMatrix& d = st.dirac();
  EvenTripleReport r;
  r.grading_selfadjoint = (g - g.transpose()).max_abs();
  r.grading_square = (g * g - ExactMatrix::identity(st.dim())).max_abs();
  r.anticommutator = (g * d + d * g).max_abs();
  r.dirac_symmetric = (d - d.transpose()).max_abs();
  r.rep_commutator = 0;
  for (const auto& f : samples) {
    ExactMatrix pf = rep_matrix(st, f);
    r.rep_commutator = std::max(r.rep_commutator, (g * pf - pf * g).max_abs());
  }
  return r;
}

TreeMorphism make_inclusion(const FiniteTree& source, const FiniteTree& target) {
  if (source.context() != target.context()) throw NotLeafExtension("trees over different primes");
  TreeMorphism m{source, target, {}, true};
  for (const auto& v : source.vertices()) {
    std::size_t k = target.find(v);
    if (k == target.size()) throw NotLeafExtension(v.str() + " is not a target vertex");
    m.vertex_map.push_back(k);
  }
  for (const auto& e : source.edges()) {
    std::size_t a = m.vertex_map[e.u], b = m.vertex_map[e.w];
    if (!target.has_edge(a, b) || target.edge_length(a, b) != e.length) m.is_leaf_extension = false;
  }
  return m;
}

ExactMatrix inclusion_matrix(const TreeMorphism& m, const SpectralTriple& s1, const SpectralTriple& s2) {
  ExactMatrix iota(s2.dim(), s1.dim());
  for (std::size_t i = 0; i < s1.dim(); ++i) {
    const Slot& s = s1.basis()[i];
    iota.add(s2.slot_index(m.vertex_map[s.v], m.vertex_map[s.vplus], s.spin, s.copy), i, Rational(1));
  }
  return iota;
}

MorphismReport check_morphism(const TreeMorphism& m, const std::vector<Rational>& f) {
  if (!m.is_leaf_extension) throw NotLeafExtension("target subdivides a source edge");
  SpectralTriple s1 = assemble_triple(m.source), s2 = assemble_triple(m.target);
  ExactMatrix iota = inclusion_matrix(m, s1, s2);

  // r* f: pull f back along the retraction of the target onto the source.
  std::vector<Rational> pulled(m.target.size());
  for (std::size_t w = 0; w < m.target.size(); ++w) {
    std::size_t k = m.source.find(retract(m.source, m.target.vertices()[w]));
    if (k == m.source.size()) throw NotLeafExtension("retraction leaves the source vertex set");
    pulled[w] = f.at(k);
  }

  MorphismReport r;
  r.rep_residual = (iota * rep_matrix(s1, f) - rep_matrix(s2, pulled) * iota).max_abs();
  r.dirac_residual = (iota * s1.dirac() - s2.dirac() * iota).max_abs();
  r.grading_residual = (iota * s1.grading() - s2.grading() * iota).max_abs();
  return r;
}

std::vector<double> tower_resolvent_profile(const std::vector<FiniteTree>& trees, std::complex<double> lambda) {
  if (lambda.imag() == 0.0) throw RealLambda("resolvent needs Im(lambda) != 0");
  for (std::size_t k = 1; k < trees.size(); ++k)
    if (!make_inclusion(trees[k - 1], trees[k]).is_leaf_extension)
      throw NotLeafExtension("tower level " + std::to_string(k) + " subdivides an edge");
  std::vector<double> norms;
  for (const auto& t : trees) norms.push_back(operator_norm(assemble_triple(t)).get_d());
  std::vector<double> out;
  for (std::size_t j = 0; j + 1 < norms.size(); ++j) {
    double best = 0.0;
    for (std::size_t k = j + 1; k < norms.size(); ++k) best = std::max(best, 1.0 / std::abs(norms[k] - lambda));
    out.push_back(best);
  }
  return out;
}

}  // namespace berkline::spectral
