#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "berkline/exact_matrix.hpp"
#include "berkline/tree.hpp"

namespace berkline::spectral {

// Basis slot (v, v+, spin) of the Hilbert space; `copy` indexes the optional
// multiplicity factor.
struct Slot {
  std::size_t v = 0;
  std::size_t vplus = 0;
  int spin = +1;
  std::size_t copy = 0;
};

inline constexpr std::size_t kMaxDenseSlots = 2000;

class SpectralTriple {
 public:
  SpectralTriple(FiniteTree tree, std::size_t multiplicity);

  const FiniteTree& tree() const noexcept { return tree_; }
  const std::vector<Slot>& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t multiplicity() const noexcept { return mult_; }
  const ExactMatrix& dirac() const noexcept { return dirac_; }
  const ExactMatrix& grading() const noexcept { return grading_; }
  // Index of slot (v, v+, spin, copy); throws std::out_of_range.
  std::size_t slot_index(std::size_t v, std::size_t vplus, int spin, std::size_t copy = 0) const;

  Eigen::MatrixXd dirac_dense() const;

 private:
  FiniteTree tree_;
  std::size_t mult_;
  std::vector<Slot> basis_;
  std::vector<std::vector<std::size_t>> first_slot_;  // [v][neighbor position]
  ExactMatrix dirac_;
  ExactMatrix grading_;
};

SpectralTriple assemble_triple(const FiniteTree& tree, std::size_t multiplicity = 1);

// pi(f) = diag(f(v+), f(v)) on each (v, v+) block.
ExactMatrix rep_matrix(const SpectralTriple& st, const std::vector<Rational>& f);
std::vector<std::complex<double>> rep_apply(const SpectralTriple& st, const std::vector<std::complex<double>>& f,
                                            const std::vector<std::complex<double>>& psi);

// Ascending eigenvalues of D from the dense solver; throws SpectrumTooLarge
// above kMaxDenseSlots.
std::vector<double> spectrum(const SpectralTriple& st);
// {+-1/l(e)}, each twice per edge and per copy, ascending.
std::vector<double> analytic_spectrum(const SpectralTriple& st);
// max_e 1/l(e).
Rational operator_norm(const SpectralTriple& st);

// max over blocks of |f(v+) - f(v)| / l(v, v+).
double commutator_norm(const SpectralTriple& st, const std::vector<double>& f);
Eigen::MatrixXd commutator_dense(const SpectralTriple& st, const std::vector<double>& f);
// max over vertex pairs of |f(u) - f(w)| / rho(u, w).
double lipschitz_constant(const FiniteTree& tree, const std::vector<double>& f);

struct EvenTripleReport {
  Rational grading_selfadjoint;
  Rational grading_square;      // gamma^2 - 1
  Rational anticommutator;      // gamma D + D gamma
  Rational rep_commutator;      // max over samples of gamma pi(f) - pi(f) gamma
  Rational dirac_symmetric;     // D - D^T
  bool ok() const;
};

EvenTripleReport check_even_triple(const SpectralTriple& st, const std::vector<std::vector<Rational>>& samples);

struct TreeMorphism {
  FiniteTree source;
  FiniteTree target;
  std::vector<std::size_t> vertex_map;  // source index -> target index
  bool is_leaf_extension = false;
};

// Inclusion of source into target by disk equality. Throws NotLeafExtension
// if some source vertex is absent from the target.
TreeMorphism make_inclusion(const FiniteTree& source, const FiniteTree& target);

struct MorphismReport {
  Rational rep_residual;      // iota pi_1(f) - pi_2(r* f) iota
  Rational dirac_residual;    // iota D_1 - D_2 iota
  Rational grading_residual;  // iota gamma_1 - gamma_2 iota
  bool ok() const { return rep_residual == 0 && dirac_residual == 0 && grading_residual == 0; }
};

// f is indexed by source vertices. Throws NotLeafExtension.
MorphismReport check_morphism(const TreeMorphism& m, const std::vector<Rational>& f);
ExactMatrix inclusion_matrix(const TreeMorphism& m, const SpectralTriple& s1, const SpectralTriple& s2);

// Entry j is sup_{k>j} 1/| ||D_k|| - lambda |. Throws RealLambda, NotLeafExtension.
std::vector<double> tower_resolvent_profile(const std::vector<FiniteTree>& trees, std::complex<double> lambda);

}  // namespace berkline::spectral
