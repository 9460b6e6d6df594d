// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// Reference values come from the oracles in this directory (repeated-division
// valuations, disk scans, brute-force shift matrices, sampled image disks) or
// from closed forms such as the word count 4 * 3^(n-1) of the example group.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "berkline/boundary.hpp"
#include "berkline/errors.hpp"
#include "berkline/shift_ops.hpp"
#include "berkline/spectral.hpp"
#include "group_oracle.hpp"
#include "oracles.hpp"
#include "shift_oracle.hpp"

using namespace berkline;
using padic::ExtRational;
using padic::PrimeContext;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_s;  // 0 means no runtime bound
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---------------------------------------------------------------------------
// Rational-exponent versions of the disk oracles: join exponent is
// min(e_a, e_b, v(a - b)).

struct QDisk {
  Rational center;
  Rational e;
};

Rational join_exp(long p, const QDisk& a, const QDisk& b) {
  Rational m = std::min(a.e, b.e);
  auto v = oracle::valuation(p, Rational(a.center - b.center));
  if (!v || Rational(*v) >= m) return m;
  return Rational(*v);
}

Rational rho(long p, const QDisk& a, const QDisk& b) { return a.e + b.e - 2 * join_exp(p, a, b); }

QDisk qdisk(const line::BerkPoint& x) { return {x.center(), x.radius_exp().value()}; }

Rational ppow(long p, const Rational& e) {
  // p^-e for integer e
  mpz_class r;
  long k = e.get_num().get_si();
  mpz_pow_ui(r.get_mpz_t(), mpz_class(p).get_mpz_t(), static_cast<unsigned long>(std::labs(k)));
  return k >= 0 ? Rational(1) / Rational(r) : Rational(r);
}

Rational small_d(long p, const QDisk& a, const QDisk& b) {
  return 2 * ppow(p, join_exp(p, a, b)) - ppow(p, a.e) - ppow(p, b.e);
}

// ---------------------------------------------------------------------------

Outcome metric_axioms() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<long> ex(-3, 3);
  std::size_t violations = 0, mismatches = 0, triples = 0;
  for (long p : {2L, 3L, 5L}) {
    PrimeContext ctx(p);
    for (int i = 0; i < 1000; ++i, ++triples) {
      line::BerkPoint pt[3];
      QDisk q[3];
      for (int k = 0; k < 3; ++k) {
        q[k] = {oracle::small_rational(rng), Rational(ex(rng))};
        pt[k] = line::BerkPoint(q[k].center, ExtRational(q[k].e));
      }
      Rational d[3][3], r[3][3];
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          auto m = line::small_metric(ctx, pt[a], pt[b]);
          if (!m.exact) {
            ++mismatches;
            continue;
          }
          d[a][b] = *m.exact;
          r[a][b] = line::big_metric(ctx, pt[a], pt[b]);
          if (d[a][b] != small_d(p, q[a], q[b]) || r[a][b] != rho(p, q[a], q[b])) ++mismatches;
        }
      for (int a = 0; a < 3; ++a) {
        if (d[a][a] != 0 || r[a][a] != 0) ++violations;
        for (int b = 0; b < 3; ++b) {
          if (d[a][b] != d[b][a] || r[a][b] != r[b][a]) ++violations;
          if (d[a][b] < 0 || r[a][b] < 0) ++violations;
          for (int c = 0; c < 3; ++c) {
            if (d[a][c] > d[a][b] + d[b][c]) ++violations;
            if (r[a][c] > r[a][b] + r[b][c]) ++violations;
          }
        }
      }
    }
  }
  return {violations == 0 && mismatches == 0, std::to_string(triples) + " triples, " + std::to_string(violations) +
                                                   " axiom violations, " + std::to_string(mismatches) +
                                                   " oracle mismatches"};
}

Outcome zero_hyperbolicity() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<long> ex(-6, 6);
  std::bernoulli_distribution flag(0.3);
  std::size_t bad = 0, mismatches = 0;
  const long primes[3] = {2, 3, 5};
  for (int i = 0; i < 1000; ++i) {
    long p = primes[i % 3];
    PrimeContext ctx(p);
    line::BerkPoint pt[4];
    QDisk q[4];
    for (int k = 0; k < 4; ++k) {
      Rational e(ex(rng), 2);
      e.canonicalize();
      q[k] = {oracle::small_rational(rng), e};
      pt[k] = line::BerkPoint(q[k].center, ExtRational(e), flag(rng));
    }
    auto r = [&](int a, int b) {
      Rational lib = line::big_metric(ctx, pt[a], pt[b]);
      if (lib != rho(p, q[a], q[b])) ++mismatches;
      return lib;
    };
    std::vector<Rational> s{r(0, 1) + r(2, 3), r(0, 2) + r(1, 3), r(0, 3) + r(1, 2)};
    std::sort(s.begin(), s.end());
    if (s[1] != s[2]) ++bad;
  }
  return {bad == 0 && mismatches == 0,
          "1000 quadruples, " + std::to_string(bad) + " four-point failures, " + std::to_string(mismatches) +
              " oracle mismatches"};
}

// Random graphs of discs shared by the spectral criteria.
struct TestTree {
  long p;
  std::vector<spectral::Disk> disks;
  spectral::FiniteTree tree;
};

std::vector<spectral::Disk> random_disks(std::mt19937_64& rng, std::size_t count) {
  std::uniform_int_distribution<long> center(0, 60), ex(1, 6);
  std::vector<spectral::Disk> out;
  for (std::size_t i = 0; i < count; ++i) {
    Rational e(ex(rng), 2);
    e.canonicalize();
    out.push_back({Rational(center(rng)), e});
  }
  return out;
}

const std::vector<TestTree>& test_trees() {
  static const std::vector<TestTree> trees = [] {
    std::mt19937_64 rng(1003);
    std::uniform_int_distribution<std::size_t> count(1, 12);
    const long primes[3] = {2, 3, 5};
    std::vector<TestTree> out;
    for (int i = 0; i < 50; ++i) {
      long p = primes[i % 3];
      auto disks = random_disks(rng, count(rng));
      out.push_back({p, disks, spectral::build_graph_of_discs(PrimeContext(p), disks)});
    }
    return out;
  }();
  return trees;
}

Outcome dirac_spectrum() {
  double worst = 0, worst_radius = 0;
  std::size_t structural = 0, max_dim = 0;
  for (const auto& t : test_trees()) {
    const auto& tree = t.tree;
    if (tree.edges().size() + 1 != tree.size()) ++structural;
    for (const auto& d : t.disks) {
      bool found = false;
      for (const auto& v : tree.vertices())
        found = found || (v.radius_exp().value() == d.radius_exp &&
                          oracle::within(t.p, v.center(), d.center, 0) &&
                          join_exp(t.p, qdisk(v), {d.center, d.radius_exp}) == d.radius_exp);
      if (!found) ++structural;
    }
    std::vector<double> want;
    Rational max_inv = 0;
    for (const auto& e : tree.edges()) {
      Rational len = rho(t.p, qdisk(tree.vertices()[e.u]), qdisk(tree.vertices()[e.w]));
      if (len != e.length || len <= 0) ++structural;
      Rational inv = 1 / len;
      max_inv = std::max(max_inv, inv);
      for (double sgn : {1.0, -1.0}) want.insert(want.end(), 2, sgn * to_double(inv));
    }
    std::sort(want.begin(), want.end());
    auto st = spectral::assemble_triple(tree);
    max_dim = std::max(max_dim, st.dim());
    auto got = spectral::spectrum(st);
    std::sort(got.begin(), got.end());
    if (got.size() != want.size()) {
      ++structural;
      continue;
    }
    double radius = 0;
    for (std::size_t i = 0; i < got.size(); ++i) {
      worst = std::max(worst, std::abs(got[i] - want[i]));
      radius = std::max(radius, std::abs(got[i]));
    }
    worst_radius = std::max(worst_radius, std::abs(radius - to_double(max_inv)));
    if (spectral::operator_norm(st) != max_inv) ++structural;
  }
  bool ok = structural == 0 && worst <= 1e-9 && worst_radius <= 1e-9;
  return {ok, "50 trees (dim <= " + std::to_string(max_dim) + "), max eigenvalue error " + fmt("%.2e", worst) +
                  ", radius error " + fmt("%.2e", worst_radius) + ", " + std::to_string(structural) +
                  " structural mismatches"};
}

std::vector<Rational> random_rational_function(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> f;
  for (std::size_t i = 0; i < n; ++i) f.push_back(oracle::small_rational(rng, 9));
  return f;
}

Outcome even_triples_and_morphisms() {
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<std::size_t> count(1, 6), extra(1, 3);
  const long primes[3] = {2, 3, 5};
  std::size_t pairs = 0, attempts = 0, failures = 0;
  while (pairs < 20 && attempts < 5000) {
    ++attempts;
    long p = primes[attempts % 3];
    PrimeContext ctx(p);
    auto src_disks = random_disks(rng, count(rng));
    auto tgt_disks = src_disks;
    auto more = random_disks(rng, extra(rng));
    tgt_disks.insert(tgt_disks.end(), more.begin(), more.end());
    auto src = spectral::build_graph_of_discs(ctx, src_disks);
    auto tgt = spectral::build_graph_of_discs(ctx, tgt_disks);
    if (tgt.size() == src.size()) continue;
    std::optional<spectral::TreeMorphism> m;
    try {
      m.emplace(spectral::make_inclusion(src, tgt));
    } catch (const NotLeafExtension&) {
      continue;
    }
    if (!m->is_leaf_extension) continue;
    ++pairs;
    for (const auto* tree : {&src, &tgt}) {
      auto st = spectral::assemble_triple(*tree);
      std::vector<std::vector<Rational>> samples;
      for (int k = 0; k < 3; ++k) samples.push_back(random_rational_function(rng, tree->size()));
      if (!spectral::check_even_triple(st, samples).ok()) ++failures;
    }
    for (int k = 0; k < 3; ++k)
      if (!spectral::check_morphism(*m, random_rational_function(rng, src.size())).ok()) ++failures;
  }
  return {pairs == 20 && failures == 0, std::to_string(pairs) + " leaf-extension pairs (" + std::to_string(attempts) +
                                            " draws), " + std::to_string(failures) + " nonzero residuals"};
}

// Lipschitz constant over all vertex pairs with the oracle metric.
double lipschitz_oracle(long p, const spectral::FiniteTree& tree, const std::vector<double>& f) {
  double lip = 0;
  for (std::size_t i = 0; i < tree.size(); ++i)
    for (std::size_t j = i + 1; j < tree.size(); ++j) {
      double r = to_double(rho(p, qdisk(tree.vertices()[i]), qdisk(tree.vertices()[j])));
      lip = std::max(lip, std::abs(f[i] - f[j]) / r);
    }
  return lip;
}

Outcome commutator_bound() {
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst_excess = -1e300, worst_witness = 0;
  std::size_t samples = 0;
  for (const auto& t : test_trees()) {
    auto st = spectral::assemble_triple(t.tree);
    for (int k = 0; k < 100; ++k, ++samples) {
      std::vector<double> f(t.tree.size());
      for (auto& x : f) x = u(rng);
      worst_excess = std::max(worst_excess, spectral::commutator_norm(st, f) - lipschitz_oracle(t.p, t.tree, f));
    }
    // Witness: indicator of the lower endpoint of a shortest edge.
    const spectral::Edge* best = &t.tree.edges().front();
    for (const auto& e : t.tree.edges())
      if (e.length < best->length) best = &e;
    std::vector<double> w(t.tree.size(), 0.0);
    w[best->u] = 1.0;
    double gap = std::abs(spectral::commutator_norm(st, w) - lipschitz_oracle(t.p, t.tree, w));
    worst_witness = std::max(worst_witness, gap);
  }
  return {worst_excess <= 1e-9 && worst_witness <= 1e-9,
          std::to_string(samples) + " functions, max ||[D,f]|| - Lip = " + fmt("%.2e", worst_excess) +
              ", witness gap " + fmt("%.2e", worst_witness)};
}

Outcome subshift_relations() {
  std::size_t configs = 0, nonzero = 0, oracle_mismatch = 0, max_basis = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t d = 1; d <= 3; ++d) {
      shift::TruncatedBasis tb(dendrite::default_comb(n), n, d);
      ++configs;
      max_basis = std::max(max_basis, tb.size());
      for (std::size_t q = 1; q <= n; ++q) {
        auto want = oracle::shift_matrix(tb, q);
        auto got = shift::S_matrix(tb, q);
        for (std::size_t i = 0; i < tb.size(); ++i)
          for (std::size_t j = 0; j < tb.size(); ++j)
            if (got.at(i, j) != want[i][j]) ++oracle_mismatch;
      }
      for (const auto& r : shift::verify_relations(tb).relations)
        if (r.residual != 0) ++nonzero;
    }
  return {nonzero == 0 && oracle_mismatch == 0,
          std::to_string(configs) + " (N, D) configurations, basis <= " + std::to_string(max_basis) + ", " +
              std::to_string(nonzero) + " nonzero relation residuals, " + std::to_string(oracle_mismatch) +
              " entries differing from brute-force S_q"};
}

bool starts_with(const dendrite::Word& w, const dendrite::Word& q) {
  if (w.total_power() < q.total_power()) return false;
  for (std::size_t k = 0; k < q.total_power(); ++k)
    if (w.symbol(k) != q.symbol(k)) return false;
  return true;
}

Outcome partition_and_pvm() {
  std::size_t failures = 0, checks = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t d = 1; d <= 3; ++d) {
      shift::TruncatedBasis tb(dendrite::default_comb(n), n, d);
      // Sum_q S_q S_q^* from brute-force matrices against the prefix indicator.
      std::vector<std::vector<int>> sum(tb.size(), std::vector<int>(tb.size(), 0));
      for (std::size_t q = 1; q <= n; ++q) {
        auto s = oracle::shift_matrix(tb, q);
        for (std::size_t i = 0; i < tb.size(); ++i)
          for (std::size_t j = 0; j < tb.size(); ++j)
            for (std::size_t k = 0; k < tb.size(); ++k) sum[i][j] += s[i][k] * s[j][k];
      }
      for (std::size_t i = 0; i < tb.size(); ++i)
        for (std::size_t j = 0; j < tb.size(); ++j) {
          int want = (i == j && !tb.point(i).prefix.empty()) ? 1 : 0;
          if (sum[i][j] != want) ++failures;
        }
      if (shift::partition_identity(tb).residual != 0) ++failures;
      if (!shift::pvm_consistency(tb).ok()) ++failures;
      // Cylinder projections on the deep subspace are prefix indicators.
      for (const auto& Q : tb.words()) {
        if (Q.total_power() >= d) continue;
        auto P = shift::P_matrix(tb, shift::SetExpr::cylinder(Q));
        for (std::size_t i = 0; i < tb.size(); ++i) {
          if (tb.prefix_length(i) <= Q.total_power()) continue;
          ++checks;
          if (P.at(i, i) != (starts_with(tb.point(i).prefix, Q) ? 1 : 0)) ++failures;
        }
      }
    }
  return {failures == 0, "N <= 4, D <= 3: " + std::to_string(checks) + " deep cylinder entries, " +
                             std::to_string(failures) + " failures"};
}

Outcome perron_frobenius_adjoint() {
  shift::TruncatedBasis tb(dendrite::default_comb(3), 3, 3);
  std::mt19937_64 rng(1006);
  std::normal_distribution<double> g;
  auto deep = shift::nonempty_prefix_points(tb);
  // Brute-force P_sigma = sum_q S_q^T.
  std::vector<std::vector<int>> pf(tb.size(), std::vector<int>(tb.size(), 0));
  for (std::size_t q = 1; q <= 3; ++q) {
    auto s = oracle::shift_matrix(tb, q);
    for (std::size_t i = 0; i < tb.size(); ++i)
      for (std::size_t j = 0; j < tb.size(); ++j) pf[j][i] += s[i][j];
  }
  double worst = 0, worst_oracle = 0;
  for (int k = 0; k < 100; ++k) {
    shift::cvec psi(tb.size()), xi(tb.size());
    for (auto& c : psi) c = {g(rng), g(rng)};
    for (auto i : deep) xi[i] = {g(rng), g(rng)};
    auto tpsi = shift::transfer_apply(tb, psi);
    auto pxi = shift::perron_frobenius_apply(tb, xi);
    std::complex<double> lhs = 0, rhs = 0;
    for (std::size_t i = 0; i < tb.size(); ++i) {
      lhs += std::conj(tpsi[i]) * xi[i];
      rhs += std::conj(psi[i]) * pxi[i];
      std::complex<double> o = 0;
      for (std::size_t j = 0; j < tb.size(); ++j) o += static_cast<double>(pf[i][j]) * xi[j];
      worst_oracle = std::max(worst_oracle, std::abs(o - pxi[i]));
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst <= 1e-12 && worst_oracle <= 1e-12,
          "100 pairs on " + std::to_string(tb.size()) + " points, max |<T psi, xi> - <psi, P xi>| = " +
              fmt("%.2e", worst) + ", brute-force P error " + fmt("%.2e", worst_oracle)};
}

// log_p ratio of sampled image radii, measured from the Gauss point.
std::optional<Rational> sampled_ratio(long p, const group::MoebiusMap& g, const Rational& xi, long k) {
  group::MoebiusMap h = g.inverse();
  if (h.c() != 0) {
    Rational pole = -h.d() / h.c();
    if (oracle::within(p, pole, xi, k)) return std::nullopt;
  }
  oracle::Disk img = oracle::image_disk(p, h, xi, k);
  QDisk gauss{0, 0};
  return rho(p, gauss, {xi, k}) - rho(p, gauss, {img.center, Rational(img.e)});
}

Outcome busemann_cocycle() {
  std::mt19937_64 rng(1007);
  const long primes[3] = {2, 3, 5};
  std::size_t cocycle_fail = 0, limit_fail = 0, sampled = 0;
  for (int i = 0; i < 500; ++i) {
    long p = primes[i % 3];
    PrimeContext ctx(p);
    auto g1 = oracle::random_map(rng), g2 = oracle::random_map(rng);
    Rational xi = oracle::small_rational(rng);
    auto moved = g1.inverse().apply(xi);
    if (group::busemann(ctx, g1 * g2, xi) != group::busemann(ctx, g1, xi) + group::busemann(ctx, g2, moved))
      ++cocycle_fail;
    Rational closed = group::busemann(ctx, g1, xi);
    for (long k : {10L, 20L}) {
      auto r = sampled_ratio(p, g1, xi, k);
      if (r) ++sampled;
      Rational want = r ? *r : oracle::spherical_ratio(ctx, g1, xi, k);
      if (want != closed) ++limit_fail;
    }
  }
  return {cocycle_fail == 0 && limit_fail == 0,
          "500 triples, " + std::to_string(cocycle_fail) + " cocycle failures, " + std::to_string(limit_fail) +
              " limit mismatches (" + std::to_string(sampled) + "/1000 limits from sampled disks)"};
}

// ---------------------------------------------------------------------------
// Rank-2 example group over Q_3: free, with translation length 1 per generator.

group::SchottkyGroup example_group() {
  using group::MoebiusMap;
  return group::SchottkyGroup(PrimeContext(3), {MoebiusMap(3, 0, 0, 1), MoebiusMap(5, -4, 2, -1)});
}

const std::vector<group::OrbitEntry>& orbit10() {
  static const auto orbit = group::orbit_enumerate(example_group(), 10);
  return orbit;
}

std::vector<group::OrbitEntry> orbit_prefix(std::size_t L) {
  std::vector<group::OrbitEntry> out;
  for (const auto& e : orbit10())
    if (e.word.size() <= L) out.push_back(e);
  return out;
}

Outcome critical_exponent() {
  const auto& orbit = orbit10();
  std::vector<std::size_t> shell(11, 0);
  std::size_t rho_mismatch = 0;
  for (const auto& e : orbit) {
    ++shell[e.word.size()];
    if (e.rho != static_cast<long>(e.word.size())) ++rho_mismatch;
  }
  std::size_t count_mismatch = shell[0] == 1 ? 0 : 1;
  for (std::size_t n = 1, want = 4; n <= 10; ++n, want *= 3)
    if (shell[n] != want) ++count_mismatch;
  double delta = group::critical_exponent_estimate(orbit).delta;
  const double ln3 = std::log(3.0);
  bool ok = count_mismatch == 0 && rho_mismatch == 0 && delta >= 0.9 * ln3 && delta <= 1.1 * ln3;
  return {ok, std::to_string(orbit.size()) + " words at L = 10, delta = " + fmt("%.6f", delta) + " vs ln 3 = " +
                  fmt("%.6f", ln3) + ", " + std::to_string(count_mismatch) + " shell-count mismatches"};
}

Outcome quasiconformality() {
  auto g = example_group();
  std::vector<double> dev;
  std::string detail = "max deviation by L:";
  for (std::size_t L = 6; L <= 10; ++L) {
    auto orbit = orbit_prefix(L);
    double delta = group::critical_exponent_estimate(orbit).delta;
    auto mu = group::ps_measure_estimate(g, orbit, delta, 2);
    dev.push_back(group::quasiconformality_report(g, mu, delta, g.generators()[0]).max_deviation);
    detail += " " + std::to_string(L) + ":" + fmt("%.4f", dev.back());
  }
  std::size_t violations = 0;
  for (std::size_t i = 1; i < dev.size(); ++i)
    if (dev[i] > dev[i - 1]) ++violations;
  detail += ", " + std::to_string(violations) + " increases";
  return {dev[2] <= 0.25 && violations <= 1, detail};
}

std::pair<group::CrossedElement, group::CrossedElement> documented_pair(const group::BoundarySample& mu) {
  std::vector<std::complex<double>> f(mu.cylinders.size(), 1.0), h(mu.cylinders.size(), 1.0);
  f[0] = 2.0;
  return {group::monomial(mu, {0}, f), group::monomial(mu, {1}, h)};
}

Outcome kms_and_hamiltonian() {
  auto g = example_group();
  auto orbit = orbit_prefix(8);
  double delta = group::critical_exponent_estimate(orbit).delta;
  auto mu = group::ps_measure_estimate(g, orbit, delta, 2);
  auto [a, b] = documented_pair(mu);
  double at_delta = group::kms_residual(g, mu, a, b, delta).residual;
  auto half_mu = group::ps_measure_estimate(g, orbit, delta / 2, 2);
  auto [ha, hb] = documented_pair(half_mu);
  double at_half = group::kms_residual(g, half_mu, ha, hb, delta / 2).residual;

  // exp(itH) by dense matrix exponential against alpha_t.
  a.coeffs[group::GroupWord{}] = std::vector<std::complex<double>>(mu.cylinders.size(), 1.0);
  a.coeffs[group::GroupWord{2, 0}] = std::vector<std::complex<double>>(mu.cylinders.size(), {0.5, -1.0});
  auto basis = group::hamiltonian_basis(a);
  auto diag = group::hamiltonian_diagonal(g, mu, basis);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) H(i, i) = diag[i];
  auto v = group::to_vector(a, basis);
  Eigen::VectorXcd ev = Eigen::Map<Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
  double conj_err = 0;
  for (double t : {0.37, 1.0, 2.5}) {
    Eigen::VectorXcd moved = (std::complex<double>(0, t) * H).exp() * ev;
    auto want = group::to_vector(group::time_evolve(g, mu, a, t), basis);
    for (std::size_t i = 0; i < want.size(); ++i)
      conj_err = std::max(conj_err, std::abs(moved(static_cast<Eigen::Index>(i)) - want[i]));
  }
  bool ok = at_delta <= 0.15 && at_delta < at_half && conj_err <= 1e-12;
  return {ok, "residual " + fmt("%.3e", at_delta) + " at delta, " + fmt("%.3e", at_half) +
                  " at delta/2; Hamiltonian conjugation error " + fmt("%.2e", conj_err)};
}

// ---------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct CliRun {
  std::string config;
  std::string args;
};

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path configs = BERKLINE_CONFIG_DIR;
  const fs::path root = fs::path(BERKLINE_WORK_DIR) / "determinism";
  fs::remove_all(root);
  std::vector<CliRun> runs{{"tree.json", "tree build"},
                           {"tree.json", "tree spectrum"},
                           {"tree.json", "tree axioms"},
                           {"tree.json", "tree morphism"},
                           {"tree.json", "tree tower"},
                           {"comb.json", "dendrite classify"},
                           {"comb.json", "dendrite admissible"}};
  for (const char* cfg : {"comb.json", "comb_default.json"})
    for (const char* s : {"verify-relations", "partition", "pf", "pvm", "spectral-integral", "cyclic"})
      runs.push_back({cfg, std::string("shift ") + s});
  for (const char* s : {"orbit", "delta", "poincare", "ps-measure", "quasiconformal", "kms", "hamiltonian"})
    runs.push_back({"group.json", std::string("group ") + s});

  std::size_t files = 0, differing = 0, bad_exit = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::vector<fs::path> outs;
    for (const char* threads : {"1", "8", "1"}) {
      fs::path out = root / (std::to_string(r) + "_" + std::to_string(outs.size()));
      std::string cmd = std::string("\"") + BERKLINE_CLI + "\" --config \"" + (configs / runs[r].config).string() +
                        "\" --out \"" + out.string() + "\" --threads " + threads + " --seed 11 " + runs[r].args +
                        " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) ++bad_exit;
      outs.push_back(out);
    }
    if (!fs::exists(outs[0])) {
      ++differing;
      continue;
    }
    for (const auto& entry : fs::directory_iterator(outs[0])) {
      ++files;
      std::string ref = slurp(entry.path());
      for (std::size_t k = 1; k < outs.size(); ++k)
        if (slurp(outs[k] / entry.path().filename()) != ref) ++differing;
    }
    for (std::size_t k = 1; k < outs.size(); ++k) {
      std::size_t n = 0;
      if (fs::exists(outs[k])) n = std::distance(fs::directory_iterator(outs[k]), fs::directory_iterator{});
      if (n != static_cast<std::size_t>(std::distance(fs::directory_iterator(outs[0]), fs::directory_iterator{})))
        ++differing;
    }
  }
  return {differing == 0 && bad_exit == 0 && files > 0,
          std::to_string(runs.size()) + " subcommands x 3 runs (threads 1, 8, 1), " + std::to_string(files) +
              " artifacts, " + std::to_string(differing) + " differences, " + std::to_string(bad_exit) +
              " nonzero exits"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"metric axioms", 5, metric_axioms},
      {"0-hyperbolicity", 0, zero_hyperbolicity},
      {"Dirac spectrum", 30, dirac_spectrum},
      {"even triples and leaf-extension morphisms", 0, even_triples_and_morphisms},
      {"commutator bound", 0, commutator_bound},
      {"subshift relations", 60, subshift_relations},
      {"partition and PVM refinement", 0, partition_and_pvm},
      {"Perron-Frobenius adjointness", 0, perron_frobenius_adjoint},
      {"Busemann cocycle", 0, busemann_cocycle},
      {"critical exponent", 60, critical_exponent},
      {"quasiconformality", 0, quasiconformality},
      {"KMS condition and Hamiltonian", 0, kms_and_hamiltonian},
      {"determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.budget_s == 0 || secs < c.budget_s;
    bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::string budget = c.budget_s == 0 ? "" : fmt(" / %.0f s", c.budget_s);
    std::printf("%s  %-44s %7.2f s%s  %s\n", pass ? "PASS" : "FAIL", c.name.c_str(), secs, budget.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
