#include "berkline/boundary.hpp"

#include <cmath>

#include "berkline/errors.hpp"

namespace berkline::group {

using line::big_metric;

Rational cylinder_representative(const PrimeContext& ctx, const BerkPoint& label) {
  if (line::leq(ctx, BerkPoint::gauss(), label) && !line::same_point(ctx, BerkPoint::gauss(), label)) {
    long e = label.radius_exp().value().get_num().get_si();
    return ctx.power(e - 1);
  }
  return label.center();
}

BoundarySample ps_measure_estimate(const SchottkyGroup& g, const std::vector<OrbitEntry>& orbit, double s,
                                   std::size_t depth) {
  const auto& ctx = g.ctx();
  BoundarySample mu;
  mu.ctx = ctx;
  mu.s = s;
  mu.depth = depth;
  std::vector<double> raw;
  raw.reserve(orbit.size());
  for (const auto& e : orbit) {
    raw.push_back(std::exp(-s * to_double(e.rho)));
    mu.total += raw.back();
  }
  const Rational d(static_cast<long>(depth));
  const BerkPoint gauss = BerkPoint::gauss();
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const double w = raw[i] / mu.total;
    mu.orbit_points.push_back(orbit[i].point);
    mu.orbit_weights.push_back(w);
    if (orbit[i].rho < d) continue;
    BerkPoint label = line::geodesic_point(ctx, gauss, orbit[i].point, d);
    std::size_t k = 0;
    while (k < mu.cylinders.size() && !line::same_point(ctx, mu.cylinders[k].label, label)) ++k;
    if (k == mu.cylinders.size()) {
      Cylinder c;
      c.label = label;
      c.representative = cylinder_representative(ctx, label);
      GroupWord prefix(orbit[i].word.begin(), orbit[i].word.begin() + std::min(depth, orbit[i].word.size()));
      c.name = word_to_string(prefix);
      mu.cylinders.push_back(std::move(c));
    }
    mu.cylinders[k].weight += w;
  }
  return mu;
}

BoundarySample ps_measure_estimate(const SchottkyGroup& g, double s, std::size_t L, std::size_t depth,
                                   std::size_t threads) {
  return ps_measure_estimate(g, orbit_enumerate(g, L, threads), s, depth);
}

double region_mass(const BoundarySample& mu, const BerkPoint& o, const BerkPoint& v) {
  const Rational ov = big_metric(mu.ctx, o, v);
  double m = 0.0;
  for (std::size_t i = 0; i < mu.orbit_points.size(); ++i) {
    const BerkPoint& x = mu.orbit_points[i];
    if (big_metric(mu.ctx, o, x) == ov + big_metric(mu.ctx, v, x)) m += mu.orbit_weights[i];
  }
  return m;
}

std::size_t cylinder_of(const BoundarySample& mu, const P1Point& xi) {
  const Rational d(static_cast<long>(mu.depth));
  BerkPoint label = xi ? line::geodesic_point(mu.ctx, BerkPoint::gauss(), BerkPoint::classical(*xi), d)
                       : BerkPoint(Rational(0), Rational(-d));
  for (std::size_t k = 0; k < mu.cylinders.size(); ++k)
    if (line::same_point(mu.ctx, mu.cylinders[k].label, label)) return k;
  return static_cast<std::size_t>(-1);
}

QuasiconformalityReport quasiconformality_report(const SchottkyGroup& g, const BoundarySample& mu, double delta,
                                                 const MoebiusMap& gamma) {
  QuasiconformalityReport rep;
  const MoebiusMap ginv = gamma.inverse();
  const BerkPoint o = act_on_point(mu.ctx, ginv, BerkPoint::gauss());
  for (std::size_t k = 0; k < mu.cylinders.size(); ++k) {
    const Cylinder& z = mu.cylinders[k];
    if (z.weight <= 0) throw EmptyCylinder("cylinder " + z.name + " has no mass");
    double moved = region_mass(mu, o, act_on_point(mu.ctx, ginv, z.label));
    if (moved <= 0) throw EmptyCylinder("the preimage of cylinder " + z.name + " has no mass");
    QuasiconformalityRow row;
    row.cylinder = k;
    row.ratio = moved / z.weight;
    row.predicted = delta * to_double(busemann(g.ctx(), gamma, z.representative));
    double gap = std::abs(std::log(row.ratio) - row.predicted);
    row.deviation = row.predicted != 0 ? gap / std::abs(row.predicted) : gap;
    rep.max_deviation = std::max(rep.max_deviation, row.deviation);
    rep.rows.push_back(row);
  }
  return rep;
}

CrossedElement monomial(const BoundarySample& mu, const GroupWord& w, std::vector<std::complex<double>> f) {
  if (f.size() != mu.cylinders.size())
    throw DimensionMismatch("coefficient has " + std::to_string(f.size()) + " values for " +
                            std::to_string(mu.cylinders.size()) + " cylinders");
  CrossedElement a;
  a.coeffs.emplace(w, std::move(f));
  return a;
}

namespace {

CrossedElement scale_by_busemann(const SchottkyGroup& g, const BoundarySample& mu, const CrossedElement& a,
                                 const auto& factor) {
  CrossedElement out = a;
  for (auto& [w, f] : out.coeffs) {
    const MoebiusMap m = g.word_matrix(w);
    for (std::size_t k = 0; k < f.size(); ++k)
      f[k] *= factor(to_double(busemann(g.ctx(), m, mu.cylinders[k].representative)));
  }
  return out;
}

}  // namespace

CrossedElement time_evolve(const SchottkyGroup& g, const BoundarySample& mu, const CrossedElement& a, double t) {
  return scale_by_busemann(g, mu, a, [t](double b) { return std::polar(1.0, t * b); });
}

CrossedElement imaginary_evolve(const SchottkyGroup& g, const BoundarySample& mu, const CrossedElement& a,
                                double beta) {
  return scale_by_busemann(g, mu, a, [beta](double b) { return std::complex<double>(std::exp(-beta * b)); });
}

CrossedElement multiply(const SchottkyGroup& g, const BoundarySample& mu, const CrossedElement& x,
                        const CrossedElement& y) {
  const std::size_t n = mu.cylinders.size();
  CrossedElement out;
  for (const auto& [w1, f1] : x.coeffs) {
    const MoebiusMap back = g.word_matrix(w1).inverse();
    std::vector<std::size_t> moved(n);
    for (std::size_t k = 0; k < n; ++k) moved[k] = cylinder_of(mu, back.apply(mu.cylinders[k].representative));
    for (const auto& [w2, f2] : y.coeffs) {
      auto& f = out.coeffs[reduce_product(w1, w2)];
      f.resize(n);
      for (std::size_t k = 0; k < n; ++k)
        if (moved[k] < n) f[k] += f1[k] * f2[moved[k]];
    }
  }
  return out;
}

std::complex<double> kms_state(const BoundarySample& mu, const CrossedElement& x) {
  double mass = 0.0;
  for (const auto& z : mu.cylinders) mass += z.weight;
  if (mu.cylinders.empty() || mass <= 0) throw EmptyMeasure("the boundary sample carries no mass");
  auto it = x.coeffs.find(GroupWord{});
  if (it == x.coeffs.end()) return 0.0;
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < mu.cylinders.size(); ++k) acc += it->second[k] * mu.cylinders[k].weight;
  return acc;
}

KmsReport kms_residual(const SchottkyGroup& g, const BoundarySample& mu, const CrossedElement& a,
                       const CrossedElement& b, double beta) {
  KmsReport rep;
  rep.lhs = kms_state(mu, multiply(g, mu, a, b));
  rep.rhs = kms_state(mu, multiply(g, mu, b, imaginary_evolve(g, mu, a, beta)));
  rep.residual = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.lhs), kKmsEpsilon);
  return rep;
}

std::vector<HamiltonianSlot> hamiltonian_basis(const CrossedElement& a) {
  std::vector<HamiltonianSlot> basis;
  for (const auto& [w, f] : a.coeffs)
    for (std::size_t k = 0; k < f.size(); ++k) basis.emplace_back(k, w);
  return basis;
}

std::vector<double> hamiltonian_diagonal(const SchottkyGroup& g, const BoundarySample& mu,
                                         const std::vector<HamiltonianSlot>& basis) {
  std::vector<double> h;
  h.reserve(basis.size());
  for (const auto& [k, w] : basis) {
    if (k >= mu.cylinders.size()) throw DimensionMismatch("cylinder index " + std::to_string(k));
    h.push_back(to_double(busemann(g.ctx(), g.word_matrix(w), mu.cylinders[k].representative)));
  }
  return h;
}

std::vector<std::complex<double>> hamiltonian_apply(const SchottkyGroup& g, const BoundarySample& mu,
                                                    const std::vector<HamiltonianSlot>& basis,
                                                    const std::vector<std::complex<double>>& v) {
  if (v.size() != basis.size()) throw DimensionMismatch("vector and basis sizes differ");
  std::vector<double> h = hamiltonian_diagonal(g, mu, basis);
  std::vector<std::complex<double>> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = h[i] * v[i];
  return out;
}

std::vector<std::complex<double>> to_vector(const CrossedElement& a, const std::vector<HamiltonianSlot>& basis) {
  std::vector<std::complex<double>> v;
  v.reserve(basis.size());
  for (const auto& [k, w] : basis) {
    auto it = a.coeffs.find(w);
    v.push_back(it == a.coeffs.end() || k >= it->second.size() ? 0.0 : it->second[k]);
  }
  return v;
}

}  // namespace berkline::group
