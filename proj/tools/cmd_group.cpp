#include <cmath>
#include <sstream>

#include "berkline/boundary.hpp"
#include "berkline/errors.hpp"
#include "commands.hpp"

namespace cli {

using namespace berkline;
using namespace berkline::group;

namespace {

struct GroupRun {
  SchottkyGroup group;
  nlohmann::json block;
  std::size_t L;
  std::size_t depth;
};

template <class T>
T knob(const nlohmann::json& block, const char* key, T fallback) {
  if (!block.contains(key)) return fallback;
  try {
    return block.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("group.") + key + ": " + e.what());
  }
}

GroupRun load(const Context& ctx) {
  GroupRun run{schottky(ctx.config), group_block(ctx.config), 0, 0};
  run.L = knob<std::size_t>(run.block, "L", 8);
  run.depth = knob<std::size_t>(run.block, "depth", 2);
  if (run.L > kMaxWordLength) throw ParseError("group.L is capped at " + std::to_string(kMaxWordLength));
  auto pp = check_ping_pong(run.group);
  if (!pp.ok) throw PoleInsideDisk("ping-pong check failed: " + pp.failure);
  return run;
}

GroupWord gamma_word(const GroupRun& run) {
  return parse_group_word(knob<std::string>(run.block, "gamma", "a"), run.group.rank());
}

std::vector<std::complex<double>> coefficients(const nlohmann::json& block, const char* key,
                                               const BoundarySample& mu, std::vector<std::complex<double>> fallback) {
  if (!block.contains(key)) return fallback;
  std::vector<std::complex<double>> f;
  for (const auto& v : block.at(key)) f.push_back(complex_field(v));
  if (f.size() != mu.cylinders.size())
    throw ParseError(std::string("group.") + key + " needs one value per cylinder (" +
                     std::to_string(mu.cylinders.size()) + ")");
  return f;
}

int cmd_orbit(const Context& ctx) {
  auto run = load(ctx);
  auto orb = orbit_enumerate(run.group, run.L, ctx.threads);
  std::ostringstream csv;
  csv << "word,length,rho,center,radius_exp\n";
  for (const auto& e : orb)
    csv << word_to_string(e.word) << "," << e.word.size() << "," << to_string(e.rho) << ","
        << to_string(e.point.center()) << "," << e.point.radius_exp().str() << "\n";
  write_text(ctx, "orbit.csv", csv.str());
  return kOk;
}

int cmd_delta(const Context& ctx) {
  auto run = load(ctx);
  auto ce = critical_exponent_estimate(orbit_enumerate(run.group, run.L, ctx.threads));
  Json j;
  j["L"] = run.L;
  j["delta"] = num(ce.delta);
  j["fit_residual"] = num(ce.residual);
  Json grid = Json::array();
  for (std::size_t i = 0; i < ce.r_grid.size(); ++i)
    grid.push_back({{"R", to_string(ce.r_grid[i])}, {"count", ce.counts[i]}, {"fitted", i >= ce.fit_start}});
  j["grid"] = grid;
  write_json(ctx, "delta.json", j);
  return kOk;
}

int cmd_poincare(const Context& ctx) {
  auto run = load(ctx);
  auto orb = orbit_enumerate(run.group, run.L, ctx.threads);
  double s = run.block.contains("s") ? knob<double>(run.block, "s", 0) : critical_exponent_estimate(orb).delta;
  std::string mode = knob<std::string>(run.block, "mode", "rho");
  if (mode != "rho" && mode != "diam") throw ParseError("group.mode is 'rho' or 'diam'");
  auto ps = poincare_series(run.group.ctx(), orb, s, mode == "rho" ? PoincareMode::Rho : PoincareMode::Diam);
  Json j;
  j["L"] = run.L;
  j["s"] = num(s);
  j["mode"] = mode;
  j["partial"] = num(ps.partial);
  j["tail_bound"] = num(ps.tail);
  Json shells = Json::array();
  for (double v : ps.shells) shells.push_back(num(v));
  j["shells"] = shells;
  write_json(ctx, "poincare.json", j);
  return kOk;
}

struct Measured {
  std::vector<OrbitEntry> orbit;
  double delta;
  double s;
  BoundarySample mu;
};

Measured measure(const GroupRun& run, const Context& ctx, const char* key) {
  Measured m;
  m.orbit = orbit_enumerate(run.group, run.L, ctx.threads);
  m.delta = critical_exponent_estimate(m.orbit).delta;
  m.s = run.block.contains(key) ? knob<double>(run.block, key, 0) : m.delta;
  m.mu = ps_measure_estimate(run.group, m.orbit, m.s, run.depth);
  return m;
}

int cmd_ps_measure(const Context& ctx) {
  auto run = load(ctx);
  auto m = measure(run, ctx, "s");
  std::ostringstream csv;
  csv << "cylinder,center,radius_exp,representative,weight\n";
  for (const auto& c : m.mu.cylinders)
    csv << c.name << "," << to_string(c.label.center()) << "," << c.label.radius_exp().str() << ","
        << to_string(c.representative) << "," << fmt(c.weight) << "\n";
  write_text(ctx, "ps_measure.csv", csv.str());
  return kOk;
}

int cmd_quasiconformal(const Context& ctx) {
  auto run = load(ctx);
  auto m = measure(run, ctx, "s");
  GroupWord w = gamma_word(run);
  auto rep = quasiconformality_report(run.group, m.mu, m.delta, run.group.word_matrix(w));
  double tol = knob<double>(run.block, "tolerance", 0.25);
  Json j;
  j["L"] = run.L;
  j["depth"] = run.depth;
  j["delta"] = num(m.delta);
  j["gamma"] = word_to_string(w);
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"cylinder", m.mu.cylinders[r.cylinder].name},
                    {"ratio", num(r.ratio)},
                    {"predicted_log", num(r.predicted)},
                    {"deviation", num(r.deviation)}});
  j["rows"] = rows;
  j["max_deviation"] = num(rep.max_deviation);
  j["tolerance"] = num(tol);
  j["ok"] = rep.max_deviation <= tol;
  write_json(ctx, "quasiconformal.json", j);
  return rep.max_deviation <= tol ? kOk : kCheckFailed;
}

// The documented pair a = (1 + chi_{Z_0}) U_gamma, b = U_{gamma^-1}, unless
// coefficients are given in the config.
std::pair<CrossedElement, CrossedElement> kms_pair(const GroupRun& run, const BoundarySample& mu) {
  const std::size_t n = mu.cylinders.size();
  std::vector<std::complex<double>> f(n, 1.0), g(n, 1.0);
  if (n > 0) f[0] = 2.0;
  GroupWord w = gamma_word(run);
  return {monomial(mu, w, coefficients(run.block, "f", mu, f)),
          monomial(mu, inverse_word(w), coefficients(run.block, "g", mu, g))};
}

int cmd_kms(const Context& ctx) {
  auto run = load(ctx);
  auto m = measure(run, ctx, "beta");
  const double beta = m.s;
  auto [a, b] = kms_pair(run, m.mu);
  auto rep = kms_residual(run.group, m.mu, a, b, beta);
  auto half_mu = ps_measure_estimate(run.group, m.orbit, beta / 2, run.depth);
  auto [ha, hb] = kms_pair(run, half_mu);
  auto half = kms_residual(run.group, half_mu, ha, hb, beta / 2);
  double tol = knob<double>(run.block, "tolerance", 0.15);
  bool ok = rep.residual <= tol && rep.residual < half.residual;
  Json j;
  j["L"] = run.L;
  j["depth"] = run.depth;
  j["delta"] = num(m.delta);
  j["beta"] = num(beta);
  j["gamma"] = word_to_string(gamma_word(run));
  j["phi_ab"] = num(rep.lhs);
  j["phi_b_alpha_a"] = num(rep.rhs);
  j["residual"] = num(rep.residual);
  j["half_beta_residual"] = num(half.residual);
  j["tolerance"] = num(tol);
  j["ok"] = ok;
  write_json(ctx, "kms.json", j);
  return ok ? kOk : kCheckFailed;
}

int cmd_hamiltonian(const Context& ctx) {
  auto run = load(ctx);
  auto m = measure(run, ctx, "s");
  auto [a, b] = kms_pair(run, m.mu);
  a.coeffs[GroupWord{}] = std::vector<std::complex<double>>(m.mu.cylinders.size(), 1.0);
  const double t = knob<double>(run.block, "t", 1.0);
  auto basis = hamiltonian_basis(a);
  auto diag = hamiltonian_diagonal(run.group, m.mu, basis);
  auto v = to_vector(a, basis);
  auto want = to_vector(time_evolve(run.group, m.mu, a, t), basis);
  double residual = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    residual = std::max(residual, std::abs(std::polar(1.0, t * diag[i]) * v[i] - want[i]));
  Json j;
  j["t"] = num(t);
  Json slots = Json::array();
  for (std::size_t i = 0; i < basis.size(); ++i)
    slots.push_back({{"cylinder", m.mu.cylinders[basis[i].first].name},
                     {"word", word_to_string(basis[i].second)},
                     {"eigenvalue", num(diag[i])}});
  j["slots"] = slots;
  j["conjugation_residual"] = num(residual);
  j["ok"] = residual <= 1e-12;
  write_json(ctx, "hamiltonian.json", j);
  return residual <= 1e-12 ? kOk : kCheckFailed;
}

}  // namespace

int run_group(const std::string& sub, const Context& ctx) {
  if (sub == "orbit") return cmd_orbit(ctx);
  if (sub == "delta") return cmd_delta(ctx);
  if (sub == "poincare") return cmd_poincare(ctx);
  if (sub == "ps-measure") return cmd_ps_measure(ctx);
  if (sub == "quasiconformal") return cmd_quasiconformal(ctx);
  if (sub == "kms") return cmd_kms(ctx);
  if (sub == "hamiltonian") return cmd_hamiltonian(ctx);
  throw ParseError("unknown group subcommand '" + sub + "'");
}

}  // namespace cli
