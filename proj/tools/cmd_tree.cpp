#include <cmath>
#include <map>
#include <sstream>

#include "berkline/errors.hpp"
#include "berkline/spectral.hpp"
#include "commands.hpp"

namespace cli {

using namespace berkline;
using namespace berkline::spectral;

namespace {

constexpr double kSpectrumTolerance = 1e-9;

std::vector<Rational> random_function(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  std::vector<Rational> f;
  for (std::size_t i = 0; i < n; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    f.push_back(q);
  }
  return f;
}

std::vector<double> as_double(const std::vector<Rational>& f) {
  std::vector<double> out;
  for (const auto& q : f) out.push_back(to_double(q));
  return out;
}

FiniteTree tree_from(const nlohmann::json& config, const char* key = "disks") {
  PrimeContext ctx(prime(config));
  return build_graph_of_discs(ctx, disks(require(config, key)));
}

Json tree_json(const FiniteTree& t) {
  Json j;
  j["p"] = t.context().p();
  Json vs = Json::array();
  for (const auto& v : t.vertices()) vs.push_back(to_json(v));
  j["vertices"] = vs;
  Json es = Json::array();
  for (const auto& e : t.edges()) es.push_back({{"lower", e.u}, {"upper", e.w}, {"length", to_string(e.length)}});
  j["edges"] = es;
  return j;
}

int cmd_build(const Context& ctx) {
  write_json(ctx, "tree.json", tree_json(tree_from(ctx.config)));
  return kOk;
}

int cmd_spectrum(const Context& ctx) {
  std::size_t mult = ctx.config.contains("multiplicity") ? ctx.config.at("multiplicity").get<std::size_t>() : 1;
  auto st = assemble_triple(tree_from(ctx.config), mult);
  auto ev = spectrum(st);
  auto ana = analytic_spectrum(st);
  double gap = 0;
  for (std::size_t i = 0; i < ev.size(); ++i) gap = std::max(gap, std::abs(ev[i] - ana[i]));
  // Group eigenvalues by their exact block values, largest first.
  std::map<double, std::size_t, std::greater<>> counts;
  for (double a : ana) ++counts[a];
  std::ostringstream csv;
  csv << "eigenvalue,multiplicity\n";
  for (const auto& [v, k] : counts) csv << fmt(v) << "," << k << "\n";
  write_text(ctx, "spectrum.csv", csv.str());
  double radius = std::max(std::abs(ev.front()), std::abs(ev.back()));
  Rational norm = operator_norm(st);
  Json j;
  j["dimension"] = st.dim();
  j["operator_norm"] = to_string(norm);
  j["spectral_radius"] = num(radius);
  j["eigenvalue_gap"] = num(gap);
  j["norm_gap"] = num(std::abs(radius - to_double(norm)));
  bool ok = gap <= kSpectrumTolerance && std::abs(radius - to_double(norm)) <= kSpectrumTolerance;
  j["ok"] = ok;
  write_json(ctx, "spectrum.json", j);
  return ok ? kOk : kCheckFailed;
}

int cmd_axioms(const Context& ctx) {
  auto st = assemble_triple(tree_from(ctx.config));
  auto rng = ctx.rng();
  std::size_t n = ctx.config.contains("samples") ? ctx.config.at("samples").get<std::size_t>() : 8;
  std::vector<std::vector<Rational>> samples;
  for (std::size_t i = 0; i < n; ++i) samples.push_back(random_function(rng, st.tree().size()));
  auto rep = check_even_triple(st, samples);
  double worst = 0;
  for (const auto& f : samples) {
    auto fd = as_double(f);
    worst = std::max(worst, commutator_norm(st, fd) - lipschitz_constant(st.tree(), fd));
  }
  Json j;
  j["grading_selfadjoint"] = to_string(rep.grading_selfadjoint);
  j["grading_square"] = to_string(rep.grading_square);
  j["anticommutator"] = to_string(rep.anticommutator);
  j["rep_commutator"] = to_string(rep.rep_commutator);
  j["dirac_symmetric"] = to_string(rep.dirac_symmetric);
  j["commutator_excess"] = num(std::max(0.0, worst));
  bool ok = rep.ok() && worst <= 1e-9;
  j["ok"] = ok;
  write_json(ctx, "axioms.json", j);
  return ok ? kOk : kCheckFailed;
}

int cmd_morphism(const Context& ctx) {
  auto src = tree_from(ctx.config);
  auto dst = tree_from(ctx.config, "target_disks");
  auto m = make_inclusion(src, dst);
  auto rng = ctx.rng();
  auto rep = check_morphism(m, random_function(rng, src.size()));
  Json j;
  j["leaf_extension"] = m.is_leaf_extension;
  j["vertex_map"] = m.vertex_map;
  j["rep_residual"] = to_string(rep.rep_residual);
  j["dirac_residual"] = to_string(rep.dirac_residual);
  j["grading_residual"] = to_string(rep.grading_residual);
  j["ok"] = rep.ok();
  write_json(ctx, "morphism.json", j);
  return rep.ok() ? kOk : kCheckFailed;
}

int cmd_tower(const Context& ctx) {
  PrimeContext pc(prime(ctx.config));
  std::vector<FiniteTree> trees;
  for (const auto& level : require(ctx.config, "tower")) trees.push_back(build_graph_of_discs(pc, disks(level)));
  std::complex<double> lambda = ctx.config.contains("lambda") ? complex_field(ctx.config.at("lambda"))
                                                              : std::complex<double>(0, 1);
  auto prof = tower_resolvent_profile(trees, lambda);
  Json j;
  j["lambda"] = num(lambda);
  Json norms = Json::array();
  for (const auto& t : trees) norms.push_back(to_string(operator_norm(assemble_triple(t))));
  j["norms"] = norms;
  Json p = Json::array();
  for (double v : prof) p.push_back(num(v));
  j["profile"] = p;
  write_json(ctx, "tower.json", j);
  return kOk;
}

}  // namespace

int run_tree(const std::string& sub, const Context& ctx) {
  if (sub == "build") return cmd_build(ctx);
  if (sub == "spectrum") return cmd_spectrum(ctx);
  if (sub == "axioms") return cmd_axioms(ctx);
  if (sub == "morphism") return cmd_morphism(ctx);
  if (sub == "tower") return cmd_tower(ctx);
  throw ParseError("unknown tree subcommand '" + sub + "'");
}

}  // namespace cli
