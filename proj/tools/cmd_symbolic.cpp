#include <cmath>
#include <sstream>

#include "berkline/errors.hpp"
#include "berkline/shift_ops.hpp"
#include "commands.hpp"

namespace cli {

using namespace berkline;
using namespace berkline::dendrite;
using berkline::shift::cvec;
using berkline::shift::TruncatedBasis;

namespace {

int cmd_classify(const Context& ctx) {
  std::size_t n, d;
  auto cs = comb(ctx.config, n, d);
  Json rows = Json::array();
  for (const auto& p : require(ctx.config, "points")) {
    auto x = symbolic_point(cs, p);
    rows.push_back({{"point", to_json(cs, x)}, {"type", to_string(classify(cs, x))}});
  }
  write_json(ctx, "classify.json", {{"points", rows}});
  return kOk;
}

int cmd_admissible(const Context& ctx) {
  std::size_t n, d;
  auto cs = comb(ctx.config, n, d);
  Json rows = Json::array();
  for (const auto& w : require(ctx.config, "words")) {
    Word word = parse_word(cs, w.get<std::string>());
    rows.push_back({{"word", word_to_string(cs, word)}, {"admissible", is_admissible(cs, word)}});
  }
  Json cyl = Json::array();
  if (d > 0)
    for (const auto& w : enumerate_cylinders(cs, n, d)) cyl.push_back(word_to_string(cs, w));
  write_json(ctx, "admissible.json", {{"words", rows}, {"cylinders", cyl}});
  return kOk;
}

TruncatedBasis basis(const Context& ctx) {
  std::size_t n, d;
  auto cs = comb(ctx.config, n, d);
  TruncatedBasis tb(std::move(cs), n, d);
  if (tb.size() > 50000) throw SpectrumTooLarge("basis of " + std::to_string(tb.size()) + " points exceeds 50000");
  return tb;
}

cvec input_vector(const TruncatedBasis& tb, const nlohmann::json& list) {
  cvec v(tb.size());
  for (const auto& item : list) {
    auto x = symbolic_point(tb.comb(), require(item, "point"));
    auto i = tb.index_of(x);
    if (!i) throw InadmissibleWord("input point is not in the truncated basis");
    v[*i] += item.contains("coeff") ? complex_field(item.at("coeff")) : std::complex<double>(1.0);
  }
  return v;
}

Json vector_json(const TruncatedBasis& tb, const cvec& v) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) rows.push_back({{"point", to_json(tb.comb(), tb.point(i))}, {"coeff", num(v[i])}});
  return rows;
}

std::string matrix_csv(const ExactMatrix& m) {
  std::ostringstream s;
  s << "row,col,value\n";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) s << i << "," << j << "," << to_string(v) << "\n";
  return s.str();
}

Json header(const TruncatedBasis& tb) {
  return {{"N", tb.alphabet()}, {"D", tb.depth()}, {"basis_size", tb.size()}};
}

int cmd_relations(const Context& ctx) {
  auto tb = basis(ctx);
  auto rep = shift::verify_relations(tb);
  Json j = header(tb);
  Json rows = Json::array();
  for (const auto& r : rep.relations)
    rows.push_back({{"relation", r.relation}, {"words", r.words}, {"residual", to_string(r.residual)},
                    {"instances", r.instances}});
  j["relations"] = rows;
  j["ok"] = rep.ok();
  write_json(ctx, "relations.json", j);
  return rep.ok() ? kOk : kCheckFailed;
}

int cmd_partition(const Context& ctx) {
  auto tb = basis(ctx);
  auto rep = shift::partition_identity(tb);
  Json j = header(tb);
  j["residual"] = to_string(rep.residual);
  j["excluded_tail_points"] = rep.excluded.size();
  j["ok"] = rep.residual == 0;
  write_json(ctx, "partition.json", j);
  return rep.residual == 0 ? kOk : kCheckFailed;
}

int cmd_pf(const Context& ctx) {
  auto tb = basis(ctx);
  cvec v = input_vector(tb, require(ctx.config, "vector"));
  Json j = header(tb);
  j["input"] = vector_json(tb, v);
  j["output"] = vector_json(tb, shift::perron_frobenius_apply(tb, v));
  write_json(ctx, "pf.json", j);
  write_text(ctx, "pf_operator.csv", matrix_csv(shift::perron_frobenius_matrix(tb)));
  return kOk;
}

int cmd_pvm(const Context& ctx) {
  auto tb = basis(ctx);
  auto rep = shift::pvm_consistency(tb);
  Json j = header(tb);
  j["refinement_residual"] = to_string(rep.refinement_residual);
  j["orthogonality_residual"] = to_string(rep.orthogonality_residual);
  j["refinements"] = rep.refinements;
  j["orthogonal_pairs"] = rep.orthogonal_pairs;
  j["ok"] = rep.ok();
  write_json(ctx, "pvm.json", j);
  return rep.ok() ? kOk : kCheckFailed;
}

int cmd_spectral_integral(const Context& ctx) {
  auto tb = basis(ctx);
  shift::SimpleFunction f;
  for (const auto& term : require(ctx.config, "simple_function"))
    f.emplace_back(complex_field(require(term, "coeff")), parse_word(tb.comb(), require(term, "word").get<std::string>()));
  auto op = shift::spectral_integral(tb, f);
  double sup = 0;
  for (auto v : shift::simple_values(tb, f)) sup = std::max(sup, std::abs(v));
  Json j = header(tb);
  j["operator_norm"] = num(shift::operator_norm(op));
  j["sup_norm"] = num(sup);
  write_json(ctx, "spectral_integral.json", j);
  write_text(ctx, "spectral_integral.csv", op.to_csv());
  return kOk;
}

int cmd_cyclic(const Context& ctx) {
  auto tb = basis(ctx);
  auto rep = shift::cyclic_isometry_check(tb, input_vector(tb, require(ctx.config, "vector")));
  Json j = header(tb);
  Json mu = Json::array();
  for (const auto& [wi, m] : rep.mu) mu.push_back({{"word", word_to_string(tb.comb(), tb.words()[wi])}, {"mass", num(m)}});
  j["mu"] = mu;
  j["max_residual"] = num(rep.max_residual);
  j["inner_residual"] = num(rep.inner_residual);
  bool ok = rep.max_residual <= 1e-12 && rep.inner_residual <= 1e-12;
  j["ok"] = ok;
  write_json(ctx, "cyclic.json", j);
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int run_dendrite(const std::string& sub, const Context& ctx) {
  if (sub == "classify") return cmd_classify(ctx);
  if (sub == "admissible") return cmd_admissible(ctx);
  throw ParseError("unknown dendrite subcommand '" + sub + "'");
}

int run_shift(const std::string& sub, const Context& ctx) {
  if (sub == "verify-relations") return cmd_relations(ctx);
  if (sub == "partition") return cmd_partition(ctx);
  if (sub == "pf") return cmd_pf(ctx);
  if (sub == "pvm") return cmd_pvm(ctx);
  if (sub == "spectral-integral") return cmd_spectral_integral(ctx);
  if (sub == "cyclic") return cmd_cyclic(ctx);
  throw ParseError("unknown shift subcommand '" + sub + "'");
}

}  // namespace cli
