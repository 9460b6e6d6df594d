#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "berkline/errors.hpp"

namespace cli {

using berkline::ParseError;
using berkline::Rational;

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

Json num(double x) {
  if (!std::isfinite(x)) return fmt(x);
  return Json::parse(fmt(x));
}

Json num(std::complex<double> z) { return Json::array({num(z.real()), num(z.imag())}); }

const nlohmann::json& require(const nlohmann::json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError("missing config key '" + key + "'");
  return j.at(key);
}

Rational rational_field(const nlohmann::json& j) {
  if (j.is_string()) return berkline::parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("expected a rational written as a string, got " + j.dump());
}

long prime(const nlohmann::json& config) {
  const auto& p = require(config, "p");
  if (!p.is_number_integer()) throw ParseError("'p' must be an integer");
  long v = p.get<long>();
  berkline::padic::PrimeContext check(v);
  return v;
}

std::vector<berkline::spectral::Disk> disks(const nlohmann::json& list) {
  if (!list.is_array()) throw ParseError("'disks' must be an array");
  std::vector<berkline::spectral::Disk> out;
  for (const auto& d : list) {
    berkline::spectral::Disk disk{rational_field(require(d, "center")), rational_field(require(d, "radius_exp"))};
    if (d.contains("irrational")) disk.irrational = d.at("irrational").get<bool>();
    out.push_back(disk);
  }
  return out;
}

berkline::dendrite::CombSystem comb(const nlohmann::json& config, std::size_t& n, std::size_t& d) {
  const auto& c = require(config, "comb");
  try {
    n = require(c, "N").get<std::size_t>();
    d = c.contains("D") ? c.at("D").get<std::size_t>() : 0;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("comb sizes: ") + e.what());
  }
  if (!c.contains("pairs")) return berkline::dendrite::default_comb(n);
  std::vector<berkline::dendrite::CombPair> pairs;
  for (const auto& p : c.at("pairs")) {
    if (!p.is_array() || p.size() != 2) throw ParseError("comb pairs are [q, b] arrays");
    pairs.push_back({rational_field(p[0]), rational_field(p[1])});
  }
  return berkline::dendrite::CombSystem(std::move(pairs));
}

namespace {

std::size_t letter(const berkline::dendrite::CombSystem& cs, const nlohmann::json& j) {
  Rational q = rational_field(j);
  auto idx = cs.index_of(q);
  if (!idx) throw berkline::UnknownLetter(berkline::to_string(q) + " is not a letter of this comb");
  return *idx;
}

}  // namespace

berkline::dendrite::SymbolicPoint symbolic_point(const berkline::dendrite::CombSystem& cs, const nlohmann::json& j) {
  using namespace berkline::dendrite;
  SymbolicPoint x;
  if (j.contains("prefix")) {
    const auto& p = j.at("prefix");
    std::string text;
    if (p.is_string()) {
      text = p.get<std::string>();
    } else {
      for (const auto& item : p) text += (text.empty() ? "" : ",") + item.get<std::string>();
    }
    x.prefix = parse_word(cs, text);
  }
  const auto& t = require(j, "tail");
  std::string kind = require(t, "kind").get<std::string>();
  if (kind == "letter") {
    x.tail = LetterTail{letter(cs, require(t, "letter"))};
  } else if (kind == "end") {
    x.tail = EndTail{letter(cs, require(t, "letter"))};
  } else if (kind == "real") {
    bool irr = t.contains("irrational") && t.at("irrational").get<bool>();
    x.tail = RealTail{rational_field(require(t, "value")), irr};
  } else if (kind == "chain") {
    x.tail = greedy_chain(cs, letter(cs, require(t, "start")));
  } else {
    throw ParseError("unknown tail kind '" + kind + "'");
  }
  return x;
}

berkline::line::BerkPoint berk_point(const nlohmann::json& j) {
  using berkline::padic::ExtRational;
  const auto& r = require(j, "radius_exp");
  ExtRational e = (r.is_string() && r.get<std::string>() == "inf") ? ExtRational::infinity()
                                                                   : ExtRational(rational_field(r));
  bool irr = j.contains("irrational") && j.at("irrational").get<bool>();
  return berkline::line::BerkPoint(rational_field(require(j, "center")), e, irr);
}

const nlohmann::json& group_block(const nlohmann::json& config) {
  return config.contains("group") ? config.at("group") : config;
}

berkline::group::SchottkyGroup schottky(const nlohmann::json& config) {
  using namespace berkline::group;
  berkline::padic::PrimeContext ctx(prime(config));
  const auto& g = group_block(config);
  std::vector<MoebiusMap> gens;
  for (const auto& m : require(g, "generators")) {
    if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
      throw ParseError("generators are [[a, b], [c, d]]");
    gens.emplace_back(rational_field(m[0][0]), rational_field(m[0][1]), rational_field(m[1][0]),
                      rational_field(m[1][1]));
  }
  std::optional<std::vector<PingPongDisks>> pp;
  if (g.contains("pingpong")) {
    pp.emplace();
    for (const auto& d : g.at("pingpong"))
      pp->push_back({berk_point(require(d, "attracting")), berk_point(require(d, "repelling"))});
  }
  return SchottkyGroup(ctx, std::move(gens), std::move(pp));
}

std::complex<double> complex_field(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("expected a number or [re, im], got " + j.dump());
}

Json to_json(const berkline::line::BerkPoint& x) {
  Json j;
  j["center"] = berkline::to_string(x.center());
  j["radius_exp"] = x.radius_exp().is_infinite() ? std::string("inf") : berkline::to_string(x.radius_exp().value());
  j["irrational"] = x.irrational();
  return j;
}

Json to_json(const berkline::dendrite::CombSystem& cs, const berkline::dendrite::SymbolicPoint& x) {
  using namespace berkline::dendrite;
  Json j;
  Json prefix = Json::array();
  for (const auto& l : x.prefix.letters())
    prefix.push_back(berkline::to_string(cs.q(l.index)) + "^" + std::to_string(l.power));
  j["prefix"] = prefix;
  Json t;
  if (auto* l = std::get_if<LetterTail>(&x.tail)) {
    t["kind"] = "letter";
    t["letter"] = berkline::to_string(cs.q(l->index));
  } else if (auto* e = std::get_if<EndTail>(&x.tail)) {
    t["kind"] = "end";
    t["letter"] = berkline::to_string(cs.q(e->index));
  } else if (auto* r = std::get_if<RealTail>(&x.tail)) {
    t["kind"] = "real";
    t["value"] = berkline::to_string(r->value);
    t["irrational"] = r->irrational;
  } else {
    const auto& c = std::get<InfiniteTail>(x.tail);
    t["kind"] = "chain";
    t["rule"] = c.rule;
    Json head = Json::array();
    for (std::size_t k = 0; k < InfiniteTail::kCheckDepth; ++k) head.push_back(berkline::to_string(farey_letter(c.at(k))));
    t["head"] = head;
  }
  j["tail"] = t;
  return j;
}

void write_json(const Context& ctx, const std::string& name, Json doc) {
  Json full;
  full["schema"] = "berkline/1";
  for (auto& [k, v] : doc.items()) full[k] = std::move(v);
  write_text(ctx, name, full.dump(2) + "\n");
}

void write_text(const Context& ctx, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(ctx.out);
  std::ofstream f(ctx.out / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (ctx.out / name).string());
  f << text;
}

}  // namespace cli
