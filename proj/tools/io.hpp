#pragma once

#include <complex>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "berkline/dendrite.hpp"
#include "berkline/point.hpp"
#include "berkline/schottky.hpp"
#include "berkline/tree.hpp"

namespace cli {

using Json = nlohmann::ordered_json;

struct Context {
  nlohmann::json config;
  std::filesystem::path out;
  std::size_t threads = 1;
  std::uint64_t seed = 0;
  std::mt19937_64 rng() const { return std::mt19937_64(seed); }
};

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kComputeError = 3;

// Floats carry 15 significant digits; non-finite values become strings.
Json num(double x);
Json num(std::complex<double> z);
std::string fmt(double x);

// Config accessors; all throw berkline::ParseError with the offending key.
const nlohmann::json& require(const nlohmann::json& j, const std::string& key);
berkline::Rational rational_field(const nlohmann::json& j);
long prime(const nlohmann::json& config);
std::vector<berkline::spectral::Disk> disks(const nlohmann::json& list);
berkline::dendrite::CombSystem comb(const nlohmann::json& config, std::size_t& n, std::size_t& d);
berkline::dendrite::SymbolicPoint symbolic_point(const berkline::dendrite::CombSystem& cs, const nlohmann::json& j);
berkline::line::BerkPoint berk_point(const nlohmann::json& j);
// Group knobs live under "group" or, failing that, at the top level.
const nlohmann::json& group_block(const nlohmann::json& config);
berkline::group::SchottkyGroup schottky(const nlohmann::json& config);
std::complex<double> complex_field(const nlohmann::json& j);

Json to_json(const berkline::line::BerkPoint& x);
Json to_json(const berkline::dendrite::CombSystem& cs, const berkline::dendrite::SymbolicPoint& x);

// Writes `doc` with a schema tag and a trailing newline.
void write_json(const Context& ctx, const std::string& name, Json doc);
void write_text(const Context& ctx, const std::string& name, const std::string& text);

}  // namespace cli
