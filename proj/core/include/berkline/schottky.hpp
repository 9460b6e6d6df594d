#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "berkline/moebius.hpp"

namespace berkline::group {

// Letter 2i is generator i, letter 2i + 1 its inverse.
using GroupWord = std::vector<std::uint8_t>;

inline constexpr std::size_t kMaxWordLength = 12;
inline constexpr std::size_t kMaxOrbitWords = 1'000'000;

// Open Berkovich disks D^-(c, r), each given by its boundary point zeta_{c,r}.
struct PingPongDisks {
  BerkPoint attracting;
  BerkPoint repelling;
};

class SchottkyGroup {
 public:
  // At most 26 generators; ping-pong disks, when given, one pair per generator.
  SchottkyGroup(PrimeContext ctx, std::vector<MoebiusMap> generators,
                std::optional<std::vector<PingPongDisks>> disks = std::nullopt,
                std::size_t max_word_length = kMaxWordLength);

  const PrimeContext& ctx() const noexcept { return ctx_; }
  std::size_t rank() const noexcept { return gens_.size(); }
  std::size_t letters() const noexcept { return 2 * gens_.size(); }
  const std::vector<MoebiusMap>& generators() const noexcept { return gens_; }
  const std::optional<std::vector<PingPongDisks>>& disks() const noexcept { return disks_; }
  std::size_t max_word_length() const noexcept { return max_len_; }

  const MoebiusMap& letter(std::uint8_t k) const { return letters_[k]; }
  MoebiusMap word_matrix(const GroupWord& w) const;

 private:
  PrimeContext ctx_;
  std::vector<MoebiusMap> gens_;
  std::vector<MoebiusMap> letters_;
  std::optional<std::vector<PingPongDisks>> disks_;
  std::size_t max_len_;
};

inline std::uint8_t inverse_letter(std::uint8_t k) { return k ^ 1u; }
GroupWord inverse_word(const GroupWord& w);
// Concatenation followed by free cancellation.
GroupWord reduce_product(const GroupWord& x, const GroupWord& y);
// "e" for the identity, otherwise generator i as 'a' + i and its inverse in upper case.
std::string word_to_string(const GroupWord& w);
// Throws ParseError.
GroupWord parse_group_word(const std::string& s, std::size_t rank);

// Strictly inside the open disk below zeta_{c,r} in the direction of c.
bool in_open_disk(const PrimeContext& ctx, const BerkPoint& boundary, const BerkPoint& x);

struct PingPongReport {
  bool ok = true;
  std::string failure;  // first failing generator and reason
};
// Each letter maps the complement of its repelling disk into its attracting
// disk (inverses with the roles swapped), and the 2 * rank disks are disjoint.
PingPongReport check_ping_pong(const SchottkyGroup& g);

struct OrbitEntry {
  GroupWord word;
  MoebiusMap matrix = MoebiusMap::identity();
  BerkPoint point;  // gamma applied to the Gauss point
  Rational rho;     // rho(Gauss, point)
};

// Reduced words of length <= L ordered by length then lexicographically.
// Output does not depend on `threads`. Throws PoleInsideDisk naming the word,
// TooManyWords past kMaxOrbitWords or the group's length cap.
std::vector<OrbitEntry> orbit_enumerate(const SchottkyGroup& g, std::size_t L, std::size_t threads = 1);

struct CriticalExponent {
  double delta = 0.0;
  std::vector<Rational> r_grid;       // distinct observed rho values
  std::vector<std::size_t> counts;    // N(R) on r_grid
  std::size_t fit_start = 0;          // first grid index used by the fit
  double residual = 0.0;              // RMS of the fit in ln N
};
// Least-squares slope of ln N(R) over R >= R_max / 2. Throws InsufficientData.
CriticalExponent critical_exponent_estimate(const std::vector<OrbitEntry>& orbit);
CriticalExponent critical_exponent_estimate(const SchottkyGroup& g, std::size_t L, std::size_t threads = 1);

enum class PoincareMode { Rho, Diam };

struct PoincareResult {
  double partial = 0.0;         // sum over nontrivial words
  double tail = 0.0;            // geometric bound from the last two shells, +inf if they do not shrink
  std::vector<double> shells;   // shells[n - 1] sums the words of length n
};
PoincareResult poincare_series(const PrimeContext& ctx, const std::vector<OrbitEntry>& orbit, double s,
                               PoincareMode mode = PoincareMode::Rho);
PoincareResult poincare_series(const SchottkyGroup& g, double s, std::size_t L, PoincareMode mode = PoincareMode::Rho,
                               std::size_t threads = 1);

}  // namespace berkline::group
