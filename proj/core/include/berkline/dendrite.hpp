#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "berkline/padic.hpp"

namespace berkline::dendrite {

// Letters are 1-based indices into the comb system.
struct CombPair {
  Rational q;
  Rational b;
};

// Enumeration of Q ∩ (0,1) by denominator, then numerator: 1/2, 1/3, 2/3, 1/4, 3/4, ...
Rational farey_letter(std::size_t n);
// Inverse of farey_letter; nullopt outside (0,1).
std::optional<std::size_t> farey_index(const Rational& t);

class CombSystem {
 public:
  // Throws InvalidComb unless 0 < q_n < b_n <= 1, b_n - q_n <= 2^-n and the q_n are distinct.
  explicit CombSystem(std::vector<CombPair> pairs, bool farey = false);

  std::size_t size() const noexcept { return pairs_.size(); }
  const Rational& q(std::size_t n) const;
  const Rational& b(std::size_t n) const;
  // Letter index of t; for the default comb every rational in (0,1) has one,
  // possibly beyond size().
  std::optional<std::size_t> index_of(const Rational& t) const;
  bool farey() const noexcept { return farey_; }

 private:
  std::vector<CombPair> pairs_;
  bool farey_;
};

// q_n = farey_letter(n), b_n = q_n + min(2^-n, (1 - q_n)/2).
CombSystem default_comb(std::size_t n);

struct Letter {
  std::size_t index = 0;
  unsigned power = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Runs of equal letters are merged; powers are >= 1.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t total_power() const noexcept { return total_; }
  std::size_t first() const { return letters_.front().index; }
  std::size_t last() const { return letters_.back().index; }

  void push_back(std::size_t index, unsigned power = 1);
  void push_front(std::size_t index, unsigned power = 1);
  // Drops one leading symbol; no-op on the empty word.
  void pop_front();
  // Letter at expanded position k.
  std::size_t symbol(std::size_t k) const;

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  // Lexicographic on expanded symbol sequences, prefixes first.
  friend bool operator<(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
  std::size_t total_ = 0;
};

Word concat(const Word& a, const Word& b);
bool is_prefix(const Word& prefix, const Word& w);
// w with its first k symbols removed.
Word drop(const Word& w, std::size_t k);

struct LetterTail {
  std::size_t index = 0;
  friend bool operator==(const LetterTail&, const LetterTail&) = default;
};
struct RealTail {
  Rational value;
  bool irrational = false;  // value is then a rational stand-in
  friend bool operator==(const RealTail&, const RealTail&) = default;
};
struct EndTail {
  std::size_t index = 0;
  friend bool operator==(const EndTail&, const EndTail&) = default;
};
// A strictly increasing admissible stream of default-comb letters; letter(k)
// is the index of the k-th letter.
struct InfiniteTail {
  std::function<std::size_t(std::size_t)> letter;
  std::size_t offset = 0;
  std::string rule;
  std::size_t at(std::size_t k) const { return letter(offset + k); }
  // Letter indices grow doubly exponentially along admissible streams, so
  // only a short head is ever materialized.
  static constexpr std::size_t kCompareDepth = 4;
  static constexpr std::size_t kCheckDepth = 3;
  friend bool operator==(const InfiniteTail& a, const InfiniteTail& b);
};

using Tail = std::variant<LetterTail, RealTail, EndTail, InfiniteTail>;

struct SymbolicPoint {
  Word prefix;
  Tail tail;
  friend bool operator==(const SymbolicPoint&, const SymbolicPoint&) = default;
};

enum class PointType { I, II, III, IV };
std::string to_string(PointType t);

// Greedy stream: after `start`, repeatedly take the smallest index admissible
// after the current letter. Needs the default comb, whose alphabet is unbounded.
InfiniteTail greedy_chain(const CombSystem& cs, std::size_t start);

// Throws UnknownLetter.
bool is_admissible(const CombSystem& cs, const Word& w);
// Letter `next` may follow letter `prev` (equal letters always may).
bool admissible_pair(const CombSystem& cs, std::size_t prev, std::size_t next);
// The tail token may close a word ending in `last` (strictly above q_last, at most b_last).
bool tail_follows(const CombSystem& cs, std::size_t last, const Tail& tail);

// Throws InconsistentTail.
PointType classify(const CombSystem& cs, const SymbolicPoint& x);
SymbolicPoint shift(const SymbolicPoint& x);
// Throws NotInFollowerSet.
SymbolicPoint sigma_q(const CombSystem& cs, std::size_t q, const SymbolicPoint& x);

bool in_cylinder(const CombSystem& cs, const Word& beta, const SymbolicPoint& x);
bool in_follower(const CombSystem& cs, const Word& alpha, const SymbolicPoint& x);
bool in_C(const CombSystem& cs, const Word& alpha, const Word& beta, const SymbolicPoint& x);

// Nonempty admissible words over letters 1..n with total power <= d, in
// lexicographic order; d = 0 yields the single empty word.
std::vector<Word> enumerate_cylinders(const CombSystem& cs, std::size_t n, std::size_t d);

// Word Q with z in Z(Q) and Z(Q) inside the direction at x toward y. Throws NotInDirection.
Word direction_to_cylinder(const CombSystem& cs, const SymbolicPoint& x, const SymbolicPoint& y,
                           const SymbolicPoint& z);
// z lies in the direction at x toward y: prefix(x) is a proper prefix of
// prefix(z), and z agrees with y on the first symbol after prefix(x).
bool in_direction(const SymbolicPoint& x, const SymbolicPoint& y, const SymbolicPoint& z);

// "q1^k1,q2^k2" with letters written as num/den.
std::string word_to_string(const CombSystem& cs, const Word& w);
// Throws ParseError, UnknownLetter.
Word parse_word(const CombSystem& cs, const std::string& text);

}  // namespace berkline::dendrite
