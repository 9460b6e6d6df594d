#include "berkline/dendrite.hpp"

#include <algorithm>
#include <numeric>
#include <memory>
#include <sstream>

#include "berkline/errors.hpp"

namespace berkline::dendrite {

using berkline::to_string;

Rational farey_letter(std::size_t n) {
  if (n == 0) throw UnknownLetter("letters are 1-based");
  for (unsigned long den = 2;; ++den)
    for (unsigned long num = 1; num < den; ++num)
      if (std::gcd(num, den) == 1 && --n == 0) return Rational(mpz_class(num), mpz_class(den));
}

std::optional<std::size_t> farey_index(const Rational& t) {
  if (t <= 0 || t >= 1) return std::nullopt;
  unsigned long num = t.get_num().get_ui(), den = t.get_den().get_ui();
  std::size_t idx = 0;
  for (unsigned long d = 2; d < den; ++d)
    for (unsigned long k = 1; k < d; ++k)
      if (std::gcd(k, d) == 1) ++idx;
  for (unsigned long k = 1; k <= num; ++k)
    if (std::gcd(k, den) == 1) ++idx;
  return idx;
}

CombSystem::CombSystem(std::vector<CombPair> pairs, bool farey) : pairs_(std::move(pairs)), farey_(farey) {
  Rational bound(1, 2);
  for (std::size_t i = 0; i < pairs_.size(); ++i, bound /= 2) {
    const auto& [q, b] = pairs_[i];
    std::string at = "pair " + std::to_string(i + 1);
    if (q <= 0 || q >= 1) throw InvalidComb(at + ": q outside (0,1)");
    if (!(q < b) || b > 1) throw InvalidComb(at + ": need q < b <= 1");
    if (b - q > bound) throw InvalidComb(at + ": b - q exceeds 2^-n");
    for (std::size_t j = 0; j < i; ++j)
      if (pairs_[j].q == q) throw InvalidComb(at + ": repeated letter");
  }
}

const Rational& CombSystem::q(std::size_t n) const {
  if (n == 0 || n > pairs_.size()) throw UnknownLetter("letter " + std::to_string(n));
  return pairs_[n - 1].q;
}

const Rational& CombSystem::b(std::size_t n) const {
  if (n == 0 || n > pairs_.size()) throw UnknownLetter("letter " + std::to_string(n));
  return pairs_[n - 1].b;
}

std::optional<std::size_t> CombSystem::index_of(const Rational& t) const {
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    if (pairs_[i].q == t) return i + 1;
  if (farey_) return farey_index(t);
  return std::nullopt;
}

CombSystem default_comb(std::size_t n) {
  std::vector<CombPair> pairs;
  Rational pow(1, 2);
  for (std::size_t i = 1; i <= n; ++i, pow /= 2) {
    Rational q = farey_letter(i);
    Rational half = (1 - q) / 2;
    pairs.push_back({q, q + std::min(pow, half)});
  }
  return CombSystem(std::move(pairs), true);
}

Word::Word(std::initializer_list<Letter> letters) {
  for (const auto& l : letters) push_back(l.index, l.power);
}

void Word::push_back(std::size_t index, unsigned power) {
  if (power == 0) return;
  if (!letters_.empty() && letters_.back().index == index)
    letters_.back().power += power;
  else
    letters_.push_back({index, power});
  total_ += power;
}

void Word::push_front(std::size_t index, unsigned power) {
  if (power == 0) return;
  if (!letters_.empty() && letters_.front().index == index)
    letters_.front().power += power;
  else
    letters_.insert(letters_.begin(), {index, power});
  total_ += power;
}

void Word::pop_front() {
  if (letters_.empty()) return;
  if (--letters_.front().power == 0) letters_.erase(letters_.begin());
  --total_;
}

std::size_t Word::symbol(std::size_t k) const {
  for (const auto& l : letters_) {
    if (k < l.power) return l.index;
    k -= l.power;
  }
  throw std::out_of_range("symbol beyond word length");
}

bool operator<(const Word& a, const Word& b) {
  std::size_t n = std::min(a.total_power(), b.total_power());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t x = a.symbol(k), y = b.symbol(k);
    if (x != y) return x < y;
  }
  return a.total_power() < b.total_power();
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  for (const auto& l : b.letters()) w.push_back(l.index, l.power);
  return w;
}

bool is_prefix(const Word& prefix, const Word& w) {
  if (prefix.total_power() > w.total_power()) return false;
  const auto& p = prefix.letters();
  const auto& l = w.letters();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].index != l[i].index) return false;
    bool last = i + 1 == p.size();
    if (last ? p[i].power > l[i].power : p[i].power != l[i].power) return false;
  }
  return true;
}

Word drop(const Word& w, std::size_t k) {
  Word out;
  for (const auto& l : w.letters()) {
    if (k >= l.power) {
      k -= l.power;
      continue;
    }
    out.push_back(l.index, l.power - static_cast<unsigned>(k));
    k = 0;
  }
  return out;
}

bool operator==(const InfiniteTail& a, const InfiniteTail& b) {
  if (!a.letter || !b.letter) return !a.letter && !b.letter;
  for (std::size_t k = 0; k < InfiniteTail::kCompareDepth; ++k)
    if (a.at(k) != b.at(k)) return false;
  return true;
}

std::string to_string(PointType t) {
  switch (t) {
    case PointType::I: return "I";
    case PointType::II: return "II";
    case PointType::III: return "III";
    case PointType::IV: return "IV";
  }
  return "?";
}

bool admissible_pair(const CombSystem& cs, std::size_t prev, std::size_t next) {
  if (prev == next) {
    cs.q(prev);
    return true;
  }
  return cs.q(prev) < cs.q(next) && cs.q(next) <= cs.b(prev);
}

namespace {

Rational floor_q(const Rational& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(f);
}

// Fraction of least denominator in the interval with the given openness; hi
// may be absent (unbounded above, open).
Rational simplest_between(const Rational& lo, bool lo_open, const std::optional<Rational>& hi, bool hi_open) {
  Rational fl = floor_q(lo);
  Rational n = (lo_open || fl != lo) ? Rational(fl + 1) : fl;
  if (!hi || (hi_open ? n < *hi : n <= *hi)) return n;
  // The interval sits inside [fl, fl + 1); recurse on reciprocals of the fractional part.
  Rational y_lo = 1 / (*hi - fl);
  std::optional<Rational> y_hi;
  if (lo != fl) y_hi = 1 / (lo - fl);
  Rational y = simplest_between(y_lo, hi_open, y_hi, y_hi ? lo_open : true);
  Rational x = fl + 1 / y;
  x.canonicalize();
  return x;
}

Rational farey_b(std::size_t n) {
  Rational q = farey_letter(n);
  Rational pow(mpz_class(1), mpz_class(1) << static_cast<mp_bitcnt_t>(n));
  return q + std::min(pow, Rational((1 - q) / 2));
}

}  // namespace

InfiniteTail greedy_chain(const CombSystem& cs, std::size_t start) {
  if (!cs.farey()) throw InconsistentTail("greedy streams need the unbounded default comb");
  auto step = [](std::size_t cur) {
    Rational t = simplest_between(farey_letter(cur), true, farey_b(cur), false);
    return *farey_index(t);
  };
  auto cache = std::make_shared<std::vector<std::size_t>>(std::vector<std::size_t>{start});
  InfiniteTail t;
  t.rule = "greedy:" + std::to_string(start);
  t.letter = [cache, step](std::size_t k) {
    while (cache->size() <= k) cache->push_back(step(cache->back()));
    return (*cache)[k];
  };
  return t;
}

namespace {

// Value of the first symbol of a tail.
Rational tail_value(const CombSystem& cs, const Tail& tail) {
  return std::visit(
      [&](const auto& t) -> Rational {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, LetterTail>) return cs.q(t.index);
        if constexpr (std::is_same_v<T, RealTail>) return t.value;
        if constexpr (std::is_same_v<T, EndTail>) return cs.b(t.index);
        if constexpr (std::is_same_v<T, InfiniteTail>) return farey_letter(t.at(0));
      },
      tail);
}

bool tail_well_formed(const CombSystem& cs, const Tail& tail) {
  if (const auto* r = std::get_if<RealTail>(&tail)) return r->value > 0 && r->value < 1;
  if (const auto* inf = std::get_if<InfiniteTail>(&tail)) {
    if (!cs.farey() || !inf->letter) return false;
    for (std::size_t k = 0; k + 1 < InfiniteTail::kCheckDepth; ++k) {
      std::size_t a = inf->at(k), b = inf->at(k + 1);
      Rational qb = farey_letter(b);
      if (!(farey_letter(a) < qb && qb <= farey_b(a))) return false;
    }
    return true;
  }
  tail_value(cs, tail);  // letter bounds
  return true;
}

}  // namespace

bool tail_follows(const CombSystem& cs, std::size_t last, const Tail& tail) {
  if (const auto* inf = std::get_if<InfiniteTail>(&tail)) {
    if (!cs.farey() || !inf->letter) return false;
    Rational v = farey_letter(inf->at(0));
    return cs.q(last) < v && v <= cs.b(last);
  }
  Rational v = tail_value(cs, tail);
  return cs.q(last) < v && v <= cs.b(last);
}

bool is_admissible(const CombSystem& cs, const Word& w) {
  const auto& l = w.letters();
  for (const auto& x : l) cs.q(x.index);
  for (std::size_t i = 1; i < l.size(); ++i)
    if (!admissible_pair(cs, l[i - 1].index, l[i].index)) return false;
  return true;
}

PointType classify(const CombSystem& cs, const SymbolicPoint& x) {
  try {
    if (!is_admissible(cs, x.prefix)) throw InconsistentTail("prefix is not admissible");
    if (!tail_well_formed(cs, x.tail)) throw InconsistentTail("malformed tail");
    if (!x.prefix.empty() && !tail_follows(cs, x.prefix.last(), x.tail))
      throw InconsistentTail("tail does not follow the last prefix letter");
  } catch (const UnknownLetter& e) {
    throw InconsistentTail(e.what());
  }
  return std::visit(
      [&](const auto& t) -> PointType {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, LetterTail>) return PointType::II;
        if constexpr (std::is_same_v<T, RealTail>)
          return (!t.irrational && cs.index_of(t.value)) ? PointType::II : PointType::III;
        if constexpr (std::is_same_v<T, EndTail>) return PointType::IV;
        if constexpr (std::is_same_v<T, InfiniteTail>) return PointType::I;
      },
      x.tail);
}

SymbolicPoint shift(const SymbolicPoint& x) {
  SymbolicPoint y = x;
  if (!y.prefix.empty()) {
    y.prefix.pop_front();
  } else if (auto* inf = std::get_if<InfiniteTail>(&y.tail)) {
    ++inf->offset;
  }
  return y;
}

SymbolicPoint sigma_q(const CombSystem& cs, std::size_t q, const SymbolicPoint& x) {
  cs.q(q);
  if (!in_follower(cs, Word{{q, 1}}, x))
    throw NotInFollowerSet("letter " + to_string(cs.q(q)) + " cannot precede this point");
  SymbolicPoint y = x;
  y.prefix.push_front(q);
  return y;
}

bool in_cylinder(const CombSystem&, const Word& beta, const SymbolicPoint& x) {
  return is_prefix(beta, x.prefix);
}

bool in_follower(const CombSystem& cs, const Word& alpha, const SymbolicPoint& x) {
  if (alpha.empty()) return true;
  if (!x.prefix.empty()) return admissible_pair(cs, alpha.last(), x.prefix.first());
  return tail_follows(cs, alpha.last(), x.tail);
}

bool in_C(const CombSystem& cs, const Word& alpha, const Word& beta, const SymbolicPoint& x) {
  if (!in_cylinder(cs, beta, x)) return false;
  SymbolicPoint y{drop(x.prefix, beta.total_power()), x.tail};
  return in_follower(cs, alpha, y);
}

std::vector<Word> enumerate_cylinders(const CombSystem& cs, std::size_t n, std::size_t d) {
  if (d == 0) return {Word{}};
  if (n > cs.size()) throw UnknownLetter("alphabet of size " + std::to_string(n) + " exceeds the comb");
  std::vector<Word> out;
  std::function<void(const Word&)> grow = [&](const Word& w) {
    if (!w.empty()) out.push_back(w);
    if (w.total_power() == d) return;
    for (std::size_t a = 1; a <= n; ++a) {
      if (!w.empty() && !admissible_pair(cs, w.last(), a)) continue;
      Word next = w;
      next.push_back(a);
      grow(next);
    }
  };
  grow(Word{});
  return out;
}

bool in_direction(const SymbolicPoint& x, const SymbolicPoint& y, const SymbolicPoint& z) {
  std::size_t k = x.prefix.total_power();
  if (!is_prefix(x.prefix, z.prefix) || z.prefix.total_power() <= k) return false;
  if (!is_prefix(x.prefix, y.prefix) || y.prefix.total_power() <= k) return false;
  return y.prefix.symbol(k) == z.prefix.symbol(k);
}

Word direction_to_cylinder(const CombSystem&, const SymbolicPoint& x, const SymbolicPoint& y,
                           const SymbolicPoint& z) {
  if (!in_direction(x, y, z)) throw NotInDirection("z is not beyond x toward y");
  return z.prefix;
}

std::string word_to_string(const CombSystem& cs, const Word& w) {
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ",";
    out += to_string(cs.q(l.index)) + "^" + std::to_string(l.power);
  }
  return out;
}

Word parse_word(const CombSystem& cs, const std::string& text) {
  Word w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    auto caret = item.find('^');
    Rational q = parse_rational(item.substr(0, caret));
    unsigned power = 1;
    if (caret != std::string::npos) {
      try {
        long k = std::stol(item.substr(caret + 1));
        if (k < 1) throw ParseError("power must be positive in '" + item + "'");
        power = static_cast<unsigned>(k);
      } catch (const std::logic_error&) {
        throw ParseError("malformed power in '" + item + "'");
      }
    }
    auto idx = cs.index_of(q);
    if (!idx || *idx > cs.size()) throw UnknownLetter(to_string(q) + " is not a letter of this comb");
    w.push_back(*idx, power);
  }
  return w;
}

}  // namespace berkline::dendrite
