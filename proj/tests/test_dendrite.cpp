#include <doctest.h>

#include "berkline/dendrite.hpp"
#include "berkline/errors.hpp"

using namespace berkline;
using namespace berkline::dendrite;

namespace {

CombSystem small_comb() {
  return CombSystem({{Rational(1, 3), Rational(2, 3)}, {Rational(1, 2), Rational(3, 4)}});
}

Word w1(std::size_t a, unsigned k = 1) { return Word{{a, k}}; }

}  // namespace

TEST_CASE("enumeration of the rationals in (0,1)") {
  std::vector<Rational> head{Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4), Rational(3, 4),
                             Rational(1, 5)};
  for (std::size_t i = 0; i < head.size(); ++i) CHECK(farey_letter(i + 1) == head[i]);
  for (std::size_t n = 1; n < 200; ++n) CHECK(*farey_index(farey_letter(n)) == n);
  CHECK_FALSE(farey_index(Rational(0)));
  CHECK_FALSE(farey_index(Rational(1)));
}

TEST_CASE("default comb") {
  auto c2 = default_comb(2);
  CHECK(c2.q(1) == Rational(1, 2));
  CHECK(c2.b(1) == Rational(3, 4));
  CHECK(c2.q(2) == Rational(1, 3));
  CHECK(c2.b(2) == Rational(7, 12));
  auto c1 = default_comb(1);
  CHECK(c1.size() == 1);
  auto c40 = default_comb(40);
  for (std::size_t n = 1; n <= 40; ++n) {
    CHECK(c40.q(n) < c40.b(n));
    CHECK(c40.b(n) <= 1);
    mpq_class bound(1);
    bound /= mpz_class(1) << n;
    CHECK(c40.b(n) - c40.q(n) <= bound);
  }
  CHECK_THROWS_AS(CombSystem({{Rational(1, 2), Rational(1, 4)}}), InvalidComb);
  CHECK_THROWS_AS(CombSystem({{Rational(1, 3), Rational(2, 3)}, {Rational(1, 2), Rational(1)}}), InvalidComb);
}

TEST_CASE("words merge powers") {
  Word w;
  w.push_back(1);
  w.push_back(1);
  w.push_back(2);
  CHECK(w.letters().size() == 2);
  CHECK(w.total_power() == 3);
  CHECK(w.symbol(1) == 1);
  CHECK(w.symbol(2) == 2);
  w.pop_front();
  CHECK(w == (Word{{1, 1}, {2, 1}}));
  CHECK(concat(w1(1), w1(1, 2)) == w1(1, 3));
  CHECK(is_prefix(w1(1), w));
  CHECK(drop(w, 1) == w1(2));
}

TEST_CASE("admissibility") {
  auto cs = small_comb();
  CHECK(is_admissible(cs, Word{{1, 1}, {2, 1}}));
  CHECK_FALSE(is_admissible(cs, Word{{2, 1}, {1, 1}}));
  CHECK(is_admissible(cs, Word{}));
  CHECK(is_admissible(cs, w1(2, 5)));
  CHECK_THROWS_AS(is_admissible(cs, w1(3)), UnknownLetter);
}

TEST_CASE("classification of symbolic points") {
  auto cs = small_comb();
  CHECK(classify(cs, {w1(1), LetterTail{2}}) == PointType::II);
  CHECK(classify(cs, {Word{}, RealTail{Rational(3, 5), true}}) == PointType::III);
  CHECK(classify(cs, {Word{}, EndTail{1}}) == PointType::IV);
  CHECK(classify(cs, {w1(1), EndTail{1}}) == PointType::IV);
  CHECK(classify(cs, {w1(1), RealTail{Rational(1, 2)}}) == PointType::II);
  CHECK(classify(cs, {w1(1), RealTail{Rational(3, 5)}}) == PointType::III);
  CHECK_THROWS_AS(classify(cs, {w1(2), LetterTail{1}}), InconsistentTail);
  CHECK_THROWS_AS(classify(cs, {w1(1), LetterTail{1}}), InconsistentTail);

  auto dc = default_comb(8);
  auto chain = greedy_chain(dc, 1);
  CHECK(classify(dc, {Word{}, chain}) == PointType::I);
  for (std::size_t k = 0; k + 1 < InfiniteTail::kCheckDepth; ++k)
    CHECK(admissible_pair(dc, chain.at(k), chain.at(k + 1)));
}

TEST_CASE("shift and its sections") {
  auto cs = small_comb();
  SymbolicPoint x{w1(1, 2), LetterTail{2}};
  CHECK(shift(x) == SymbolicPoint{w1(1, 1), LetterTail{2}});
  SymbolicPoint tail{Word{}, LetterTail{2}};
  CHECK(shift(tail) == tail);
  CHECK(shift(SymbolicPoint{Word{{1, 1}, {2, 1}}, EndTail{2}}) == SymbolicPoint{w1(2), EndTail{2}});

  CHECK(sigma_q(cs, 1, tail) == SymbolicPoint{w1(1), LetterTail{2}});
  CHECK(shift(sigma_q(cs, 1, tail)) == tail);
  CHECK_THROWS_AS(sigma_q(cs, 2, SymbolicPoint{Word{}, LetterTail{1}}), NotInFollowerSet);
  // A repeated first letter is allowed: q q x.
  CHECK(sigma_q(cs, 1, SymbolicPoint{w1(1), LetterTail{2}}) == SymbolicPoint{w1(1, 2), LetterTail{2}});
}

TEST_CASE("cylinders and follower sets") {
  auto cs = small_comb();
  SymbolicPoint x{w1(1), LetterTail{2}};
  CHECK(in_cylinder(cs, w1(1), x));
  CHECK_FALSE(in_cylinder(cs, w1(2), x));
  CHECK(in_cylinder(cs, Word{}, x));
  SymbolicPoint t1{Word{}, LetterTail{1}};
  CHECK_FALSE(in_follower(cs, w1(2), t1));
  for (const auto& p : {x, t1, SymbolicPoint{w1(2), EndTail{2}}}) {
    CHECK(in_C(cs, w1(1), Word{}, p) == in_follower(cs, w1(1), p));
    CHECK(in_C(cs, Word{}, w1(2), p) == in_cylinder(cs, w1(2), p));
  }
}

TEST_CASE("cylinder enumeration") {
  auto cs = small_comb();
  auto d1 = enumerate_cylinders(cs, 2, 1);
  REQUIRE(d1.size() == 2);
  CHECK(d1[0] == w1(1));
  CHECK(d1[1] == w1(2));
  auto d2 = enumerate_cylinders(cs, 2, 2);
  auto has = [&](const Word& w) { return std::find(d2.begin(), d2.end(), w) != d2.end(); };
  CHECK(has(Word{{1, 1}, {2, 1}}));
  CHECK_FALSE(has(Word{{2, 1}, {1, 1}}));
  CHECK(has(w1(1, 2)));
  CHECK(d2.size() == 5);
  CHECK(std::is_sorted(d2.begin(), d2.end()));
  auto d0 = enumerate_cylinders(cs, 2, 0);
  REQUIRE(d0.size() == 1);
  CHECK(d0[0].empty());
}

TEST_CASE("directions and cylinders") {
  auto cs = small_comb();
  SymbolicPoint x{Word{}, LetterTail{2}};
  SymbolicPoint y{w1(1, 2), LetterTail{2}};
  SymbolicPoint z{w1(1), LetterTail{2}};
  CHECK(direction_to_cylinder(cs, x, y, z) == w1(1));
  SymbolicPoint deep{Word{{1, 1}, {2, 1}}, EndTail{2}};
  CHECK(direction_to_cylinder(cs, x, y, deep) == deep.prefix);
  CHECK_THROWS_AS(direction_to_cylinder(cs, x, y, SymbolicPoint{Word{}, LetterTail{1}}), NotInDirection);
  CHECK_THROWS_AS(direction_to_cylinder(cs, x, y, SymbolicPoint{w1(2), EndTail{2}}), NotInDirection);
}

TEST_CASE("word text round trip") {
  auto cs = small_comb();
  Word w{{1, 2}, {2, 1}};
  CHECK(word_to_string(cs, w) == "1/3^2,1/2^1");
  CHECK(parse_word(cs, "1/3^2,1/2") == w);
  CHECK_THROWS_AS(parse_word(cs, "1/5"), UnknownLetter);
  CHECK_THROWS_AS(parse_word(cs, "1/3^x"), ParseError);
}
