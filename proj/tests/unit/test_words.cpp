#include <doctest.h>

#include <random>
#include <stdexcept>

#include "pk/words.hpp"

using namespace pk;

TEST_CASE("word syntax and reduction") {
  const Word g = Word::parse("abABAbaB");
  CHECK(g.length() == 8);
  CHECK(g.str() == "abABAbaB");
  CHECK(Word::parse("aA").empty());
  CHECK(Word::parse("a^3a^-1") == Word::a(2));
  CHECK(Word::parse("1").empty());
  CHECK_THROWS_AS(Word::parse("ax"), std::invalid_argument);
  CHECK(commutator(Word::a(), Word::b()) == Word::parse("ABab"));
  CHECK(abelianize(Word::a()) == std::array<std::int64_t, 2>{1, 0});
  CHECK(abelianize(Word::b()) == std::array<std::int64_t, 2>{0, 1});
}

TEST_CASE("conjugacy and primitivity") {
  CHECK(conjugate_test(Word::parse("ab"), Word::parse("ba")));
  CHECK_FALSE(conjugate_test(Word::parse("abAB"), Word::parse("baBA")));
  CHECK(is_primitive(Word::parse("a^2bab")));
  CHECK(is_primitive(Word::parse("a")));
  CHECK_FALSE(is_primitive(Word::a(2)));
  CHECK_FALSE(is_primitive(commutator(Word::a(), Word::b())));
  CHECK(cyclic_reduction(Word::parse("baB")) == Word::a());
}

TEST_CASE("named automorphisms") {
  CHECK(psi2().apply(Word::b()) == Word::parse("ab"));
  CHECK(psi1().pow(2).apply(Word::a()) == Word::a(-1));
  // these lifts close up exactly, not just up to inner automorphisms
  CHECK(psi0().pow(3).map().is_identity());
  CHECK(psi1().pow(4).map().is_identity());
  CHECK(psi_minus().orientation() == -1);
  CHECK(psi1().orientation() == 1);
}

TEST_CASE("property: reduction idempotent, product associative") {
  std::mt19937_64 rng(0);
  for (int t = 0; t < 200; ++t) {
    const Word x = random_word(rng, 1 + t % 9), y = random_word(rng, 1 + t % 7), z = random_word(rng, 1 + t % 5);
    CHECK((x * y) * z == x * (y * z));
    const auto letters = (x * y).letters();
    CHECK(Word::from_letters(letters) == x * y);
    CHECK(x * x.inverse() == Word());
  }
}

TEST_CASE("property: automorphism inverse round trip") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 60; ++t) {
    const Automorphism phi = random_automorphism(rng, 1 + t % 8);
    const Word w = random_word(rng, 10);
    CHECK(phi.apply_inverse(phi.apply(w)) == w);
    CHECK(phi.apply(phi.apply_inverse(w)) == w);
  }
}

TEST_CASE("property: primitivity invariant under conjugation and inversion") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 60; ++t) {
    const Automorphism phi = random_automorphism(rng, 1 + t % 6);
    const Word p = phi.apply(Word::a());
    const Word c = random_word(rng, 1 + t % 5);
    CHECK(is_primitive(c * p * c.inverse()));
    CHECK(is_primitive(p.inverse()));
    const Word np = phi.apply(Word::a(2));
    CHECK_FALSE(is_primitive(c * np * c.inverse()));
  }
}

TEST_CASE("property: abelianization intertwines with the action on Z^2") {
  std::mt19937_64 rng(3);
  for (const Automorphism& psi : {psi0(), psi1(), psi2(), psi_minus()}) {
    const Mat2 d = psi.map().abel_matrix();
    CHECK(d.det() * d.det() == 1);
    for (int t = 0; t < 30; ++t) {
      const Word w = random_word(rng, 12);
      CHECK(abelianize(psi.apply(w)) == d.apply(abelianize(w)));
    }
  }
}
