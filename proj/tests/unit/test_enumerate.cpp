#include <doctest.h>

#include <algorithm>
#include <random>

#include "pk/enumerate.hpp"
#include "pk/reps.hpp"

using namespace pk;

TEST_CASE("orders of small presentations") {
  CHECK(todd_coxeter(Presentation::parse("a^2, b^2, abab")).order == 4);
  CHECK(todd_coxeter(Presentation::parse("a^3, b^3, ababab, aBaBaB")).order == 27);
  CHECK(todd_coxeter(Presentation::primitive_powers(2)).order == 4);
  CHECK(todd_coxeter(Presentation::primitive_powers(3)).order == 27);
  const Word ab = commutator(Word::a(), Word::b());
  const Presentation heis({Word::a(3), Word::b(3), ab.pow(3), commutator(Word::a(), ab), commutator(Word::b(), ab)});
  CHECK(todd_coxeter(heis).order == 27);
  CHECK(todd_coxeter(Presentation::parse("a^4, b^4, a^2b^2, aBab")).order == 8);
  CHECK(todd_coxeter(Presentation::parse("a^5, b")).order == 5);
  CHECK(todd_coxeter(Presentation::parse("a, b")).order == 1);
  CHECK_THROWS_AS(Presentation({Word()}), std::invalid_argument);
  CHECK_THROWS_AS(todd_coxeter(Presentation::parse("a"), 0), std::invalid_argument);
}

TEST_CASE("enumeration agrees with matrix closure") {
  CHECK(todd_coxeter(Presentation::primitive_powers(2)).order == image_closure(builtin("rho2")).order());
  CHECK(todd_coxeter(Presentation::primitive_powers(3)).order == image_closure(builtin("rho_odd:3")).order());
}

TEST_CASE("P_4 relators overflow a bounded table") {
  const Presentation p4 = Presentation::primitive_powers(4);
  CHECK(p4.relators.size() == 6);
  const CosetEnumeration e = todd_coxeter(p4, 100000);
  CHECK(e.overflow);
  CHECK(e.table.empty());
  // free group overflows too
  CHECK(todd_coxeter(Presentation::parse("abAB"), 1000).overflow);
}

TEST_CASE("property: relator order does not change the order") {
  std::mt19937_64 rng(0);
  const Word ab = commutator(Word::a(), Word::b());
  std::vector<Word> rels = {Word::a(6), Word::b(6), ab.pow(3), commutator(Word::a(), ab), commutator(Word::b(), ab)};
  for (int t = 0; t < 5; ++t) {
    std::shuffle(rels.begin(), rels.end(), rng);
    CHECK(todd_coxeter(Presentation(rels)).order == 108);
  }
  std::vector<Word> p3 = Presentation::primitive_powers(3).relators;
  for (int t = 0; t < 5; ++t) {
    std::shuffle(p3.begin(), p3.end(), rng);
    CHECK(todd_coxeter(Presentation(p3)).order == 27);
  }
}

TEST_CASE("multiplication tables and invariants") {
  const auto m3 = multiplication_table(Presentation::primitive_powers(3));
  REQUIRE(m3);
  CHECK(m3->order == 27);
  CHECK(m3->order_counts == std::map<std::size_t, std::size_t>{{1, 1}, {3, 26}});
  CHECK(m3->abelian == std::vector<mpz_class>{3, 3});
  // associativity and identity on the table
  for (std::size_t x = 0; x < 27; x += 5)
    for (std::size_t y = 0; y < 27; y += 3)
      for (std::size_t z = 0; z < 27; z += 7) {
        const auto& mul = m3->mul;
        CHECK(mul[static_cast<std::size_t>(mul[x][y])][z] == mul[x][static_cast<std::size_t>(mul[y][z])]);
      }
  for (std::size_t x = 0; x < 27; ++x) CHECK(m3->mul[0][x] == static_cast<int>(x));
  CHECK(abelian_invariants(Presentation::parse("abAB")) == std::vector<mpz_class>{0, 0});
  CHECK(abelian_invariants(Presentation::parse("a^4, b^6")) == std::vector<mpz_class>{2, 12});
}

TEST_CASE("isomorphism screening") {
  const Word ab = commutator(Word::a(), Word::b());
  const auto p2 = multiplication_table(Presentation::primitive_powers(2));
  const auto klein = multiplication_table(Presentation({Word::a(2), Word::b(2), ab}));
  const auto c4 = multiplication_table(Presentation::parse("a^4, bA"));
  const auto p3 = multiplication_table(Presentation::primitive_powers(3));
  const auto heis = multiplication_table(
      Presentation({Word::a(3), Word::b(3), ab.pow(3), commutator(Word::a(), ab), commutator(Word::b(), ab)}));
  REQUIRE((p2 && klein && c4 && p3 && heis));
  CHECK(iso_order_exponent_check(*p2, *klein).consistent);
  CHECK(iso_order_exponent_check(*p3, *heis).consistent);
  const IsoCheck bad = iso_order_exponent_check(*p2, *c4);
  CHECK_FALSE(bad.consistent);
  CHECK(bad.reason == "element-order multisets differ");
}
