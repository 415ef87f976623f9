#include <doctest.h>

#include <random>
#include <set>

#include "pk/farey.hpp"

using namespace pk;

TEST_CASE("slopes") {
  CHECK(Slope::parse("6/4") == Slope::make(3, 2));
  CHECK(Slope::parse("-1/-2") == Slope::make(1, 2));
  CHECK(Slope::parse("inf").is_infinity());
  CHECK(Slope::make(-3, 0).is_infinity());
  CHECK_THROWS(Slope::make(0, 0));
  CHECK(value_less(Slope::make(-1, 1), Slope::make(1, 2)));
  CHECK(value_less(Slope::make(7, 1), Slope::infinity()));
}

TEST_CASE("primitive words at named slopes") {
  CHECK(primitive_word(Slope::infinity()) == Word::a());
  CHECK(conjugate_test(primitive_word(Slope::make(1, 1)), Word::parse("ab")));
  CHECK(conjugate_test(primitive_word(Slope::make(1, 2)), Word::parse("ab^2")));
  const Mat2 m0 = stern_brocot_matrix(Slope::make(0, 1));
  CHECK(m0.m00 == 0);
  CHECK(m0.m10 == 1);
  CHECK(m0.det() == 1);
  const Mat2 m32 = stern_brocot_matrix(Slope::make(3, 2));
  CHECK(m32.m00 == 3);
  CHECK(m32.m10 == 2);
  CHECK(m32.det() == 1);
  for (const auto& s : {Slope::make(0, 1), Slope::make(1, 1), Slope::make(-2, 3)}) {
    const Word img = outer_rep(s).apply(Word::a());
    CHECK(conjugate_test(img, primitive_word(s)));
  }
}

TEST_CASE("property: Mobius action of the Stern-Brocot matrix sends 1/0 to the slope") {
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<std::int64_t> d(-10000, 10000);
  int tested = 0;
  while (tested < 200) {
    const std::int64_t p = d(rng), q = d(rng);
    if (p == 0 && q == 0) continue;
    const Slope s = Slope::make(p, q);
    const Mat2 m = stern_brocot_matrix(s);
    CHECK(m.det() == 1);
    CHECK(Slope::make(m.m00, m.m10) == s);
    ++tested;
  }
}

TEST_CASE("property: primitive words carry their slope") {
  for (const auto& s : farey_order(300)) {
    const Word w = primitive_word(s);
    CHECK(is_primitive(w));
    const auto e = abelianize(w);
    const bool plus = e[0] == s.p() && e[1] == s.q();
    const bool minus = e[0] == -s.p() && e[1] == -s.q();
    CHECK((plus || minus));
  }
}

TEST_CASE("quotient complexes for k <= 5") {
  const std::size_t vertices[] = {0, 0, 3, 4, 6, 12};
  for (int k = 2; k <= 5; ++k) {
    const TriComplex c = quotient_complex(k);
    CHECK(c.vertex_labels.size() == vertices[k]);
    CHECK(c.euler_characteristic() == 2);
  }
  const TriComplex oct = quotient_complex(4);
  CHECK(oct.edges.size() == 12);
  CHECK(oct.triangles.size() == 8);
  for (int v = 0; v < 6; ++v) CHECK(oct.triangle_degree(v) == 4);
  for (const auto& e : oct.edges) CHECK(oct.edge_multiplicity(e) == 2);
}

TEST_CASE("property: normal generators match the tabulated entries") {
  for (int k = 2; k <= 5; ++k) {
    const auto gens = normal_generators(k);
    const auto table = tabulated_generators(k);
    REQUIRE(gens.size() == table.size());
    std::set<Slope> seen;
    for (const auto& g : gens) {
      CHECK(g.power == k);
      CHECK(is_primitive(g.base));
      const auto e = abelianize(g.base);
      CHECK(((e[0] == g.slope.p() && e[1] == g.slope.q()) || (e[0] == -g.slope.p() && e[1] == -g.slope.q())));
      seen.insert(g.slope);
      bool match = false;
      for (const auto& [s, w] : table)
        if (s == g.slope) match = conjugate_test(g.base, w) || conjugate_test(g.base, w.inverse());
      CHECK_MESSAGE(match, "k = ", k, ", slope ", g.slope.str());
    }
    CHECK(seen.size() == gens.size());
  }
  const auto g3 = normal_generators(3);
  bool minus_one = false;
  for (const auto& g : g3)
    if (g.slope == Slope::make(-1, 1))
      minus_one = conjugate_test(g.word(), Word::parse("aB").pow(3)) ||
                  conjugate_test(g.word(), Word::parse("aB").pow(-3));
  CHECK(minus_one);
}

TEST_CASE("property: k >= 6 patches keep growing with the radius") {
  std::size_t prev = 0;
  for (int r = 1; r <= 4; ++r) {
    const std::size_t n = normal_generators(6, r).size();
    CHECK(n > prev);
    CHECK(n == quotient_complex(6, r).vertex_labels.size());
    prev = n;
  }
  // 6-regular triangulation: 1 + 6 + 12 vertices within distance two
  CHECK(quotient_complex(6, 2).vertex_labels.size() == 19);
}
