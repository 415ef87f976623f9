#include <doctest.h>

#include <random>

#include "pk/reps.hpp"

using namespace pk;

namespace {

const std::vector<std::string>& all_builtins() {
  static const std::vector<std::string> names = builtin_names({3, 5, 7});
  return names;
}

}  // namespace

TEST_CASE("printed images") {
  const CycNum i = CycNum::zeta(4);
  const Rep r4 = builtin("rho4");
  CHECK(r4.img_a() == CycMatrix::diag({i, -i}));
  CHECK(r4.img_b() == CycMatrix::from_rows({{0, 1}, {-1, 0}}));
  CHECK(evaluate(builtin("rho2"), Word::parse("ab")) == CycMatrix::diag({-1, 1, -1}));
  CHECK(evaluate(builtin("rho_odd:3"), commutator(Word::a(), Word::b())) ==
        CycNum::zeta(3, -1) * CycMatrix::identity(3, 3));
  const Rep t5 = builtin("trho_odd:5");
  CHECK(t5.dim() == 6);
  for (std::size_t r = 0; r < 5; ++r) {
    const CycNum want = r == 1 ? CycNum(1) : r == 3 ? CycNum(-1) : CycNum(0);
    CHECK(t5.img_b()(r, 5) == want);
  }
  const Rep tt = builtin("ttrho4");
  CHECK(tt.dim() == 9);
  CHECK(tt.img_a() == CycMatrix::diag({1, -1, -i, -i, -1, 1, i, i, 1}));
  // [a,b]^2 is unipotent with two entries 2i off the diagonal
  const CycMatrix c2 = evaluate(tt, commutator(Word::a(), Word::b()).pow(2));
  std::size_t off = 0, twoi = 0;
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 9; ++c) {
      if (r == c) {
        CHECK(c2(r, c) == CycNum(1));
      } else if (!c2(r, c).is_zero()) {
        ++off;
        twoi += c2(r, c) == CycNum(2) * i ? 1 : 0;
      }
    }
  CHECK(off == 2);
  CHECK(twoi == 2);
}

TEST_CASE("tensor and conjugate constructions") {
  const Rep r6 = tensor(builtin("rho2"), builtin("rho_odd:3"));
  CHECK(r6.img_a() == builtin("rho6").img_a());
  CHECK(r6.img_b() == builtin("rho6").img_b());
  const Rep big = tensor(conj_rep(builtin("rho4")), builtin("trho4"));
  const Rep tt = builtin("ttrho4");
  REQUIRE(big.dim() == 8);
  CHECK(tt.img_a().block(0, 0, 8, 8) == big.img_a());
  CHECK(tt.img_b().block(0, 0, 8, 8) == big.img_b());
}

TEST_CASE("property: every builtin passes its witness with M_minus = I") {
  for (const auto& name : all_builtins()) {
    const CharWitness w = builtin_witness(name);
    const CharCheck c = check_characteristic(builtin(name), w);
    CHECK_MESSAGE(c.ok, name, ": ", c.failed);
    CHECK_MESSAGE(w.m_minus.is_identity(), name);
  }
  const CycNum i = CycNum::zeta(4);
  const CharWitness w4{CycMatrix::from_rows({{1, i}, {i, 1}}), CycMatrix::diag({i, 1}), CycMatrix::identity(2)};
  CHECK(check_characteristic(builtin("rho4"), w4).ok);
}

TEST_CASE("property: homomorphism on random word pairs") {
  std::mt19937_64 rng(0);
  for (const auto& name : all_builtins()) {
    const Rep rho = builtin(name);
    for (int t = 0; t < 5; ++t) {
      const Word u = random_word(rng, 6), v = random_word(rng, 6);
      CHECK(evaluate(rho, u * v) == evaluate(rho, u) * evaluate(rho, v));
      CHECK(evaluate(rho, u.inverse()) * evaluate(rho, u) == CycMatrix::identity(rho.dim(), rho.conductor()));
    }
  }
}

TEST_CASE("property: tensor and conjugate witnesses") {
  const std::pair<std::string, std::string> pairs[] = {{"rho2", "rho_odd:3"}, {"rho4", "rho_odd:3"}, {"rho4", "rho4"}};
  for (const auto& [x, y] : pairs) {
    const Rep t = tensor(builtin(x), builtin(y));
    CHECK(check_characteristic(t, tensor_witness(builtin_witness(x), builtin_witness(y))).ok);
  }
  for (const std::string name : {"rho4", "rho_odd:5", "trho4"})
    CHECK(check_characteristic(conj_rep(builtin(name)), conj_witness(builtin_witness(name))).ok);
}

TEST_CASE("solved witnesses") {
  const auto w3 = solve_witness(builtin("rho_odd:3"));
  REQUIRE(w3);
  CHECK(check_characteristic(builtin("rho_odd:3"), *w3).ok);
  const auto wtt = solve_witness(builtin("ttrho4"));
  REQUIRE(wtt);
  CHECK(check_characteristic(builtin("ttrho4"), *wtt).ok);
  // generic images admit no witness
  std::mt19937_64 rng(5);
  const Rep generic("generic", random_matrix(rng, 3, 1, 3) + CycNum(7) * CycMatrix::identity(3),
                    random_matrix(rng, 3, 1, 3) + CycNum(11) * CycMatrix::identity(3));
  CHECK_FALSE(solve_witness(generic).has_value());
}

TEST_CASE("images and additive spans") {
  const auto c6 = image_closure(builtin("rho6"));
  CHECK_FALSE(c6.overflow);
  CHECK(c6.order() == 108);
  CHECK(image_closure(builtin("rho2")).order() == 4);
  CHECK(image_closure(builtin("rho4")).order() == 8);
  CHECK(image_closure(builtin("rho_odd:3")).order() == 27);
  CHECK(additive_span_rank(builtin("rho_odd:3")) == std::optional<std::size_t>(18));
  CHECK(additive_span_rank(builtin("rho2")) == std::optional<std::size_t>(3));
  CHECK(additive_span_rank(builtin("rho4")) == std::optional<std::size_t>(4));
  for (const int k : {3, 5, 7}) {
    const Rep r = builtin("rho_odd:" + std::to_string(k));
    const auto id = CycMatrix::identity(static_cast<std::size_t>(k), k);
    CHECK(r.img_a().pow(k) == id);
    CHECK(r.img_b().pow(k) == id);
    CHECK_FALSE(r.img_a().pow(1) == id);
  }
  CHECK(builtin("ttrho4").img_a().pow(4).is_identity());
}

TEST_CASE("P_k in the kernel") {
  CHECK(kernel_contains_Pk(builtin("trho4"), builtin_witness("trho4"), 4));
  CHECK(kernel_contains_Pk(builtin("trho6"), builtin_witness("trho6"), 6));
  CHECK(kernel_contains_Pk(builtin("rho_odd:5"), builtin_witness("rho_odd:5"), 5));
  CHECK_THROWS_AS(kernel_contains_Pk(builtin("rho4"), builtin_witness("rho2"), 4), std::invalid_argument);
}

TEST_CASE("multitwist") {
  CHECK(multitwist_check(builtin("rho_odd:3"), Slope::infinity(), 3, 50) == TwistResult::holds);
  CHECK(multitwist_check(builtin("rho4"), Slope::make(1, 1), 4, 50) == TwistResult::holds);
}

TEST_CASE("unknown names") {
  CHECK_THROWS_AS(builtin("rho9"), std::invalid_argument);
  CHECK_FALSE(builtin_exponent("nope").has_value());
  CHECK(builtin_exponent("trho_odd:7") == std::optional<int>(7));
  CHECK(builtin_exponent("ttrho4") == std::optional<int>(4));
}
