#include <doctest.h>

#include <random>

#include "pk/cyclotomic.hpp"
#include "pk/reps.hpp"

using namespace pk;

namespace {

CycNum random_num(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> c(-4, 4), den(1, 3);
  std::vector<mpq_class> coeffs;
  for (int e = 0; e < euler_phi(n); ++e) coeffs.emplace_back(c(rng), den(rng));
  for (auto& q : coeffs) q.canonicalize();
  return CycNum::from_coeffs(n, coeffs);
}

}  // namespace

TEST_CASE("cyclotomic basics") {
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(7) == 6);
  CHECK(CycNum::zeta(3) * CycNum::zeta(3) * CycNum::zeta(3) == CycNum(1));
  CHECK(CycNum::zeta(3) * CycNum::zeta(3, -1) == CycNum(1));
  CHECK(CycNum::zeta(3) + CycNum::zeta(3, 2) == CycNum(-1));
  CHECK(CycNum::zeta(4) * CycNum::zeta(4) == CycNum(-1));
  CHECK(CycNum::zeta(4) * CycNum::zeta(3) == CycNum::zeta(12, 7));
  CHECK(CycNum::zeta(5).conj() == CycNum::zeta(5, 4));
  CHECK(CycNum::zeta(6, 2) == CycNum::zeta(3));
  CHECK_THROWS(CycNum(0).inverse());
}

TEST_CASE("kron of diagonal matrices") {
  const CycNum w = CycNum::zeta(3);
  const CycMatrix x = CycMatrix::diag({-1, -1, 1});
  const CycMatrix y = CycMatrix::diag({1, w, w * w});
  const CycMatrix want = CycMatrix::diag({-1, -w, -w * w, -1, -w, -w * w, 1, w, w * w});
  CHECK(kron(x, y) == want);
}

TEST_CASE("DFT matrix is orthogonal up to k") {
  const int k = 3;
  CycMatrix m(3, 3, k);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m.set(i, j, CycNum::zeta(k, static_cast<long>(i * j)));
  // brute-force sum of omega^{(i-j) n}
  CycMatrix prod = m * m.conj().transpose();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CycNum s = 0;
      for (long n = 0; n < 3; ++n) s += CycNum::zeta(k, (static_cast<long>(i) - static_cast<long>(j)) * n);
      CHECK(prod(i, j) == s);
    }
  CHECK(prod == CycNum(3) * CycMatrix::identity(3));
}

TEST_CASE("property: field axioms") {
  std::mt19937_64 rng(0);
  for (const int n : {1, 3, 4, 5, 7, 12}) {
    for (int t = 0; t < 20; ++t) {
      const CycNum x = random_num(rng, n), y = random_num(rng, n), z = random_num(rng, n);
      CHECK((x * y) * z == x * (y * z));
      CHECK((x + y) + z == x + (y + z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(x * y == y * x);
      CHECK(((x == y) == (x - y).is_zero()));
      CHECK((x * y).conj() == x.conj() * y.conj());
      if (!x.is_zero()) CHECK(x * x.inverse() == CycNum(1));
    }
  }
}

TEST_CASE("property: inverse of random matrices") {
  std::mt19937_64 rng(1);
  for (const int n : {3, 4, 5, 12}) {
    int done = 0;
    while (done < 50) {
      const CycMatrix m = random_matrix(rng, 3, n, 1);
      if (m.det().is_zero()) {
        CHECK_THROWS_AS(m.inverse(), SingularMatrix);
        continue;
      }
      CHECK(m.inverse() * m == CycMatrix::identity(3, n));
      ++done;
    }
  }
}

TEST_CASE("property: mixed product of Kronecker products") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const CycMatrix a = random_matrix(rng, 2, 4), b = random_matrix(rng, 3, 3), c = random_matrix(rng, 2, 4),
                    d = random_matrix(rng, 3, 3);
    CHECK(kron(a, b) * kron(c, d) == kron(a * c, b * d));
  }
}

TEST_CASE("linear algebra over the field") {
  std::mt19937_64 rng(3);
  const CycMatrix m = random_matrix(rng, 3, 5);
  CycMatrix singular = block_matrix(m, m, m, m);
  CHECK(rank(singular) == rank(m));
  const auto ns = nullspace(singular);
  CHECK(ns.size() == 6 - rank(m));
  for (const auto& v : ns) CHECK((singular * CycMatrix::column(v)).is_zero());
  const std::vector<CycNum> rhs = {1, CycNum::zeta(5), 0};
  if (!m.det().is_zero()) {
    const auto x = solve(m, rhs);
    REQUIRE(x);
    CHECK(m * CycMatrix::column(*x) == CycMatrix::column(rhs));
  }
}
