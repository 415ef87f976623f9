#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace pk {

using IntVec = std::vector<mpz_class>;

struct SnfResult {
  std::size_t rank = 0;
  std::vector<mpz_class> divisors;  // nonzero elementary divisors, each dividing the next
  // Product of the divisors: the index when the rows span a full-rank lattice.
  mpz_class product() const;
};

// Smith normal form of the matrix whose rows are given.
SnfResult snf(const std::vector<IntVec>& rows);

// Row Hermite normal form: nonzero rows in echelon form, positive pivots, entries above a
// pivot reduced into [0, pivot). Canonical for the lattice spanned by the rows.
std::vector<IntVec> hnf(const std::vector<IntVec>& rows, std::size_t ambient);

// Subgroup of Z^ambient given by generators; stored in Hermite normal form.
class IntLattice {
 public:
  explicit IntLattice(std::size_t ambient = 0) : ambient_(ambient) {}
  IntLattice(std::size_t ambient, const std::vector<IntVec>& generators);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVec>& basis() const { return basis_; }

  void add(const IntVec& v);
  void add_all(const std::vector<IntVec>& vs);
  bool contains(const IntVec& v) const;
  bool contains(const IntLattice& sub) const;
  // [Z^ambient : this] when of full rank.
  std::optional<mpz_class> index() const;
  friend bool operator==(const IntLattice& x, const IntLattice& y) { return x.basis_ == y.basis_; }

 private:
  std::size_t ambient_;
  std::vector<IntVec> basis_;
};

// [sup : sub] for sub contained in sup of equal rank; nullopt otherwise.
std::optional<mpz_class> lattice_index(const IntLattice& sub, const IntLattice& sup);

}  // namespace pk
