#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pk/words.hpp"

namespace pk {

// Finitely presented quotient of F_2 = <a, b>.
struct Presentation {
  std::vector<Word> relators;  // reduced, nonempty

  // Throws std::invalid_argument on an empty relator.
  explicit Presentation(std::vector<Word> rels);
  // Relators separated by commas, in the word syntax.
  static Presentation parse(const std::string& text);
  // P_k's normal generators from the quotient complex.
  static Presentation primitive_powers(int k);
  std::string str() const;
};

// Columns a, a^-1, b, b^-1.
using CosetRow = std::array<int, 4>;

struct CosetEnumeration {
  bool overflow = false;
  std::size_t order = 0;        // live cosets at completion
  std::size_t defined = 0;      // cosets ever defined
  std::vector<CosetRow> table;  // compact, coset 0 is the identity; empty on overflow
};

// Hasselgrove-Leech-Trotter enumeration of the cosets of the trivial subgroup, with full
// relator scans and coincidence processing. Overflow means the limit was hit, not that the
// group is infinite. coset_limit >= 1.
CosetEnumeration todd_coxeter(const Presentation& p, std::size_t coset_limit = 1000000);

struct MultTable {
  std::size_t order = 0;
  std::vector<std::vector<int>> mul;  // mul[x][y] = x * y; element 0 is the identity
  std::vector<Word> words;            // a word for each element
  std::vector<mpz_class> abelian;     // invariants of the abelianization, 0 for a free factor
  std::map<std::size_t, std::size_t> order_counts;  // element order -> count
};

// Nullopt on overflow.
std::optional<MultTable> multiplication_table(const Presentation& p, std::size_t coset_limit = 1000000);

// Invariants of Z^2 / <exponent sums of the relators>; 0 marks a free factor.
std::vector<mpz_class> abelian_invariants(const Presentation& p);

struct IsoCheck {
  bool consistent = false;
  std::string reason;  // first invariant that differs, or "consistent with isomorphism"
};

// Compares order, element-order multiset and abelian invariants. Not a full isomorphism test.
IsoCheck iso_order_exponent_check(const MultTable& x, const MultTable& y);

}  // namespace pk
