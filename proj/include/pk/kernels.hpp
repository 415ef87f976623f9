#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pk/cyclotomic.hpp"
#include "pk/lattice.hpp"
#include "pk/report.hpp"
#include "pk/reps.hpp"
#include "pk/words.hpp"

namespace pk {

struct GaussInt {
  mpz_class re, im;
  friend bool operator==(const GaussInt&, const GaussInt&) = default;
};

std::string str(const GaussInt& g);

// gamma(z, w) = [[1, 0, z, -conj(w)], [0, 1, w, conj(z)], [0, 0, 1, 0], [0, 0, 0, 1]].
struct GammaCoord {
  GaussInt z, w;
  friend bool operator==(const GammaCoord&, const GammaCoord&) = default;
  // (Re z, Im z, Re w, Im w)
  IntVec flatten() const;
  std::string str() const;
};

struct GammaShapeError : std::domain_error {
  GammaShapeError(std::size_t row, std::size_t col, const std::string& why)
      : std::domain_error("not of gamma shape at (" + std::to_string(row + 1) + ", " + std::to_string(col + 1) +
                          "): " + why),
        row(row),
        col(col) {}
  std::size_t row, col;
};

GammaCoord gamma_coord(long z_re, long z_im, long w_re, long w_im);
CycMatrix gamma_encode(const GammaCoord& g);
// Throws GammaShapeError naming the first offending entry.
GammaCoord gamma_decode(const CycMatrix& m);

IntLattice gaussian_lattice(const std::vector<GammaCoord>& gens);

// Block split of an extension [[X, Q], [0, D]] with X of size `top`.
// For each coset representative g of base(F_2) and relator r, the Q block of ext(g r g^-1),
// flattened over the power basis of Z[zeta]. Requires ext(r) = [[I, Q], [0, I]].
// Throws std::runtime_error on image overflow. A nonzero seed shuffles the enumeration order.
IntLattice conjugate_orbit_lattice(const Rep& base, const Rep& ext, const std::vector<Word>& relators,
                                   std::size_t bound = 1000000, std::uint64_t shuffle_seed = 0);

// Same lattice without enumerating the image: the Q blocks of ext(r) closed under
// q -> X(s) q D(s)^-1 for s in {a, b, a^-1, b^-1}. Works for infinite base images.
IntLattice module_orbit_lattice(std::size_t top, const Rep& ext, const std::vector<Word>& relators);

// Lattice of gamma coordinates of ext(g r g^-1) over coset representatives g of base(F_2).
IntLattice gamma_orbit_lattice(const Rep& base, const Rep& ext, const std::vector<Word>& relators);

// A, B, C, D, E and g0..g3.
std::map<std::string, Word> np_words();

// The lattices named in the rank-four description of the kernel image of the quaternion rep.
IntLattice lambda_lattice();   // <(-1,1), (-i,-i), (-1,-1), (0,i+1)>
IntLattice lambda1_lattice();  // <(-1,1), (-i,-i), (-1,-1), (i,-i)>
IntLattice lambda2_lattice();  // <(0,i+1), (0,1-i), (-1-i,0), (-1+i,0)>
IntLattice lambda_prime_lattice();

// <a, b | a^4, b^4, a^2 b^2, a b^-1 a b>, the quaternion image of rho4.
std::vector<Word> quaternion_relators();

// Normal generators of ker trho4: the quaternion relators rewritten over words whose
// images form a basis of Lambda, the commutators of those words, and their conjugation rules.
std::vector<Word> trho4_kernel_relators();

std::vector<CheckRecord> verify_faithful_p4();

struct ExactSequence {
  std::optional<std::size_t> base_order;  // nullopt when the image overflows the bound
  std::size_t rank = 0;
  IntLattice lattice;
  bool enumerated = false;  // rank from coset enumeration rather than module closure
};

// (|base(F_2)|, rank of ext(ker base)) with ker base normally generated by `relators`.
// `top` is the size of the block of ext that carries base's kernel (base.dim() by default).
ExactSequence exact_sequence_report(const Rep& base, const Rep& ext, const std::vector<Word>& relators,
                                    std::optional<std::size_t> top = std::nullopt, std::size_t bound = 100000);

}  // namespace pk
