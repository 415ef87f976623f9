#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pk/cyclotomic.hpp"
#include "pk/farey.hpp"
#include "pk/words.hpp"

namespace pk {

// Homomorphism F_2 -> GL(n, Q(zeta_m)) fixed by the images of a and b.
class Rep {
 public:
  // Throws SingularMatrix if an image is not invertible.
  Rep(std::string name, CycMatrix img_a, CycMatrix img_b);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return a_.rows(); }
  int conductor() const;
  const CycMatrix& img_a() const { return a_; }
  const CycMatrix& img_b() const { return b_; }
  const CycMatrix& image(Gen g, bool inverse = false) const;

 private:
  std::string name_;
  CycMatrix a_, b_, a_inv_, b_inv_;
};

CycMatrix evaluate(const Rep& rho, const Word& w);

struct CharWitness {
  CycMatrix m1, m2, m_minus;
};

struct CharCheck {
  bool ok = true;
  std::string failed;  // first failing equation
  explicit operator bool() const { return ok; }
};

// The six equations: M1 = A M1 B, M1 A = B M1; M2 A = A M2, M2 B = AB M2;
// Mm = A Mm conj(A), Mm conj(B) = B Mm; plus invertibility of each M.
CharCheck check_characteristic(const Rep& rho, const CharWitness& w);

// Names: rho2, rho_odd:<k>, rho4, rho6, trho_odd:<k>, trho4, trho6, ttrho4.
Rep builtin(const std::string& name);
std::vector<std::string> builtin_names(const std::vector<int>& odd_k = {3, 5, 7});
// Smallest k with a^k in the kernel for each builtin family (2, k, 4, 6); nullopt if unknown.
std::optional<int> builtin_exponent(const std::string& name);
// Printed witness where one exists; rho6 uses the tensor rule, trho_odd a solved witness.
CharWitness builtin_witness(const std::string& name);
// True where builtin_witness is transcribed rather than derived.
bool witness_is_transcribed(const std::string& name);

Rep tensor(const Rep& x, const Rep& y);
Rep conj_rep(const Rep& x);
CharWitness tensor_witness(const CharWitness& x, const CharWitness& y);
CharWitness conj_witness(const CharWitness& x);

// Solves the three K-linear systems for M1, M2, Mm and searches the solution spaces for
// invertible points.
std::optional<CharWitness> solve_witness(const Rep& rho);

struct ImageClosure {
  bool overflow = false;
  std::vector<CycMatrix> elements;  // breadth-first from the identity
  std::vector<Word> words;          // a word for each element
  std::size_t order() const { return elements.size(); }
};

ImageClosure image_closure(const Rep& rho, std::size_t bound = 1000000);

// Z-rank of the additive group spanned by the image; nullopt on overflow.
std::optional<std::size_t> additive_span_rank(const Rep& rho, std::size_t bound = 1000000);

// Flattened coefficient vector of an integral matrix (entries in power basis order).
std::vector<mpz_class> flatten_integral(const CycMatrix& m);

// With a verified witness, rho(a^k) = I already puts P_k in the kernel. Also checks
// the normal generators of P_min(k,5) raised to k and random primitive k-th powers.
// Throws std::invalid_argument if the witness fails.
bool kernel_contains_Pk(const Rep& rho, const CharWitness& witness, int k, std::uint64_t seed = 0);

enum class TwistResult { holds, fails, precondition_failed };

// With psi = outer_rep(s), checks rho(psi psi2^k psi^-1 (h)) = rho(h) on random h.
TwistResult multitwist_check(const Rep& rho, const Slope& s, int k, int samples, std::uint64_t seed = 0);

// Probe words for comparing kernels: random words, their powers landing in ker base,
// conjugated primitive k-th powers, and products of these.
std::vector<Word> kernel_probe_words(const Rep& base, int k, std::size_t count, std::uint64_t seed = 0);

struct KernelComparison {
  std::size_t agree = 0, in_both = 0, total = 0;
  bool identical() const { return agree == total; }
};

// On each word: x(w) = I exactly when y(w) = I.
KernelComparison compare_kernels(const Rep& x, const Rep& y, const std::vector<Word>& words);

// Dense random matrices over Z[zeta_conductor] with small entries.
CycMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int conductor, int range = 2);

}  // namespace pk
