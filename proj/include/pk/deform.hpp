#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pk/cyclotomic.hpp"
#include "pk/reps.hpp"
#include "pk/words.hpp"

namespace pk {

using CycVec = std::vector<CycNum>;

// Affine deformation of a fixed base rep, given by its translation parts at a and b.
// Coordinates are (va, vb) concatenated: a_1..a_n, b_1..b_n.
struct AffableRep {
  CycVec va, vb;

  static AffableRep zero(std::size_t n);
  static AffableRep from_coords(const CycVec& x);
  CycVec coords() const;
  std::size_t dim() const { return va.size(); }

  friend AffableRep operator+(const AffableRep& x, const AffableRep& y);
  friend AffableRep operator-(const AffableRep& x, const AffableRep& y);
  friend AffableRep operator*(const CycNum& s, const AffableRep& x);
  friend bool operator==(const AffableRep& x, const AffableRep& y);
};

// (v, M) acting by x -> M x + v; product (v, M)(w, N) = (v + M w, M N).
struct AffineElem {
  CycVec v;
  CycMatrix m;
};

AffineElem eval_affable(const Rep& rho, const AffableRep& hat, const Word& w);

// n x 2n matrix L_w with translation part of hat(w) = L_w * hat.coords().
CycMatrix translation_map(const Rep& rho, const Word& w);

// conj_{e_i}(hat) - hat for i = 1..n: va = (I - rho(a)) e_i, vb = (I - rho(b)) e_i.
std::vector<AffableRep> translation_basis(const Rep& rho);

// Quotient by the translation subspace T. The complement is fixed by reduced row echelon
// form of the T rows in coordinate order a_1..a_n, b_1..b_n: pivot coordinates are zeroed.
class StandardForm {
 public:
  explicit StandardForm(const Rep& rho);

  AffableRep reduce(const AffableRep& hat) const;
  CycVec reduce(const CycVec& x) const;
  bool in_T(const AffableRep& hat) const;
  std::size_t t_dim() const { return pivots_.size(); }
  // Coordinates (indices into a_1..a_n, b_1..b_n) spanning the standard space S.
  const std::vector<std::size_t>& free_coords() const { return free_; }

 private:
  std::size_t n_;
  CycMatrix rows_;
  std::vector<std::size_t> pivots_, free_;
};

AffableRep standard_form(const Rep& rho, const AffableRep& hat);

// Is (M, psi) in the sign-twisted stabiliser: M rho(psi^-1 g) M^-1 = rho(g) on a and b, with
// rho replaced by conj(rho) inside when sign < 0.
bool in_delta(const Rep& rho, const CycMatrix& m, const Automorphism& psi, int sign);

// N_{M,psi}: translation parts M * pi_1 hat(psi^-1(g)) at g = a, b (conjugated when sign < 0).
// Throws std::invalid_argument outside the stabiliser.
AffableRep n_action(const Rep& rho, const CycMatrix& m, const Automorphism& psi, int sign, const AffableRep& hat);
// 2n x 2n matrix N with n_action(hat) = N * coords (sign > 0) or N * conj(coords) (sign < 0).
CycMatrix n_action_matrix(const Rep& rho, const CycMatrix& m, const Automorphism& psi, int sign);

bool inner_triviality_check(const Rep& rho, const Word& h, const AffableRep& hat);

struct AffableSubspace {
  std::vector<AffableRep> basis;  // spans the solution space, translations included
  std::size_t certified_budget = 0;
  std::size_t constraint_words = 0;
};

// Affable reps killing w^k for primitive w at the first slopes in Farey order. The budget
// grows by `slope_budget` until the dimension is unchanged for `stable_rounds` rounds.
AffableSubspace affable_Pk_subspace(const Rep& rho, int k, std::size_t slope_budget = 24, int stable_rounds = 2);

struct EigenSplitReport {
  int k = 0;
  CycMatrix n1_squared;                // on S, in free coordinates
  bool item_a = false, item_b = false, item_c = false, item_d = false;
  std::size_t plus_k_dim = 0;          // dimension of the +k eigenspace
  std::size_t minus_k_dim = 0;
  std::vector<AffableRep> plus_k_basis;
  bool ok() const { return item_a && item_b && item_c && item_d && plus_k_dim == static_cast<std::size_t>((k - 3) / 2); }
};

// N_1^2 = standard_form o n_action(M1, psi1) twice, for rho_odd:k with its DFT witness.
EigenSplitReport eigen_split(int k);

// Block rep [[rho(g), Q(g)], [0, I]] whose columns Q(g) are the translation parts pi_1 hat_j(g).
Rep build_extension(const Rep& rho, const std::vector<AffableRep>& basis, const std::string& name);

struct ImproveResult {
  std::size_t affable_dim = 0;   // dim of the affable solution space
  std::size_t quotient_dim = 0;  // after dividing by T
  std::size_t chosen_dim = 0;    // invariant subspace used for the extension
  std::string filter;            // how the subspace was chosen
  std::size_t certified_budget = 0;
  std::vector<AffableRep> chosen;
  std::optional<Rep> extension;  // empty when nothing survives
};

// affable_Pk_subspace, then the largest subspace of its T-quotient carried into itself by
// N(M1, psi1), N(M2, psi2) and N(Mm, psi_minus), then build_extension.
ImproveResult improve(const Rep& rho, const CharWitness& witness, int k, std::size_t slope_budget = 24);

}  // namespace pk
