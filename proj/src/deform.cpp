#include "pk/deform.hpp"

#include <stdexcept>

#include "pk/farey.hpp"

namespace pk {

AffableRep AffableRep::zero(std::size_t n) { return {CycVec(n, CycNum(0)), CycVec(n, CycNum(0))}; }

AffableRep AffableRep::from_coords(const CycVec& x) {
  if (x.size() % 2 != 0) throw std::invalid_argument("affable coordinates must have even length");
  const std::size_t n = x.size() / 2;
  return {CycVec(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)),
          CycVec(x.begin() + static_cast<std::ptrdiff_t>(n), x.end())};
}

CycVec AffableRep::coords() const {
  CycVec x = va;
  x.insert(x.end(), vb.begin(), vb.end());
  return x;
}

AffableRep operator+(const AffableRep& x, const AffableRep& y) {
  AffableRep r = x;
  for (std::size_t i = 0; i < r.va.size(); ++i) {
    r.va[i] += y.va[i];
    r.vb[i] += y.vb[i];
  }
  return r;
}

AffableRep operator-(const AffableRep& x, const AffableRep& y) { return x + CycNum(-1) * y; }

AffableRep operator*(const CycNum& s, const AffableRep& x) {
  AffableRep r = x;
  for (std::size_t i = 0; i < r.va.size(); ++i) {
    r.va[i] *= s;
    r.vb[i] *= s;
  }
  return r;
}

bool operator==(const AffableRep& x, const AffableRep& y) { return x.va == y.va && x.vb == y.vb; }

namespace {

CycVec mat_vec(const CycMatrix& m, const CycVec& v) {
  CycVec out(m.rows(), CycNum(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!v[j].is_zero()) out[i] += m(i, j) * v[j];
  return out;
}

CycVec conj_vec(CycVec v) {
  for (auto& x : v) x = x.conj();
  return v;
}

bool all_zero(const CycVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// m(:, j0 .. j0+n) += sign * p
void add_block(CycMatrix& m, std::size_t j0, const CycMatrix& p, int sign) {
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (!p(i, j).is_zero()) m.set(i, j0 + j, sign > 0 ? m(i, j0 + j) + p(i, j) : m(i, j0 + j) - p(i, j));
}

// Rows of m as vectors.
std::vector<CycVec> rows_of(const CycMatrix& m) {
  std::vector<CycVec> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    CycVec r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m(i, j);
    out.push_back(std::move(r));
  }
  return out;
}

CycMatrix stack_rows(const std::vector<CycVec>& rows, std::size_t cols) {
  if (rows.empty()) return CycMatrix(0, cols);
  return CycMatrix::from_rows(rows);
}

// Drops zero rows after reduction.
std::vector<CycVec> echelon_rows(const std::vector<CycVec>& rows, std::size_t cols) {
  CycMatrix m = stack_rows(rows, cols);
  const std::size_t r = rref(m).size();
  std::vector<CycVec> out = rows_of(m);
  out.resize(r);
  return out;
}

}  // namespace

AffineElem eval_affable(const Rep& rho, const AffableRep& hat, const Word& w) {
  const std::size_t n = rho.dim();
  AffineElem acc{CycVec(n, CycNum(0)), CycMatrix::identity(n)};
  for (const int l : w.letters()) {
    const Gen g = (l == 1 || l == -1) ? Gen::a : Gen::b;
    const bool inv = l < 0;
    const CycVec& v = g == Gen::a ? hat.va : hat.vb;
    const CycMatrix& x = rho.image(g, inv);
    // (v, X)^-1 = (-X^-1 v, X^-1)
    CycVec t = inv ? mat_vec(x, v) : v;
    if (inv)
      for (auto& c : t) c = -c;
    const CycVec shift = mat_vec(acc.m, t);
    for (std::size_t i = 0; i < n; ++i) acc.v[i] += shift[i];
    acc.m = acc.m * x;
  }
  return acc;
}

CycMatrix translation_map(const Rep& rho, const Word& w) {
  const std::size_t n = rho.dim();
  CycMatrix l(n, 2 * n, rho.conductor());
  CycMatrix p = CycMatrix::identity(n, rho.conductor());
  for (const int letter : w.letters()) {
    const Gen g = (letter == 1 || letter == -1) ? Gen::a : Gen::b;
    const std::size_t j0 = g == Gen::a ? 0 : n;
    if (letter > 0) {
      add_block(l, j0, p, +1);
      p = p * rho.image(g);
    } else {
      p = p * rho.image(g, true);
      add_block(l, j0, p, -1);
    }
  }
  return l;
}

std::vector<AffableRep> translation_basis(const Rep& rho) {
  const std::size_t n = rho.dim();
  const CycMatrix ia = CycMatrix::identity(n) - rho.img_a();
  const CycMatrix ib = CycMatrix::identity(n) - rho.img_b();
  std::vector<AffableRep> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({ia.col(i), ib.col(i)});
  return out;
}

StandardForm::StandardForm(const Rep& rho) : n_(rho.dim()) {
  std::vector<CycVec> rows;
  for (const auto& t : translation_basis(rho)) rows.push_back(t.coords());
  rows_ = stack_rows(rows, 2 * n_);
  pivots_ = rref(rows_);
  rows_ = rows_.block(0, 0, pivots_.size(), 2 * n_);
  std::size_t p = 0;
  for (std::size_t j = 0; j < 2 * n_; ++j) {
    if (p < pivots_.size() && pivots_[p] == j)
      ++p;
    else
      free_.push_back(j);
  }
}

CycVec StandardForm::reduce(const CycVec& x) const {
  CycVec y = x;
  // rows are reduced, so each pivot is cleared independently
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const CycNum c = y[pivots_[r]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < 2 * n_; ++j)
      if (!rows_(r, j).is_zero()) y[j] -= c * rows_(r, j);
  }
  return y;
}

AffableRep StandardForm::reduce(const AffableRep& hat) const { return AffableRep::from_coords(reduce(hat.coords())); }

bool StandardForm::in_T(const AffableRep& hat) const { return all_zero(reduce(hat.coords())); }

AffableRep standard_form(const Rep& rho, const AffableRep& hat) { return StandardForm(rho).reduce(hat); }

bool in_delta(const Rep& rho, const CycMatrix& m, const Automorphism& psi, int sign) {
  for (const Gen g : {Gen::a, Gen::b}) {
    CycMatrix x = evaluate(rho, psi.apply_inverse(Word::gen(g)));
    if (sign < 0) x = x.conj();
    // M X M^-1 = rho(g) without inverting M
    if (!(m * x == rho.image(g) * m)) return false;
  }
  return true;
}

CycMatrix n_action_matrix(const Rep& rho, const CycMatrix& m, const Automorphism& psi, int sign) {
  if (!in_delta(rho, m, psi, sign)) throw std::invalid_argument("n_action: (M, psi) is not in the stabiliser");
  const std::size_t n = rho.dim();
  CycMatrix la = translation_map(rho, psi.apply_inverse(Word::a()));
  CycMatrix lb = translation_map(rho, psi.apply_inverse(Word::b()));
  if (sign < 0) {
    la = la.conj();
    lb = lb.conj();
  }
  const CycMatrix top = m * la, bottom = m * lb;
  CycMatrix out(2 * n, 2 * n, top.conductor());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      out.set(i, j, top(i, j));
      out.set(n + i, j, bottom(i, j));
    }
  return out;
}

AffableRep n_action(const Rep& rho, const CycMatrix& m, const Automorphism& psi, int sign, const AffableRep& hat) {
  const CycMatrix nm = n_action_matrix(rho, m, psi, sign);
  const CycVec x = sign < 0 ? conj_vec(hat.coords()) : hat.coords();
  return AffableRep::from_coords(mat_vec(nm, x));
}

bool inner_triviality_check(const Rep& rho, const Word& h, const AffableRep& hat) {
  const AffableRep moved = n_action(rho, evaluate(rho, h), Automorphism::inner(h), +1, hat);
  return StandardForm(rho).in_T(moved - hat);
}

AffableSubspace affable_Pk_subspace(const Rep& rho, int k, std::size_t slope_budget, int stable_rounds) {
  if (k < 1) throw std::invalid_argument("affable_Pk_subspace: k must be positive");
  if (slope_budget == 0) throw std::invalid_argument("affable_Pk_subspace: empty slope budget");
  const std::size_t n = rho.dim();
  std::vector<CycVec> constraints;  // kept in reduced echelon form
  std::size_t used = 0, last_dim = 2 * n + 1;
  int stable = 0;
  AffableSubspace out;
  for (std::size_t budget = slope_budget;; budget += slope_budget) {
    const std::vector<Slope> slopes = farey_order(budget);
    for (std::size_t s = used; s < slopes.size(); ++s) {
      const CycMatrix l = translation_map(rho, primitive_word(slopes[s]).pow(k));
      for (auto& r : rows_of(l)) constraints.push_back(std::move(r));
      ++out.constraint_words;
    }
    used = slopes.size();
    constraints = echelon_rows(constraints, 2 * n);
    const std::size_t dim = 2 * n - constraints.size();
    stable = dim == last_dim ? stable + 1 : 0;
    last_dim = dim;
    out.certified_budget = budget;
    if (stable >= stable_rounds || dim == 0) break;
  }
  for (const auto& v : nullspace(stack_rows(constraints, 2 * n))) out.basis.push_back(AffableRep::from_coords(v));
  return out;
}

namespace {

// Linear map on S in free coordinates: project(N * embed(x)).
CycMatrix restrict_to_S(const StandardForm& sf, const CycMatrix& nm) {
  const auto& fr = sf.free_coords();
  const std::size_t s = fr.size(), dim2 = nm.rows();
  CycMatrix out(s, s, nm.conductor());
  for (std::size_t j = 0; j < s; ++j) {
    CycVec col(dim2);
    for (std::size_t i = 0; i < dim2; ++i) col[i] = nm(i, fr[j]);
    const CycVec red = sf.reduce(col);
    for (std::size_t i = 0; i < s; ++i) out.set(i, j, red[fr[i]]);
  }
  return out;
}

CycVec to_free(const StandardForm& sf, const CycVec& x) {
  const CycVec red = sf.reduce(x);
  CycVec out;
  for (const std::size_t j : sf.free_coords()) out.push_back(red[j]);
  return out;
}

CycVec from_free(const StandardForm& sf, const CycVec& y, std::size_t dim2) {
  CycVec x(dim2, CycNum(0));
  for (std::size_t i = 0; i < y.size(); ++i) x[sf.free_coords()[i]] = y[i];
  return x;
}

bool is_eigen(const CycMatrix& f, const CycVec& v, long lambda) {
  const CycVec fv = mat_vec(f, v);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(fv[i] == CycNum(lambda) * v[i])) return false;
  return true;
}

CycVec unit_R(std::size_t n, bool b_part, std::size_t i) {
  CycVec x(2 * n, CycNum(0));
  x[(b_part ? n : 0) + i] = 1;
  return x;
}

CycMatrix shifted(const CycMatrix& f, long lambda) {
  return f - CycNum(lambda) * CycMatrix::identity(f.rows(), f.conductor());
}

}  // namespace

EigenSplitReport eigen_split(int k) {
  if (k < 5 || k % 2 == 0) throw std::invalid_argument("eigen_split: k must be odd and at least 5");
  const std::string name = "rho_odd:" + std::to_string(k);
  const Rep rho = builtin(name);
  const CharWitness w = builtin_witness(name);
  const StandardForm sf(rho);
  const std::size_t n = rho.dim();
  const CycMatrix f = restrict_to_S(sf, n_action_matrix(rho, w.m1, psi1(), +1));
  EigenSplitReport rep;
  rep.k = k;
  rep.n1_squared = f * f;
  const long kk = k;
  const auto vec_b = [&](std::size_t i) { return unit_R(n, true, i - 1); };  // R(0, e_i), 1-based
  const auto sum = [](CycVec x, const CycVec& y, long s) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += CycNum(s) * y[i];
    return x;
  };
  const std::size_t half = static_cast<std::size_t>((k - 3) / 2);
  rep.item_a = rep.item_b = true;
  for (std::size_t j = 1; j <= half; ++j) {
    const CycVec bj = sum(vec_b(j + 1), vec_b(k - j), -1);
    rep.item_a = rep.item_a && is_eigen(rep.n1_squared, to_free(sf, bj), kk);
    const CycVec cj = sum(vec_b(j + 1), vec_b(k - j), +1);
    rep.item_b = rep.item_b && is_eigen(rep.n1_squared, to_free(sf, cj), -kk);
  }
  rep.item_c = is_eigen(rep.n1_squared, to_free(sf, vec_b((k + 1) / 2)), -kk);
  rep.item_d = is_eigen(rep.n1_squared, to_free(sf, unit_R(n, false, 0)), -kk) &&
               is_eigen(rep.n1_squared, to_free(sf, vec_b(k)), -kk);
  const auto plus = nullspace(shifted(rep.n1_squared, kk));
  rep.plus_k_dim = plus.size();
  rep.minus_k_dim = nullspace(shifted(rep.n1_squared, -kk)).size();
  for (const auto& y : plus) rep.plus_k_basis.push_back(AffableRep::from_coords(from_free(sf, y, 2 * n)));
  return rep;
}

Rep build_extension(const Rep& rho, const std::vector<AffableRep>& basis, const std::string& name) {
  const std::size_t n = rho.dim(), m = basis.size();
  if (m == 0) return Rep(name, rho.img_a(), rho.img_b());
  CycMatrix qa(n, m), qb(n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      qa.set(i, j, basis[j].va[i]);
      qb.set(i, j, basis[j].vb[i]);
    }
  const CycMatrix zero(m, n), id = CycMatrix::identity(m);
  return Rep(name, block_matrix(rho.img_a(), qa, zero, id), block_matrix(rho.img_b(), qb, zero, id));
}

ImproveResult improve(const Rep& rho, const CharWitness& witness, int k, std::size_t slope_budget) {
  if (const CharCheck c = check_characteristic(rho, witness); !c)
    throw std::invalid_argument("improve: witness fails at " + c.failed);
  ImproveResult res;
  const std::size_t n = rho.dim();
  const AffableSubspace aff = affable_Pk_subspace(rho, k, slope_budget);
  res.affable_dim = aff.basis.size();
  res.certified_budget = aff.certified_budget;

  const StandardForm sf(rho);
  const std::size_t s = sf.free_coords().size();
  // J: the affable classes, as a subspace of S in free coordinates
  std::vector<CycVec> jrows;
  for (const auto& b : aff.basis) jrows.push_back(to_free(sf, b.coords()));
  jrows = echelon_rows(jrows, s);
  res.quotient_dim = jrows.size();

  // Largest subspace of J carried into J by each N(M, psi) with (M, psi) from the witness.
  const CycMatrix f1 = restrict_to_S(sf, n_action_matrix(rho, witness.m1, psi1(), +1));
  const CycMatrix f2 = restrict_to_S(sf, n_action_matrix(rho, witness.m2, psi2(), +1));
  const CycMatrix fm = restrict_to_S(sf, n_action_matrix(rho, witness.m_minus, psi_minus(), -1));
  std::size_t rounds = 0;
  for (;; ++rounds) {
    if (jrows.empty()) break;
    // z with z^t J = 0 cut J out of S
    const CycMatrix jm = stack_rows(jrows, s);
    std::vector<CycVec> eq;
    for (const auto& z : nullspace(jm)) eq.push_back(z);
    if (eq.empty()) break;  // J = S is invariant
    const CycMatrix zm = stack_rows(eq, s);
    std::vector<CycVec> all = eq;
    for (const CycMatrix& g : {zm * f1, zm * f2, (zm * fm).conj()})
      for (auto& r : rows_of(g)) all.push_back(std::move(r));
    std::vector<CycVec> next = nullspace(stack_rows(all, s));
    next = echelon_rows(next, s);
    if (next.size() == jrows.size()) break;
    jrows = std::move(next);
  }
  res.filter = rounds == 0 ? "affable quotient is invariant" : "largest invariant subspace of the affable quotient";
  res.chosen_dim = jrows.size();
  for (const auto& y : jrows) res.chosen.push_back(AffableRep::from_coords(from_free(sf, y, 2 * n)));
  if (!res.chosen.empty()) res.extension = build_extension(rho, res.chosen, "improve:" + rho.name());
  return res;
}

}  // namespace pk
