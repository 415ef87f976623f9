#include "pk/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace pk {

mpz_class SnfResult::product() const {
  mpz_class p = 1;
  for (const auto& d : divisors) p *= d;
  return p;
}

namespace {

std::size_t leading(const IntVec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return i;
  return v.size();
}

// Replace (x, y) by (s x + t y, (x0/g) y - (y0/g) x) where g = s x0 + t y0 = gcd(x0, y0).
void gcd_combine(IntVec& x, IntVec& y, std::size_t c) {
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x[c].get_mpz_t(), y[c].get_mpz_t());
  const mpz_class xc = x[c] / g, yc = y[c] / g;
  for (std::size_t j = c; j < x.size(); ++j) {
    const mpz_class nx = s * x[j] + t * y[j];
    const mpz_class ny = xc * y[j] - yc * x[j];
    x[j] = nx;
    y[j] = ny;
  }
}

// Returns false when v already lies in the span and the basis is unchanged.
bool insert_echelon(std::vector<IntVec>& basis, IntVec v) {
  // basis sorted by pivot column
  for (;;) {
    const std::size_t c = leading(v);
    if (c == v.size()) return false;
    auto it = std::find_if(basis.begin(), basis.end(), [c](const IntVec& b) { return leading(b) >= c; });
    if (it == basis.end() || leading(*it) > c) {
      basis.insert(it, std::move(v));
      return true;
    }
    if (v[c] % (*it)[c] == 0) {
      const mpz_class q = v[c] / (*it)[c];
      for (std::size_t j = c; j < v.size(); ++j) v[j] -= q * (*it)[j];
      continue;
    }
    gcd_combine(*it, v, c);
    // the pivot row changed; v continues below it
    if (leading(v) == v.size()) return true;
    insert_echelon(basis, std::move(v));
    return true;
  }
}

void reduce_hnf(std::vector<IntVec>& basis) {
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const std::size_t c = leading(basis[r]);
    if (basis[r][c] < 0)
      for (auto& x : basis[r]) x = -x;
  }
  for (std::size_t r = basis.size(); r-- > 0;) {
    const std::size_t c = leading(basis[r]);
    const mpz_class& p = basis[r][c];
    for (std::size_t u = 0; u < r; ++u) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), basis[u][c].get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = c; j < basis[u].size(); ++j) basis[u][j] -= q * basis[r][j];
    }
  }
}

}  // namespace

std::vector<IntVec> hnf(const std::vector<IntVec>& rows, std::size_t ambient) {
  std::vector<IntVec> basis;
  for (const auto& v : rows) {
    if (v.size() != ambient) throw std::invalid_argument("hnf: vector length differs from ambient rank");
    // reducing after every insertion keeps entries from growing
    if (insert_echelon(basis, v)) reduce_hnf(basis);
  }
  reduce_hnf(basis);
  return basis;
}

SnfResult snf(const std::vector<IntVec>& rows) {
  const std::size_t m = rows.empty() ? 0 : rows[0].size();
  std::vector<IntVec> a = hnf(rows, m);
  const std::size_t r = a.size();
  // Diagonalise the r x m echelon matrix by alternating row and column gcd steps.
  for (std::size_t t = 0; t < r; ++t) {
    for (;;) {
      // smallest nonzero entry in the trailing block becomes the pivot
      std::size_t pi = r, pj = m;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < m; ++j)
          if (a[i][j] != 0 && (pi == r || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < m; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < r; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold a non-multiple into row t and repeat
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < m; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t jj = t; jj < m; ++jj) a[t][jj] += a[i][jj];
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  SnfResult res;
  res.rank = r;
  for (std::size_t t = 0; t < r; ++t) res.divisors.push_back(abs(a[t][t]));
  return res;
}

IntLattice::IntLattice(std::size_t ambient, const std::vector<IntVec>& generators)
    : ambient_(ambient), basis_(hnf(generators, ambient)) {}

void IntLattice::add(const IntVec& v) {
  if (v.size() != ambient_) throw std::invalid_argument("lattice: vector length differs from ambient rank");
  insert_echelon(basis_, v);
  reduce_hnf(basis_);
}

void IntLattice::add_all(const std::vector<IntVec>& vs) {
  std::vector<IntVec> all = basis_;
  all.insert(all.end(), vs.begin(), vs.end());
  basis_ = hnf(all, ambient_);
}

bool IntLattice::contains(const IntVec& v) const {
  if (v.size() != ambient_) return false;
  IntVec w = v;
  for (const auto& b : basis_) {
    const std::size_t c = leading(b);
    if (leading(w) < c) return false;
    if (w[c] % b[c] != 0) return false;
    const mpz_class q = w[c] / b[c];
    for (std::size_t j = c; j < ambient_; ++j) w[j] -= q * b[j];
  }
  return leading(w) == ambient_;
}

bool IntLattice::contains(const IntLattice& sub) const {
  for (const auto& b : sub.basis_)
    if (!contains(b)) return false;
  return true;
}

std::optional<mpz_class> IntLattice::index() const {
  if (rank() != ambient_) return std::nullopt;
  mpz_class p = 1;
  for (const auto& b : basis_) p *= b[leading(b)];
  return p;
}

std::optional<mpz_class> lattice_index(const IntLattice& sub, const IntLattice& sup) {
  if (sub.rank() != sup.rank() || !sup.contains(sub)) return std::nullopt;
  // Express sub's basis in sup's echelon coordinates; the index is |det| of that square matrix.
  const std::size_t r = sup.rank();
  std::vector<std::size_t> piv;
  for (const auto& b : sup.basis()) piv.push_back(leading(b));
  std::vector<std::vector<mpq_class>> coords;
  for (const auto& v : sub.basis()) {
    IntVec w = v;
    std::vector<mpq_class> c(r);
    for (std::size_t i = 0; i < r; ++i) {
      const auto& b = sup.basis()[i];
      const mpz_class q = w[piv[i]] / b[piv[i]];
      c[i] = q;
      for (std::size_t j = piv[i]; j < w.size(); ++j) w[j] -= q * b[j];
    }
    coords.push_back(std::move(c));
  }
  mpq_class det = 1;
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t p = col;
    while (p < r && coords[p][col] == 0) ++p;
    if (p == r) return std::nullopt;
    if (p != col) {
      std::swap(coords[p], coords[col]);
      det = -det;
    }
    det *= coords[col][col];
    for (std::size_t i = col + 1; i < r; ++i) {
      const mpq_class f = coords[i][col] / coords[col][col];
      for (std::size_t j = col; j < r; ++j) coords[i][j] -= f * coords[col][j];
    }
  }
  return mpz_class(abs(det));
}

}  // namespace pk
