#include "pk/cyclotomic.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace pk {

namespace {

// x^e mod Phi_n for 0 <= e < n.
struct FieldTable {
  int n;
  int phi;
  std::vector<std::vector<mpq_class>> power;
};

std::vector<mpz_class> poly_divide_exact(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
  // den is monic
  const std::size_t dn = den.size() - 1;
  std::vector<mpz_class> q(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    const mpz_class c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic_poly: inexact division");
  return q;
}

const FieldTable& field(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FieldTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  const auto phi_poly = cyclotomic_poly(n);
  const int phi = static_cast<int>(phi_poly.size()) - 1;
  auto t = std::make_unique<FieldTable>();
  t->n = n;
  t->phi = phi;
  std::vector<mpq_class> cur(phi);
  if (phi > 0) cur[0] = 1;
  for (int e = 0; e < n; ++e) {
    t->power.push_back(cur);
    // multiply by x and reduce: x^phi = -sum phi_poly[j] x^j
    mpq_class top = cur[phi - 1];
    for (int j = phi - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    for (int j = 0; j < phi; ++j) cur[j] -= top * phi_poly[j];
  }
  const FieldTable& ref = *t;
  cache.emplace(n, std::move(t));
  return ref;
}

void add_power(std::vector<mpq_class>& acc, const FieldTable& f, long e, const mpq_class& c) {
  if (c == 0) return;
  const auto& row = f.power[static_cast<std::size_t>(((e % f.n) + f.n) % f.n)];
  for (int j = 0; j < f.phi; ++j)
    if (row[j] != 0) acc[j] += c * row[j];
}

int lcm_int(int a, int b) { return std::lcm(a, b); }

}  // namespace

int euler_phi(int n) {
  int r = n;
  for (int p = 2, m = n; m > 1; ++p) {
    if (p * p > m) p = m;
    if (m % p == 0) {
      r -= r / p;
      while (m % p == 0) m /= p;
    }
  }
  return r;
}

std::vector<mpz_class> cyclotomic_poly(int n) {
  if (n < 1) throw std::invalid_argument("conductor must be positive");
  std::vector<mpz_class> num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) num = poly_divide_exact(num, cyclotomic_poly(d));
  return num;
}

CycNum::CycNum(const mpq_class& v, int n) : n_(n), c_(field(n).phi) {
  c_[0] = v;
  c_[0].canonicalize();
}

CycNum CycNum::zeta(int n, long e) {
  CycNum z(0, n);
  add_power(z.c_, field(n), e, 1);
  return z;
}

CycNum CycNum::from_coeffs(int n, std::vector<mpq_class> coeffs) {
  const FieldTable& f = field(n);
  CycNum z(0, n);
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    coeffs[e].canonicalize();
    add_power(z.c_, f, static_cast<long>(e), coeffs[e]);
  }
  return z;
}

bool CycNum::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::vector<mpz_class> CycNum::integer_coeffs() const {
  std::vector<mpz_class> out;
  for (const auto& c : c_) {
    if (c.get_den() != 1) throw std::domain_error("non-integral coefficient " + c.get_str());
    out.push_back(c.get_num());
  }
  return out;
}

CycNum CycNum::embed(int m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) throw std::invalid_argument("conductor " + std::to_string(n_) + " does not divide " + std::to_string(m));
  const FieldTable& f = field(m);
  const long step = m / n_;
  CycNum z(0, m);
  for (std::size_t i = 0; i < c_.size(); ++i) add_power(z.c_, f, static_cast<long>(i) * step, c_[i]);
  return z;
}

CycNum CycNum::conj() const {
  const FieldTable& f = field(n_);
  CycNum z(0, n_);
  for (std::size_t i = 0; i < c_.size(); ++i) add_power(z.c_, f, -static_cast<long>(i), c_[i]);
  return z;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(zeta_" + std::to_string(n_) + ")");
  if (is_rational()) return CycNum(1 / c_[0], n_);
  // Solve (this * y = 1) as a phi x phi rational system; column j is this * z^j.
  const FieldTable& f = field(n_);
  const int phi = f.phi;
  std::vector<std::vector<mpq_class>> a(phi, std::vector<mpq_class>(phi + 1));
  for (int j = 0; j < phi; ++j) {
    std::vector<mpq_class> col(phi);
    for (int i = 0; i < phi; ++i) add_power(col, f, i + j, c_[i]);
    for (int i = 0; i < phi; ++i) a[i][j] = col[i];
  }
  a[0][phi] = 1;
  for (int c = 0; c < phi; ++c) {
    int p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    const mpq_class inv = 1 / a[c][c];
    for (int j = c; j <= phi; ++j) a[c][j] *= inv;
    for (int r = 0; r < phi; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const mpq_class m = a[r][c];
      for (int j = c; j <= phi; ++j) a[r][j] -= m * a[c][j];
    }
  }
  CycNum y(0, n_);
  for (int i = 0; i < phi; ++i) y.c_[i] = a[i][phi];
  return y;
}

CycNum CycNum::operator-() const {
  CycNum z = *this;
  for (auto& c : z.c_) c = -c;
  return z;
}

CycNum& CycNum::operator+=(const CycNum& y) {
  if (y.n_ != n_) {
    const int m = lcm_int(n_, y.n_);
    *this = embed(m);
    return *this += y.embed(m);
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += y.c_[i];
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& y) { return *this += -y; }

CycNum& CycNum::operator*=(const CycNum& y) {
  if (y.n_ != n_) {
    const int m = lcm_int(n_, y.n_);
    *this = embed(m);
    return *this *= y.embed(m);
  }
  if (y.is_rational()) {
    for (auto& c : c_) c *= y.c_[0];
    return *this;
  }
  if (is_rational()) {
    const mpq_class s = c_[0];
    *this = y;
    for (auto& c : c_) c *= s;
    return *this;
  }
  const FieldTable& f = field(n_);
  std::vector<mpq_class> acc(f.phi);
  for (int i = 0; i < f.phi; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < f.phi; ++j)
      if (y.c_[j] != 0) add_power(acc, f, i + j, c_[i] * y.c_[j]);
  }
  c_ = std::move(acc);
  return *this;
}

bool operator==(const CycNum& x, const CycNum& y) {
  if (x.n_ == y.n_) return x.c_ == y.c_;
  const int m = lcm_int(x.n_, y.n_);
  return x.embed(m).c_ == y.embed(m).c_;
}

std::size_t CycNum::hash() const {
  std::size_t h = std::hash<int>()(n_);
  for (const auto& c : c_) {
    const std::size_t hc = mpz_get_ui(c.get_num_mpz_t()) * 1000003u ^ mpz_get_ui(c.get_den_mpz_t()) ^
                           static_cast<std::size_t>(sgn(c) + 1);
    h ^= hc + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string CycNum::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    mpq_class c = c_[i];
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    }
    if (i == 0) {
      os << c.get_str();
    } else {
      if (c == -1) os << "-";
      else if (c != 1) os << c.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) return "0";
  return os.str();
}

CycMatrix::CycMatrix(std::size_t rows, std::size_t cols, int conductor)
    : r_(rows), c_(cols), n_(conductor), e_(rows * cols, CycNum(0, conductor)) {}

CycMatrix CycMatrix::identity(std::size_t n, int conductor) {
  CycMatrix m(n, n, conductor);
  for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = CycNum(1, conductor);
  return m;
}

CycMatrix CycMatrix::diag(const std::vector<CycNum>& d) {
  CycMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

CycMatrix CycMatrix::from_rows(const std::vector<std::vector<CycNum>>& rows) {
  CycMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.c_) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < m.c_; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

CycMatrix CycMatrix::column(const std::vector<CycNum>& v) {
  CycMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

void CycMatrix::set(std::size_t i, std::size_t j, const CycNum& v) {
  const int m = lcm_int(n_, v.conductor());
  if (m != n_) *this = embed(m);
  e_[i * c_ + j] = v.embed(m);
}

CycMatrix CycMatrix::embed(int m) const {
  if (m == n_) return *this;
  CycMatrix out(r_, c_, m);
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k].embed(m);
  return out;
}

CycMatrix CycMatrix::conj() const {
  CycMatrix out = *this;
  for (auto& x : out.e_) x = x.conj();
  return out;
}

CycMatrix CycMatrix::transpose() const {
  CycMatrix out(c_, r_, n_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out.e_[j * r_ + i] = e_[i * c_ + j];
  return out;
}

CycMatrix CycMatrix::block(std::size_t i0, std::size_t j0, std::size_t rows, std::size_t cols) const {
  if (i0 + rows > r_ || j0 + cols > c_) throw std::out_of_range("block outside matrix");
  CycMatrix out(rows, cols, n_);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.e_[i * cols + j] = e_[(i0 + i) * c_ + j0 + j];
  return out;
}

std::vector<CycNum> CycMatrix::col(std::size_t j) const {
  std::vector<CycNum> v;
  for (std::size_t i = 0; i < r_; ++i) v.push_back(e_[i * c_ + j]);
  return v;
}

bool CycMatrix::is_identity() const {
  if (r_ != c_) return false;
  const CycNum one(1, n_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) {
      const CycNum& x = e_[i * c_ + j];
      if (i == j ? !(x == one) : !x.is_zero()) return false;
    }
  return true;
}

bool CycMatrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

CycMatrix operator*(const CycMatrix& x, const CycMatrix& y) {
  if (x.c_ != y.r_) throw std::invalid_argument("matrix product: dimension mismatch");
  if (x.n_ != y.n_) {
    const int m = std::lcm(x.n_, y.n_);
    return x.embed(m) * y.embed(m);
  }
  CycMatrix out(x.r_, y.c_, x.n_);
  for (std::size_t i = 0; i < x.r_; ++i)
    for (std::size_t k = 0; k < x.c_; ++k) {
      const CycNum& a = x.e_[i * x.c_ + k];
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < y.c_; ++j) {
        const CycNum& b = y.e_[k * y.c_ + j];
        if (!b.is_zero()) out.e_[i * y.c_ + j] += a * b;
      }
    }
  return out;
}

CycMatrix operator+(const CycMatrix& x, const CycMatrix& y) {
  if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix sum: dimension mismatch");
  if (x.n_ != y.n_) {
    const int m = std::lcm(x.n_, y.n_);
    return x.embed(m) + y.embed(m);
  }
  CycMatrix out = x;
  for (std::size_t k = 0; k < out.e_.size(); ++k) out.e_[k] += y.e_[k];
  return out;
}

CycMatrix operator-(const CycMatrix& x, const CycMatrix& y) { return x + CycNum(-1) * y; }

CycMatrix operator*(const CycNum& s, const CycMatrix& x) {
  const int m = std::lcm(s.conductor(), x.n_);
  CycMatrix out = x.embed(m);
  const CycNum t = s.embed(m);
  for (auto& v : out.e_) v *= t;
  return out;
}

bool operator==(const CycMatrix& x, const CycMatrix& y) {
  if (x.r_ != y.r_ || x.c_ != y.c_) return false;
  for (std::size_t k = 0; k < x.e_.size(); ++k)
    if (!(x.e_[k] == y.e_[k])) return false;
  return true;
}

std::size_t CycMatrix::hash() const {
  std::size_t h = r_ * 31 + c_;
  for (const auto& x : e_) h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string CycMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < r_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << e_[i * c_ + j].str();
    os << "]";
  }
  os << "]";
  return os.str();
}

CycMatrix CycMatrix::inverse() const {
  if (r_ != c_) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = r_;
  CycMatrix a = *this;
  CycMatrix inv = identity(n, n_);
  CycNum det(1, n_);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw SingularMatrix(CycNum(0, n_));
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a.e_[p * n + j], a.e_[c * n + j]);
        std::swap(inv.e_[p * n + j], inv.e_[c * n + j]);
      }
      det = -det;
    }
    det *= a(c, c);
    const CycNum s = a(c, c).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a.e_[c * n + j] *= s;
      inv.e_[c * n + j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      const CycNum m = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a.e_[c * n + j].is_zero()) a.e_[r * n + j] -= m * a.e_[c * n + j];
        if (!inv.e_[c * n + j].is_zero()) inv.e_[r * n + j] -= m * inv.e_[c * n + j];
      }
    }
  }
  return inv;
}

CycNum CycMatrix::det() const {
  if (r_ != c_) throw std::invalid_argument("determinant of a non-square matrix");
  {
    CycMatrix a = *this;
    const std::size_t n = r_;
    CycNum d(1, n_);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && a(p, c).is_zero()) ++p;
      if (p == n) return CycNum(0, n_);
      if (p != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a.e_[p * n + j], a.e_[c * n + j]);
        d = -d;
      }
      d *= a(c, c);
      const CycNum s = a(c, c).inverse();
      for (std::size_t r = c + 1; r < n; ++r) {
        if (a(r, c).is_zero()) continue;
        const CycNum m = a(r, c) * s;
        for (std::size_t j = c; j < n; ++j) a.e_[r * n + j] -= m * a.e_[c * n + j];
      }
    }
    return d;
  }
}

CycMatrix CycMatrix::pow(long e) const {
  CycMatrix base = e < 0 ? inverse() : *this;
  CycMatrix out = identity(r_, n_);
  for (unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e); k; k >>= 1) {
    if (k & 1) out = out * base;
    if (k > 1) base = base * base;
  }
  return out;
}

CycMatrix kron(const CycMatrix& x, const CycMatrix& y) {
  const int m = std::lcm(x.conductor(), y.conductor());
  CycMatrix out(x.rows() * y.rows(), x.cols() * y.cols(), m);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < y.rows(); ++k)
        for (std::size_t l = 0; l < y.cols(); ++l)
          out.set(i * y.rows() + k, j * y.cols() + l, x(i, j) * y(k, l));
    }
  return out;
}

CycMatrix block_matrix(const CycMatrix& tl, const CycMatrix& tr, const CycMatrix& bl, const CycMatrix& br) {
  if (tl.rows() != tr.rows() || bl.rows() != br.rows() || tl.cols() != bl.cols() || tr.cols() != br.cols())
    throw std::invalid_argument("block_matrix: incompatible blocks");
  CycMatrix out(tl.rows() + bl.rows(), tl.cols() + tr.cols());
  auto put = [&out](const CycMatrix& b, std::size_t i0, std::size_t j0) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(i, j).is_zero()) out.set(i0 + i, j0 + j, b(i, j));
  };
  put(tl, 0, 0);
  put(tr, 0, tl.cols());
  put(bl, tl.rows(), 0);
  put(br, tl.rows(), tl.cols());
  return out;
}

std::vector<std::size_t> rref(CycMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const std::size_t R = m.rows(), C = m.cols();
  // Work on a row-vector copy to keep the inner loop cheap.
  std::vector<std::vector<CycNum>> a(R);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) a[i].push_back(m(i, j));
  for (std::size_t c = 0; c < C && row < R; ++c) {
    std::size_t p = row;
    while (p < R && a[p][c].is_zero()) ++p;
    if (p == R) continue;
    std::swap(a[p], a[row]);
    const CycNum s = a[row][c].inverse();
    for (std::size_t j = c; j < C; ++j)
      if (!a[row][j].is_zero()) a[row][j] *= s;
    for (std::size_t r = 0; r < R; ++r) {
      if (r == row || a[r][c].is_zero()) continue;
      const CycNum f = a[r][c];
      for (std::size_t j = c; j < C; ++j)
        if (!a[row][j].is_zero()) a[r][j] -= f * a[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  CycMatrix out(R, C, m.conductor());
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j)
      if (!a[i][j].is_zero()) out.set(i, j, a[i][j]);
  m = std::move(out);
  return pivots;
}

std::size_t rank(CycMatrix m) { return rref(m).size(); }

std::vector<std::vector<CycNum>> nullspace(CycMatrix m) {
  const auto pivots = rref(m);
  const std::size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<CycNum>> basis;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    std::vector<CycNum> v(C, CycNum(0, m.conductor()));
    v[f] = CycNum(1, m.conductor());
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<CycNum>> solve(const CycMatrix& m, const std::vector<CycNum>& b) {
  CycMatrix aug(m.rows(), m.cols() + 1, m.conductor());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) aug.set(i, j, m(i, j));
    if (!b[i].is_zero()) aug.set(i, m.cols(), b[i]);
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<CycNum> x(m.cols(), CycNum(0, aug.conductor()));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

}  // namespace pk
