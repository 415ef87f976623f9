#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pk {

// Element of Q(zeta_n) as a polynomial in zeta_n of degree < phi(n), reduced mod Phi_n.
// Equal field elements with the same conductor have identical coefficient vectors.
class CycNum {
 public:
  CycNum() : CycNum(0) {}
  CycNum(long v) : CycNum(mpq_class(v), 1) {}  // NOLINT: integers promote implicitly
  CycNum(const mpq_class& v, int n);

  static CycNum zeta(int n, long e = 1);
  static CycNum from_coeffs(int n, std::vector<mpq_class> coeffs);

  int conductor() const { return n_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  // Requires all coefficients to be integers.
  std::vector<mpz_class> integer_coeffs() const;

  // Same element in Q(zeta_m); n must divide m.
  CycNum embed(int m) const;
  CycNum conj() const;
  // Throws std::domain_error on zero.
  CycNum inverse() const;

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& y);
  CycNum& operator-=(const CycNum& y);
  CycNum& operator*=(const CycNum& y);
  CycNum& operator/=(const CycNum& y) { return *this *= y.inverse(); }
  friend CycNum operator+(CycNum x, const CycNum& y) { return x += y; }
  friend CycNum operator-(CycNum x, const CycNum& y) { return x -= y; }
  friend CycNum operator*(CycNum x, const CycNum& y) { return x *= y; }
  friend CycNum operator/(CycNum x, const CycNum& y) { return x /= y; }
  // Compares after lifting to the common conductor.
  friend bool operator==(const CycNum& x, const CycNum& y);

  // Consistent with == among numbers of one conductor.
  std::size_t hash() const;
  // Polynomial in z = zeta_n, e.g. "1/2 - 3*z^2".
  std::string str() const;

 private:
  int n_ = 1;
  std::vector<mpq_class> c_;
};

int euler_phi(int n);
// Coefficients of Phi_n, constant term first.
std::vector<mpz_class> cyclotomic_poly(int n);

// Dense row-major matrix whose entries share one conductor.
class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(std::size_t rows, std::size_t cols, int conductor = 1);

  static CycMatrix identity(std::size_t n, int conductor = 1);
  static CycMatrix diag(const std::vector<CycNum>& d);
  // Rows of equal length; the conductor is the lcm over entries.
  static CycMatrix from_rows(const std::vector<std::vector<CycNum>>& rows);
  static CycMatrix column(const std::vector<CycNum>& v);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  int conductor() const { return n_; }
  const CycNum& operator()(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }
  // Setting lifts the matrix to a larger conductor when needed.
  void set(std::size_t i, std::size_t j, const CycNum& v);

  CycMatrix embed(int m) const;
  CycMatrix conj() const;
  CycMatrix transpose() const;
  CycMatrix block(std::size_t i0, std::size_t j0, std::size_t rows, std::size_t cols) const;
  std::vector<CycNum> col(std::size_t j) const;
  bool is_identity() const;
  bool is_zero() const;

  // Throws SingularMatrix.
  CycMatrix inverse() const;
  CycNum det() const;
  CycMatrix pow(long e) const;

  friend CycMatrix operator*(const CycMatrix& x, const CycMatrix& y);
  friend CycMatrix operator+(const CycMatrix& x, const CycMatrix& y);
  friend CycMatrix operator-(const CycMatrix& x, const CycMatrix& y);
  friend CycMatrix operator*(const CycNum& s, const CycMatrix& x);
  friend bool operator==(const CycMatrix& x, const CycMatrix& y);

  std::size_t hash() const;
  std::string str() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  int n_ = 1;
  std::vector<CycNum> e_;
};

struct SingularMatrix : std::domain_error {
  explicit SingularMatrix(CycNum d)
      : std::domain_error("matrix is singular (determinant " + d.str() + ")"), det(std::move(d)) {}
  CycNum det;
};

// Block (i, j) of the result is x(i, j) * y.
CycMatrix kron(const CycMatrix& x, const CycMatrix& y);
// [[tl, tr], [bl, br]]; all four blocks given.
CycMatrix block_matrix(const CycMatrix& tl, const CycMatrix& tr, const CycMatrix& bl,
                       const CycMatrix& br);

// Reduced row echelon form over the field; returns pivot columns.
std::vector<std::size_t> rref(CycMatrix& m);
std::size_t rank(CycMatrix m);
// Basis of {x : m x = 0} as column vectors.
std::vector<std::vector<CycNum>> nullspace(CycMatrix m);
// Some x with m x = b, or nullopt.
std::optional<std::vector<CycNum>> solve(const CycMatrix& m, const std::vector<CycNum>& b);

}  // namespace pk
