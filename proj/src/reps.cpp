#include "pk/reps.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "pk/lattice.hpp"

namespace pk {

Rep::Rep(std::string name, CycMatrix img_a, CycMatrix img_b) : name_(std::move(name)) {
  if (img_a.rows() != img_a.cols() || img_b.rows() != img_b.cols() || img_a.rows() != img_b.rows())
    throw std::invalid_argument("rep images must be square of one size");
  const int m = std::lcm(img_a.conductor(), img_b.conductor());
  a_ = img_a.embed(m);
  b_ = img_b.embed(m);
  a_inv_ = a_.inverse();
  b_inv_ = b_.inverse();
}

int Rep::conductor() const { return a_.conductor(); }

const CycMatrix& Rep::image(Gen g, bool inverse) const {
  if (g == Gen::a) return inverse ? a_inv_ : a_;
  return inverse ? b_inv_ : b_;
}

CycMatrix evaluate(const Rep& rho, const Word& w) {
  CycMatrix out = CycMatrix::identity(rho.dim(), rho.conductor());
  for (const Run& r : w.runs()) {
    const CycMatrix& g = rho.image(r.gen, r.exp < 0);
    for (std::int64_t i = 0; i < (r.exp < 0 ? -r.exp : r.exp); ++i) out = out * g;
  }
  return out;
}

namespace {

bool invertible(const CycMatrix& m) { return m.rows() == m.cols() && !m.det().is_zero(); }

}  // namespace

CharCheck check_characteristic(const Rep& rho, const CharWitness& w) {
  const CycMatrix& A = rho.img_a();
  const CycMatrix& B = rho.img_b();
  const std::size_t n = rho.dim();
  for (const auto* m : {&w.m1, &w.m2, &w.m_minus})
    if (m->rows() != n || m->cols() != n) return {false, "witness size differs from rep dimension"};
  const struct {
    const char* name;
    bool ok;
  } eqs[] = {
      {"M1 = A M1 B", w.m1 == A * w.m1 * B},
      {"M1 A = B M1", w.m1 * A == B * w.m1},
      {"M2 A = A M2", w.m2 * A == A * w.m2},
      {"M2 B = AB M2", w.m2 * B == A * B * w.m2},
      {"M- = A M- conj(A)", w.m_minus == A * w.m_minus * A.conj()},
      {"M- conj(B) = B M-", w.m_minus * B.conj() == B * w.m_minus},
      {"M1 invertible", invertible(w.m1)},
      {"M2 invertible", invertible(w.m2)},
      {"M- invertible", invertible(w.m_minus)},
  };
  for (const auto& e : eqs)
    if (!e.ok) return {false, e.name};
  return {};
}

namespace {

// Entries like "0", "-1/2", "w2", "-2w-1", "i-1", "2i+2": sums of terms c, c*i, c*w, c*w2
// where i = zeta_4 and w = zeta_3.
CycNum parse_entry(const std::string& tok) {
  CycNum total(0);
  std::size_t pos = 0;
  while (pos < tok.size()) {
    int sign = 1;
    if (tok[pos] == '+' || tok[pos] == '-') {
      sign = tok[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t start = pos;
    while (pos < tok.size() && (std::isdigit(static_cast<unsigned char>(tok[pos])) || tok[pos] == '/')) ++pos;
    mpq_class c = start == pos ? mpq_class(1) : mpq_class(tok.substr(start, pos - start));
    c.canonicalize();
    CycNum unit(1);
    if (pos < tok.size() && (tok[pos] == 'i' || tok[pos] == 'w')) {
      const int n = tok[pos] == 'i' ? 4 : 3;
      ++pos;
      long e = 1;
      if (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) e = tok[pos++] - '0';
      unit = CycNum::zeta(n, e);
    }
    total += CycNum(sign * c, 1) * unit;
  }
  return total;
}

CycMatrix parse_matrix(const std::vector<std::string>& rows) {
  std::vector<std::vector<CycNum>> m;
  for (const auto& r : rows) {
    std::istringstream is(r);
    std::vector<CycNum> row;
    for (std::string tok; is >> tok;) row.push_back(parse_entry(tok));
    m.push_back(std::move(row));
  }
  return CycMatrix::from_rows(m);
}

CycMatrix ints_diag(const std::vector<std::string>& d) {
  std::vector<CycNum> v;
  for (const auto& s : d) v.push_back(parse_entry(s));
  return CycMatrix::diag(v);
}

int parse_odd_k(const std::string& name, const std::string& prefix, int min_k) {
  const std::string tail = name.substr(prefix.size());
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(tail);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed k in rep name '" + name + "'");
  }
  if (k < min_k || k % 2 == 0) throw std::invalid_argument("rep '" + name + "' needs odd k >= " + std::to_string(min_k));
  return k;
}

Rep rho_odd(int k) {
  std::vector<CycNum> d;
  for (int i = 0; i < k; ++i) d.push_back(CycNum::zeta(k, i));
  CycMatrix b(k, k, k);
  for (int i = 0; i < k; ++i) b.set(i, (i + 1) % k, CycNum(1));
  return Rep("rho_odd:" + std::to_string(k), CycMatrix::diag(d), b);
}

CycMatrix odd_extension_columns(int k) {
  const int m = (k - 3) / 2;
  CycMatrix B(k, m, k);
  for (int j = 1; j <= m; ++j) {
    B.set(j, j - 1, CycNum(1));           // e_{j+1}
    B.set(k - j - 1, j - 1, CycNum(-1));  // -e_{k-j}
  }
  return B;
}

Rep extend_block(const std::string& name, const Rep& base, const CycMatrix& B) {
  const std::size_t n = base.dim(), m = B.cols();
  const CycMatrix zero_nm(n, m), zero_mn(m, n), id = CycMatrix::identity(m);
  return Rep(name, block_matrix(base.img_a(), zero_nm, zero_mn, id), block_matrix(base.img_b(), B, zero_mn, id));
}

CycMatrix trho6_columns() {
  return parse_matrix({"1 0 0", "0 0 0", "-1 0 0", "0 1 0", "0 0 0", "0 -1 0", "0 0 0", "0 0 1", "0 0 0"});
}

CharWitness identity_minus(CycMatrix m1, CycMatrix m2) {
  const std::size_t n = m1.rows();
  return {std::move(m1), std::move(m2), CycMatrix::identity(n)};
}

}  // namespace

Rep builtin(const std::string& name) {
  if (name == "rho2") return Rep(name, ints_diag({"-1", "-1", "1"}), ints_diag({"1", "-1", "-1"}));
  if (name.rfind("rho_odd:", 0) == 0) return rho_odd(parse_odd_k(name, "rho_odd:", 3));
  if (name == "rho4") return Rep(name, ints_diag({"i", "-i"}), parse_matrix({"0 1", "-1 0"}));
  if (name == "rho6") {
    const Rep t = tensor(builtin("rho2"), builtin("rho_odd:3"));
    return Rep(name, t.img_a(), t.img_b());
  }
  if (name.rfind("trho_odd:", 0) == 0) {
    const int k = parse_odd_k(name, "trho_odd:", 5);
    return extend_block(name, rho_odd(k), odd_extension_columns(k));
  }
  if (name == "trho4")
    return Rep(name, ints_diag({"i", "-i", "1", "1"}),
               parse_matrix({"0 1 1 0", "-1 0 0 1", "0 0 1 0", "0 0 0 1"}));
  if (name == "trho6") return extend_block(name, builtin("rho6"), trho6_columns());
  if (name == "ttrho4")
    return Rep(name, ints_diag({"1", "-1", "-i", "-i", "-1", "1", "i", "i", "1"}),
               parse_matrix({"0 0 0 0 0 1 1 0 0",
                             "0 0 0 0 -1 0 0 1 0",
                             "0 0 0 0 0 0 1 0 1",
                             "0 0 0 0 0 0 0 1 0",
                             "0 -1 -1 0 0 0 0 0 0",
                             "1 0 0 -1 0 0 0 0 0",
                             "0 0 -1 0 0 0 0 0 0",
                             "0 0 0 -1 0 0 0 0 -1",
                             "0 0 0 0 0 0 0 0 1"}));
  throw std::invalid_argument("unknown rep '" + name + "'");
}

std::vector<std::string> builtin_names(const std::vector<int>& odd_k) {
  std::vector<std::string> out{"rho2"};
  for (int k : odd_k) out.push_back("rho_odd:" + std::to_string(k));
  out.insert(out.end(), {"rho4", "rho6"});
  for (int k : odd_k)
    if (k >= 5) out.push_back("trho_odd:" + std::to_string(k));
  out.insert(out.end(), {"trho4", "trho6", "ttrho4"});
  return out;
}

bool witness_is_transcribed(const std::string& name) {
  return name == "rho2" || name.rfind("rho_odd:", 0) == 0 || name == "rho4" || name == "trho4" ||
         name == "trho6" || name == "ttrho4";
}

CharWitness builtin_witness(const std::string& name) {
  if (name == "rho2")
    return identity_minus(parse_matrix({"0 0 1", "0 1 0", "1 0 0"}), parse_matrix({"0 1 0", "1 0 0", "0 0 1"}));
  if (name.rfind("rho_odd:", 0) == 0) {
    const int k = parse_odd_k(name, "rho_odd:", 3);
    CycMatrix m1(k, k, k);
    std::vector<CycNum> d;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) m1.set(i, j, CycNum::zeta(k, static_cast<long>(i) * j));
      d.push_back(CycNum::zeta(k, -static_cast<long>(i) * (i - 1) / 2));
    }
    return identity_minus(m1, CycMatrix::diag(d));
  }
  if (name == "rho4") return identity_minus(parse_matrix({"1 i", "i 1"}), ints_diag({"i", "1"}));
  if (name == "rho6") return tensor_witness(builtin_witness("rho2"), builtin_witness("rho_odd:3"));
  if (name.rfind("trho_odd:", 0) == 0) {
    static std::mutex mu;
    static std::map<std::string, CharWitness> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    auto w = solve_witness(builtin(name));
    if (!w) throw std::runtime_error("no witness found for " + name);
    cache.emplace(name, *w);
    return *w;
  }
  if (name == "trho4")
    return identity_minus(parse_matrix({"2 2i i-1 -i-1", "2i 2 -i+1 -i-1", "0 0 2i-2 0", "0 0 0 -2i-2"}),
                          ints_diag({"i", "1", "1", "i"}));
  if (name == "trho6")
    return identity_minus(parse_matrix({"0 0 0 0 0 0 1 1 1 0 0 -1/2",
                                        "0 0 0 0 0 0 1 w w2 0 0 1",
                                        "0 0 0 0 0 0 1 w2 w 0 0 1",
                                        "0 0 0 1 1 1 0 0 0 0 0 0",
                                        "0 0 0 1 w w2 0 0 0 0 -2w-1 0",
                                        "0 0 0 1 w2 w 0 0 0 0 2w+1 0",
                                        "1 1 1 0 0 0 0 0 0 1 0 0",
                                        "1 w w2 0 0 0 0 0 0 -1 0 0",
                                        "1 w2 w 0 0 0 0 0 0 -1 0 0",
                                        "0 0 0 0 0 0 0 0 0 0 0 -3/2",
                                        "0 0 0 0 0 0 0 0 0 0 -2w-1 0",
                                        "0 0 0 0 0 0 0 0 0 -2 0 0"}),
                          parse_matrix({"0 0 0 1 0 0 0 0 0 0 0 0",
                                        "0 0 0 0 1 0 0 0 0 0 0 0",
                                        "0 0 0 0 0 w2 0 0 0 0 0 0",
                                        "1 0 0 0 0 0 0 0 0 0 0 0",
                                        "0 1 0 0 0 0 0 0 0 0 0 0",
                                        "0 0 w2 0 0 0 0 0 0 0 0 0",
                                        "0 0 0 0 0 0 1 0 0 0 0 0",
                                        "0 0 0 0 0 0 0 1 0 0 0 0",
                                        "0 0 0 0 0 0 0 0 w2 0 0 0",
                                        "0 0 0 0 0 0 0 0 0 0 -1 0",
                                        "0 0 0 0 0 0 0 0 0 -1 0 0",
                                        "0 0 0 0 0 0 0 0 0 0 0 w2"}));
  if (name == "ttrho4")
    return identity_minus(parse_matrix({"2 2i i-1 -i-1 -2i 2 i+1 i-1 i-1",
                                        "2i 2 -i+1 -i-1 2 -2i -i-1 i-1 i-1",
                                        "0 0 2i-2 0 0 0 2i+2 0 2",
                                        "0 0 0 -2i-2 0 0 0 2i-2 -2",
                                        "-2i 2 i+1 i-1 2 2i i-1 -i-1 -i-1",
                                        "2 -2i -i-1 i-1 2i 2 -i+1 -i-1 i+1",
                                        "0 0 2i+2 0 0 0 2i-2 0 -2",
                                        "0 0 0 2i-2 0 0 0 -2i-2 -2",
                                        "0 0 0 0 0 0 0 0 4"}),
                          ints_diag({"1", "-i", "-i", "1", "i", "1", "1", "i", "1"}));
  throw std::invalid_argument("no witness for rep '" + name + "'");
}

Rep tensor(const Rep& x, const Rep& y) {
  return Rep(x.name() + "*" + y.name(), kron(x.img_a(), y.img_a()), kron(x.img_b(), y.img_b()));
}

Rep conj_rep(const Rep& x) { return Rep("conj(" + x.name() + ")", x.img_a().conj(), x.img_b().conj()); }

CharWitness tensor_witness(const CharWitness& x, const CharWitness& y) {
  return {kron(x.m1, y.m1), kron(x.m2, y.m2), kron(x.m_minus, y.m_minus)};
}

CharWitness conj_witness(const CharWitness& x) { return {x.m1.conj(), x.m2.conj(), x.m_minus.conj()}; }

namespace {

// Row-major vec(P X Q) = kron(P, Q^T) vec(X).
CycMatrix stack(const CycMatrix& top, const CycMatrix& bottom) {
  CycMatrix out(top.rows() + bottom.rows(), top.cols(), std::lcm(top.conductor(), bottom.conductor()));
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j)
      if (!top(i, j).is_zero()) out.set(i, j, top(i, j));
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < bottom.cols(); ++j)
      if (!bottom(i, j).is_zero()) out.set(top.rows() + i, j, bottom(i, j));
  return out;
}

CycMatrix unvec(const std::vector<CycNum>& v, std::size_t n) {
  CycMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!v[i * n + j].is_zero()) m.set(i, j, v[i * n + j]);
  return m;
}

// Invertible point of the span of the given matrices, searched deterministically.
std::optional<CycMatrix> invertible_point(const std::vector<CycMatrix>& basis) {
  if (basis.empty()) return std::nullopt;
  for (const auto& m : basis)
    if (invertible(m)) return m;
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int attempt = 0; attempt < 64; ++attempt) {
    CycMatrix m = CycNum(attempt == 0 ? 1 : coef(rng)) * basis[0];
    for (std::size_t i = 1; i < basis.size(); ++i) m = m + CycNum(attempt == 0 ? 1 : coef(rng)) * basis[i];
    if (invertible(m)) return m;
  }
  return std::nullopt;
}

std::optional<CycMatrix> solve_pair(const CycMatrix& eq1, const CycMatrix& eq2, std::size_t n) {
  std::vector<CycMatrix> basis;
  for (const auto& v : nullspace(stack(eq1, eq2))) basis.push_back(unvec(v, n));
  return invertible_point(basis);
}

}  // namespace

std::optional<CharWitness> solve_witness(const Rep& rho) {
  const std::size_t n = rho.dim();
  const int c = rho.conductor();
  const CycMatrix I = CycMatrix::identity(n, c);
  const CycMatrix& A = rho.img_a();
  const CycMatrix& B = rho.img_b();
  const CycMatrix At = A.transpose(), Bt = B.transpose();
  auto m1 = solve_pair(kron(I, I) - kron(A, Bt), kron(I, At) - kron(B, I), n);
  if (!m1) return std::nullopt;
  auto m2 = solve_pair(kron(I, At) - kron(A, I), kron(I, Bt) - kron(A * B, I), n);
  if (!m2) return std::nullopt;
  auto mm = solve_pair(kron(I, I) - kron(A, A.conj().transpose()), kron(I, B.conj().transpose()) - kron(B, I), n);
  if (!mm) return std::nullopt;
  return CharWitness{*m1, *m2, *mm};
}

namespace {

struct MatrixHash {
  std::size_t operator()(const CycMatrix& m) const { return m.hash(); }
};

}  // namespace

ImageClosure image_closure(const Rep& rho, std::size_t bound) {
  ImageClosure out;
  std::unordered_map<CycMatrix, std::size_t, MatrixHash> seen;
  const CycMatrix id = CycMatrix::identity(rho.dim(), rho.conductor());
  seen.emplace(id, 0);
  out.elements.push_back(id);
  out.words.push_back(Word());
  const std::pair<Gen, bool> gens[4] = {{Gen::a, false}, {Gen::b, false}, {Gen::a, true}, {Gen::b, true}};
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (const auto& [g, inv] : gens) {
      CycMatrix next = out.elements[head] * rho.image(g, inv);
      if (seen.count(next)) continue;
      if (out.elements.size() == bound) {
        out.overflow = true;
        return out;
      }
      seen.emplace(next, out.elements.size());
      out.elements.push_back(std::move(next));
      out.words.push_back(out.words[head] * Word::gen(g, inv ? -1 : 1));
    }
  }
  return out;
}

std::vector<mpz_class> flatten_integral(const CycMatrix& m) {
  std::vector<mpz_class> v;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto c = m(i, j).embed(m.conductor()).integer_coeffs();
      v.insert(v.end(), c.begin(), c.end());
    }
  return v;
}

std::optional<std::size_t> additive_span_rank(const Rep& rho, std::size_t bound) {
  const ImageClosure img = image_closure(rho, bound);
  if (img.overflow) return std::nullopt;
  std::vector<IntVec> rows;
  for (const auto& m : img.elements) rows.push_back(flatten_integral(m));
  return snf(rows).rank;
}

bool kernel_contains_Pk(const Rep& rho, const CharWitness& witness, int k, std::uint64_t seed) {
  if (const CharCheck c = check_characteristic(rho, witness); !c)
    throw std::invalid_argument("kernel_contains_Pk: witness fails (" + c.failed + ")");
  if (!evaluate(rho, Word::a(k)).is_identity()) return false;
  // redundant given the witness; kept as a direct check
  for (const Generator& g : normal_generators(std::min(k, 5)))
    if (!evaluate(rho, g.base.pow(k)).is_identity()) return false;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 20; ++i) {
    const Word w = random_automorphism(rng, 6).apply(Word::a());
    if (!evaluate(rho, w.pow(k)).is_identity()) return false;
  }
  return true;
}

TwistResult multitwist_check(const Rep& rho, const Slope& s, int k, int samples, std::uint64_t seed) {
  if (!evaluate(rho, primitive_word(s).pow(k)).is_identity()) return TwistResult::precondition_failed;
  const Automorphism psi = outer_rep(s);
  const Automorphism twist = psi.compose(psi2().pow(k)).compose(psi.inverse());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, 16);
  for (int i = 0; i < samples; ++i) {
    const Word h = random_word(rng, len(rng));
    if (!(evaluate(rho, twist.apply(h)) == evaluate(rho, h))) return TwistResult::fails;
  }
  return TwistResult::holds;
}

CycMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int conductor, int range) {
  std::uniform_int_distribution<int> coef(-range, range);
  const int phi = euler_phi(conductor);
  CycMatrix m(n, n, conductor);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<mpq_class> c;
      for (int e = 0; e < phi; ++e) c.emplace_back(coef(rng));
      m.set(i, j, CycNum::from_coeffs(conductor, c));
    }
  return m;
}

std::vector<Word> kernel_probe_words(const Rep& base, int k, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, 12);
  const auto into_kernel = [&](const Word& w) {
    // w^m with m the order of base(w), when that order is small
    const CycMatrix x = evaluate(base, w);
    CycMatrix p = x;
    for (int m = 1; m <= 512; ++m, p = p * x)
      if (p.is_identity()) return w.pow(m);
    return w;
  };
  std::vector<Word> out;
  while (out.size() < count) {
    const Word w = random_word(rng, len(rng));
    switch (out.size() % 4) {
      case 0: out.push_back(w); break;
      case 1: out.push_back(into_kernel(w)); break;
      case 2: {
        const Word p = random_automorphism(rng, 5).apply(Word::a()).pow(k);
        out.push_back(w * p * w.inverse());
        break;
      }
      default: out.push_back(into_kernel(w) * into_kernel(random_word(rng, len(rng))).inverse()); break;
    }
  }
  return out;
}

KernelComparison compare_kernels(const Rep& x, const Rep& y, const std::vector<Word>& words) {
  KernelComparison c;
  for (const auto& w : words) {
    const bool in_x = evaluate(x, w).is_identity(), in_y = evaluate(y, w).is_identity();
    ++c.total;
    if (in_x == in_y) ++c.agree;
    if (in_x && in_y) ++c.in_both;
  }
  return c;
}

std::optional<int> builtin_exponent(const std::string& name) {
  if (name == "rho2") return 2;
  if (name == "rho4" || name == "trho4" || name == "ttrho4") return 4;
  if (name == "rho6" || name == "trho6") return 6;
  for (const char* prefix : {"rho_odd:", "trho_odd:"})
    if (name.rfind(prefix, 0) == 0) return parse_odd_k(name, prefix, name[0] == 't' ? 5 : 3);
  return std::nullopt;
}

}  // namespace pk
