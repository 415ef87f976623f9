#include "pk/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace pk {

std::string str(const GaussInt& g) {
  if (g.im == 0) return g.re.get_str();
  const std::string im = g.im == 1 ? "i" : g.im == -1 ? "-i" : g.im.get_str() + "i";
  if (g.re == 0) return im;
  return g.re.get_str() + (g.im > 0 ? "+" : "") + im;
}

IntVec GammaCoord::flatten() const { return {z.re, z.im, w.re, w.im}; }

std::string GammaCoord::str() const { return "(" + pk::str(z) + ", " + pk::str(w) + ")"; }

GammaCoord gamma_coord(long z_re, long z_im, long w_re, long w_im) {
  return {{z_re, z_im}, {w_re, w_im}};
}

namespace {

const CycNum kI = CycNum::zeta(4);

CycNum from_gauss(const GaussInt& g) { return CycNum(mpq_class(g.re), 4) + CycNum(mpq_class(g.im), 4) * kI; }

std::optional<GaussInt> to_gauss(const CycNum& x) {
  if (4 % x.conductor() != 0) return std::nullopt;
  const CycNum y = x.embed(4);
  const auto& c = y.coeffs();
  for (const auto& q : c)
    if (q.get_den() != 1) return std::nullopt;
  return GaussInt{c.empty() ? mpz_class(0) : c[0].get_num(), c.size() < 2 ? mpz_class(0) : c[1].get_num()};
}

IntVec flatten_at(const CycMatrix& m, int conductor) { return flatten_integral(m.embed(conductor)); }

CycMatrix unflatten(const IntVec& v, std::size_t rows, std::size_t cols, int conductor) {
  const std::size_t phi = static_cast<std::size_t>(euler_phi(conductor));
  CycMatrix m(rows, cols, conductor);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<mpq_class> c(phi);
      for (std::size_t t = 0; t < phi; ++t) c[t] = v[(i * cols + j) * phi + t];
      m.set(i, j, CycNum::from_coeffs(conductor, c));
    }
  return m;
}

// Q block of a kernel element [[I, Q], [0, I]].
CycMatrix kernel_block(const CycMatrix& u, std::size_t top) {
  const std::size_t n = u.rows(), m = n - top;
  if (!u.block(0, 0, top, top).is_identity() || !u.block(top, top, m, m).is_identity() ||
      !u.block(top, 0, m, top).is_zero())
    throw std::invalid_argument("relator image is not unipotent in the given block split");
  return u.block(0, top, top, m);
}

void require_extends(const Rep& base, const Rep& ext) {
  const std::size_t n = base.dim();
  if (ext.dim() <= n || !(ext.img_a().block(0, 0, n, n) == base.img_a()) ||
      !(ext.img_b().block(0, 0, n, n) == base.img_b()))
    throw std::invalid_argument("ext does not extend base in block form");
}

ImageClosure closure_or_throw(const Rep& base, std::size_t bound) {
  ImageClosure img = image_closure(base, bound);
  if (img.overflow) throw std::runtime_error("image of " + base.name() + " exceeds " + std::to_string(bound));
  return img;
}

std::vector<std::size_t> visit_order(std::size_t count, std::uint64_t seed) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

bool exact_log2(const mpz_class& v, long& out) {
  if (v <= 0) return false;
  long e = 0;
  mpz_class x = v;
  while (x % 2 == 0) {
    x /= 2;
    ++e;
  }
  out = e;
  return x == 1;
}

}  // namespace

CycMatrix gamma_encode(const GammaCoord& g) {
  const CycNum z = from_gauss(g.z), w = from_gauss(g.w);
  CycMatrix m = CycMatrix::identity(4, 4);
  m.set(0, 2, z);
  m.set(0, 3, -w.conj());
  m.set(1, 2, w);
  m.set(1, 3, z.conj());
  return m;
}

GammaCoord gamma_decode(const CycMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw GammaShapeError(0, 0, "matrix is not 4x4");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const bool top_right = i < 2 && j >= 2;
      if (top_right) continue;
      if (!(m(i, j) == CycNum(i == j ? 1 : 0)))
        throw GammaShapeError(i, j, i == j ? "diagonal entry is not 1" : "entry outside the top-right block is not 0");
    }
  const CycNum z = m(0, 2), w = m(1, 2);
  if (!(m(1, 3) == z.conj())) throw GammaShapeError(1, 3, "entry is not conj(z)");
  if (!(m(0, 3) == -w.conj())) throw GammaShapeError(0, 3, "entry is not -conj(w)");
  const auto gz = to_gauss(z), gw = to_gauss(w);
  if (!gz) throw GammaShapeError(0, 2, "entry is not a Gaussian integer");
  if (!gw) throw GammaShapeError(1, 2, "entry is not a Gaussian integer");
  return {*gz, *gw};
}

IntLattice gaussian_lattice(const std::vector<GammaCoord>& gens) {
  std::vector<IntVec> rows;
  for (const auto& g : gens) rows.push_back(g.flatten());
  return IntLattice(4, rows);
}

IntLattice conjugate_orbit_lattice(const Rep& base, const Rep& ext, const std::vector<Word>& relators,
                                   std::size_t bound, std::uint64_t shuffle_seed) {
  require_extends(base, ext);
  const std::size_t top = base.dim();
  const int cond = ext.conductor();
  const ImageClosure img = closure_or_throw(base, bound);
  std::vector<CycMatrix> rel;
  for (const auto& r : relators) rel.push_back(evaluate(ext, r));
  std::vector<IntVec> rows;
  for (const std::size_t idx : visit_order(img.order(), shuffle_seed)) {
    const CycMatrix g = evaluate(ext, img.words[idx]);
    const CycMatrix g_inv = g.inverse();
    for (const auto& r : rel) rows.push_back(flatten_at(kernel_block(g * r * g_inv, top), cond));
  }
  const std::size_t ambient = top * (ext.dim() - top) * static_cast<std::size_t>(euler_phi(cond));
  return IntLattice(ambient, rows);
}

IntLattice module_orbit_lattice(std::size_t top, const Rep& ext, const std::vector<Word>& relators) {
  const std::size_t n = ext.dim(), m = n - top;
  const int cond = ext.conductor();
  const std::size_t ambient = top * m * static_cast<std::size_t>(euler_phi(cond));
  // q -> X q D^-1 for ext(s) = [[X, *], [0, D]]
  std::vector<std::pair<CycMatrix, CycMatrix>> acts;
  for (const Gen g : {Gen::a, Gen::b})
    for (const bool inv : {false, true}) {
      const CycMatrix& e = ext.image(g, inv);
      const CycMatrix& e_inv = ext.image(g, !inv);
      acts.emplace_back(e.block(0, 0, top, top), e_inv.block(top, top, m, m));
    }
  std::vector<IntVec> rows;
  for (const auto& r : relators) rows.push_back(flatten_at(kernel_block(evaluate(ext, r), top), cond));
  IntLattice lat(ambient, rows);
  for (;;) {
    std::vector<IntVec> next = lat.basis();
    for (const auto& v : lat.basis()) {
      const CycMatrix q = unflatten(v, top, m, cond);
      for (const auto& [x, d_inv] : acts) next.push_back(flatten_at(x * q * d_inv, cond));
    }
    IntLattice grown(ambient, next);
    if (grown == lat) return lat;
    lat = std::move(grown);
  }
}

IntLattice gamma_orbit_lattice(const Rep& base, const Rep& ext, const std::vector<Word>& relators) {
  require_extends(base, ext);
  const ImageClosure img = closure_or_throw(base, 100000);
  std::vector<GammaCoord> gens;
  for (const auto& w : img.words)
    for (const auto& r : relators) gens.push_back(gamma_decode(evaluate(ext, w * r * w.inverse())));
  return gaussian_lattice(gens);
}

std::map<std::string, Word> np_words() {
  const Word a = Word::a(), b = Word::b(), ai = Word::a(-1), bi = Word::b(-1);
  std::map<std::string, Word> w;
  w["A"] = b * ai * bi * a;
  w["B"] = bi * a * b * ai;
  w["C"] = bi * ai * b * a;
  w["D"] = Word::a(2) * b * (ai * bi).pow(2) * ai * b * a;
  w["E"] = bi * (a * b).pow(2) * Word::a(-3) * bi * a;
  const Word &A = w["A"], &B = w["B"], &C = w["C"], &D = w["D"], &E = w["E"];
  w["g0"] = E.pow(-2);
  w["g1"] = A.pow(4) * D.pow(2);
  w["g2"] = A * E.pow(-2) * A.pow(-4) * B * A.inverse() * B.inverse();
  w["g3"] = A.pow(9) * C * A.inverse() * C.inverse() * B * A * B.inverse() * A.inverse();
  return w;
}

IntLattice lambda_lattice() {
  return gaussian_lattice({gamma_coord(-1, 0, 1, 0), gamma_coord(0, -1, 0, -1), gamma_coord(-1, 0, -1, 0),
                           gamma_coord(0, 0, 1, 1)});
}

IntLattice lambda1_lattice() {
  return gaussian_lattice({gamma_coord(-1, 0, 1, 0), gamma_coord(0, -1, 0, -1), gamma_coord(-1, 0, -1, 0),
                           gamma_coord(0, 1, 0, -1)});
}

IntLattice lambda2_lattice() {
  return gaussian_lattice({gamma_coord(0, 0, 1, 1), gamma_coord(0, 0, 1, -1), gamma_coord(-1, -1, 0, 0),
                           gamma_coord(-1, 1, 0, 0)});
}

IntLattice lambda_prime_lattice() {
  return gaussian_lattice({gamma_coord(-2, -2, 2, -2), gamma_coord(-2, 2, 2, 2), gamma_coord(4, 0, 0, 0),
                           gamma_coord(0, 0, 0, 4)});
}

std::vector<Word> quaternion_relators() {
  return {Word::a(4), Word::b(4), Word::parse("a^2b^2"), Word::parse("aBab")};
}

std::vector<Word> trho4_kernel_relators() {
  const Rep rho = builtin("rho4"), ext = builtin("trho4");
  const IntLattice lambda = gamma_orbit_lattice(rho, ext, {Word::parse("a^2b^2"), Word::parse("aBab")});
  // candidate words: conjugates of the two quaternion relators that are not powers of a, b
  std::vector<Word> cand;
  std::vector<GammaCoord> coords;
  for (const auto& g : closure_or_throw(rho, 100).words)
    for (const auto& r : {Word::parse("a^2b^2"), Word::parse("aBab")}) {
      cand.push_back(g * r * g.inverse());
      coords.push_back(gamma_decode(evaluate(ext, cand.back())));
    }
  // first four candidates whose coordinates are a basis of Lambda
  std::vector<std::size_t> pick;
  const std::size_t c = cand.size();
  for (std::size_t i = 0; i < c && pick.empty(); ++i)
    for (std::size_t j = i + 1; j < c && pick.empty(); ++j)
      for (std::size_t k = j + 1; k < c && pick.empty(); ++k)
        for (std::size_t l = k + 1; l < c && pick.empty(); ++l)
          if (gaussian_lattice({coords[i], coords[j], coords[k], coords[l]}) == lambda) pick = {i, j, k, l};
  if (pick.empty()) throw std::logic_error("no basis of Lambda among conjugates of the quaternion relators");
  std::vector<Word> x;
  std::vector<std::vector<CycNum>> cols(4, std::vector<CycNum>(4));
  for (std::size_t t = 0; t < 4; ++t) {
    x.push_back(cand[pick[t]]);
    const IntVec v = coords[pick[t]].flatten();
    for (std::size_t r = 0; r < 4; ++r) cols[r][t] = CycNum(mpq_class(v[r]), 1);
  }
  const CycMatrix basis = CycMatrix::from_rows(cols);
  // word in x with the same image as u, an element of ker rho4
  const auto rewrite = [&](const Word& u) {
    const IntVec v = gamma_decode(evaluate(ext, u)).flatten();
    std::vector<CycNum> rhs;
    for (const auto& e : v) rhs.push_back(CycNum(mpq_class(e), 1));
    const auto sol = solve(basis, rhs);
    if (!sol) throw std::logic_error("element outside Lambda: " + u.str());
    Word out;
    for (std::size_t t = 0; t < 4; ++t) {
      const mpq_class q = (*sol)[t].coeffs().empty() ? mpq_class(0) : (*sol)[t].coeffs()[0];
      if (q.get_den() != 1) throw std::logic_error("non-integral coordinates for " + u.str());
      out *= x[t].pow(q.get_num().get_si());
    }
    return out;
  };
  std::vector<Word> rel;
  for (const auto& r : quaternion_relators()) rel.push_back(r * rewrite(r).inverse());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) rel.push_back(commutator(x[i], x[j]));
  for (const auto& s : {Word::a(), Word::b()})
    for (const auto& xi : x) {
      const Word conj = s * xi * s.inverse();
      rel.push_back(conj * rewrite(conj).inverse());
    }
  for (const auto& r : rel)
    if (!evaluate(ext, r).is_identity()) throw std::logic_error("relator not in ker trho4: " + r.str());
  return rel;
}

std::vector<CheckRecord> verify_faithful_p4() {
  std::vector<CheckRecord> out;
  const Rep rho = builtin("rho4"), trho = builtin("trho4"), ttrho = builtin("ttrho4");
  const auto w = np_words();
  const std::string gs[4] = {"g0", "g1", "g2", "g3"};
  const auto loc = [](const std::string& step) { return "faithfulness chain, step " + step; };

  // (i)
  for (const auto& g : gs) {
    const bool id = evaluate(rho, w.at(g)).is_identity();
    out.push_back({"rho4(" + g + ") = I", loc("(i)"), id ? "I" : "not I", "I", id});
  }

  // (ii)
  const GammaCoord expect[4] = {gamma_coord(-2, -2, 2, -2), gamma_coord(-2, 2, 2, 2), gamma_coord(4, 0, 0, 0),
                                gamma_coord(0, 0, 0, 4)};
  std::vector<GammaCoord> decoded;
  for (std::size_t t = 0; t < 4; ++t) {
    std::string computed;
    bool pass = false;
    try {
      const GammaCoord c = gamma_decode(evaluate(trho, w.at(gs[t])));
      decoded.push_back(c);
      computed = c.str();
      pass = c == expect[t];
    } catch (const GammaShapeError& e) {
      computed = e.what();
    }
    out.push_back({"trho4(" + gs[t] + ") = gamma" + expect[t].str(), loc("(ii)"), computed, expect[t].str(), pass});
  }

  // (iii)
  const std::vector<Word> qrel = {Word::parse("a^2b^2"), Word::parse("aBab")};
  const IntLattice lambda = gamma_orbit_lattice(rho, trho, qrel);
  const IntLattice lambda1 = gamma_orbit_lattice(rho, trho, {qrel[0]});
  const IntLattice lambda2 = gamma_orbit_lattice(rho, trho, {qrel[1]});
  out.push_back({"conjugates of a^2b^2 give Lambda_1", loc("(iii)"), lambda1 == lambda1_lattice() ? "equal" : "differ",
                 "equal", lambda1 == lambda1_lattice()});
  out.push_back({"conjugates of aBab give Lambda_2", loc("(iii)"),
                 lambda2 == lambda2_lattice() ? "equal" : "differ", "equal", lambda2 == lambda2_lattice()});
  IntLattice joined = lambda1;
  joined.add_all(lambda2.basis());
  const bool join_ok = joined == lambda && lambda == lambda_lattice();
  out.push_back({"Lambda = <Lambda_1, Lambda_2> = <(-1,1), (-i,-i), (-1,-1), (0,i+1)>", loc("(iii)"),
                 join_ok ? "equal" : "differ", "equal", join_ok});
  const auto lam_index = lambda.index();
  out.push_back({"[Z[i]^2 : Lambda] = 2", loc("(iii)"), lam_index ? lam_index->get_str() : "not full rank", "2",
                 lam_index && *lam_index == 2});
  std::vector<IntVec> prime_rows;
  for (const auto& c : decoded) prime_rows.push_back(c.flatten());
  const SnfResult prime_snf = snf(prime_rows);
  const bool full = prime_snf.rank == 4;
  const mpz_class prime_index = full ? prime_snf.product() : mpz_class(0);
  out.push_back({"[Z[i]^2 : Lambda'] = 2^7", loc("(iii)"), full ? prime_index.get_str() : "not full rank", "128",
                 full && prime_index == 128});
  const IntLattice prime(4, prime_rows);
  const auto sub_index = lattice_index(prime, lambda);
  long e_lambda = -1;
  const bool sub_ok = sub_index && exact_log2(*sub_index, e_lambda) && e_lambda == 6;
  out.push_back({"[Lambda : Lambda'] = 2^6", loc("(iii)"), sub_index ? sub_index->get_str() : "not a sublattice", "64",
                 sub_ok});

  // (iv)
  const auto img = [&](const Word& u) { return evaluate(ttrho, u); };
  const CycMatrix c2 = img(commutator(Word::a(), Word::b()).pow(2));
  const CycMatrix c2_8 = c2.pow(8);
  const auto g = [&](int t) { return w.at(gs[t]); };
  for (const auto& [i, j] : {std::pair{0, 1}, std::pair{2, 3}}) {
    const bool id = img(commutator(g(i), g(j))).is_identity();
    out.push_back({"ttrho4([g" + std::to_string(i) + ", g" + std::to_string(j) + "]) = I", loc("(iv)"),
                   id ? "I" : "not I", "I", id});
  }
  long power = 0;
  bool power_ok = !c2.is_identity();
  for (const auto& [i, j] : {std::pair{2, 0}, std::pair{3, 0}, std::pair{1, 2}, std::pair{3, 1}}) {
    const CycMatrix v = img(commutator(g(i), g(j)));
    // smallest m with v = c2^m
    long m = 0;
    CycMatrix p = CycMatrix::identity(9);
    for (long t = 1; t <= 64 && m == 0; ++t) {
      p = p * c2;
      if (p == v) m = t;
    }
    const bool eq = v == c2_8;
    power_ok = power_ok && eq;
    if (eq) power = 8;
    out.push_back({"ttrho4([g" + std::to_string(i) + ", g" + std::to_string(j) + "]) = ttrho4([a,b]^2)^8", loc("(iv)"),
                   m ? "ttrho4([a,b]^2)^" + std::to_string(m) : "not a power up to 64", "ttrho4([a,b]^2)^8", eq});
  }

  // (v)
  const std::size_t q_order = closure_or_throw(rho, 100).order();
  std::vector<CycMatrix> np_images;
  for (int t = 0; t < 4; ++t) np_images.push_back(evaluate(rho, g(t)));
  // subgroup of the quaternion image generated by rho4(g_i)
  std::vector<CycMatrix> sub{CycMatrix::identity(2, 4)};
  for (std::size_t h = 0; h < sub.size(); ++h)
    for (const auto& x : np_images) {
      const CycMatrix y = sub[h] * x;
      if (std::find(sub.begin(), sub.end(), y) == sub.end()) sub.push_back(y);
    }
  long e_q = -1, e_z = -1;
  const bool q_ok = q_order % sub.size() == 0 && exact_log2(mpz_class(q_order / sub.size()), e_q);
  const bool z_ok = power_ok && exact_log2(mpz_class(power), e_z);
  const long total = (q_ok && sub_ok && z_ok) ? e_q + e_lambda + e_z : -1;
  out.push_back({"index exponent 3 + 6 + 3", loc("(v)"),
                 q_ok && sub_ok && z_ok
                     ? std::to_string(e_q) + " + " + std::to_string(e_lambda) + " + " + std::to_string(e_z) + " = " +
                           std::to_string(total)
                     : "incomplete",
                 "3 + 6 + 3 = 12", e_q == 3 && e_lambda == 6 && e_z == 3 && total == 12});
  return out;
}

ExactSequence exact_sequence_report(const Rep& base, const Rep& ext, const std::vector<Word>& relators,
                                    std::optional<std::size_t> top, std::size_t bound) {
  ExactSequence out;
  const ImageClosure img = image_closure(base, bound);
  if (!img.overflow) out.base_order = img.order();
  const std::size_t split = top.value_or(base.dim());
  if (out.base_order && split == base.dim()) {
    out.lattice = conjugate_orbit_lattice(base, ext, relators, bound);
    out.enumerated = true;
  } else {
    out.lattice = module_orbit_lattice(split, ext, relators);
  }
  out.rank = out.lattice.rank();
  return out;
}

}  // namespace pk
