#include "pk/words.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "pk/farey.hpp"

namespace pk {

Word Word::gen(Gen g, std::int64_t exp) {
  Word w;
  w.append(g, exp);
  return w;
}

Word Word::from_letters(std::span<const int> letters) {
  Word w;
  for (int l : letters) {
    switch (l) {
      case 1: w.append(Gen::a, 1); break;
      case -1: w.append(Gen::a, -1); break;
      case 2: w.append(Gen::b, 1); break;
      case -2: w.append(Gen::b, -1); break;
      default: throw std::invalid_argument("letter code must be one of +-1, +-2");
    }
  }
  return w;
}

Word Word::parse(std::string_view text) {
  Word w;
  if (text == "1") return w;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    Gen g;
    std::int64_t sign;
    switch (c) {
      case 'a': g = Gen::a; sign = 1; break;
      case 'A': g = Gen::a; sign = -1; break;
      case 'b': g = Gen::b; sign = 1; break;
      case 'B': g = Gen::b; sign = -1; break;
      default:
        throw std::invalid_argument("unexpected character '" + std::string(1, c) + "' in word");
    }
    ++i;
    std::int64_t exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t j = i;
      if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      const char* first = text.data() + i;
      if (*first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, text.data() + j, exp);
      if (ec != std::errc() || ptr != text.data() + j || j == i)
        throw std::invalid_argument("malformed exponent in word");
      i = j;
    } else if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("exponents need an explicit '^'");
    }
    w.append(g, sign * exp);
  }
  return w;
}

std::string Word::str() const {
  if (runs_.empty()) return "1";
  std::string out;
  for (const Run& r : runs_) {
    const char letter = r.gen == Gen::a ? (r.exp > 0 ? 'a' : 'A') : (r.exp > 0 ? 'b' : 'B');
    const std::int64_t m = std::llabs(r.exp);
    out += letter;
    if (m > 1) out += "^" + std::to_string(m);
  }
  return out;
}

std::int64_t Word::length() const {
  std::int64_t n = 0;
  for (const Run& r : runs_) n += std::llabs(r.exp);
  return n;
}

std::vector<int> Word::letters() const {
  std::vector<int> out;
  for (const Run& r : runs_) {
    const int code = (r.gen == Gen::a ? 1 : 2) * (r.exp > 0 ? 1 : -1);
    for (std::int64_t i = 0; i < std::llabs(r.exp); ++i) out.push_back(code);
  }
  return out;
}

void Word::append(Gen g, std::int64_t exp) {
  if (exp == 0) return;
  if (!runs_.empty() && runs_.back().gen == g) {
    runs_.back().exp += exp;
    if (runs_.back().exp == 0) runs_.pop_back();
    return;
  }
  runs_.push_back({g, exp});
}

Word& Word::operator*=(const Word& rhs) {
  for (const Run& r : rhs.runs_) append(r.gen, r.exp);
  return *this;
}

Word Word::inverse() const {
  Word w;
  w.runs_.reserve(runs_.size());
  for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) w.runs_.push_back({it->gen, -it->exp});
  return w;
}

Word Word::pow(std::int64_t n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word w;
  for (std::int64_t i = 0; i < std::llabs(n); ++i) w *= base;
  return w;
}

Word commutator(const Word& x, const Word& y) { return x.inverse() * y.inverse() * x * y; }

std::array<std::int64_t, 2> abelianize(const Word& w) {
  std::array<std::int64_t, 2> v{0, 0};
  for (const Run& r : w.runs()) v[static_cast<int>(r.gen)] += r.exp;
  return v;
}

Word cyclic_reduction(const Word& w) {
  std::vector<Run> runs(w.runs().begin(), w.runs().end());
  std::size_t lo = 0, hi = runs.size();
  // Peel matching ends; merge a shared generator at the seam into one run.
  while (hi - lo >= 2 && runs[lo].gen == runs[hi - 1].gen) {
    const std::int64_t e = runs[lo].exp + runs[hi - 1].exp;
    if (e == 0) {
      ++lo;
      --hi;
      continue;
    }
    runs[lo].exp = e;
    --hi;
    break;
  }
  Word out;
  for (std::size_t i = lo; i < hi; ++i) out.append(runs[i].gen, runs[i].exp);
  return out;
}

namespace {

bool cyclic_rotation_equal(const std::vector<int>& x, const std::vector<int>& y) {
  if (x.size() != y.size()) return false;
  if (x.empty()) return true;
  std::vector<int> xx(x);
  xx.insert(xx.end(), x.begin(), x.end());
  for (std::size_t s = 0; s < x.size(); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < y.size() && ok; ++i) ok = xx[s + i] == y[i];
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool conjugate_test(const Word& u, const Word& v) {
  if (abelianize(u) != abelianize(v)) return false;
  return cyclic_rotation_equal(cyclic_reduction(u).letters(), cyclic_reduction(v).letters());
}

bool is_primitive(const Word& w) {
  const auto [p, q] = abelianize(w);
  if (std::gcd(p, q) != 1) return false;
  const Word std_word = primitive_word(Slope::make(p, q));
  return conjugate_test(w, std_word) || conjugate_test(w, std_word.inverse());
}

Word Endo::apply(const Word& w) const {
  Word out;
  for (const Run& r : w.runs()) out *= image(r.gen).pow(r.exp);
  return out;
}

Endo Endo::compose(const Endo& inner) const {
  return Endo(apply(inner.image_a()), apply(inner.image_b()));
}

Mat2 Endo::abel_matrix() const {
  const auto ca = abelianize(img_a_);
  const auto cb = abelianize(img_b_);
  return {ca[0], cb[0], ca[1], cb[1]};
}

std::optional<Automorphism> Automorphism::verified(Endo fwd, Endo inv) {
  if (!fwd.compose(inv).is_identity() || !inv.compose(fwd).is_identity()) return std::nullopt;
  return Automorphism(std::move(fwd), std::move(inv));
}

Automorphism Automorphism::identity() { return Automorphism(Endo(), Endo()); }

Automorphism Automorphism::inner(const Word& h) {
  const Word hi = h.inverse();
  return *verified(Endo(h * Word::a() * hi, h * Word::b() * hi),
                   Endo(hi * Word::a() * h, hi * Word::b() * h));
}

Automorphism Automorphism::compose(const Automorphism& inner) const {
  return Automorphism(fwd_.compose(inner.fwd_), inner.inv_.compose(inv_));
}

Automorphism Automorphism::pow(std::int64_t n) const {
  const Automorphism base = n < 0 ? inverse() : *this;
  Automorphism out = identity();
  for (std::int64_t i = 0; i < std::llabs(n); ++i) out = out.compose(base);
  return out;
}

int Automorphism::orientation() const { return fwd_.abel_matrix().det() > 0 ? 1 : -1; }

Automorphism psi0() {
  return *Automorphism::verified(Endo(Word::b(), Word::parse("BA")), Endo(Word::parse("BA"), Word::a()));
}

Automorphism psi1() {
  return *Automorphism::verified(Endo(Word::b(), Word::a(-1)), Endo(Word::b(-1), Word::a()));
}

Automorphism psi2() {
  return *Automorphism::verified(Endo(Word::a(), Word::parse("ab")), Endo(Word::a(), Word::parse("Ab")));
}

Automorphism psi_minus() {
  return *Automorphism::verified(Endo(Word::a(-1), Word::b()), Endo(Word::a(-1), Word::b()));
}

Automorphism flip_b() {
  return *Automorphism::verified(Endo(Word::a(), Word::b(-1)), Endo(Word::a(), Word::b(-1)));
}

Word random_word(std::mt19937_64& rng, int length) {
  static const int kLetters[4] = {1, -1, 2, -2};
  std::vector<int> letters;
  std::uniform_int_distribution<int> first(0, 3), next(0, 2);
  for (int i = 0; i < length; ++i) {
    if (letters.empty()) {
      letters.push_back(kLetters[first(rng)]);
      continue;
    }
    // three choices avoid the inverse of the previous letter
    std::vector<int> options;
    for (int l : kLetters)
      if (l != -letters.back()) options.push_back(l);
    letters.push_back(options[static_cast<std::size_t>(next(rng))]);
  }
  return Word::from_letters(letters);
}

Automorphism random_automorphism(std::mt19937_64& rng, int steps) {
  const Automorphism gens[6] = {psi1(), psi2(), psi_minus(), psi1().inverse(), psi2().inverse(), flip_b()};
  std::uniform_int_distribution<int> pick(0, 5);
  Automorphism phi = Automorphism::identity();
  for (int i = 0; i < steps; ++i) phi = phi.compose(gens[pick(rng)]);
  return phi;
}

}  // namespace pk
