#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pk {

enum class Gen : std::uint8_t { a = 0, b = 1 };

// One maximal block gen^exp of a reduced word; exp != 0.
struct Run {
  Gen gen;
  std::int64_t exp;
  friend bool operator==(const Run&, const Run&) = default;
};

// Freely reduced element of F_2 = <a, b>, stored run-length encoded.
// Invariant: adjacent runs have different generators and nonzero exponents.
class Word {
 public:
  Word() = default;

  static Word gen(Gen g, std::int64_t exp = 1);
  static Word a(std::int64_t exp = 1) { return gen(Gen::a, exp); }
  static Word b(std::int64_t exp = 1) { return gen(Gen::b, exp); }

  // Letters: +1 = a, -1 = a^-1, +2 = b, -2 = b^-1.
  static Word from_letters(std::span<const int> letters);

  // Alphabet {a, A, b, B}; a letter may carry an explicit "^n" (n may be negative).
  // "" and "1" denote the identity. Throws std::invalid_argument.
  static Word parse(std::string_view text);

  std::string str() const;

  std::span<const Run> runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  std::int64_t length() const;
  std::vector<int> letters() const;

  Word inverse() const;
  Word pow(std::int64_t n) const;

  // Appends gen^exp, cancelling against the tail.
  void append(Gen g, std::int64_t exp);
  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Run> runs_;
};

// [x, y] = x^-1 y^-1 x y.
Word commutator(const Word& x, const Word& y);

// Exponent sums (a, b).
std::array<std::int64_t, 2> abelianize(const Word& w);

// Cyclically reduced conjugate of w.
Word cyclic_reduction(const Word& w);

bool conjugate_test(const Word& u, const Word& v);

// Primitive iff conjugate to the standard word of its slope or to its inverse.
bool is_primitive(const Word& w);

// 2x2 integer matrix, row-major: {m00, m01, m10, m11}.
struct Mat2 {
  std::int64_t m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  std::int64_t det() const { return m00 * m11 - m01 * m10; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
  }
  std::array<std::int64_t, 2> apply(std::array<std::int64_t, 2> v) const {
    return {m00 * v[0] + m01 * v[1], m10 * v[0] + m11 * v[1]};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// Endomorphism of F_2 given by the images of a and b.
class Endo {
 public:
  Endo() : img_a_(Word::a()), img_b_(Word::b()) {}
  Endo(Word image_a, Word image_b) : img_a_(std::move(image_a)), img_b_(std::move(image_b)) {}

  const Word& image_a() const { return img_a_; }
  const Word& image_b() const { return img_b_; }
  const Word& image(Gen g) const { return g == Gen::a ? img_a_ : img_b_; }

  Word apply(const Word& w) const;
  // (*this) o inner.
  Endo compose(const Endo& inner) const;
  bool is_identity() const { return img_a_ == Word::a() && img_b_ == Word::b(); }
  // Action on abelianization; columns are ab(image_a), ab(image_b).
  Mat2 abel_matrix() const;

  friend bool operator==(const Endo&, const Endo&) = default;

 private:
  Word img_a_;
  Word img_b_;
};

// An endomorphism paired with a two-sided inverse that has been checked on a and b.
class Automorphism {
 public:
  // Nullopt unless fwd o inv and inv o fwd are the identity.
  static std::optional<Automorphism> verified(Endo fwd, Endo inv);

  static Automorphism identity();
  static Automorphism inner(const Word& h);  // g -> h g h^-1

  const Endo& map() const { return fwd_; }
  const Endo& inverse_map() const { return inv_; }
  Word apply(const Word& w) const { return fwd_.apply(w); }
  Word apply_inverse(const Word& w) const { return inv_.apply(w); }

  Automorphism inverse() const { return Automorphism(inv_, fwd_); }
  // (*this) o inner.
  Automorphism compose(const Automorphism& inner) const;
  Automorphism pow(std::int64_t n) const;
  // +1 preserves the conjugacy class of [a, b], -1 sends it to [b, a].
  int orientation() const;

 private:
  Automorphism(Endo fwd, Endo inv) : fwd_(std::move(fwd)), inv_(std::move(inv)) {}
  Endo fwd_;
  Endo inv_;
};

Automorphism psi0();       // a -> b, b -> b^-1 a^-1
Automorphism psi1();       // a -> b, b -> a^-1
Automorphism psi2();       // a -> a, b -> a b
Automorphism psi_minus();  // a -> a^-1, b -> b
Automorphism flip_b();     // a -> a, b -> b^-1

// Reduced word of exactly `length` letters, uniform over non-cancelling letter choices.
Word random_word(std::mt19937_64& rng, int length);
// Product of `steps` random factors from {psi1, psi2, psi_minus} and their inverses.
Automorphism random_automorphism(std::mt19937_64& rng, int steps);

}  // namespace pk
