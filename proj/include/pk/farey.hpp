#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pk/words.hpp"

namespace pk {

// Point p/q of Q u {1/0}; gcd(|p|, q) = 1, q > 0 or (p, q) = (1, 0).
class Slope {
 public:
  // Reduces and normalises sign. Throws on (0, 0).
  static Slope make(std::int64_t p, std::int64_t q);
  static Slope infinity() { return Slope(1, 0); }
  // Accepts "p/q", "n", "inf", "1/0".
  static Slope parse(const std::string& text);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  bool is_infinity() const { return q_ == 0; }
  std::int64_t height() const { return (p_ < 0 ? -p_ : p_) + q_; }
  std::string str() const;

  // Order by value; infinity is largest.
  friend bool value_less(const Slope& x, const Slope& y);
  friend bool operator==(const Slope&, const Slope&) = default;
  friend auto operator<=>(const Slope& x, const Slope& y) {
    return std::pair(x.p_, x.q_) <=> std::pair(y.p_, y.q_);
  }

 private:
  Slope(std::int64_t p, std::int64_t q) : p_(p), q_(q) {}
  std::int64_t p_;
  std::int64_t q_;
};

// R/L turns descending from 1/1, mirrored (R <-> L) for negative slopes. Empty for 0, 1, -1, 1/0.
std::string stern_brocot_path(const Slope& s);

// SL(2, Z) matrix with first column (p, q).
Mat2 stern_brocot_matrix(const Slope& s);

// Automorphism whose image of a is primitive_word(s); its abelianization matrix has first
// column (p, q) for s >= 0 or s = 1/0, and (-p, -q) for s < 0.
Automorphism outer_rep(const Slope& s);

// Positive words from the Euclid descent; negative slopes use b -> b^-1.
Word primitive_word(const Slope& s);

// Slopes ordered by (height, larger value first); the first `count` of them.
std::vector<Slope> farey_order(std::size_t count);

struct TriComplex {
  int k = 0;
  int radius = 0;  // 0 for the closed complexes k <= 5
  std::vector<std::string> vertex_labels;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> triangles;  // counter-clockwise

  long euler_characteristic() const {
    return static_cast<long>(vertex_labels.size()) - static_cast<long>(edges.size()) +
           static_cast<long>(triangles.size());
  }
  // Number of triangles incident to vertex v.
  int triangle_degree(int v) const;
  // Number of triangles containing the edge.
  int edge_multiplicity(const std::array<int, 2>& e) const;
};

// k <= 5: vertices are classes of +-(p, q) mod k. k >= 6: ball of given radius in the
// triangulation with k triangles at each vertex.
TriComplex quotient_complex(int k, int radius = 3);

struct Generator {
  Slope slope;
  Word base;  // primitive word; the generator is base^k
  int power;
  Word word() const { return base.pow(power); }
};

// Spanning tree of the quotient complex lifted to the Farey graph from 1/0.
std::vector<Generator> normal_generators(int k, int radius = 3);

// Hand-entered generator tables for 2 <= k <= 5: vertex and base word. Empty otherwise.
std::vector<std::pair<Slope, Word>> tabulated_generators(int k);

}  // namespace pk
