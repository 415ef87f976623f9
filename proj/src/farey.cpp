#include "pk/farey.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

namespace pk {

Slope Slope::make(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) throw std::invalid_argument("slope 0/0 is undefined");
  const std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return Slope(p, q);
}

Slope Slope::parse(const std::string& text) {
  if (text == "inf" || text == "oo" || text == "infinity") return infinity();
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return make(std::stoll(text), 1);
    return make(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed slope '" + text + "'");
  }
}

std::string Slope::str() const {
  if (q_ == 0) return "1/0";
  if (q_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "/" + std::to_string(q_);
}

bool value_less(const Slope& x, const Slope& y) {
  if (x.is_infinity()) return false;
  if (y.is_infinity()) return true;
  return x.p_ * y.q_ < y.p_ * x.q_;
}

std::string stern_brocot_path(const Slope& s) {
  std::string path;
  if (s.is_infinity() || s.p() == 0) return path;
  std::int64_t p = std::llabs(s.p()), q = s.q();
  while (p != q) {
    if (p > q) {
      path += 'R';
      p -= q;
    } else {
      path += 'L';
      q -= p;
    }
  }
  if (s.p() < 0)
    for (char& c : path) c = c == 'R' ? 'L' : 'R';
  return path;
}

namespace {

const Mat2 kShiftRight{1, 1, 0, 1};  // abelianization of a -> a, b -> ab
const Mat2 kShiftLeft{1, 0, 1, 1};   // abelianization of a -> ab, b -> b

// Euclid descent of p/q > 0 to 1/0: 'R' when p > q, 'L' otherwise.
std::string descent(std::int64_t p, std::int64_t q) {
  std::string steps;
  while (q != 0) {
    if (p > q) {
      steps += 'R';
      p -= q;
    } else {
      steps += 'L';
      q -= p;
    }
  }
  return steps;
}

Automorphism shift_left() {
  return *Automorphism::verified(Endo(Word::parse("ab"), Word::b()), Endo(Word::parse("aB"), Word::b()));
}

}  // namespace

Mat2 stern_brocot_matrix(const Slope& s) {
  if (s.is_infinity()) return Mat2{};
  if (s.p() == 0) return Mat2{0, -1, 1, 0};
  Mat2 m{};
  for (char c : descent(std::llabs(s.p()), s.q())) m = m * (c == 'R' ? kShiftRight : kShiftLeft);
  if (s.p() < 0) {
    // diag(1,-1) m diag(1,-1), negated: first column (p, q), determinant kept.
    m = Mat2{-m.m00, m.m01, m.m10, -m.m11};
  }
  return m;
}

Automorphism outer_rep(const Slope& s) {
  if (s.is_infinity()) return Automorphism::identity();
  if (s.p() == 0) return psi1();
  Automorphism phi = Automorphism::identity();
  for (char c : descent(std::llabs(s.p()), s.q())) phi = phi.compose(c == 'R' ? psi2() : shift_left());
  if (s.p() < 0) phi = flip_b().compose(phi).compose(flip_b());
  return phi;
}

Word primitive_word(const Slope& s) { return outer_rep(s).apply(Word::a()); }

namespace {

struct Vec2 {
  std::int64_t x, y;
};

std::int64_t det(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }

Vec2 vec(const Slope& s) { return {s.p(), s.q()}; }

// (height, larger value first)
bool lift_less(const Slope& x, const Slope& y) {
  if (x.height() != y.height()) return x.height() < y.height();
  return value_less(y, x);
}

// (height, Stern-Brocot path with right turns first)
bool queue_less(const Slope& x, const Slope& y) {
  if (x.height() != y.height()) return x.height() < y.height();
  std::string px = stern_brocot_path(x), py = stern_brocot_path(y);
  for (auto* p : {&px, &py})
    for (char& c : *p) c = c == 'R' ? '0' : '1';
  if (px != py) return px < py;
  return value_less(y, x);
}

// Bezout partner y0 with det(x, y0) = 1.
Vec2 farey_partner(Vec2 x) {
  // extended Euclid on (x.x, x.y)
  std::int64_t old_r = x.x, r = x.y, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t qt = old_r / r;
    std::tie(old_r, r) = std::pair(r, old_r - qt * r);
    std::tie(old_s, s) = std::pair(s, old_s - qt * s);
    std::tie(old_t, t) = std::pair(t, old_t - qt * t);
  }
  // old_s * x.x + old_t * x.y = old_r = +-1; det(x, (u, v)) = x.x v - x.y u.
  Vec2 y{-old_t, old_s};
  if (old_r < 0) y = {old_t, -old_s};
  if (det(x, y) != 1) throw std::logic_error("farey_partner: not coprime");
  return y;
}

// Among the Farey neighbours y0 + n*x of x with n = residue mod period, the least under
// lift_less. period == 0 means only n = residue.
Slope least_neighbour(Vec2 x, Vec2 y0, std::int64_t residue, std::int64_t period) {
  auto at = [&](std::int64_t n) { return Slope::make(y0.x + n * x.x, y0.y + n * x.y); };
  if (period == 0) return at(residue);
  // Height is convex in n; minimisers sit near zeros of either coordinate.
  std::vector<std::int64_t> centres;
  if (x.x != 0) centres.push_back(-y0.x / x.x);
  if (x.y != 0) centres.push_back(-y0.y / x.y);
  const std::int64_t lo = *std::min_element(centres.begin(), centres.end()) - 2 * period - 2;
  const std::int64_t hi = *std::max_element(centres.begin(), centres.end()) + 2 * period + 2;
  std::int64_t start = lo + ((residue - lo) % period + period) % period;
  std::optional<Slope> best;
  for (std::int64_t n = start; n <= hi; n += period) {
    const Slope s = at(n);
    if (!best || lift_less(s, *best)) best = s;
  }
  return *best;
}

using ClassKey = std::pair<int, int>;

ClassKey class_mod(const Slope& s, int k) {
  auto md = [k](std::int64_t v) { return static_cast<int>(((v % k) + k) % k); };
  const ClassKey c1{md(s.p()), md(s.q())};
  const ClassKey c2{md(-s.p()), md(-s.q())};
  return std::min(c1, c2);
}

ClassKey class_mod(Vec2 v, int k) {
  auto md = [k](std::int64_t x) { return static_cast<int>(((x % k) + k) % k); };
  const ClassKey c1{md(v.x), md(v.y)};
  const ClassKey c2{md(-v.x), md(-v.y)};
  return std::min(c1, c2);
}

// Breadth-first lift over the closed complexes k <= 5.
std::vector<Slope> lift_closed(int k) {
  std::vector<Slope> out{Slope::infinity()};
  std::set<ClassKey> seen{class_mod(Slope::infinity(), k)};
  std::deque<Slope> queue{Slope::infinity()};
  while (!queue.empty()) {
    const Slope s = queue.front();
    queue.pop_front();
    const Vec2 x = vec(s);
    const Vec2 y0 = farey_partner(x);
    std::map<ClassKey, Slope> fresh;
    for (std::int64_t r = 0; r < k; ++r) {
      const Slope cand = least_neighbour(x, y0, r, k);
      const ClassKey c = class_mod(cand, k);
      if (seen.count(c)) continue;
      auto it = fresh.find(c);
      if (it == fresh.end() || lift_less(cand, it->second)) fresh.insert_or_assign(c, cand);
    }
    std::vector<Slope> children;
    for (const auto& [c, t] : fresh) children.push_back(t);
    std::sort(children.begin(), children.end(), queue_less);
    for (const Slope& t : children) {
      seen.insert(class_mod(t, k));
      out.push_back(t);
      queue.push_back(t);
    }
  }
  return out;
}

struct Ball {
  int vertex_count = 0;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::vector<int>> links;  // ccw; cyclic for interior vertices
  std::vector<int> depth;
};

// Layered disc of the triangulation with k >= 6 triangles per vertex.
Ball build_ball(int k, int radius) {
  Ball ball;
  std::vector<int> tri_count;
  auto new_vertex = [&](int d) {
    tri_count.push_back(0);
    ball.depth.push_back(d);
    return ball.vertex_count++;
  };
  auto add_tri = [&](int u, int v, int w) {
    ball.triangles.push_back({u, v, w});
    ++tri_count[u];
    ++tri_count[v];
    ++tri_count[w];
  };
  const int root = new_vertex(0);
  std::vector<int> ring;
  if (radius >= 1) {
    for (int i = 0; i < k; ++i) ring.push_back(new_vertex(1));
    for (int i = 0; i < k; ++i) add_tri(root, ring[i], ring[(i + 1) % k]);
  }
  for (int layer = 2; layer <= radius; ++layer) {
    const int m = static_cast<int>(ring.size());
    std::vector<int> apex(m);
    for (int i = 0; i < m; ++i) apex[i] = new_vertex(layer);
    std::vector<int> before(m);
    for (int i = 0; i < m; ++i) before[i] = tri_count[ring[i]];
    std::vector<int> next_ring;
    for (int i = 0; i < m; ++i) {
      const int v = ring[i];
      const int prev = ring[(i + m - 1) % m];
      const int extra = k - before[i] - 3;
      if (extra < 0) throw std::logic_error("build_ball: layer does not close for this k");
      std::vector<int> fan{prev, apex[(i + m - 1) % m]};
      for (int j = 0; j < extra; ++j) {
        const int x = new_vertex(layer);
        fan.push_back(x);
        next_ring.push_back(x);
      }
      fan.push_back(apex[i]);
      next_ring.push_back(apex[i]);
      // The last triangle (v, apex[i], ring[i+1]) is added by ring[i+1] as its first.
      for (std::size_t j = 0; j + 1 < fan.size(); ++j) add_tri(v, fan[j], fan[j + 1]);
    }
    ring = std::move(next_ring);
  }
  // ccw successor maps from the triangles, then chain them.
  std::vector<std::map<int, int>> succ(ball.vertex_count);
  for (const auto& t : ball.triangles)
    for (int r = 0; r < 3; ++r) succ[t[r]][t[(r + 1) % 3]] = t[(r + 2) % 3];
  ball.links.resize(ball.vertex_count);
  for (int v = 0; v < ball.vertex_count; ++v) {
    if (succ[v].empty()) continue;
    // Start from a neighbour with no predecessor when the link is a path.
    std::set<int> targets;
    for (const auto& [x, y] : succ[v]) targets.insert(y);
    int start = succ[v].begin()->first;
    for (const auto& [x, y] : succ[v])
      if (!targets.count(x)) start = x;
    std::vector<int> link{start};
    for (auto it = succ[v].find(start); it != succ[v].end() && it->second != start;
         it = succ[v].find(it->second))
      link.push_back(it->second);
    ball.links[v] = std::move(link);
  }
  return ball;
}

struct BallLift {
  Ball ball;
  std::vector<Slope> lift;   // per vertex
  std::vector<int> order;    // breadth-first visiting order
};

BallLift lift_ball(int k, int radius) {
  BallLift out{build_ball(k, radius), {}, {}};
  const Ball& ball = out.ball;
  std::vector<std::optional<Slope>> lift(ball.vertex_count);
  std::vector<int> parent(ball.vertex_count, -1);
  lift[0] = Slope::infinity();
  std::deque<int> queue{0};
  out.order.push_back(0);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const auto& link = ball.links[v];
    if (static_cast<int>(link.size()) != k) continue;  // boundary vertex of the ball
    const Vec2 x = vec(*lift[v]);
    // Reference direction: the parent, or the first link vertex lifted to the Bezout partner.
    int offset = 0;
    Vec2 y_ref = farey_partner(x);
    if (parent[v] >= 0) {
      offset = static_cast<int>(std::find(link.begin(), link.end(), parent[v]) - link.begin());
      y_ref = vec(*lift[parent[v]]);
    }
    const std::int64_t sign = det(x, y_ref);
    const Vec2 step{sign * x.x, sign * x.y};
    std::vector<std::pair<Slope, int>> children;
    for (int j = 0; j < k; ++j) {
      const int w = link[(offset + j) % k];
      if (lift[w]) continue;
      const Slope s = least_neighbour(step, y_ref, j, k);
      lift[w] = s;
      parent[w] = v;
      children.emplace_back(s, w);
    }
    std::sort(children.begin(), children.end(),
              [](const auto& l, const auto& r) { return queue_less(l.first, r.first); });
    for (const auto& [s, w] : children) {
      out.order.push_back(w);
      queue.push_back(w);
    }
  }
  for (auto& l : lift) out.lift.push_back(*l);
  return out;
}

void check_k(int k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
}

}  // namespace

std::vector<Slope> farey_order(std::size_t count) {
  std::vector<Slope> out{Slope::infinity()};
  for (std::int64_t h = 1; out.size() < count; ++h) {
    std::vector<Slope> level;
    for (std::int64_t q = 1; q <= h; ++q) {
      const std::int64_t p = h - q;
      if (std::gcd(p, q) != 1) continue;
      level.push_back(Slope::make(p, q));
      if (p != 0) level.push_back(Slope::make(-p, q));
    }
    std::sort(level.begin(), level.end(), lift_less);
    for (const Slope& s : level) {
      if (out.size() == count) break;
      out.push_back(s);
    }
  }
  if (out.size() > count) out.erase(out.begin() + static_cast<std::ptrdiff_t>(count), out.end());
  return out;
}

int TriComplex::triangle_degree(int v) const {
  int n = 0;
  for (const auto& t : triangles) n += (t[0] == v) + (t[1] == v) + (t[2] == v);
  return n;
}

int TriComplex::edge_multiplicity(const std::array<int, 2>& e) const {
  int n = 0;
  for (const auto& t : triangles)
    for (int r = 0; r < 3; ++r) {
      const int u = t[r], w = t[(r + 1) % 3];
      n += (u == e[0] && w == e[1]) || (u == e[1] && w == e[0]);
    }
  return n;
}

TriComplex quotient_complex(int k, int radius) {
  check_k(k);
  TriComplex cx;
  cx.k = k;
  if (k <= 5) {
    // Vertex classes come with their breadth-first lifts.
    const std::vector<Slope> lifts = lift_closed(k);
    std::map<ClassKey, int> index;
    for (const Slope& s : lifts) {
      index.emplace(class_mod(s, k), static_cast<int>(cx.vertex_labels.size()));
      cx.vertex_labels.push_back(s.str());
    }
    // Oriented Farey triangles (x, y, -(x+y)) with det(x, y) = 1 mod k, up to rotation.
    std::set<std::array<int, 3>> tris;
    std::set<std::array<int, 2>> edges;
    for (int x0 = 0; x0 < k; ++x0)
      for (int x1 = 0; x1 < k; ++x1)
        for (int y0 = 0; y0 < k; ++y0)
          for (int y1 = 0; y1 < k; ++y1) {
            if ((((x0 * y1 - x1 * y0) % k) + k) % k != 1 % k) continue;
            const Vec2 x{x0, x1}, y{y0, y1}, z{-(x0 + y0), -(x1 + y1)};
            std::array<int, 3> t{index.at(class_mod(x, k)), index.at(class_mod(y, k)),
                                 index.at(class_mod(z, k))};
            const auto rot = std::min({t, std::array{t[1], t[2], t[0]}, std::array{t[2], t[0], t[1]}});
            tris.insert(rot);
            for (int r = 0; r < 3; ++r)
              edges.insert({std::min(t[r], t[(r + 1) % 3]), std::max(t[r], t[(r + 1) % 3])});
          }
    cx.triangles.assign(tris.begin(), tris.end());
    cx.edges.assign(edges.begin(), edges.end());
    return cx;
  }
  cx.radius = radius;
  const BallLift bl = lift_ball(k, radius);
  for (const Slope& s : bl.lift) cx.vertex_labels.push_back(s.str());
  cx.triangles = bl.ball.triangles;
  std::set<std::array<int, 2>> edges;
  for (const auto& t : cx.triangles)
    for (int r = 0; r < 3; ++r) edges.insert({std::min(t[r], t[(r + 1) % 3]), std::max(t[r], t[(r + 1) % 3])});
  cx.edges.assign(edges.begin(), edges.end());
  return cx;
}

std::vector<Generator> normal_generators(int k, int radius) {
  check_k(k);
  std::vector<Slope> slopes;
  if (k <= 5) {
    slopes = lift_closed(k);
  } else {
    const BallLift bl = lift_ball(k, radius);
    for (int v : bl.order) slopes.push_back(bl.lift[v]);
  }
  std::vector<Generator> out;
  for (const Slope& s : slopes) out.push_back({s, primitive_word(s), k});
  return out;
}

std::vector<std::pair<Slope, Word>> tabulated_generators(int k) {
  if (k < 2 || k > 5) return {};
  static const std::vector<std::pair<std::string, std::string>> rows = {
      {"1/0", "a"},    {"0", "b"},        {"1", "ab"},     {"-1", "aB"},         {"2", "a^2b"},      {"1/2", "ab^2"},
      {"-2", "a^2B"}, {"-1/2", "aB^2"}, {"3/2", "a^2bab"}, {"-2/3", "aBaB^2"}, {"5/2", "a^3ba^2b"}, {"-2/5", "aB^2aB^3"}};
  static const std::size_t count[6] = {0, 0, 3, 4, 6, 12};
  std::vector<std::pair<Slope, Word>> out;
  for (std::size_t i = 0; i < count[k]; ++i) out.emplace_back(Slope::parse(rows[i].first), Word::parse(rows[i].second));
  return out;
}

}  // namespace pk
