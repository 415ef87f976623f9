#include "pk/enumerate.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "pk/farey.hpp"
#include "pk/lattice.hpp"

namespace pk {

Presentation::Presentation(std::vector<Word> rels) : relators(std::move(rels)) {
  for (const auto& r : relators)
    if (r.empty()) throw std::invalid_argument("presentation: empty relator");
}

Presentation Presentation::parse(const std::string& text) {
  std::vector<Word> rels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (!item.empty()) rels.push_back(Word::parse(item));
  }
  return Presentation(std::move(rels));
}

Presentation Presentation::primitive_powers(int k) {
  std::vector<Word> rels;
  for (const auto& g : normal_generators(k)) rels.push_back(g.word());
  return Presentation(std::move(rels));
}

std::string Presentation::str() const {
  std::string out = "<a, b | ";
  for (std::size_t i = 0; i < relators.size(); ++i) out += (i ? ", " : "") + relators[i].str();
  return out + ">";
}

namespace {

constexpr int kUndef = -1;

int column(int letter) {
  switch (letter) {
    case 1: return 0;
    case -1: return 1;
    case 2: return 2;
    default: return 3;
  }
}

int inverse_column(int col) { return col ^ 1; }

class CosetTable {
 public:
  explicit CosetTable(std::size_t limit) : limit_(limit) { add(); }

  bool overflow() const { return overflow_; }
  std::size_t size() const { return rows_.size(); }
  bool live(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }
  int get(int c, int col) const { return rows_[static_cast<std::size_t>(c)][static_cast<std::size_t>(col)]; }

  // New coset c^col; false on overflow.
  bool define(int c, int col) {
    if (rows_.size() >= limit_) {
      overflow_ = true;
      return false;
    }
    const int d = add();
    set(c, col, d);
    set(d, inverse_column(col), c);
    return true;
  }

  void scan_and_fill(int c, const std::vector<int>& cols) {
    int f = c, b = c;
    int i = 0, j = static_cast<int>(cols.size()) - 1;
    for (;;) {
      while (i <= j && get(f, cols[static_cast<std::size_t>(i)]) != kUndef) f = get(f, cols[static_cast<std::size_t>(i++)]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && get(b, inverse_column(cols[static_cast<std::size_t>(j)])) != kUndef)
        b = get(b, inverse_column(cols[static_cast<std::size_t>(j--)]));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        // deduction closes the cycle
        set(f, cols[static_cast<std::size_t>(i)], b);
        set(b, inverse_column(cols[static_cast<std::size_t>(i)]), f);
        return;
      }
      if (!define(f, cols[static_cast<std::size_t>(i)])) return;
    }
  }

  std::size_t live_count() const {
    std::size_t n = 0;
    for (std::size_t c = 0; c < rows_.size(); ++c) n += live(static_cast<int>(c)) ? 1 : 0;
    return n;
  }

  // Live cosets renumbered in breadth-first order from coset 0.
  std::vector<CosetRow> compact() const {
    std::vector<int> label(rows_.size(), kUndef), order{0};
    label[0] = 0;
    for (std::size_t h = 0; h < order.size(); ++h)
      for (int col = 0; col < 4; ++col) {
        const int d = get(order[h], col);
        if (d != kUndef && label[static_cast<std::size_t>(d)] == kUndef) {
          label[static_cast<std::size_t>(d)] = static_cast<int>(order.size());
          order.push_back(d);
        }
      }
    std::vector<CosetRow> out;
    for (const int c : order) {
      CosetRow row{};
      for (int col = 0; col < 4; ++col) row[static_cast<std::size_t>(col)] = label[static_cast<std::size_t>(get(c, col))];
      out.push_back(row);
    }
    return out;
  }

 private:
  int add() {
    rows_.push_back({kUndef, kUndef, kUndef, kUndef});
    parent_.push_back(static_cast<int>(rows_.size() - 1));
    return static_cast<int>(rows_.size() - 1);
  }

  void set(int c, int col, int d) { rows_[static_cast<std::size_t>(c)][static_cast<std::size_t>(col)] = d; }

  int rep(int c) {
    int r = c;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(c)] != r) {
      const int next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

  void merge(int k, int l, std::vector<int>& queue) {
    const int x = rep(k), y = rep(l);
    if (x == y) return;
    const int lo = std::min(x, y), hi = std::max(x, y);
    parent_[static_cast<std::size_t>(hi)] = lo;
    queue.push_back(hi);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int g = queue[i];
      for (int col = 0; col < 4; ++col) {
        const int d = get(g, col);
        if (d == kUndef) continue;
        set(d, inverse_column(col), kUndef);
        const int mu = rep(g), nu = rep(d);
        if (get(mu, col) != kUndef) {
          merge(nu, get(mu, col), queue);
        } else if (get(nu, inverse_column(col)) != kUndef) {
          merge(mu, get(nu, inverse_column(col)), queue);
        } else {
          set(mu, col, nu);
          set(nu, inverse_column(col), mu);
        }
      }
    }
  }

  std::size_t limit_;
  bool overflow_ = false;
  std::vector<CosetRow> rows_;
  std::vector<int> parent_;
};

}  // namespace

CosetEnumeration todd_coxeter(const Presentation& p, std::size_t coset_limit) {
  if (coset_limit == 0) throw std::invalid_argument("todd_coxeter: coset_limit must be at least 1");
  std::vector<std::vector<int>> rels;
  for (const auto& r : p.relators) {
    std::vector<int> cols;
    for (const int l : r.letters()) cols.push_back(column(l));
    rels.push_back(std::move(cols));
  }
  CosetTable t(coset_limit);
  CosetEnumeration out;
  for (int c = 0; c < static_cast<int>(t.size()); ++c) {
    for (const auto& r : rels) {
      if (!t.live(c)) break;
      t.scan_and_fill(c, r);
      if (t.overflow()) break;
    }
    for (int col = 0; col < 4 && t.live(c) && !t.overflow(); ++col)
      if (t.get(c, col) == kUndef) t.define(c, col);
    if (t.overflow()) {
      out.overflow = true;
      out.defined = t.size();
      return out;
    }
  }
  out.defined = t.size();
  out.order = t.live_count();
  out.table = t.compact();
  return out;
}

std::vector<mpz_class> abelian_invariants(const Presentation& p) {
  std::vector<IntVec> rows;
  for (const auto& r : p.relators) {
    const auto e = abelianize(r);
    rows.push_back({mpz_class(static_cast<long>(e[0])), mpz_class(static_cast<long>(e[1]))});
  }
  const SnfResult s = rows.empty() ? SnfResult{} : snf(rows);
  std::vector<mpz_class> out;
  for (const auto& d : s.divisors)
    if (d != 1) out.push_back(d);
  for (std::size_t i = s.rank; i < 2; ++i) out.push_back(0);
  return out;
}

std::optional<MultTable> multiplication_table(const Presentation& p, std::size_t coset_limit) {
  const CosetEnumeration e = todd_coxeter(p, coset_limit);
  if (e.overflow) return std::nullopt;
  MultTable m;
  m.order = e.order;
  m.abelian = abelian_invariants(p);
  // words along the breadth-first tree of the compact table
  m.words.assign(m.order, Word());
  std::vector<bool> seen(m.order, false);
  seen[0] = true;
  std::vector<int> queue{0};
  const Word gens[4] = {Word::a(), Word::a(-1), Word::b(), Word::b(-1)};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (int col = 0; col < 4; ++col) {
      const int d = e.table[static_cast<std::size_t>(queue[h])][static_cast<std::size_t>(col)];
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = true;
        m.words[static_cast<std::size_t>(d)] = m.words[static_cast<std::size_t>(queue[h])] * gens[col];
        queue.push_back(d);
      }
    }
  // x * y: act on coset x by the letters of y
  m.mul.assign(m.order, std::vector<int>(m.order));
  for (std::size_t y = 0; y < m.order; ++y) {
    const std::vector<int> letters = m.words[y].letters();
    for (std::size_t x = 0; x < m.order; ++x) {
      int c = static_cast<int>(x);
      for (const int l : letters) c = e.table[static_cast<std::size_t>(c)][static_cast<std::size_t>(column(l))];
      m.mul[x][y] = c;
    }
  }
  for (std::size_t x = 0; x < m.order; ++x) {
    std::size_t k = 1;
    for (int c = static_cast<int>(x); c != 0; c = m.mul[static_cast<std::size_t>(c)][x]) ++k;
    ++m.order_counts[k];
  }
  return m;
}

IsoCheck iso_order_exponent_check(const MultTable& x, const MultTable& y) {
  if (x.order != y.order)
    return {false, "orders differ: " + std::to_string(x.order) + " vs " + std::to_string(y.order)};
  if (x.order_counts != y.order_counts) return {false, "element-order multisets differ"};
  if (x.abelian != y.abelian) return {false, "abelian invariants differ"};
  return {true, "consistent with isomorphism"};
}

}  // namespace pk
