#ifndef TIGHTPOLY_TODD_COXETER_HPP
#define TIGHTPOLY_TODD_COXETER_HPP

// Coset enumeration for presentations over involutory generators.
//
// Relator-scanning (HLT) with immediate deduction and union-find coincidence
// processing. Because every generator is an involution a single column per
// generator suffices: setting c.x = d also sets d.x = c.
//
// The closed table is renumbered into standard form (cosets in order of first
// appearance when the table is read row by row), so the output depends only
// on the subgroup, not on the order in which cosets were defined.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "tightpoly/errors.hpp"
#include "tightpoly/perm.hpp"
#include "tightpoly/words.hpp"

namespace tightpoly {

inline constexpr std::size_t kDefaultMaxCosets = 100000;

/// Default coset budget, raised by TIGHTPOLY_MAX_COSETS when set.
inline std::size_t default_max_cosets() {
  if (const char* env = std::getenv("TIGHTPOLY_MAX_COSETS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > kDefaultMaxCosets) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxCosets;
}

/// A closed coset table in standard form. Coset 0 is the subgroup itself.
struct CosetTable {
  Presentation presentation;
  std::vector<Gen> subgroup_gens;
  std::vector<Point> action;  // row-major, size() * ngens()

  int ngens() const noexcept { return presentation.ngens; }
  std::size_t size() const noexcept {
    return presentation.ngens == 0 ? 1 : action.size() / static_cast<std::size_t>(presentation.ngens);
  }
  Point operator()(Point coset, Gen g) const {
    return action[static_cast<std::size_t>(coset) * static_cast<std::size_t>(ngens()) + static_cast<std::size_t>(g)];
  }

  friend bool operator==(const CosetTable&, const CosetTable&) = default;
};

namespace detail {

class HltEnumerator {
 public:
  HltEnumerator(const Presentation& pres, std::size_t max_cosets) : pres_(pres), n_(pres.ngens), max_(max_cosets) {
    if (max_ < 1) throw InvalidArgument("coset budget must be >= 1");
    if (n_ < 0) throw InvalidArgument("negative generator count");
    new_coset();
  }

  std::vector<Point> run(const std::vector<Gen>& subgroup_gens) {
    for (Gen g : subgroup_gens) scan_and_fill(0, Word{g});
    for (Point c = 0; c < parent_.size(); ++c) {
      for (const Word& r : pres_.relators) {
        if (!alive(c)) break;
        scan_and_fill(c, r);
      }
      if (!alive(c)) continue;
      for (Gen g = 0; g < n_; ++g)
        if (at(c, g) == kNone) define(c, g);
    }
    return standardize();
  }

 private:
  static constexpr Point kNone = std::numeric_limits<Point>::max();

  Point& at(Point c, Gen g) { return table_[static_cast<std::size_t>(c) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(g)]; }
  bool alive(Point c) const { return parent_[c] == c; }

  Point new_coset() {
    if (parent_.size() >= max_)
      throw BudgetExceeded("coset enumeration exceeded budget of " + std::to_string(max_) + " cosets");
    const Point c = static_cast<Point>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + static_cast<std::size_t>(n_), kNone);
    return c;
  }

  void define(Point c, Gen g) {
    const Point d = new_coset();
    at(c, g) = d;
    at(d, g) = c;
  }

  Point rep(Point c) {
    Point r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const Point next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(Point a, Point b, std::vector<Point>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(Point a, Point b) {
    std::vector<Point> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Point e = queue[qi];
      for (Gen g = 0; g < n_; ++g) {
        const Point f = at(e, g);
        if (f == kNone) continue;
        at(f, g) = kNone;
        const Point e1 = rep(e), f1 = rep(f);
        if (at(e1, g) != kNone) {
          merge(f1, at(e1, g), queue);
        } else if (at(f1, g) != kNone) {
          merge(e1, at(f1, g), queue);
        } else {
          at(e1, g) = f1;
          at(f1, g) = e1;
        }
      }
    }
  }

  void scan_and_fill(Point c, const Word& w) {
    if (w.empty()) return;
    Point f = c, b = c;
    long i = 0, j = static_cast<long>(w.size()) - 1;
    for (;;) {
      while (i <= j && at(f, w[static_cast<std::size_t>(i)]) != kNone) f = at(f, w[static_cast<std::size_t>(i++)]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && at(b, w[static_cast<std::size_t>(j)]) != kNone) b = at(b, w[static_cast<std::size_t>(j--)]);
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        const Gen g = w[static_cast<std::size_t>(i)];
        at(f, g) = b;
        at(b, g) = f;
        return;
      }
      define(f, w[static_cast<std::size_t>(i)]);
    }
  }

  std::vector<Point> standardize() {
    std::vector<Point> number(parent_.size(), kNone);
    std::vector<Point> order{0};
    number[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (Gen g = 0; g < n_; ++g) {
        const Point d = at(order[k], g);
        if (d == kNone || !alive(d)) throw InternalError("coset table not closed after enumeration");
        if (number[d] == kNone) {
          number[d] = static_cast<Point>(order.size());
          order.push_back(d);
        }
      }
    }
    std::vector<Point> out(order.size() * static_cast<std::size_t>(n_));
    for (std::size_t k = 0; k < order.size(); ++k)
      for (Gen g = 0; g < n_; ++g) out[k * static_cast<std::size_t>(n_) + static_cast<std::size_t>(g)] = number[at(order[k], g)];
    return out;
  }

  const Presentation& pres_;
  int n_;
  std::size_t max_;
  std::vector<Point> table_;
  std::vector<Point> parent_;
};

}  // namespace detail

/// Enumerates the cosets of <x_i : i in subgroup_gens>. Throws BudgetExceeded
/// rather than returning a partial table.
inline CosetTable enumerate(const Presentation& pres, std::vector<Gen> subgroup_gens,
                            std::size_t max_cosets = default_max_cosets()) {
  for (Gen g : subgroup_gens)
    if (g < 0 || g >= pres.ngens) throw InvalidArgument("subgroup generator out of range");
  std::sort(subgroup_gens.begin(), subgroup_gens.end());
  subgroup_gens.erase(std::unique(subgroup_gens.begin(), subgroup_gens.end()), subgroup_gens.end());
  detail::HltEnumerator e(pres, max_cosets);
  CosetTable t;
  t.action = e.run(subgroup_gens);
  t.presentation = pres;
  t.subgroup_gens = std::move(subgroup_gens);
  return t;
}

inline long long group_order(const Presentation& pres, std::size_t max_cosets = default_max_cosets()) {
  return static_cast<long long>(enumerate(pres, {}, max_cosets).size());
}

/// Follows w from coset c.
inline Point trace(const CosetTable& t, Point c, const Word& w) {
  for (Gen g : w.letters) c = t(c, g);
  return c;
}

/// Permutation images of the generators on the cosets. Re-scans every relator
/// from every coset; a failure throws RelatorViolation.
inline PermRep perm_rep(const CosetTable& t) {
  const std::size_t n = t.size();
  PermRep rep;
  rep.degree = n;
  for (Gen g = 0; g < t.ngens(); ++g) {
    std::vector<Point> img(n);
    for (Point c = 0; c < n; ++c) img[c] = t(c, g);
    rep.gens.emplace_back(std::move(img));
  }
  for (const Word& r : t.presentation.relators)
    for (Point c = 0; c < n; ++c)
      if (trace(t, c, r) != c)
        throw RelatorViolation("relator does not close at coset " + std::to_string(c));
  for (Gen g : t.subgroup_gens)
    if (t(0, g) != 0) throw RelatorViolation("subgroup generator moves coset 0");
  return rep;
}

/// One line per coset: "c g0→d0 g1→d1 ...".
inline std::string dump_table(const CosetTable& t) {
  std::string out;
  for (Point c = 0; c < t.size(); ++c) {
    out += std::to_string(c);
    for (Gen g = 0; g < t.ngens(); ++g) out += " " + std::to_string(g) + "→" + std::to_string(t(c, g));
    out += "\n";
  }
  return out;
}

}  // namespace tightpoly

#endif  // TIGHTPOLY_TODD_COXETER_HPP
