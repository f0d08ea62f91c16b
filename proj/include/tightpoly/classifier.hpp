#ifndef TIGHTPOLY_CLASSIFIER_HPP
#define TIGHTPOLY_CLASSIFIER_HPP

// Exhaustive classification of tight regular polyhedra of a given type by
// enumerating the normal subgroups of index 2pq in the string Coxeter group
// [p, q].
//
// The normal subgroups are found by a low-index backtrack over coset tables
// with involutory columns. Entries are decided in row-major order, so each
// subgroup is met exactly once. After every decision the relators are
// scanned at every coset until nothing new follows. Every non-tree edge
// c.x = d contributes the Schreier generator w_c x w_d^-1 of the subgroup as
// an extra relator. Forcing those to close everywhere makes the subgroup act
// trivially, so only normal subgroups survive, and it prunes early.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tightpoly/errors.hpp"
#include "tightpoly/group.hpp"
#include "tightpoly/poset.hpp"
#include "tightpoly/sggi.hpp"
#include "tightpoly/todd_coxeter.hpp"
#include "tightpoly/words.hpp"

namespace tightpoly {

inline constexpr std::size_t kDefaultCensusCap = 128;

namespace detail {

/// Removes adjacent equal letters (involutions) and cancels matching ends.
inline Word reduce_involution_word(const Word& w, bool cyclic) {
  std::vector<Gen> out;
  for (Gen g : w.letters) {
    if (!out.empty() && out.back() == g)
      out.pop_back();
    else
      out.push_back(g);
  }
  if (cyclic) {
    std::size_t lo = 0, hi = out.size();
    while (hi - lo >= 2 && out[lo] == out[hi - 1]) {
      ++lo;
      --hi;
    }
    out = std::vector<Gen>(out.begin() + static_cast<std::ptrdiff_t>(lo), out.begin() + static_cast<std::ptrdiff_t>(hi));
  }
  return Word(std::move(out));
}

class LowIndexNormalSearch {
 public:
  LowIndexNormalSearch(const Presentation& pres, std::size_t index) : pres_(pres), n_(pres.ngens), index_(index) {
    for (const Word& r : pres.relators) {
      const Word w = reduce_involution_word(r, true);
      if (!w.empty()) relators_.push_back(w);
    }
    table_.assign(index_ * static_cast<std::size_t>(n_), kNone);
    words_.assign(index_, Word{});
    // At most one Schreier relator per table entry; keeps references stable.
    dynamic_.reserve(table_.size());
  }

  std::vector<CosetTable> run() {
    if (n_ == 0) {
      if (index_ == 1) results_.push_back(CosetTable{pres_, {}, {}});
      return results_;
    }
    if (propagate()) search();
    return results_;
  }

 private:
  static constexpr Point kNone = std::numeric_limits<Point>::max();

  std::size_t slot(Point c, Gen g) const {
    return static_cast<std::size_t>(c) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(g);
  }
  Point at(Point c, Gen g) const { return table_[slot(c, g)]; }

  void assign(Point c, Gen g, Point d, bool tree) {
    table_[slot(c, g)] = d;
    trail_.push_back(slot(c, g));
    if (c != d) {
      table_[slot(d, g)] = c;
      trail_.push_back(slot(d, g));
    }
    if (!tree) {
      Word schreier = words_[c] * Word{g} * words_[d].inverse();
      schreier = reduce_involution_word(schreier, true);
      if (!schreier.empty()) dynamic_.push_back(std::move(schreier));
    }
  }

  /// Scans w at coset c; deduces one entry when exactly one gap remains.
  /// Returns false on a contradiction; sets `changed` on a deduction.
  bool scan(Point c, const Word& w, bool& changed) {
    const long len = static_cast<long>(w.size());
    Point f = c;
    long i = 0;
    while (i < len && at(f, w[static_cast<std::size_t>(i)]) != kNone) f = at(f, w[static_cast<std::size_t>(i++)]);
    if (i == len) return f == c;
    Point b = c;
    long j = len - 1;
    while (j >= i && at(b, w[static_cast<std::size_t>(j)]) != kNone) b = at(b, w[static_cast<std::size_t>(j--)]);
    if (j < i) return f == b;
    if (i == j) {
      assign(f, w[static_cast<std::size_t>(i)], b, false);
      changed = true;
    }
    return true;
  }

  bool propagate() {
    for (bool changed = true; changed;) {
      changed = false;
      for (Point c = 0; c < count_; ++c) {
        for (const Word& r : relators_)
          if (!scan(c, r, changed)) return false;
        // Schreier relators may be appended while scanning.
        for (std::size_t k = 0; k < dynamic_.size(); ++k)
          if (!scan(c, dynamic_[k], changed)) return false;
      }
    }
    return true;
  }

  void search() {
    std::size_t first = table_.size();
    for (std::size_t s = 0; s < static_cast<std::size_t>(count_) * static_cast<std::size_t>(n_); ++s)
      if (table_[s] == kNone) {
        first = s;
        break;
      }
    if (first == table_.size() || first >= static_cast<std::size_t>(count_) * static_cast<std::size_t>(n_)) {
      if (count_ == index_) {
        CosetTable t{pres_, {}, table_};
        results_.push_back(std::move(t));
      }
      return;
    }
    const Point c = static_cast<Point>(first / static_cast<std::size_t>(n_));
    const Gen g = static_cast<Gen>(first % static_cast<std::size_t>(n_));

    for (Point d = c; d <= count_ && d < index_; ++d) {
      const bool fresh = d == count_;
      if (!fresh && at(d, g) != kNone) continue;
      const std::size_t trail_mark = trail_.size(), dyn_mark = dynamic_.size();
      const Point count_mark = count_;
      if (fresh) {
        words_[d] = words_[c] * Word{g};
        ++count_;
      }
      assign(c, g, d, fresh);
      if (propagate()) search();
      while (trail_.size() > trail_mark) {
        table_[trail_.back()] = kNone;
        trail_.pop_back();
      }
      dynamic_.resize(dyn_mark);
      count_ = count_mark;
    }
  }

  const Presentation& pres_;
  int n_;
  std::size_t index_;
  std::vector<Word> relators_;
  std::vector<Word> dynamic_;
  std::vector<Point> table_;
  std::vector<Word> words_;
  std::vector<std::size_t> trail_;
  Point count_ = 1;
  std::vector<CosetTable> results_;
};

/// BFS renumbering from coset 0, as produced by coset enumeration.
inline CosetTable standardize(const CosetTable& t) {
  const int n = t.ngens();
  const std::size_t size = t.size();
  std::vector<Point> number(size, std::numeric_limits<Point>::max());
  std::vector<Point> order{0};
  number[0] = 0;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (Gen g = 0; g < n; ++g) {
      const Point d = t(order[k], g);
      if (number[d] == std::numeric_limits<Point>::max()) {
        number[d] = static_cast<Point>(order.size());
        order.push_back(d);
      }
    }
  CosetTable out{t.presentation, t.subgroup_gens, std::vector<Point>(t.action.size())};
  for (std::size_t k = 0; k < order.size(); ++k)
    for (Gen g = 0; g < n; ++g)
      out.action[k * static_cast<std::size_t>(n) + static_cast<std::size_t>(g)] = number[t(order[k], g)];
  return out;
}

}  // namespace detail

/// All normal subgroups of exactly the given index, each returned as the
/// standardized coset table of the regular action of the quotient. Sorted
/// lexicographically by table.
inline std::vector<CosetTable> low_index_normal(const Presentation& pres, std::size_t index,
                                                std::size_t cap = kDefaultCensusCap) {
  if (index < 1) throw InvalidArgument("index must be at least 1");
  if (index > cap) throw CapExceeded("index " + std::to_string(index) + " exceeds cap " + std::to_string(cap));
  std::vector<CosetTable> tables = detail::LowIndexNormalSearch(pres, index).run();
  for (CosetTable& t : tables) {
    t = detail::standardize(t);
    perm_rep(t);  // re-checks every relator
  }
  std::sort(tables.begin(), tables.end(), [](const CosetTable& a, const CosetTable& b) { return a.action < b.action; });
  return tables;
}

/// Short stable identifier of a standardized table (FNV-1a, 16 hex digits).
inline std::string kernel_id(const CosetTable& t) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int k = 0; k < 4; ++k) {
      h ^= (v >> (8 * k)) & 0xFFU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(t.ngens()));
  for (Point p : t.action) mix(p);
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) out[static_cast<std::size_t>(k)] = digits[h & 0xFU];
  return out;
}

struct CensusRecord {
  int p = 0, q = 0;
  std::string kernel;
  CosetTable table;
  PermRep rep;
  long long order = 0;
  long long flag_count = 0;
  SggiProfile profile;
  bool polytope = false;
  bool tight = false;
  std::optional<bool> isomorphic_to_gamma;
  std::optional<bool> isomorphic_to_lambda;

  bool orientable() const noexcept { return profile.orientable(); }
};

namespace detail {

inline std::optional<bool> compare_with(const PermRep& rep, const Presentation& model) {
  try {
    return generator_isomorphic(rep, perm_rep(enumerate(model, {})));
  } catch (const ResourceExhausted&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Tight regular polyhedra of type {p, q}: quotients of [p, q] of order 2pq
/// that are string C-groups of exact type {p, q} and give a tight polytope,
/// optionally restricted to one orientability class.
inline std::vector<CensusRecord> census(int p, int q, std::optional<Orientability> filter,
                                        std::size_t cap = kDefaultCensusCap) {
  validate(SchlafliSymbol{p, q});
  const std::size_t index = 2 * static_cast<std::size_t>(p) * static_cast<std::size_t>(q);
  if (index > cap) throw CapExceeded("2pq = " + std::to_string(index) + " exceeds cap " + std::to_string(cap));
  const SchlafliSymbol type{p, q};
  std::vector<CensusRecord> out;
  for (CosetTable& t : low_index_normal(coxeter_presentation(type), index, cap)) {
    CensusRecord r;
    r.p = p;
    r.q = q;
    r.rep = perm_rep(t);
    r.profile = profile(r.rep);
    r.order = r.profile.group_order;
    if (!r.profile.is_string_c_group || r.profile.schlafli != type) continue;
    if (filter && r.profile.orientability != *filter) continue;
    const FacePoset poset = build_poset(r.rep);
    r.polytope = verify_polytope(poset).ok();
    if (!r.polytope) continue;
    r.flag_count = count_flags(poset);
    const SchlafliResult comb = combinatorial_schlafli(poset);
    r.tight = comb.symbol == type && is_tight(poset).tight();
    if (!r.tight) continue;
    if (p % 2 == 0 || q % 2 == 0) r.isomorphic_to_gamma = detail::compare_with(r.rep, gamma_tuple_presentation(type));
    if (q == 4 && p % 3 == 0 && (p / 3) % 2 == 1)
      r.isomorphic_to_lambda = detail::compare_with(r.rep, lambda_k_presentation(p / 3));
    r.kernel = kernel_id(t);
    r.table = std::move(t);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<CensusRecord> classify_tight(int p, int q, bool require_orientable,
                                                std::size_t cap = kDefaultCensusCap) {
  return census(p, q, require_orientable ? std::optional{Orientability::Orientable} : std::nullopt, cap);
}

inline std::vector<CensusRecord> census_nonorientable(int p, int q, std::size_t cap = kDefaultCensusCap) {
  return census(p, q, Orientability::NonOrientable, cap);
}

/// Whether classify_tight(p, q, orientable) should be nonempty: both even, or
/// the odd one has the other as an even divisor of twice itself.
inline bool tight_orientable_expected(int p, int q) {
  if (p % 2 == 0 && q % 2 == 0) return true;
  if (p % 2 == 1 && q % 2 == 0) return (2 * p) % q == 0;
  if (q % 2 == 1 && p % 2 == 0) return (2 * q) % p == 0;
  return false;
}

struct RotationSquareCheck {
  bool central = false;
  bool divides = false;
  bool holds() const noexcept { return central && divides; }
};

/// In the rotation subgroup <s1, s2> (s1 = x0 x1, s2 = x1 x2) of a tight
/// orientable polyhedron of type {p, q} with p odd: s2^2 is central and q | 2p.
inline RotationSquareCheck rotation_square_check(const PermRep& rep, int p, int q,
                                                 std::size_t cap = kDefaultElementCap) {
  const std::vector<Perm> rotations{evaluate(rep, Word{0, 1}), evaluate(rep, Word{1, 2})};
  const ElementSet plus = closure_of(rotations, rep.degree, cap);
  RotationSquareCheck out;
  out.central = is_central_in(rep, Word{1, 2, 1, 2}, plus);
  out.divides = (2 * p) % q == 0;
  return out;
}

}  // namespace tightpoly

#endif  // TIGHTPOLY_CLASSIFIER_HPP
