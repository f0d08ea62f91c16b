#ifndef TIGHTPOLY_SGGI_HPP
#define TIGHTPOLY_SGGI_HPP

// Verdicts on a group with distinguished generators: the sggi property,
// Schläfli orders, the intersection condition, the quotient criterion and
// orientability.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tightpoly/group.hpp"

namespace tightpoly {

struct SggiCheck {
  bool is_sggi = false;
  /// Generators acting trivially (degenerate but still involutory).
  std::vector<Gen> identity_generators;
};

inline SggiCheck check_sggi(const PermRep& rep) {
  SggiCheck out;
  out.is_sggi = true;
  const int n = rep.ngens();
  for (Gen i = 0; i < n; ++i) {
    const Perm& g = rep.gens[static_cast<std::size_t>(i)];
    if (g.is_identity()) out.identity_generators.push_back(i);
    if (!(g * g).is_identity()) out.is_sggi = false;
  }
  for (Gen i = 0; i < n; ++i)
    for (Gen j = i + 2; j < n; ++j) {
      const Perm prod = rep.gens[static_cast<std::size_t>(i)] * rep.gens[static_cast<std::size_t>(j)];
      if (!(prod * prod).is_identity()) out.is_sggi = false;
    }
  return out;
}

/// Orders of x_{i-1} x_i. Entries can be 1 for degenerate groups.
inline SchlafliSymbol schlafli_of_group(const PermRep& rep) {
  SchlafliSymbol sym;
  for (Gen i = 1; i < rep.ngens(); ++i)
    sym.entries.push_back(static_cast<int>(element_order(rep, Word{i - 1, i})));
  return sym;
}

inline std::vector<Gen> subset_from_mask(unsigned mask) {
  std::vector<Gen> out;
  for (Gen i = 0; mask >> i; ++i)
    if ((mask >> i) & 1U) out.push_back(i);
  return out;
}

inline std::string format_subset(const std::vector<Gen>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

struct IntersectionResult {
  bool holds = true;
  /// First violating pair, subsets ordered by their bitmask value.
  std::optional<std::pair<std::vector<Gen>, std::vector<Gen>>> witness;

  explicit operator bool() const noexcept { return holds; }
};

/// Γ_I ∩ Γ_J = Γ_{I∩J} for every pair of generator subsets.
inline IntersectionResult check_intersection_condition(const CayleyIndex& group, int ngens) {
  if (ngens > 16) throw CapExceeded("intersection check limited to 16 generators");
  const unsigned subsets = 1U << static_cast<unsigned>(ngens);
  std::vector<std::vector<bool>> masks(subsets);
  std::vector<std::size_t> sizes(subsets);
  for (unsigned s = 0; s < subsets; ++s) {
    masks[s] = group.subgroup_mask(subset_from_mask(s));
    sizes[s] = static_cast<std::size_t>(std::count(masks[s].begin(), masks[s].end(), true));
  }
  const std::size_t order = group.order();
  for (unsigned a = 0; a < subsets; ++a)
    for (unsigned b = a + 1; b < subsets; ++b) {
      if ((a & b) == a || (a & b) == b) continue;
      std::size_t common = 0;
      for (std::size_t e = 0; e < order; ++e)
        if (masks[a][e] && masks[b][e]) ++common;
      if (common != sizes[a & b]) return {false, std::make_pair(subset_from_mask(a), subset_from_mask(b))};
    }
  return {};
}

inline IntersectionResult check_intersection_condition(const PermRep& rep, std::size_t cap = kDefaultElementCap) {
  return check_intersection_condition(CayleyIndex(rep, cap), rep.ngens());
}

enum class QuotientSide { Facet, VertexFigure };

/// If rep maps onto the string C-group `quotient` by x_i -> λ_i and the map
/// is one-to-one on the facet (or vertex-figure) subgroup, rep is a string
/// C-group. The map is onto, so injectivity is certified by equal subgroup
/// orders.
inline bool quotient_criterion(const PermRep& rep, const PermRep& quotient, QuotientSide side,
                               std::size_t cap = kDefaultElementCap) {
  if (rep.ngens() != quotient.ngens()) throw InvalidArgument("quotient must have the same number of generators");
  const int n = rep.ngens();
  std::vector<Gen> gens;
  for (Gen i = side == QuotientSide::Facet ? 0 : 1; i < (side == QuotientSide::Facet ? n - 1 : n); ++i) gens.push_back(i);
  return closure(rep, gens, cap).size() == closure(quotient, gens, cap).size();
}

enum class Orientability { Orientable, NonOrientable };

inline const char* to_string(Orientability o) {
  return o == Orientability::Orientable ? "orientable" : "non-orientable";
}

/// Index of the even-word subgroup <x_i x_j>: 2 means orientable.
inline Orientability orientability(const CayleyIndex& group) {
  return group.even_words_have_index_two() ? Orientability::Orientable : Orientability::NonOrientable;
}

inline Orientability orientability(const PermRep& rep, std::size_t cap = kDefaultElementCap) {
  return orientability(CayleyIndex(rep, cap));
}

struct SggiProfile {
  int rank = 0;
  long long group_order = 0;
  bool is_sggi = false;
  std::vector<Gen> identity_generators;
  SchlafliSymbol schlafli;
  bool is_string_c_group = false;
  std::optional<std::pair<std::vector<Gen>, std::vector<Gen>>> intersection_witness;
  Orientability orientability = Orientability::NonOrientable;

  bool orientable() const noexcept { return orientability == Orientability::Orientable; }
};

inline SggiProfile profile(const PermRep& rep, std::size_t cap = kDefaultElementCap) {
  SggiProfile p;
  p.rank = rep.ngens();
  const CayleyIndex group(rep, cap);
  p.group_order = static_cast<long long>(group.order());
  const SggiCheck sggi = check_sggi(rep);
  p.is_sggi = sggi.is_sggi;
  p.identity_generators = sggi.identity_generators;
  p.schlafli = schlafli_of_group(rep);
  const IntersectionResult ic = check_intersection_condition(group, rep.ngens());
  // Generators of a string C-group are genuine involutions.
  p.is_string_c_group = p.is_sggi && p.identity_generators.empty() && ic.holds;
  p.intersection_witness = ic.witness;
  p.orientability = orientability(group);
  return p;
}

}  // namespace tightpoly

#endif  // TIGHTPOLY_SGGI_HPP
