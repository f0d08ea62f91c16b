#ifndef TIGHTPOLY_GROUP_HPP
#define TIGHTPOLY_GROUP_HPP

// Finite-group computations on a permutation representation: element
// enumeration, subgroup closure, element orders, conjugation and centrality
// tests, and checks that an assignment of generator images extends to a
// homomorphism.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tightpoly/errors.hpp"
#include "tightpoly/perm.hpp"
#include "tightpoly/words.hpp"

namespace tightpoly {

inline constexpr std::size_t kDefaultElementCap = 5000;

/// A letter of a word in a free group: generator index and sign.
struct Letter {
  Gen gen = 0;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Word with inverse letters, for groups whose generators are not involutions
/// (rotation subgroups, generator images).
struct SignedWord {
  std::vector<Letter> letters;

  SignedWord() = default;
  SignedWord(const Word& w) {  // NOLINT(google-explicit-constructor): involution words embed directly
    for (Gen g : w.letters) letters.push_back({g, false});
  }

  static SignedWord gen(Gen g, int exponent = 1) {
    SignedWord w;
    for (int i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) w.letters.push_back({g, exponent < 0});
    return w;
  }

  SignedWord inverse() const {
    SignedWord out;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back({it->gen, !it->inverse});
    return out;
  }

  SignedWord power(int k) const {
    const SignedWord base = k < 0 ? inverse() : *this;
    SignedWord out;
    for (int i = 0; i < (k < 0 ? -k : k); ++i) out.letters.insert(out.letters.end(), base.letters.begin(), base.letters.end());
    return out;
  }

  friend SignedWord operator*(const SignedWord& a, const SignedWord& b) {
    SignedWord out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
  }

  friend bool operator==(const SignedWord&, const SignedWord&) = default;
};

/// [a, b] = a^-1 b^-1 a b.
inline SignedWord commutator(const SignedWord& a, const SignedWord& b) { return a.inverse() * b.inverse() * a * b; }

/// A presentation in free-group words (used for rotation subgroups).
struct SignedPresentation {
  int ngens = 0;
  std::vector<SignedWord> relators;
};

inline SignedPresentation to_signed(const Presentation& pres) {
  SignedPresentation out;
  out.ngens = pres.ngens;
  for (const Word& r : pres.relators) out.relators.emplace_back(r);
  return out;
}

inline Perm evaluate(const std::vector<Perm>& gens, std::size_t degree, const SignedWord& w) {
  Perm acc = Perm::identity(degree);
  for (const Letter& l : w.letters) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= gens.size()) throw InvalidArgument("word letter out of range");
    acc = acc * (l.inverse ? gens[static_cast<std::size_t>(l.gen)].inverse() : gens[static_cast<std::size_t>(l.gen)]);
  }
  return acc;
}

inline Perm evaluate(const PermRep& rep, const SignedWord& w) { return evaluate(rep.gens, rep.degree, w); }

/// The elements of a finite permutation group with O(1) membership lookup.
/// Element 0 is the identity; the rest appear in breadth-first order.
class ElementSet {
 public:
  ElementSet() = default;

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Perm>& elements() const noexcept { return elements_; }
  const Perm& operator[](std::size_t i) const { return elements_[i]; }
  bool contains(const Perm& p) const { return index_.find(p) != index_.end(); }
  std::optional<std::size_t> index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Adds p if absent; returns true when it was new.
  bool insert(const Perm& p) { return insert_indexed(p).second; }

  /// Index of p after inserting it if absent, and whether it was new.
  std::pair<std::size_t, bool> insert_indexed(const Perm& p) {
    const auto [it, fresh] = index_.try_emplace(p, elements_.size());
    if (fresh) elements_.push_back(p);
    return {it->second, fresh};
  }

  std::size_t intersection_size(const ElementSet& other) const {
    const ElementSet& small = size() <= other.size() ? *this : other;
    const ElementSet& big = size() <= other.size() ? other : *this;
    std::size_t n = 0;
    for (const Perm& p : small.elements_)
      if (big.contains(p)) ++n;
    return n;
  }

 private:
  std::vector<Perm> elements_;
  std::unordered_map<Perm, std::size_t, PermHash> index_;
};

/// Breadth-first closure of the group generated by `gens`.
inline ElementSet closure_of(const std::vector<Perm>& gens, std::size_t degree, std::size_t cap = kDefaultElementCap) {
  ElementSet set;
  set.insert(Perm::identity(degree));
  for (std::size_t k = 0; k < set.size(); ++k) {
    for (const Perm& g : gens) {
      if (set.insert(set[k] * g) && set.size() > cap)
        throw CapExceeded("group closure exceeded " + std::to_string(cap) + " elements");
    }
  }
  return set;
}

/// Γ_I = <ρ_i : i in I>.
inline ElementSet closure(const PermRep& rep, const std::vector<Gen>& gens, std::size_t cap = kDefaultElementCap) {
  std::vector<Perm> chosen;
  for (Gen g : gens) {
    if (g < 0 || g >= rep.ngens()) throw InvalidArgument("generator index out of range");
    chosen.push_back(rep.gens[static_cast<std::size_t>(g)]);
  }
  return closure_of(chosen, rep.degree, cap);
}

inline std::vector<Gen> all_generators(int n) {
  std::vector<Gen> out(static_cast<std::size_t>(n));
  for (Gen i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i;
  return out;
}

inline long long element_order(const PermRep& rep, const SignedWord& w) { return evaluate(rep, w).order(); }

enum class ConjugationClass { Fixes, Inverts, Neither };

inline const char* to_string(ConjugationClass c) {
  switch (c) {
    case ConjugationClass::Fixes: return "fixes";
    case ConjugationClass::Inverts: return "inverts";
    case ConjugationClass::Neither: return "neither";
  }
  return "?";
}

/// Classifies g w g^-1 as w, w^-1 or neither. An involution w is reported as
/// Fixes whenever it is fixed.
inline ConjugationClass conjugation_class(const PermRep& rep, const SignedWord& g, const SignedWord& w) {
  const Perm gp = evaluate(rep, g);
  const Perm wp = evaluate(rep, w);
  const Perm conj = gp * wp * gp.inverse();
  if (conj == wp) return ConjugationClass::Fixes;
  if (conj == wp.inverse()) return ConjugationClass::Inverts;
  return ConjugationClass::Neither;
}

inline bool is_central_in(const PermRep& rep, const SignedWord& w, const ElementSet& subgroup) {
  const Perm wp = evaluate(rep, w);
  for (const Perm& h : subgroup.elements())
    if (wp * h != h * wp) return false;
  return true;
}

/// True when every generator of the ambient rep maps the subgroup to itself
/// under conjugation.
inline bool is_normalized_by(const std::vector<Perm>& gens, const ElementSet& subgroup) {
  for (const Perm& g : gens) {
    const Perm gi = g.inverse();
    for (const Perm& h : subgroup.elements())
      if (!subgroup.contains(gi * h * g)) return false;
  }
  return true;
}

struct GeneratorMapResult {
  bool homomorphism = false;
  bool surjective = false;
  /// Index of the first relator whose image is not the identity.
  std::optional<std::size_t> failing_relator;

  explicit operator bool() const noexcept { return homomorphism; }
};

/// Checks whether generator i of `src` -> images[i] (a word in the generators
/// of dst) extends to a homomorphism, and whether it is onto <dst gens>.
inline GeneratorMapResult check_generator_map(const SignedPresentation& src, const PermRep& dst,
                                              const std::vector<SignedWord>& images,
                                              std::size_t cap = kDefaultElementCap) {
  if (images.size() != static_cast<std::size_t>(src.ngens))
    throw InvalidArgument("need exactly one image per source generator");
  std::vector<Perm> image_perms;
  for (const SignedWord& w : images) image_perms.push_back(evaluate(dst, w));
  GeneratorMapResult result;
  for (std::size_t i = 0; i < src.relators.size(); ++i) {
    if (!evaluate(image_perms, dst.degree, src.relators[i]).is_identity()) {
      result.failing_relator = i;
      return result;
    }
  }
  result.homomorphism = true;
  result.surjective = closure_of(image_perms, dst.degree, cap).size() == closure_of(dst.gens, dst.degree, cap).size();
  return result;
}

inline GeneratorMapResult check_generator_map(const Presentation& src, const PermRep& dst,
                                              const std::vector<SignedWord>& images,
                                              std::size_t cap = kDefaultElementCap) {
  return check_generator_map(to_signed(src), dst, images, cap);
}

/// Whether a.gens[i] -> b.gens[i] extends to an isomorphism. The diagonal
/// subgroup <(a_i, b_i)> of A x B is the graph of a well-defined map exactly
/// when it has |A| elements, and that map is bijective when also |A| = |B|.
inline bool generator_isomorphic(const PermRep& a, const PermRep& b, std::size_t cap = kDefaultElementCap) {
  if (a.ngens() != b.ngens()) return false;
  const std::size_t order_a = closure_of(a.gens, a.degree, cap).size();
  if (order_a != closure_of(b.gens, b.degree, cap).size()) return false;
  std::vector<Perm> diagonal;
  for (std::size_t i = 0; i < a.gens.size(); ++i) {
    std::vector<Point> img(a.degree + b.degree);
    for (Point x = 0; x < a.degree; ++x) img[x] = a.gens[i][x];
    for (Point x = 0; x < b.degree; ++x) img[a.degree + x] = static_cast<Point>(a.degree) + b.gens[i][x];
    diagonal.emplace_back(std::move(img));
  }
  return closure_of(diagonal, a.degree + b.degree, cap).size() == order_a;
}

/// Generator i -> generator i.
inline std::vector<SignedWord> identity_images(int n) {
  std::vector<SignedWord> out;
  for (Gen i = 0; i < n; ++i) out.push_back(SignedWord::gen(i));
  return out;
}

/// The whole group of a rep together with the right-regular action of each
/// generator on element indices. Subgroups generated by subsets of the
/// generators become bitmasks over element indices, which makes the
/// exhaustive intersection checks cheap.
class CayleyIndex {
 public:
  explicit CayleyIndex(const PermRep& rep, std::size_t cap = kDefaultElementCap) {
    right_.resize(rep.gens.size());
    if (rep.degree <= cap && try_regular(rep)) return;
    elements_.insert(Perm::identity(rep.degree));
    for (std::size_t k = 0; k < elements_.size(); ++k)
      for (std::size_t g = 0; g < rep.gens.size(); ++g) {
        const auto [index, fresh] = elements_.insert_indexed(elements_[k] * rep.gens[g]);
        if (fresh && elements_.size() > cap)
          throw CapExceeded("group closure exceeded " + std::to_string(cap) + " elements");
        right_[g].push_back(static_cast<std::uint32_t>(index));
      }
  }

  std::size_t order() const noexcept { return elements_.size(); }
  const ElementSet& elements() const noexcept { return elements_; }

  /// Whether every relation among the generators has even length, i.e. the
  /// Cayley graph is bipartite.
  bool even_words_have_index_two() const {
    std::vector<int> side(elements_.size(), -1);
    side[0] = 0;
    std::vector<std::uint32_t> queue{0};
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (const auto& column : right_) {
        const std::uint32_t next = column[queue[k]];
        if (side[next] < 0) {
          side[next] = 1 - side[queue[k]];
          queue.push_back(next);
        } else if (side[next] == side[queue[k]]) {
          return false;
        }
      }
    return !right_.empty();
  }

  /// Membership mask of <gens>, found by walking the Cayley graph from the identity.
  std::vector<bool> subgroup_mask(const std::vector<Gen>& gens) const {
    std::vector<bool> mask(elements_.size(), false);
    std::vector<std::uint32_t> queue{0};
    mask[0] = true;
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (Gen g : gens) {
        const std::uint32_t next = right_[static_cast<std::size_t>(g)][queue[k]];
        if (!mask[next]) {
          mask[next] = true;
          queue.push_back(next);
        }
      }
    return mask;
  }

 private:
  /// Regular action: the element taking point 0 to p is unique, so elements
  /// are indexed by points and no products need hashing.
  bool try_regular(const PermRep& rep) {
    const std::size_t n = rep.degree;
    if (n == 0 || rep.gens.empty()) return false;
    constexpr std::uint32_t kUnseen = ~std::uint32_t{0};
    std::vector<std::uint32_t> position(n, kUnseen);
    std::vector<Point> order{0};
    std::vector<Perm> element{Perm::identity(n)};
    position[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (const Perm& g : rep.gens) {
        const Point next = g[order[k]];
        if (position[next] != kUnseen) continue;
        position[next] = static_cast<std::uint32_t>(order.size());
        order.push_back(next);
        element.push_back(element[k] * g);
      }
    if (order.size() != n) return false;
    // Closed under right multiplication iff e_p * g = e_{p^g} for all p, g.
    for (std::size_t k = 0; k < n; ++k)
      for (const Perm& g : rep.gens) {
        const Perm& target = element[position[g[order[k]]]];
        for (Point x = 0; x < n; ++x)
          if (g[element[k][x]] != target[x]) return false;
      }
    for (std::size_t k = 0; k < n; ++k) elements_.insert(element[k]);
    for (std::size_t g = 0; g < rep.gens.size(); ++g) {
      right_[g].resize(n);
      for (std::size_t k = 0; k < n; ++k) right_[g][k] = position[rep.gens[g][order[k]]];
    }
    return true;
  }

  ElementSet elements_;
  std::vector<std::vector<std::uint32_t>> right_;
};

}  // namespace tightpoly

#endif  // TIGHTPOLY_GROUP_HPP
