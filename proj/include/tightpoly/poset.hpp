#ifndef TIGHTPOLY_POSET_HPP
#define TIGHTPOLY_POSET_HPP

// Face posets of regular polytopes, built from a group by the coset
// construction, together with the checks that make a ranked poset an abstract
// polytope and the flatness/tightness tests.
//
// In the regular action of Γ on its own elements a point is a group element
// (equivalently a flag), and the orbits of Γ_i = <x_j : j != i> on points are
// the cosets of Γ_i. Two faces of consecutive rank are incident when the
// cosets share an element. Incidence between faces further apart is the
// transitive closure of the cover relation.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tightpoly/errors.hpp"
#include "tightpoly/group.hpp"
#include "tightpoly/words.hpp"

namespace tightpoly {

using FaceId = std::uint32_t;

class FacePoset {
 public:
  FacePoset() = default;

  /// ranks[f] in -1..rank; covers are (lower, upper) pairs of consecutive
  /// rank. members[f] may be empty for posets not built from a group.
  FacePoset(int rank, std::vector<int> ranks, const std::vector<std::pair<FaceId, FaceId>>& covers,
            std::vector<std::vector<Point>> members = {})
      : rank_(rank), face_rank_(std::move(ranks)), members_(std::move(members)) {
    const std::size_t n = face_rank_.size();
    by_rank_.assign(static_cast<std::size_t>(rank_) + 2, {});
    for (FaceId f = 0; f < n; ++f) {
      const int r = face_rank_[f];
      if (r < -1 || r > rank_) throw InvalidArgument("face rank out of range");
      by_rank_[static_cast<std::size_t>(r + 1)].push_back(f);
    }
    up_.assign(n, {});
    down_.assign(n, {});
    for (auto [lo, hi] : covers) {
      if (lo >= n || hi >= n) throw InvalidArgument("cover refers to a missing face");
      if (face_rank_[hi] != face_rank_[lo] + 1) throw InvalidArgument("covers must join consecutive ranks");
      up_[lo].push_back(hi);
      down_[hi].push_back(lo);
    }
    for (auto& v : up_) normalize(v);
    for (auto& v : down_) normalize(v);
    if (members_.size() != n) members_.assign(n, {});
    compute_reachability();
  }

  int rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return face_rank_.size(); }
  int rank_of(FaceId f) const { return face_rank_.at(f); }
  const std::vector<FaceId>& faces_of_rank(int r) const { return by_rank_.at(static_cast<std::size_t>(r + 1)); }
  std::size_t face_count(int r) const { return faces_of_rank(r).size(); }
  const std::vector<FaceId>& up(FaceId f) const { return up_.at(f); }
  const std::vector<FaceId>& down(FaceId f) const { return down_.at(f); }
  const std::vector<Point>& members(FaceId f) const { return members_.at(f); }

  /// a <= b in the transitive closure of the cover relation.
  bool less_equal(FaceId a, FaceId b) const { return test(above_[a], b); }

  /// Count of faces h of rank r with a <= h <= b.
  std::size_t count_between(FaceId a, FaceId b, int r) const {
    std::size_t n = 0;
    for (FaceId h : faces_of_rank(r))
      if (less_equal(a, h) && less_equal(h, b)) ++n;
    return n;
  }

  std::vector<std::pair<FaceId, FaceId>> covers() const {
    std::vector<std::pair<FaceId, FaceId>> out;
    for (FaceId f = 0; f < size(); ++f)
      for (FaceId g : up_[f]) out.emplace_back(f, g);
    return out;
  }

  friend bool operator==(const FacePoset& a, const FacePoset& b) {
    return a.rank_ == b.rank_ && a.face_rank_ == b.face_rank_ && a.up_ == b.up_;
  }

 private:
  using Bits = std::vector<std::uint64_t>;

  static void normalize(std::vector<FaceId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  static bool test(const Bits& b, FaceId i) { return (b[i / 64] >> (i % 64)) & 1ULL; }

  void compute_reachability() {
    const std::size_t words = (size() + 63) / 64;
    above_.assign(size(), Bits(words, 0));
    for (int r = rank_; r >= -1; --r)
      for (FaceId f : faces_of_rank(r)) {
        above_[f][f / 64] |= 1ULL << (f % 64);
        for (FaceId g : up_[f])
          for (std::size_t w = 0; w < words; ++w) above_[f][w] |= above_[g][w];
      }
  }

  int rank_ = 0;
  std::vector<int> face_rank_;
  std::vector<std::vector<FaceId>> by_rank_;
  std::vector<std::vector<FaceId>> up_, down_;
  std::vector<std::vector<Point>> members_;
  std::vector<Bits> above_;
};

/// Coset poset of the group acting regularly on rep's points. Faces of each
/// rank are numbered by their smallest member.
inline FacePoset build_poset(const PermRep& rep, std::size_t cap = kDefaultElementCap) {
  const int n = rep.ngens();
  if (n < 1) throw InvalidArgument("build_poset needs at least one generator");
  if (rep.degree > cap) throw CapExceeded("poset construction limited to " + std::to_string(cap) + " flags");
  const std::size_t deg = rep.degree;
  constexpr FaceId kUnset = ~FaceId{0};

  std::vector<int> ranks{-1};
  std::vector<std::vector<Point>> members;
  std::vector<Point> everything(deg);
  for (Point p = 0; p < deg; ++p) everything[p] = p;
  members.push_back(everything);

  // face_of[i][p]: the i-face containing point p.
  std::vector<std::vector<FaceId>> face_of(static_cast<std::size_t>(n), std::vector<FaceId>(deg, kUnset));
  for (int i = 0; i < n; ++i) {
    auto& label = face_of[static_cast<std::size_t>(i)];
    for (Point start = 0; start < deg; ++start) {
      if (label[start] != kUnset) continue;
      const FaceId id = static_cast<FaceId>(ranks.size());
      std::vector<Point> orbit{start};
      label[start] = id;
      for (std::size_t k = 0; k < orbit.size(); ++k)
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          const Point q = rep.gens[static_cast<std::size_t>(j)][orbit[k]];
          if (label[q] == kUnset) {
            label[q] = id;
            orbit.push_back(q);
          }
        }
      std::sort(orbit.begin(), orbit.end());
      ranks.push_back(i);
      members.push_back(std::move(orbit));
    }
  }
  const FaceId top = static_cast<FaceId>(ranks.size());
  ranks.push_back(n);
  members.push_back(everything);

  std::vector<std::pair<FaceId, FaceId>> covers;
  for (FaceId f = 1; f < top; ++f) {
    if (ranks[f] == 0) covers.emplace_back(0, f);
    if (ranks[f] == n - 1) covers.emplace_back(f, top);
  }
  for (int i = 0; i + 1 < n; ++i)
    for (Point p = 0; p < deg; ++p)
      covers.emplace_back(face_of[static_cast<std::size_t>(i)][p], face_of[static_cast<std::size_t>(i) + 1][p]);
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
  return FacePoset(n, std::move(ranks), covers, std::move(members));
}

struct PolytopeReport {
  bool bounded = true;
  bool chains = true;
  bool connected = true;
  bool diamond = true;
  /// One message per failing axiom, naming the first offending face or section.
  std::vector<std::string> failures;

  bool ok() const noexcept { return bounded && chains && connected && diamond; }
};

inline std::string face_name(const FacePoset& p, FaceId f) {
  return "face " + std::to_string(f) + " (rank " + std::to_string(p.rank_of(f)) + ")";
}

/// Exhaustive check of the four polytope axioms.
inline PolytopeReport verify_polytope(const FacePoset& poset) {
  PolytopeReport rep;
  const int n = poset.rank();

  // (a) unique least and greatest faces.
  if (poset.face_count(-1) != 1 || poset.face_count(n) != 1) {
    rep.bounded = false;
    rep.failures.push_back("expected exactly one face of rank -1 and one of rank " + std::to_string(n));
  } else {
    const FaceId lo = poset.faces_of_rank(-1).front(), hi = poset.faces_of_rank(n).front();
    for (FaceId f = 0; f < poset.size() && rep.bounded; ++f)
      if (!poset.less_equal(lo, f) || !poset.less_equal(f, hi)) {
        rep.bounded = false;
        rep.failures.push_back(face_name(poset, f) + " is not between the least and greatest faces");
      }
  }

  // (b) every maximal chain meets every rank: no face is a dead end.
  for (FaceId f = 0; f < poset.size() && rep.chains; ++f) {
    const int r = poset.rank_of(f);
    if ((r < n && poset.up(f).empty()) || (r > -1 && poset.down(f).empty())) {
      rep.chains = false;
      rep.failures.push_back("a maximal chain stops at " + face_name(poset, f));
    }
  }

  // (d) diamond condition on every rank-1 section.
  for (int j = 0; j < n && rep.diamond; ++j)
    for (FaceId f : poset.faces_of_rank(j - 1)) {
      std::map<FaceId, int> between;
      for (FaceId h : poset.up(f))
        for (FaceId g : poset.up(h)) ++between[g];
      for (auto [g, count] : between)
        if (count != 2) {
          rep.diamond = false;
          rep.failures.push_back("section " + std::to_string(g) + "/" + std::to_string(f) + " has " +
                                 std::to_string(count) + " middle faces");
          break;
        }
      if (!rep.diamond) break;
    }

  // (c) every section of rank >= 2 is connected once its ends are removed.
  for (FaceId f = 0; f < poset.size() && rep.connected; ++f)
    for (FaceId g = 0; g < poset.size() && rep.connected; ++g) {
      if (poset.rank_of(g) - poset.rank_of(f) < 3 || !poset.less_equal(f, g)) continue;
      std::vector<FaceId> inner;
      for (FaceId h = 0; h < poset.size(); ++h)
        if (h != f && h != g && poset.less_equal(f, h) && poset.less_equal(h, g)) inner.push_back(h);
      if (inner.empty()) continue;
      std::vector<bool> seen(poset.size(), false);
      std::vector<FaceId> stack{inner.front()};
      seen[inner.front()] = true;
      std::size_t reached = 1;
      while (!stack.empty()) {
        const FaceId h = stack.back();
        stack.pop_back();
        for (const auto* nbrs : {&poset.up(h), &poset.down(h)})
          for (FaceId k : *nbrs)
            if (!seen[k] && k != f && k != g && poset.less_equal(f, k) && poset.less_equal(k, g)) {
              seen[k] = true;
              ++reached;
              stack.push_back(k);
            }
      }
      if (reached != inner.size()) {
        rep.connected = false;
        rep.failures.push_back("section " + std::to_string(g) + "/" + std::to_string(f) + " is disconnected");
      }
    }
  return rep;
}

/// All flags as the faces of ranks 0..n-1, sorted lexicographically, with
/// adjacent[flag][j] the index of the unique j-adjacent flag.
struct FlagSet {
  std::vector<std::vector<FaceId>> flags;
  std::vector<std::vector<std::uint32_t>> adjacent;

  std::size_t size() const noexcept { return flags.size(); }
};

/// Number of maximal chains from the least to the greatest face.
inline long long count_flags(const FacePoset& poset) {
  std::vector<long long> ways(poset.size(), 0);
  for (FaceId f : poset.faces_of_rank(-1)) ways[f] = 1;
  for (int r = 0; r <= poset.rank(); ++r)
    for (FaceId f : poset.faces_of_rank(r))
      for (FaceId d : poset.down(f)) ways[f] += ways[d];
  long long total = 0;
  for (FaceId f : poset.faces_of_rank(poset.rank())) total += ways[f];
  return total;
}

inline FlagSet flags_and_adjacency(const FacePoset& poset) {
  const int n = poset.rank();
  if (poset.face_count(-1) != 1 || poset.face_count(n) != 1) throw DiamondViolation("poset is not bounded");
  const FaceId bottom = poset.faces_of_rank(-1).front(), top = poset.faces_of_rank(n).front();
  FlagSet out;
  std::vector<FaceId> chain;
  auto extend = [&](auto&& self, FaceId f) -> void {
    if (poset.rank_of(f) == n - 1) {
      out.flags.push_back(chain);
      return;
    }
    for (FaceId g : poset.up(f)) {
      chain.push_back(g);
      self(self, g);
      chain.pop_back();
    }
  };
  if (n == 0) {
    out.flags.push_back({});
  } else {
    extend(extend, bottom);
  }

  out.adjacent.assign(out.flags.size(), std::vector<std::uint32_t>(static_cast<std::size_t>(n)));
  for (std::size_t k = 0; k < out.flags.size(); ++k) {
    const auto& flag = out.flags[k];
    for (int j = 0; j < n; ++j) {
      const FaceId lower = j == 0 ? bottom : flag[static_cast<std::size_t>(j) - 1];
      const FaceId upper = j == n - 1 ? top : flag[static_cast<std::size_t>(j) + 1];
      std::optional<FaceId> other;
      for (FaceId h : poset.up(lower)) {
        if (h == flag[static_cast<std::size_t>(j)] || !std::binary_search(poset.up(h).begin(), poset.up(h).end(), upper))
          continue;
        if (other) throw DiamondViolation("flag " + std::to_string(k) + " has several " + std::to_string(j) + "-adjacent flags");
        other = h;
      }
      if (!other) throw DiamondViolation("flag " + std::to_string(k) + " has no " + std::to_string(j) + "-adjacent flag");
      std::vector<FaceId> neighbour = flag;
      neighbour[static_cast<std::size_t>(j)] = *other;
      const auto it = std::lower_bound(out.flags.begin(), out.flags.end(), neighbour);
      out.adjacent[k][static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(it - out.flags.begin());
    }
  }
  return out;
}

/// The section G/F re-ranked so that F has rank -1.
inline FacePoset section(const FacePoset& poset, FaceId f, FaceId g) {
  if (!poset.less_equal(f, g)) throw NotComparable("section needs F <= G");
  const int shift = poset.rank_of(f) + 1;
  std::vector<FaceId> kept;
  for (int r = poset.rank_of(f); r <= poset.rank_of(g); ++r)
    for (FaceId h : poset.faces_of_rank(r))
      if (poset.less_equal(f, h) && poset.less_equal(h, g)) kept.push_back(h);
  std::vector<FaceId> renumber(poset.size(), ~FaceId{0});
  std::vector<int> ranks;
  std::vector<std::vector<Point>> members;
  for (FaceId h : kept) {
    renumber[h] = static_cast<FaceId>(ranks.size());
    ranks.push_back(poset.rank_of(h) - shift);
    members.push_back(poset.members(h));
  }
  std::vector<std::pair<FaceId, FaceId>> covers;
  for (FaceId h : kept)
    for (FaceId u : poset.up(h))
      if (renumber[u] != ~FaceId{0}) covers.emplace_back(renumber[h], renumber[u]);
  return FacePoset(poset.rank_of(g) - shift, std::move(ranks), covers, std::move(members));
}

inline FacePoset facet_section(const FacePoset& poset, FaceId facet) {
  return section(poset, poset.faces_of_rank(-1).front(), facet);
}

inline FacePoset vertex_figure(const FacePoset& poset, FaceId vertex) {
  return section(poset, vertex, poset.faces_of_rank(poset.rank()).front());
}

struct SchlafliResult {
  std::optional<SchlafliSymbol> symbol;
  /// When not equivelar: the 1-based position and two different polygon sizes seen there.
  std::optional<std::size_t> position;
  std::pair<std::size_t, std::size_t> sizes{0, 0};

  bool equivelar() const noexcept { return symbol.has_value(); }
};

/// Sizes of the rank-2 sections between (i-2)-faces and incident (i+1)-faces.
inline SchlafliResult combinatorial_schlafli(const FacePoset& poset) {
  SchlafliResult out;
  SchlafliSymbol sym;
  for (int i = 1; i < poset.rank(); ++i) {
    std::optional<std::size_t> seen;
    for (FaceId f : poset.faces_of_rank(i - 2))
      for (FaceId g : poset.faces_of_rank(i + 1)) {
        if (!poset.less_equal(f, g)) continue;
        const std::size_t size = poset.count_between(f, g, i - 1);
        if (!seen) {
          seen = size;
        } else if (*seen != size) {
          out.position = static_cast<std::size_t>(i);
          out.sizes = {*seen, size};
          return out;
        }
      }
    sym.entries.push_back(static_cast<int>(seen.value_or(0)));
  }
  out.symbol = sym;
  return out;
}

/// Every k-face is incident with every m-face.
inline bool is_flat(const FacePoset& poset, int k, int m) {
  if (!(0 <= k && k < m && m <= poset.rank() - 1)) throw InvalidArgument("is_flat needs 0 <= k < m <= n-1");
  for (FaceId f : poset.faces_of_rank(k))
    for (FaceId g : poset.faces_of_rank(m))
      if (!poset.less_equal(f, g)) return false;
  return true;
}

struct TightResult {
  long long flags = 0;
  long long bound = 0;
  bool by_flag_count = false;
  bool by_flatness = false;

  bool tight() const noexcept { return by_flag_count; }
};

/// Tightness by two routes: the flag count 2 p_1 ... p_{n-1}, and
/// (i, i+2)-flatness for 0 <= i <= n-3. The two agree on equivelar
/// polytopes; disagreement throws.
inline TightResult is_tight(const FacePoset& poset) {
  if (!verify_polytope(poset).ok()) throw PreconditionViolated("is_tight needs a polytope");
  const SchlafliResult sym = combinatorial_schlafli(poset);
  if (!sym.equivelar()) throw PreconditionViolated("is_tight needs an equivelar poset");
  TightResult out;
  out.flags = count_flags(poset);
  out.bound = sym.symbol->tight_flag_count();
  out.by_flag_count = out.flags == out.bound;
  out.by_flatness = true;
  for (int i = 0; i + 2 <= poset.rank() - 1; ++i)
    if (!is_flat(poset, i, i + 2)) out.by_flatness = false;
  if (out.by_flag_count != out.by_flatness)
    throw RouteDisagreement("flag count says " + std::string(out.by_flag_count ? "tight" : "not tight") +
                            " but flatness says otherwise (" + std::to_string(out.flags) + " flags, bound " +
                            std::to_string(out.bound) + ")");
  return out;
}

/// The same faces with the order reversed.
inline FacePoset dual(const FacePoset& poset) {
  const int n = poset.rank();
  std::vector<FaceId> renumber(poset.size());
  std::vector<int> ranks;
  std::vector<std::vector<Point>> members;
  for (int r = n; r >= -1; --r)
    for (FaceId f : poset.faces_of_rank(r)) {
      renumber[f] = static_cast<FaceId>(ranks.size());
      ranks.push_back(n - 1 - r);
      members.push_back(poset.members(f));
    }
  std::vector<std::pair<FaceId, FaceId>> covers;
  for (auto [lo, hi] : poset.covers()) covers.emplace_back(renumber[hi], renumber[lo]);
  return FacePoset(n, std::move(ranks), covers, std::move(members));
}

inline constexpr int kPosetSchemaVersion = 1;

/// {schema_version, rank, face_counts (ranks -1..n), incidences, flag_count}.
inline nlohmann::ordered_json poset_to_json(const FacePoset& poset) {
  nlohmann::ordered_json j;
  j["schema_version"] = kPosetSchemaVersion;
  j["rank"] = poset.rank();
  auto counts = nlohmann::ordered_json::array();
  for (int r = -1; r <= poset.rank(); ++r) counts.push_back(poset.face_count(r));
  j["face_counts"] = counts;
  j["face_ranks"] = nlohmann::ordered_json::array();
  for (FaceId f = 0; f < poset.size(); ++f) j["face_ranks"].push_back(poset.rank_of(f));
  auto inc = nlohmann::ordered_json::array();
  for (auto [lo, hi] : poset.covers()) inc.push_back({lo, hi});
  j["incidences"] = inc;
  j["flag_count"] = count_flags(poset);
  return j;
}

inline FacePoset poset_from_json(const nlohmann::ordered_json& j) {
  if (j.at("schema_version").get<int>() != kPosetSchemaVersion) throw InvalidArgument("unsupported poset schema version");
  std::vector<int> ranks = j.at("face_ranks").get<std::vector<int>>();
  std::vector<std::pair<FaceId, FaceId>> covers;
  for (const auto& pair : j.at("incidences")) covers.emplace_back(pair.at(0).get<FaceId>(), pair.at(1).get<FaceId>());
  FacePoset p(j.at("rank").get<int>(), std::move(ranks), covers);
  if (count_flags(p) != j.at("flag_count").get<long long>()) throw InvalidArgument("flag_count does not match incidences");
  return p;
}

}  // namespace tightpoly

#endif  // TIGHTPOLY_POSET_HPP
