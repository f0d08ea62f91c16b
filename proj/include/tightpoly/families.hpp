#ifndef TIGHTPOLY_FAMILIES_HPP
#define TIGHTPOLY_FAMILIES_HPP

// End-to-end construction and verification of the tight families: the
// orientable groups Γ(p_1, ..., p_{n-1}) on admissible tuples, the
// non-orientable Λ(k), plus the flat amalgamation property, the explicit
// permutation model of the rotation group for odd/even/odd rank-4 types and
// the splitting at an entry equal to 2.

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tightpoly/group.hpp"
#include "tightpoly/poset.hpp"
#include "tightpoly/sggi.hpp"
#include "tightpoly/todd_coxeter.hpp"
#include "tightpoly/words.hpp"

namespace tightpoly {

/// Everything the pipeline learns about one group acting regularly.
struct GroupAnalysis {
  PermRep rep;
  SggiProfile profile;
  PolytopeReport polytope;
  long long flag_count = 0;
  std::optional<SchlafliSymbol> combinatorial_type;
  /// Only computed for equivelar polytopes.
  std::optional<TightResult> tight;

  bool is_tight() const noexcept { return tight && tight->tight(); }
};

inline GroupAnalysis analyze(PermRep rep, std::size_t cap = kDefaultElementCap) {
  GroupAnalysis a;
  a.profile = profile(rep, cap);
  const FacePoset poset = build_poset(rep, cap);
  a.polytope = verify_polytope(poset);
  a.flag_count = count_flags(poset);
  const SchlafliResult sym = combinatorial_schlafli(poset);
  a.combinatorial_type = sym.symbol;
  if (a.polytope.ok() && sym.equivelar()) a.tight = is_tight(poset);
  a.rep = std::move(rep);
  return a;
}

inline GroupAnalysis analyze(const Presentation& pres, std::size_t max_cosets = default_max_cosets(),
                             std::size_t cap = kDefaultElementCap) {
  return analyze(perm_rep(enumerate(pres, {}, max_cosets)), cap);
}

enum class Family { Gamma, Lambda, Census };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Gamma: return "gamma";
    case Family::Lambda: return "lambda";
    case Family::Census: return "census";
  }
  return "?";
}

struct Claim {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct FamilyVerdict {
  SchlafliSymbol input;
  Family family = Family::Gamma;
  Presentation presentation;
  long long group_order = 0;
  long long expected_order = 0;
  GroupAnalysis analysis;
  std::vector<Claim> claims;
  double ms = 0.0;

  bool pass() const {
    for (const Claim& c : claims)
      if (!c.pass) return false;
    return !claims.empty();
  }
  const Claim* claim(const std::string& name) const {
    for (const Claim& c : claims)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline std::string describe_symbol(const std::optional<SchlafliSymbol>& s) {
  return s ? "{" + to_string(*s) + "}" : "not equivelar";
}

/// Claims shared by every family: order, type, C-group, polytope axioms,
/// flag count, combinatorial type and tightness.
inline void add_common_claims(FamilyVerdict& v) {
  const GroupAnalysis& a = v.analysis;
  v.claims.push_back({"order", v.group_order == v.expected_order,
                      std::to_string(v.group_order) + " vs expected " + std::to_string(v.expected_order)});
  v.claims.push_back({"schlafli", a.profile.schlafli == v.input,
                      "{" + to_string(a.profile.schlafli) + "} vs {" + to_string(v.input) + "}"});
  std::string ic = a.profile.is_string_c_group ? "intersection condition holds" : "not a string C-group";
  if (a.profile.intersection_witness)
    ic += " (fails at I=" + format_subset(a.profile.intersection_witness->first) +
          ", J=" + format_subset(a.profile.intersection_witness->second) + ")";
  v.claims.push_back({"string_c_group", a.profile.is_string_c_group, ic});
  v.claims.push_back({"polytope", a.polytope.ok(), a.polytope.ok() ? "axioms hold" : a.polytope.failures.front()});
  v.claims.push_back({"flag_count", a.flag_count == v.group_order,
                      std::to_string(a.flag_count) + " flags vs order " + std::to_string(v.group_order)});
  v.claims.push_back({"combinatorial_schlafli", a.combinatorial_type && *a.combinatorial_type == a.profile.schlafli,
                      detail::describe_symbol(a.combinatorial_type)});
  v.claims.push_back({"tight", a.is_tight(),
                      a.tight ? std::to_string(a.tight->flags) + " flags vs bound " + std::to_string(a.tight->bound)
                              : "not an equivelar polytope"});
}

}  // namespace detail

/// Builds Γ(sym) for an admissible tuple and checks order, type, C-group,
/// polytope, tightness and orientability. Mathematical failures become failed
/// claims; resource limits throw.
inline FamilyVerdict verify_gamma_family(const SchlafliSymbol& sym, std::size_t max_cosets = default_max_cosets(),
                                         std::size_t cap = kDefaultElementCap) {
  const auto start = std::chrono::steady_clock::now();
  const AdmissibilityResult adm = is_admissible(sym);
  if (!adm) throw NotAdmissible(describe_violation(sym, adm));
  FamilyVerdict v;
  v.input = sym;
  v.family = Family::Gamma;
  v.presentation = gamma_tuple_presentation(sym);
  v.expected_order = sym.tight_flag_count();
  v.analysis = analyze(v.presentation, max_cosets, cap);
  v.group_order = v.analysis.profile.group_order;
  detail::add_common_claims(v);
  bool even = true;
  for (const Word& r : v.presentation.relators) even = even && r.size() % 2 == 0;
  v.claims.push_back({"even_relators", even, even ? "every relator has even length" : "odd-length relator"});
  v.claims.push_back({"orientable", v.analysis.profile.orientable(), to_string(v.analysis.profile.orientability)});
  v.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return v;
}

struct KleinCheck {
  std::size_t subgroup_order = 0;
  bool normal = false;
  long long quotient_order = 0;
};

/// N = <x2, x1 x2 x1> in a rank-3 group: its order, normality and |G|/|N|.
inline KleinCheck klein_subgroup(const PermRep& rep, std::size_t cap = kDefaultElementCap) {
  KleinCheck k;
  const std::vector<Perm> gens{evaluate(rep, Word{2}), evaluate(rep, Word{1, 2, 1})};
  const ElementSet n = closure_of(gens, rep.degree, cap);
  k.subgroup_order = n.size();
  k.normal = is_normalized_by(rep.gens, n);
  const std::size_t order = closure_of(rep.gens, rep.degree, cap).size();
  k.quotient_order = static_cast<long long>(order / n.size());
  return k;
}

inline FamilyVerdict verify_lambda_family(int k, std::size_t max_cosets = default_max_cosets(),
                                          std::size_t cap = kDefaultElementCap) {
  const auto start = std::chrono::steady_clock::now();
  FamilyVerdict v;
  v.presentation = lambda_k_presentation(k);
  v.input = SchlafliSymbol{3 * k, 4};
  v.family = Family::Lambda;
  v.expected_order = 24LL * k;
  v.analysis = analyze(v.presentation, max_cosets, cap);
  v.group_order = v.analysis.profile.group_order;
  detail::add_common_claims(v);
  v.claims.push_back({"non_orientable", !v.analysis.profile.orientable(), to_string(v.analysis.profile.orientability)});

  const KleinCheck klein = klein_subgroup(v.analysis.rep, cap);
  const bool klein_ok = klein.subgroup_order == 4 && klein.normal && klein.quotient_order == 6LL * k;
  v.claims.push_back({"klein_normal_subgroup", klein_ok,
                      "|N|=" + std::to_string(klein.subgroup_order) + (klein.normal ? " normal" : " not normal") +
                          ", quotient order " + std::to_string(klein.quotient_order)});

  // Λ(k) maps onto Λ(1) and is one-to-one on the vertex-figure subgroup.
  const PermRep base = perm_rep(enumerate(lambda_k_presentation(1), {}, max_cosets));
  const GeneratorMapResult cover = check_generator_map(v.presentation, base, identity_images(3), cap);
  const bool criterion = cover.homomorphism && quotient_criterion(v.analysis.rep, base, QuotientSide::VertexFigure, cap);
  v.claims.push_back({"covers_lambda1", criterion,
                      criterion ? "cover of Λ(1), injective on vertex-figures" : "quotient criterion fails"});
  v.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return v;
}

enum class FapSide { Faces, CoFaces };

struct FapResult {
  bool holds = false;
  long long quotient_order = 0;
  long long parabolic_order = 0;
  Presentation quotient;
};

/// Faces k: kill x_i for i >= k and compare with |<x_0..x_{k-1}>|.
/// CoFaces k: kill x_i for i <= k and compare with |<x_{k+1}..x_{n-1}>|.
/// The parabolic subgroup is always a quotient of the killed presentation,
/// so equal orders mean the killed presentation presents it.
inline FapResult check_fap(const Presentation& pres, FapSide side, int k, std::size_t max_cosets = default_max_cosets(),
                           std::size_t cap = kDefaultElementCap) {
  const int n = pres.ngens;
  std::vector<Gen> keep;
  if (side == FapSide::Faces) {
    for (Gen i = 0; i < std::min(k, n); ++i) keep.push_back(i);
  } else {
    for (Gen i = std::max(k + 1, 0); i < n; ++i) keep.push_back(i);
  }
  FapResult r;
  r.quotient = kill_generators(pres, keep);
  r.quotient_order = group_order(r.quotient, max_cosets);
  const PermRep rep = perm_rep(enumerate(pres, {}, max_cosets));
  r.parabolic_order = static_cast<long long>(closure(rep, keep, cap).size());
  r.holds = r.quotient_order == r.parabolic_order;
  return r;
}

enum class FapTarget { TwoFaces, CoFaces };

/// FAP of P(sym) with respect to its 2-faces, or to its co-(n-3)-faces.
inline FapResult check_fap(const SchlafliSymbol& sym, FapTarget target, std::size_t max_cosets = default_max_cosets(),
                           std::size_t cap = kDefaultElementCap) {
  const Presentation pres = gamma_tuple_presentation(sym);
  if (target == FapTarget::TwoFaces) return check_fap(pres, FapSide::Faces, 2, max_cosets, cap);
  return check_fap(pres, FapSide::CoFaces, sym.rank() - 3, max_cosets, cap);
}

struct OeoReport {
  PermRep rep;  // π1, π2, π3 on Z_{p1} x Z_{p2}, point (j,k) = j*p2 + k
  std::vector<std::pair<std::string, bool>> relators;
  long long order1 = 0, order2 = 0, order3 = 0;

  bool all_relators_hold() const {
    for (const auto& [name, ok] : relators)
      if (!ok) return false;
    return true;
  }
};

/// The rotation-group model for odd p1, p3 and p2 an even divisor of both
/// 2 p1 and 2 p3, acting on pairs (j, k) of residues mod p1 and p2.
inline OeoReport oeo_permutation_rep(int p1, int p2, int p3) {
  if (p1 < 3 || p3 < 3 || p1 % 2 == 0 || p3 % 2 == 0)
    throw PreconditionViolated("p1 and p3 must be odd and at least 3");
  if (p2 < 2 || p2 % 2 != 0 || (2 * p1) % p2 != 0 || (2 * p3) % p2 != 0)
    throw PreconditionViolated("p2 must be an even divisor of 2*p1 and 2*p3");
  auto mod = [](long long a, long long m) { return static_cast<Point>(((a % m) + m) % m); };
  const std::size_t degree = static_cast<std::size_t>(p1) * static_cast<std::size_t>(p2);
  auto point = [p2](Point j, Point k) { return j * static_cast<Point>(p2) + k; };
  std::vector<Point> pi1(degree), pi2(degree), pi3(degree);
  for (long long j = 0; j < p1; ++j)
    for (long long k = 0; k < p2; ++k) {
      const Point x = point(static_cast<Point>(j), static_cast<Point>(k));
      pi2[x] = point(static_cast<Point>(j), mod(k + 1, p2));
      if (k % 2 == 0) {
        pi1[x] = point(mod(j + 1, p1), static_cast<Point>(k));
        pi3[x] = point(static_cast<Point>(j), mod(k - 2 * j, p2));
      } else {
        pi1[x] = point(mod(j - 1, p1), mod(k - 2, p2));
        pi3[x] = point(static_cast<Point>(j), mod(k + 2 * (j - 1), p2));
      }
    }
  OeoReport out;
  out.rep = PermRep{degree, {Perm(pi1), Perm(pi2), Perm(pi3)}};
  const SignedWord y1 = SignedWord::gen(0), y2 = SignedWord::gen(1), y3 = SignedWord::gen(2);
  const std::vector<std::pair<std::string, SignedWord>> rels{
      {"y1^p1", y1.power(p1)},
      {"y2^p2", y2.power(p2)},
      {"y3^p3", y3.power(p3)},
      {"(y1y2)^2", (y1 * y2).power(2)},
      {"(y2y3)^2", (y2 * y3).power(2)},
      {"(y1y2y3)^2", (y1 * y2 * y3).power(2)},
      {"[y1,y2^2]", commutator(y1, y2.power(2))},
      {"[y3,y2^2]", commutator(y3, y2.power(2))},
  };
  for (const auto& [name, w] : rels) out.relators.emplace_back(name, evaluate(out.rep, w).is_identity());
  out.order1 = out.rep.gens[0].order();
  out.order2 = out.rep.gens[1].order();
  out.order3 = out.rep.gens[2].order();
  return out;
}

struct SplitCheck {
  std::size_t position = 0;  // 1-based i with p_i = 2
  long long prefix_order = 0, prefix_expected = 0;
  long long suffix_order = 0, suffix_expected = 0;
  bool prefix_ok = false, suffix_ok = false;
};

struct Subgroup2Report {
  std::vector<SplitCheck> splits;
  bool holds() const {
    if (splits.empty()) return false;
    for (const SplitCheck& s : splits)
      if (!s.prefix_ok || !s.suffix_ok) return false;
    return true;
  }
};

/// For every p_i = 2: <x_0..x_i> ≅ Γ(p_1..p_i) and <x_{i-1}..x_{n-1}> ≅ Γ(p_i..p_{n-1}).
/// Each side is certified by equal orders, the relators of the smaller Γ
/// holding on the subgroup generators, and the relators of Γ(sym) that only
/// involve those generators holding in the smaller Γ.
inline Subgroup2Report subgroup_2_check(const SchlafliSymbol& sym, std::size_t max_cosets = default_max_cosets(),
                                        std::size_t cap = kDefaultElementCap) {
  validate(sym);
  const Presentation pres = gamma_tuple_presentation(sym);
  const PermRep rep = perm_rep(enumerate(pres, {}, max_cosets));
  const int n = sym.rank();
  Subgroup2Report report;

  auto side = [&](std::vector<Gen> gens, const SchlafliSymbol& part, long long& order, long long& expected) {
    order = static_cast<long long>(closure(rep, gens, cap).size());
    const Presentation small = gamma_tuple_presentation(part);
    const PermRep small_rep = perm_rep(enumerate(small, {}, max_cosets));
    expected = static_cast<long long>(small_rep.degree);
    // Restrict rep to the chosen generators, renumbered from 0.
    PermRep sub{rep.degree, {}};
    for (Gen g : gens) sub.gens.push_back(rep.gens[static_cast<std::size_t>(g)]);
    const bool forward = check_generator_map(small, sub, identity_images(small.ngens), cap).homomorphism;
    Presentation restricted{static_cast<int>(gens.size()), {}};
    for (const Word& r : pres.relators) {
      Word renamed;
      bool inside = true;
      for (Gen g : r.letters) {
        const auto it = std::find(gens.begin(), gens.end(), g);
        if (it == gens.end()) {
          inside = false;
          break;
        }
        renamed.letters.push_back(static_cast<Gen>(it - gens.begin()));
      }
      if (inside) restricted.relators.push_back(renamed);
    }
    const bool backward = check_generator_map(restricted, small_rep, identity_images(restricted.ngens), cap).homomorphism;
    return forward && backward && order == expected;
  };

  for (std::size_t i = 1; i <= sym.size(); ++i) {
    if (sym.p(i) != 2) continue;
    SplitCheck s;
    s.position = i;
    std::vector<Gen> prefix, suffix;
    for (Gen g = 0; g <= static_cast<Gen>(i); ++g) prefix.push_back(g);
    for (Gen g = static_cast<Gen>(i) - 1; g < n; ++g) suffix.push_back(g);
    const SchlafliSymbol head(std::vector<int>(sym.entries.begin(), sym.entries.begin() + static_cast<std::ptrdiff_t>(i)));
    const SchlafliSymbol tail(std::vector<int>(sym.entries.begin() + static_cast<std::ptrdiff_t>(i) - 1, sym.entries.end()));
    s.prefix_ok = side(prefix, head, s.prefix_order, s.prefix_expected);
    s.suffix_ok = side(suffix, tail, s.suffix_order, s.suffix_expected);
    report.splits.push_back(s);
  }
  if (report.splits.empty()) throw PreconditionViolated("subgroup_2_check needs some p_i = 2");
  return report;
}

struct ConjugationFinding {
  std::size_t position = 0;  // 1-based i with p_i even
  Gen conjugator = 0;
  ConjugationClass result = ConjugationClass::Neither;
};

/// For every even p_i, how each generator acts on (x_{i-1} x_i)^2 by conjugation.
inline std::vector<ConjugationFinding> square_rotation_conjugations(const SchlafliSymbol& sym, const PermRep& rep) {
  std::vector<ConjugationFinding> out;
  for (std::size_t i = 1; i <= sym.size(); ++i) {
    if (sym.p(i) % 2 != 0) continue;
    const Word omega = Word{static_cast<Gen>(i) - 1, static_cast<Gen>(i)}.power(2);
    for (Gen j = 0; j < rep.ngens(); ++j) out.push_back({i, j, conjugation_class(rep, Word{j}, omega)});
  }
  return out;
}

}  // namespace tightpoly

#endif  // TIGHTPOLY_FAMILIES_HPP
