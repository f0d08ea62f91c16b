#ifndef TIGHTPOLY_WORDS_HPP
#define TIGHTPOLY_WORDS_HPP

// Words over involutory generators, presentations, Schläfli symbols and the
// relator builders for the string Coxeter groups and their tight quotients.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tightpoly/errors.hpp"

namespace tightpoly {

using Gen = int;

/// A word in involutory generators. Each letter is its own inverse, so the
/// inverse of a word is its reversal.
struct Word {
  std::vector<Gen> letters;

  Word() = default;
  Word(std::initializer_list<Gen> l) : letters(l) {}
  explicit Word(std::vector<Gen> l) : letters(std::move(l)) {}

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  Gen operator[](std::size_t i) const { return letters[i]; }

  Word inverse() const { return Word(std::vector<Gen>(letters.rbegin(), letters.rend())); }

  Word power(int k) const {
    Word out;
    out.letters.reserve(letters.size() * static_cast<std::size_t>(std::max(k, 0)));
    for (int i = 0; i < k; ++i) out.letters.insert(out.letters.end(), letters.begin(), letters.end());
    return out;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

/// Smallest representative of w under cyclic rotation and inversion.
inline Word cyclic_normal_form(const Word& w) {
  Word best = w;
  for (const Word& base : {w, w.inverse()}) {
    for (std::size_t r = 0; r < base.size(); ++r) {
      Word rot;
      rot.letters.reserve(base.size());
      rot.letters.insert(rot.letters.end(), base.letters.begin() + static_cast<std::ptrdiff_t>(r), base.letters.end());
      rot.letters.insert(rot.letters.end(), base.letters.begin(), base.letters.begin() + static_cast<std::ptrdiff_t>(r));
      best = std::min(best, rot);
    }
  }
  return best;
}

struct Presentation {
  int ngens = 0;
  std::vector<Word> relators;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

struct SchlafliSymbol {
  std::vector<int> entries;

  SchlafliSymbol() = default;
  SchlafliSymbol(std::initializer_list<int> e) : entries(e) {}
  explicit SchlafliSymbol(std::vector<int> e) : entries(std::move(e)) {}

  /// Rank of a polytope of this type.
  int rank() const noexcept { return static_cast<int>(entries.size()) + 1; }
  std::size_t size() const noexcept { return entries.size(); }
  /// 1-based access matching the usual p_1, ..., p_{n-1} indexing.
  int p(std::size_t i) const { return entries.at(i - 1); }

  SchlafliSymbol reversed() const { return SchlafliSymbol(std::vector<int>(entries.rbegin(), entries.rend())); }

  /// 2 * p_1 * ... * p_{n-1}: the flag count of a tight polytope of this type.
  long long tight_flag_count() const {
    return std::accumulate(entries.begin(), entries.end(), 2LL, [](long long a, int b) { return a * b; });
  }

  friend bool operator==(const SchlafliSymbol&, const SchlafliSymbol&) = default;
  friend auto operator<=>(const SchlafliSymbol&, const SchlafliSymbol&) = default;
};

inline void validate(const SchlafliSymbol& sym) {
  if (sym.entries.empty()) throw InvalidArgument("Schläfli symbol must have at least one entry");
  for (int e : sym.entries)
    if (e < 2) throw InvalidArgument("Schläfli entries must be >= 2, got " + std::to_string(e));
}

inline std::string to_string(const SchlafliSymbol& sym, std::string_view sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < sym.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(sym.entries[i]);
  }
  return out;
}

/// Parses "3,6,4". Throws InvalidArgument on malformed input.
inline SchlafliSymbol parse_symbol(std::string_view text) {
  SchlafliSymbol sym;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("malformed Schläfli entry '" + item + "'");
    }
    if (used != item.size()) throw InvalidArgument("malformed Schläfli entry '" + item + "'");
    sym.entries.push_back(v);
  }
  validate(sym);
  return sym;
}

namespace detail {

inline Word alternating(Gen a, Gen b, int m) { return Word{a, b}.power(m); }

}  // namespace detail

/// The string Coxeter group [p_1, ..., p_{n-1}]. Relators are emitted as
/// involutions, then commuting pairs, then braid relators, each by index.
inline Presentation coxeter_presentation(const SchlafliSymbol& sym) {
  validate(sym);
  const int n = sym.rank();
  Presentation pres;
  pres.ngens = n;
  for (Gen i = 0; i < n; ++i) pres.relators.push_back(Word{i, i});
  for (Gen i = 0; i < n; ++i)
    for (Gen j = i + 2; j < n; ++j) pres.relators.push_back(detail::alternating(i, j, 2));
  for (Gen i = 1; i < n; ++i) pres.relators.push_back(detail::alternating(i - 1, i, sym.p(static_cast<std::size_t>(i))));
  return pres;
}

/// [p, q] with the extra relator (x0 x1 x2 x1 x2)^2.
inline Presentation gamma_pq_presentation(int p, int q) {
  if (p < 2 || q < 2) throw InvalidArgument("gamma(p,q) needs p, q >= 2");
  Presentation pres = coxeter_presentation({p, q});
  pres.relators.push_back(Word{0, 1, 2, 1, 2}.power(2));
  return pres;
}

/// The extra relator r_i (1 <= i <= n-2) for the tuple, chosen by the parity
/// of p_i and p_{i+1}. Throws AdjacentOddPair when both are odd.
inline Word tight_relator(const SchlafliSymbol& sym, std::size_t i) {
  const bool cur_even = sym.p(i) % 2 == 0;
  const bool next_even = sym.p(i + 1) % 2 == 0;
  const Gen a = static_cast<Gen>(i) - 1, b = static_cast<Gen>(i), c = static_cast<Gen>(i) + 1;
  if (cur_even && next_even) return Word{a, b, c, b}.power(2);
  if (!cur_even && next_even) return Word{a, b, c, b, c}.power(2);
  if (cur_even && !next_even) return Word{c, b, a, b, a}.power(2);
  throw AdjacentOddPair(i);
}

/// [p_1, ..., p_{n-1}] plus the relators r_1, ..., r_{n-2}.
inline Presentation gamma_tuple_presentation(const SchlafliSymbol& sym) {
  Presentation pres = coxeter_presentation(sym);
  for (std::size_t i = 1; i < sym.size(); ++i) pres.relators.push_back(tight_relator(sym, i));
  return pres;
}

/// Λ(k) for odd k >= 1: [3k, 4] plus the 9-letter relator x0x1x2x1x0x1x2x1x2.
inline Presentation lambda_k_presentation(int k) {
  if (k < 1 || k % 2 == 0) throw InvalidArgument("lambda(k) needs odd k >= 1, got " + std::to_string(k));
  Presentation pres = coxeter_presentation({3 * k, 4});
  pres.relators.push_back(Word{0, 1, 2, 1, 0, 1, 2, 1, 2});
  return pres;
}

struct AdmissibilityResult {
  bool admissible = true;
  /// 1-based index of the odd entry whose neighbour fails.
  std::optional<std::size_t> odd_index;
  /// 1-based index of the offending neighbour.
  std::optional<std::size_t> neighbor_index;

  explicit operator bool() const noexcept { return admissible; }
};

/// Whenever p_i is odd, each existing neighbour must be even and divide 2 p_i.
inline AdmissibilityResult is_admissible(const SchlafliSymbol& sym) {
  validate(sym);
  const std::size_t m = sym.size();
  for (std::size_t i = 1; i <= m; ++i) {
    const int pi = sym.p(i);
    if (pi % 2 == 0) continue;
    for (std::size_t j : {i - 1, i + 1}) {
      if (j < 1 || j > m) continue;
      const int pj = sym.p(j);
      if (pj % 2 != 0 || (2 * pi) % pj != 0) return {false, i, j};
    }
  }
  return {};
}

/// Human-readable reason for a failed admissibility check.
inline std::string describe_violation(const SchlafliSymbol& sym, const AdmissibilityResult& r) {
  if (r.admissible) return "admissible";
  const std::size_t i = *r.odd_index, j = *r.neighbor_index;
  return "p" + std::to_string(j) + "=" + std::to_string(sym.p(j)) + " is not an even divisor of 2p" +
         std::to_string(i) + "=" + std::to_string(2 * sym.p(i));
}

/// Kills every generator outside `keep` (a contiguous prefix or suffix of
/// 0..n-1), deletes killed letters, drops emptied relators and renumbers the
/// survivors densely.
inline Presentation kill_generators(const Presentation& pres, const std::vector<Gen>& keep) {
  std::vector<Gen> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const bool contiguous =
      sorted.empty() || sorted.back() - sorted.front() + 1 == static_cast<Gen>(sorted.size());
  const bool prefix_or_suffix =
      sorted.empty() || sorted.front() == 0 || sorted.back() == pres.ngens - 1;
  if (!contiguous || !prefix_or_suffix || (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= pres.ngens)))
    throw InvalidArgument("kill_generators: keep set must be a contiguous prefix or suffix");

  Presentation out;
  out.ngens = static_cast<int>(sorted.size());
  const Gen offset = sorted.empty() ? 0 : sorted.front();
  for (const Word& r : pres.relators) {
    Word w;
    for (Gen g : r.letters)
      if (std::binary_search(sorted.begin(), sorted.end(), g)) w.letters.push_back(g - offset);
    if (!w.empty()) out.relators.push_back(std::move(w));
  }
  return out;
}

// Text format: "gens N" followed by one "rel i j k ..." line per relator.

inline std::string write_presentation(const Presentation& pres) {
  std::string out = "gens " + std::to_string(pres.ngens) + "\n";
  for (const Word& r : pres.relators) {
    out += "rel";
    for (Gen g : r.letters) out += " " + std::to_string(g);
    out += "\n";
  }
  return out;
}

/// Blank lines and lines starting with '#' are ignored.
inline Presentation parse_presentation(std::istream& in) {
  Presentation pres;
  bool have_gens = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string keyword;
    ls >> keyword;
    if (keyword == "gens") {
      if (have_gens) throw ParseError(lineno, "duplicate 'gens' line");
      long long n = -1;
      if (!(ls >> n) || n <= 0 || n > 64) throw ParseError(lineno, "expected 'gens N' with 1 <= N <= 64");
      std::string rest;
      if (ls >> rest) throw ParseError(lineno, "trailing tokens after generator count");
      pres.ngens = static_cast<int>(n);
      have_gens = true;
    } else if (keyword == "rel") {
      if (!have_gens) throw ParseError(lineno, "'rel' before 'gens'");
      Word w;
      std::string tok;
      while (ls >> tok) {
        std::size_t used = 0;
        long long g = -1;
        try {
          g = std::stoll(tok, &used);
        } catch (const std::exception&) {
          throw ParseError(lineno, "bad generator index '" + tok + "'");
        }
        if (used != tok.size() || g < 0 || g >= pres.ngens)
          throw ParseError(lineno, "generator index '" + tok + "' out of range");
        w.letters.push_back(static_cast<Gen>(g));
      }
      pres.relators.push_back(std::move(w));
    } else {
      throw ParseError(lineno, "unknown keyword '" + keyword + "'");
    }
  }
  if (!have_gens) throw ParseError(lineno + 1, "missing 'gens' line");
  return pres;
}

inline Presentation parse_presentation(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_presentation(in);
}

}  // namespace tightpoly

#endif  // TIGHTPOLY_WORDS_HPP
