#ifndef TIGHTPOLY_ATLAS_HPP
#define TIGHTPOLY_ATLAS_HPP

// Batch verification over all admissible tuples under a flag bound, and the
// JSONL persistence of the results. One entry per line, fields in a fixed
// order, entries in ascending tuple order, so files are byte-identical for
// fixed inputs regardless of thread count.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tightpoly/classifier.hpp"
#include "tightpoly/errors.hpp"
#include "tightpoly/families.hpp"
#include "tightpoly/words.hpp"

namespace tightpoly {

inline constexpr int kAtlasSchemaVersion = 1;

struct AtlasEntry {
  SchlafliSymbol tuple;
  Family family = Family::Gamma;
  long long group_order = 0;
  long long flag_count = 0;
  bool tight = false;
  bool orientable = false;
  bool string_c_group = false;
  std::vector<std::pair<std::string, bool>> claims;
  double ms = 0.0;
  std::optional<std::string> kernel;  // census entries only

  bool pass() const {
    for (const auto& [name, ok] : claims)
      if (!ok) return false;
    return !claims.empty();
  }
  friend bool operator==(const AtlasEntry&, const AtlasEntry&) = default;
};

/// ms is 0 unless `timings` is set; wall time would break reproducibility.
inline AtlasEntry entry_from_verdict(const FamilyVerdict& v, bool timings = false) {
  AtlasEntry e;
  e.tuple = v.input;
  e.family = v.family;
  e.group_order = v.group_order;
  e.flag_count = v.analysis.flag_count;
  e.tight = v.analysis.is_tight();
  e.orientable = v.analysis.profile.orientable();
  e.string_c_group = v.analysis.profile.is_string_c_group;
  for (const Claim& c : v.claims) e.claims.emplace_back(c.name, c.pass);
  e.ms = timings ? v.ms : 0.0;
  return e;
}

inline AtlasEntry entry_from_census(const CensusRecord& r) {
  AtlasEntry e;
  e.tuple = SchlafliSymbol{r.p, r.q};
  e.family = Family::Census;
  e.group_order = r.order;
  e.flag_count = r.flag_count;
  e.tight = r.tight;
  e.orientable = r.orientable();
  e.string_c_group = r.profile.is_string_c_group;
  e.claims = {{"polytope", r.polytope}, {"tight", r.tight}, {"string_c_group", r.profile.is_string_c_group}};
  if (r.isomorphic_to_gamma) e.claims.emplace_back("isomorphic_to_gamma", *r.isomorphic_to_gamma);
  if (r.isomorphic_to_lambda) e.claims.emplace_back("isomorphic_to_lambda", *r.isomorphic_to_lambda);
  e.kernel = r.kernel;
  return e;
}

inline nlohmann::ordered_json to_json(const AtlasEntry& e) {
  nlohmann::ordered_json j;
  j["schema_version"] = kAtlasSchemaVersion;
  j["tuple"] = e.tuple.entries;
  j["family"] = to_string(e.family);
  if (e.family == Family::Census) j["source"] = "census";
  if (e.kernel) j["kernel"] = *e.kernel;
  j["group_order"] = e.group_order;
  j["flag_count"] = e.flag_count;
  j["tight"] = e.tight;
  j["orientable"] = e.orientable;
  j["string_c_group"] = e.string_c_group;
  nlohmann::ordered_json claims = nlohmann::ordered_json::object();
  for (const auto& [name, ok] : e.claims) claims[name] = ok;
  j["claims"] = claims;
  j["ms"] = e.ms;
  return j;
}

inline std::string to_jsonl_line(const AtlasEntry& e) { return to_json(e).dump(); }

/// Parses and re-validates one entry. Errors carry the line number.
inline AtlasEntry entry_from_json(const nlohmann::ordered_json& j, std::size_t line = 0) {
  try {
    if (!j.is_object()) throw ParseError(line, "entry is not an object");
    if (j.at("schema_version").get<int>() != kAtlasSchemaVersion)
      throw ParseError(line, "unsupported schema_version");
    AtlasEntry e;
    e.tuple = SchlafliSymbol(j.at("tuple").get<std::vector<int>>());
    validate(e.tuple);
    const std::string family = j.at("family").get<std::string>();
    if (family == "gamma")
      e.family = Family::Gamma;
    else if (family == "lambda")
      e.family = Family::Lambda;
    else if (family == "census")
      e.family = Family::Census;
    else
      throw ParseError(line, "unknown family '" + family + "'");
    if (j.contains("kernel")) e.kernel = j.at("kernel").get<std::string>();
    e.group_order = j.at("group_order").get<long long>();
    e.flag_count = j.at("flag_count").get<long long>();
    e.tight = j.at("tight").get<bool>();
    e.orientable = j.at("orientable").get<bool>();
    e.string_c_group = j.at("string_c_group").get<bool>();
    for (const auto& [name, ok] : j.at("claims").items()) e.claims.emplace_back(name, ok.get<bool>());
    e.ms = j.at("ms").get<double>();
    if (e.group_order <= 0) throw ParseError(line, "group_order must be positive");
    if (e.pass() && e.flag_count != e.group_order) throw ParseError(line, "flag_count differs from group_order");
    if (e.pass() && e.tight && e.flag_count != e.tuple.tight_flag_count())
      throw ParseError(line, "tight entry with flag_count != 2*prod(p_i)");
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(line, ex.what());
  } catch (const InvalidArgument& ex) {
    throw ParseError(line, ex.what());
  }
}

inline std::vector<AtlasEntry> read_atlas(std::istream& in) {
  std::vector<AtlasEntry> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(line, ex.what());
    }
    out.push_back(entry_from_json(j, line));
  }
  return out;
}

inline std::vector<AtlasEntry> read_atlas(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return read_atlas(in);
}

inline void write_atlas(std::ostream& out, const std::vector<AtlasEntry>& entries) {
  for (const AtlasEntry& e : entries) out << to_jsonl_line(e) << '\n';
}

/// Writes to a sibling temp file and renames it into place; on failure the
/// target is left untouched and the temp file removed.
inline void write_atlas_atomic(const std::filesystem::path& path, const std::vector<AtlasEntry>& entries) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw InvalidArgument("cannot write " + tmp.string());
      write_atlas(out, entries);
      out.flush();
      if (!out) throw InvalidArgument("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

/// Admissible tuples of length 2..max_rank-1, entries >= 2, 2*prod <= max_flags,
/// in ascending lexicographic order.
inline std::vector<SchlafliSymbol> admissible_tuples(long long max_flags, int max_rank) {
  std::vector<SchlafliSymbol> out;
  std::vector<int> cur;
  std::function<void(long long)> extend = [&](long long flags) {
    if (!cur.empty()) {
      const SchlafliSymbol s(cur);
      if (cur.size() >= 2 && is_admissible(s)) out.push_back(s);
    }
    if (static_cast<int>(cur.size()) + 1 >= max_rank) return;
    for (int p = 2; flags * p <= max_flags; ++p) {
      cur.push_back(p);
      extend(flags * p);
      cur.pop_back();
    }
  };
  extend(2);
  return out;
}

/// Runs `task(i)` for i in [0, n) on `threads` workers. Results land by index,
/// so the output order never depends on scheduling. The first failure in
/// index order is rethrown.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F task) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i] = task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1U, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

struct AtlasOptions {
  long long max_flags = 100;
  int max_rank = 3;
  unsigned threads = 1;
  bool timings = false;
};

/// Verifies Γ(tuple) for every admissible tuple within the bounds.
inline std::vector<AtlasEntry> build_atlas(const AtlasOptions& opt) {
  if (opt.max_flags < 4) throw InvalidArgument("max-flags must be at least 4");
  if (opt.max_rank < 3) throw InvalidArgument("max-rank must be at least 3");
  const std::vector<SchlafliSymbol> tuples = admissible_tuples(opt.max_flags, opt.max_rank);
  return parallel_map<AtlasEntry>(tuples.size(), opt.threads, [&](std::size_t i) {
    return entry_from_verdict(verify_gamma_family(tuples[i]), opt.timings);
  });
}

}  // namespace tightpoly

#endif  // TIGHTPOLY_ATLAS_HPP
