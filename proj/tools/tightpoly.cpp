// Command-line front end: verify, atlas, classify, check, family.
//
// Exit codes: 0 pass, 1 claim failure, 2 bad input or not admissible,
// 3 resource budget exhausted.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "tightpoly/atlas.hpp"
#include "tightpoly/classifier.hpp"
#include "tightpoly/families.hpp"
#include "tightpoly/todd_coxeter.hpp"
#include "tightpoly/words.hpp"

namespace tp = tightpoly;

namespace {

constexpr int kPass = 0;
constexpr int kClaimFailed = 1;
constexpr int kBadInput = 2;
constexpr int kBudget = 3;

std::string product_formula(const tp::SchlafliSymbol& s) {
  std::string out = "2";
  for (int p : s.entries) out += "·" + std::to_string(p);
  return out;
}

void print_verdict(const tp::FamilyVerdict& v, std::ostream& out) {
  out << "type {" << tp::to_string(v.input) << "} (" << tp::to_string(v.family) << ")\n";
  out << "order " << v.group_order;
  if (v.family == tp::Family::Gamma)
    out << (v.group_order == v.expected_order ? " = " : " != ") << product_formula(v.input);
  else
    out << (v.group_order == v.expected_order ? " = " : " != ") << "24·" << v.input.p(1) / 3;
  out << "\n";
  for (const tp::Claim& c : v.claims) out << (c.pass ? "  PASS " : "  FAIL ") << c.name << ": " << c.detail << "\n";
  out << (v.pass() ? "all claims pass" : "some claims FAIL") << "\n";
}

int cmd_verify(const std::string& tuple, std::optional<int> lambda) {
  if (lambda) {
    if (*lambda < 1 || *lambda % 2 == 0) throw tp::InvalidArgument("lambda k must be odd and positive");
    const tp::FamilyVerdict v = tp::verify_lambda_family(*lambda);
    print_verdict(v, std::cout);
    return v.pass() ? kPass : kClaimFailed;
  }
  const tp::FamilyVerdict v = tp::verify_gamma_family(tp::parse_symbol(tuple));
  print_verdict(v, std::cout);
  return v.pass() ? kPass : kClaimFailed;
}

int cmd_atlas(const tp::AtlasOptions& opt, const std::string& out_path) {
  const std::vector<tp::AtlasEntry> entries = tp::build_atlas(opt);
  tp::write_atlas_atomic(out_path, entries);
  std::size_t failed = 0;
  for (const tp::AtlasEntry& e : entries)
    if (!e.pass()) ++failed;
  std::cout << entries.size() << " entries written to " << out_path;
  if (failed) std::cout << ", " << failed << " with failed claims";
  std::cout << "\n";
  return failed ? kClaimFailed : kPass;
}

int cmd_classify(const std::string& type, bool orientable, bool non_orientable, const std::string& out_path,
                 std::size_t cap) {
  const tp::SchlafliSymbol sym = tp::parse_symbol(type);
  if (sym.size() != 2) throw tp::InvalidArgument("--type needs exactly two entries p,q");
  const int p = sym.p(1), q = sym.p(2);
  std::vector<tp::CensusRecord> records;
  const char* label = "regular";
  if (orientable) {
    records = tp::classify_tight(p, q, true, cap);
    label = "orientably-regular";
  } else if (non_orientable) {
    records = tp::census_nonorientable(p, q, cap);
    label = "non-orientably-regular";
  } else {
    records = tp::classify_tight(p, q, false, cap);
  }
  std::cout << "tight " << label << " polyhedra of type {" << p << "," << q << "}: count " << records.size() << "\n";
  for (const tp::CensusRecord& r : records) {
    std::cout << "  kernel " << r.kernel << " order " << r.order << " " << tp::to_string(r.profile.orientability);
    if (r.isomorphic_to_gamma)
      std::cout << (*r.isomorphic_to_gamma ? " ≅ " : " ≇ ") << "Γ(" << p << "," << q << ")";
    if (r.isomorphic_to_lambda)
      std::cout << (*r.isomorphic_to_lambda ? " ≅ " : " ≇ ") << "Λ(" << p / 3 << ")";
    std::cout << "\n";
  }
  if (!out_path.empty()) {
    std::vector<tp::AtlasEntry> entries;
    for (const tp::CensusRecord& r : records) entries.push_back(tp::entry_from_census(r));
    tp::write_atlas_atomic(out_path, entries);
  }
  return kPass;
}

int cmd_check(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tp::InvalidArgument("cannot open " + path);
  const tp::Presentation pres = tp::parse_presentation(in);
  const tp::GroupAnalysis a = tp::analyze(pres);
  const tp::SggiProfile& pr = a.profile;
  std::cout << "generators " << pres.ngens << ", relators " << pres.relators.size() << "\n";
  std::cout << "group order " << pr.group_order << "\n";
  std::cout << "schlafli orders {" << tp::to_string(pr.schlafli) << "}\n";
  if (!pr.is_sggi) std::cout << "not an sggi\n";
  if (!pr.identity_generators.empty())
    std::cout << "generators acting trivially: " << tp::format_subset(pr.identity_generators) << "\n";
  if (pr.intersection_witness) {
    std::cout << "intersection condition FAILS at I=" << tp::format_subset(pr.intersection_witness->first)
              << ", J=" << tp::format_subset(pr.intersection_witness->second) << "\n";
  }
  if (!a.polytope.ok())
    for (const std::string& f : a.polytope.failures) std::cout << "polytope axiom fails: " << f << "\n";
  if (!pr.is_string_c_group) {
    std::cout << "not a string C-group, " << tp::to_string(pr.orientability) << "\n";
    return kPass;
  }
  std::cout << "string C-group, ";
  if (a.is_tight()) {
    std::cout << "tight";
  } else {
    std::cout << "NOT tight (" << a.flag_count << " flags vs " << pr.schlafli.tight_flag_count() << ")";
  }
  std::cout << ", " << tp::to_string(pr.orientability) << ", type {"
            << (a.combinatorial_type ? tp::to_string(*a.combinatorial_type) : tp::to_string(pr.schlafli)) << "}\n";
  return kPass;
}

int cmd_family(const std::string& gamma, std::optional<int> lambda, const std::string& coxeter,
               const std::string& out_path) {
  tp::Presentation pres;
  std::string header;
  if (lambda) {
    pres = tp::lambda_k_presentation(*lambda);
    header = "# Lambda(" + std::to_string(*lambda) + ")";
  } else if (!gamma.empty()) {
    const tp::SchlafliSymbol sym = tp::parse_symbol(gamma);
    pres = tp::gamma_tuple_presentation(sym);
    header = "# Gamma(" + tp::to_string(sym) + ")";
  } else {
    const tp::SchlafliSymbol sym = tp::parse_symbol(coxeter);
    pres = tp::coxeter_presentation(sym);
    header = "# [" + tp::to_string(sym) + "]";
  }
  const std::string text = header + "\n" + tp::write_presentation(pres);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!(out << text)) throw tp::InvalidArgument("cannot write " + out_path);
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tight regular polytopes: construction, verification and census"};
  app.require_subcommand(1);

  std::string tuple;
  std::optional<int> verify_lambda;
  auto* verify = app.add_subcommand("verify", "Build a family group and check every claim");
  auto* tuple_opt = verify->add_option("--tuple", tuple, "Schläfli tuple, e.g. 3,6,4");
  auto* lambda_opt = verify->add_option("--lambda", verify_lambda, "Odd k for the non-orientable family");
  tuple_opt->excludes(lambda_opt);
  verify->callback([&] {
    if (tuple.empty() && !verify_lambda) throw CLI::RequiredError("--tuple or --lambda");
  });

  tp::AtlasOptions atlas_opt;
  atlas_opt.threads = std::max(1U, std::thread::hardware_concurrency());
  std::string atlas_out;
  auto* atlas = app.add_subcommand("atlas", "Verify every admissible tuple within the bounds, write JSONL");
  atlas->add_option("--max-flags", atlas_opt.max_flags, "Bound on 2·∏p_i")->required();
  atlas->add_option("--max-rank", atlas_opt.max_rank, "Largest rank")->required();
  atlas->add_option("--out", atlas_out, "Output path")->required();
  atlas->add_option("--threads", atlas_opt.threads, "Worker threads");
  atlas->add_flag("--timings", atlas_opt.timings, "Record wall time per entry (output no longer reproducible)");

  std::string type, classify_out;
  bool orientable = false, non_orientable = false;
  std::size_t cap = tp::kDefaultCensusCap;
  auto* classify = app.add_subcommand("classify", "Census of tight regular polyhedra of type {p,q}");
  classify->add_option("--type", type, "p,q")->required();
  auto* o1 = classify->add_flag("--orientable", orientable, "Only orientably-regular");
  auto* o2 = classify->add_flag("--non-orientable", non_orientable, "Only non-orientably-regular");
  o1->excludes(o2);
  classify->add_option("--out", classify_out, "Write records as JSONL");
  classify->add_option("--cap", cap, "Largest 2pq searched (cost grows quickly)");

  std::string presentation_path;
  auto* check = app.add_subcommand("check", "Profile an arbitrary presentation");
  check->add_option("--presentation", presentation_path, "Presentation file")->required();

  std::string fam_gamma, fam_coxeter, fam_out;
  std::optional<int> fam_lambda;
  auto* family = app.add_subcommand("family", "Emit a builder's presentation file");
  auto* g = family->add_option("--gamma", fam_gamma, "Tuple for the orientable family");
  auto* l = family->add_option("--lambda", fam_lambda, "Odd k for the non-orientable family");
  auto* c = family->add_option("--coxeter", fam_coxeter, "Tuple for the string Coxeter group");
  g->excludes(l)->excludes(c);
  l->excludes(c);
  family->add_option("--out", fam_out, "Output path (default stdout)");
  family->callback([&] {
    if (fam_gamma.empty() && !fam_lambda && fam_coxeter.empty())
      throw CLI::RequiredError("--gamma, --lambda or --coxeter");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kBadInput;
  }

  try {
    if (*verify) return cmd_verify(tuple, verify_lambda);
    if (*atlas) return cmd_atlas(atlas_opt, atlas_out);
    if (*classify) return cmd_classify(type, orientable, non_orientable, classify_out, cap);
    if (*check) return cmd_check(presentation_path);
    if (*family) return cmd_family(fam_gamma, fam_lambda, fam_coxeter, fam_out);
  } catch (const tp::NotAdmissible& e) {
    std::cerr << "not admissible: " << e.what() << "\n";
    return kBadInput;
  } catch (const tp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const tp::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const tp::ResourceExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const tp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kClaimFailed;
  }
  return kBadInput;
}
