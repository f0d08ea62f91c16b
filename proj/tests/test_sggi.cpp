#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "tightpoly/sggi.hpp"
#include "tightpoly/todd_coxeter.hpp"
#include "tightpoly/words.hpp"

using namespace tightpoly;

namespace {

PermRep rep_of(const Presentation& p) { return perm_rep(enumerate(p, {})); }

Presentation load(const std::string& name) {
  std::ifstream in(std::string(TIGHTPOLY_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

// Intersection condition straight from subgroup element sets, no bitmasks.
bool intersection_oracle(const PermRep& rep) {
  const unsigned n = static_cast<unsigned>(rep.ngens());
  for (unsigned a = 0; a < (1U << n); ++a)
    for (unsigned b = 0; b < (1U << n); ++b) {
      const ElementSet ga = closure(rep, subset_from_mask(a));
      const ElementSet gb = closure(rep, subset_from_mask(b));
      if (ga.intersection_size(gb) != closure(rep, subset_from_mask(a & b)).size()) return false;
    }
  return true;
}

}  // namespace

TEST(Sggi, GammaIsStringCGroup) {
  const SggiProfile p = profile(rep_of(gamma_pq_presentation(3, 6)));
  EXPECT_EQ(p.rank, 3);
  EXPECT_EQ(p.group_order, 36);
  EXPECT_TRUE(p.is_sggi);
  EXPECT_TRUE(p.identity_generators.empty());
  EXPECT_EQ(p.schlafli, (SchlafliSymbol{3, 6}));
  EXPECT_TRUE(p.is_string_c_group);
  EXPECT_FALSE(p.intersection_witness.has_value());
  EXPECT_TRUE(p.orientable());
}

TEST(Sggi, NonCommutingGeneratorsAreNotSggi) {
  // S3 on three points: x0 and x2 are distinct transpositions.
  const PermRep r{3,
                  {Perm(std::vector<Point>{1, 0, 2}), Perm(std::vector<Point>{1, 0, 2}), Perm(std::vector<Point>{0, 2, 1})}};
  EXPECT_FALSE(check_sggi(r).is_sggi);
  const PermRep not_involution{3, {Perm(std::vector<Point>{1, 2, 0}), Perm(std::vector<Point>{1, 0, 2})}};
  EXPECT_FALSE(check_sggi(not_involution).is_sggi);
}

TEST(Sggi, DegenerateWitness) {
  const PermRep rep = rep_of(load("degenerate_x0x2.txt"));
  const SggiProfile p = profile(rep);
  EXPECT_TRUE(p.is_sggi);
  EXPECT_FALSE(p.is_string_c_group);
  ASSERT_TRUE(p.intersection_witness.has_value());
  EXPECT_EQ(p.intersection_witness->first, (std::vector<Gen>{0}));
  EXPECT_EQ(p.intersection_witness->second, (std::vector<Gen>{2}));
  EXPECT_EQ(format_subset(p.intersection_witness->first), "{0}");
  EXPECT_FALSE(intersection_oracle(rep));
}

TEST(Sggi, IdentityGeneratorIsNotCGroup) {
  const PermRep rep = rep_of(kill_generators(coxeter_presentation({3, 2}), {0, 1, 2}));
  PermRep with_identity = rep;
  with_identity.gens[2] = Perm::identity(rep.degree);
  const SggiProfile p = profile(with_identity);
  EXPECT_EQ(p.identity_generators, (std::vector<Gen>{2}));
  EXPECT_FALSE(p.is_string_c_group);
}

TEST(Sggi, IntersectionAgreesWithOracle) {
  const std::vector<Presentation> grid{coxeter_presentation({4, 3}),  gamma_pq_presentation(3, 6),
                                       gamma_tuple_presentation({3, 6, 4}), lambda_k_presentation(1),
                                       load("degenerate_x0x2.txt"),   coxeter_presentation({3, 3, 3})};
  for (const Presentation& pres : grid) {
    const PermRep rep = rep_of(pres);
    EXPECT_EQ(check_intersection_condition(rep).holds, intersection_oracle(rep));
  }
}

TEST(Schlafli, Examples) {
  EXPECT_EQ(schlafli_of_group(rep_of(lambda_k_presentation(5))), (SchlafliSymbol{15, 4}));
  EXPECT_EQ(schlafli_of_group(rep_of(gamma_tuple_presentation({3, 6, 3, 6}))), (SchlafliSymbol{3, 6, 3, 6}));
  EXPECT_EQ(schlafli_of_group(rep_of(coxeter_presentation({5, 3}))), (SchlafliSymbol{5, 3}));
}

TEST(QuotientCriterion, GammaOverPrism) {
  const PermRep g = rep_of(gamma_pq_presentation(3, 6));
  const PermRep prism = rep_of(coxeter_presentation({3, 2}));
  ASSERT_TRUE(check_generator_map(gamma_pq_presentation(3, 6), prism, identity_images(3)).homomorphism);
  EXPECT_TRUE(quotient_criterion(g, prism, QuotientSide::Facet));
  EXPECT_FALSE(quotient_criterion(g, prism, QuotientSide::VertexFigure));
  EXPECT_THROW(quotient_criterion(g, rep_of(coxeter_presentation({3})), QuotientSide::Facet), InvalidArgument);
}

TEST(Orientability, Examples) {
  EXPECT_EQ(orientability(rep_of(coxeter_presentation({3}))), Orientability::Orientable);
  EXPECT_EQ(orientability(rep_of(lambda_k_presentation(1))), Orientability::NonOrientable);
  EXPECT_EQ(orientability(rep_of(lambda_k_presentation(3))), Orientability::NonOrientable);
  EXPECT_STREQ(to_string(Orientability::NonOrientable), "non-orientable");
}

TEST(Orientability, EvenRelatorsGiveOrientable) {
  // Oracle: the even-word subgroup <x_i x_j> has index 2 exactly when orientable.
  const std::vector<Presentation> grid{coxeter_presentation({4, 3}), gamma_pq_presentation(5, 10),
                                       gamma_tuple_presentation({4, 4, 4}), gamma_tuple_presentation({3, 6, 4}),
                                       lambda_k_presentation(1), lambda_k_presentation(5)};
  for (const Presentation& pres : grid) {
    const PermRep rep = rep_of(pres);
    std::vector<Perm> even;
    for (Gen i = 0; i < rep.ngens(); ++i)
      for (Gen j = 0; j < rep.ngens(); ++j) even.push_back(evaluate(rep, Word{i, j}));
    const bool index_two = 2 * closure_of(even, rep.degree).size() == rep.degree;
    EXPECT_EQ(orientability(rep) == Orientability::Orientable, index_two);
    bool all_even = true;
    for (const Word& r : pres.relators) all_even = all_even && r.size() % 2 == 0;
    if (all_even) {
      EXPECT_TRUE(index_two);
    }
  }
}
