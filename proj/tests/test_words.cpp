#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "tightpoly/todd_coxeter.hpp"
#include "tightpoly/words.hpp"

using namespace tightpoly;

namespace {

std::multiset<Word> normal_forms(const Presentation& pres) {
  std::multiset<Word> out;
  for (const Word& r : pres.relators) out.insert(cyclic_normal_form(r));
  return out;
}

Presentation reverse_generators(const Presentation& pres) {
  Presentation out{pres.ngens, {}};
  for (const Word& r : pres.relators) {
    Word w;
    for (Gen g : r.letters) w.letters.push_back(pres.ngens - 1 - g);
    out.relators.push_back(w);
  }
  return out;
}

}  // namespace

TEST(Words, InverseIsReversal) {
  const Word w{0, 1, 2, 1};
  EXPECT_EQ(w.inverse(), (Word{1, 2, 1, 0}));
  EXPECT_EQ((w * w.inverse()).size(), 8U);
  EXPECT_EQ(Word({0, 1}).power(3), (Word{0, 1, 0, 1, 0, 1}));
  EXPECT_TRUE(Word{}.empty());
}

TEST(Words, CyclicNormalFormIsRotationAndReversalInvariant) {
  const Word w{2, 0, 1, 1, 0};
  const Word nf = cyclic_normal_form(w);
  for (std::size_t r = 0; r < w.size(); ++r) {
    std::vector<Gen> rot(w.letters.begin() + static_cast<long>(r), w.letters.end());
    rot.insert(rot.end(), w.letters.begin(), w.letters.begin() + static_cast<long>(r));
    EXPECT_EQ(cyclic_normal_form(Word(rot)), nf);
    EXPECT_EQ(cyclic_normal_form(Word(rot).inverse()), nf);
  }
}

TEST(SchlafliSymbol, ParseAndFormat) {
  const SchlafliSymbol s = parse_symbol("3,6,4");
  EXPECT_EQ(s, (SchlafliSymbol{3, 6, 4}));
  EXPECT_EQ(s.rank(), 4);
  EXPECT_EQ(s.p(2), 6);
  EXPECT_EQ(to_string(s), "3,6,4");
  EXPECT_EQ(s.reversed(), (SchlafliSymbol{4, 6, 3}));
  EXPECT_EQ(s.tight_flag_count(), 144);
  EXPECT_THROW(parse_symbol("3,1"), InvalidArgument);
  EXPECT_THROW(parse_symbol(""), InvalidArgument);
  EXPECT_THROW(parse_symbol("3,,4"), InvalidArgument);
}

TEST(CoxeterPresentation, RankTwo) {
  const Presentation p = coxeter_presentation({3});
  EXPECT_EQ(p.ngens, 2);
  EXPECT_EQ(p.relators, (std::vector<Word>{{0, 0}, {1, 1}, {0, 1, 0, 1, 0, 1}}));
}

TEST(CoxeterPresentation, RelatorOrderIsInvolutionsCommutingBraids) {
  const Presentation p = coxeter_presentation({3, 2});
  ASSERT_EQ(p.relators.size(), 6U);
  EXPECT_EQ(p.relators[3], (Word{0, 2, 0, 2}));
  EXPECT_EQ(p.relators[4], (Word{0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(p.relators[5], (Word{1, 2, 1, 2}));
  EXPECT_EQ(group_order(p), 12);
}

TEST(GammaPresentation, RankThreeMatchesTupleBuilder) {
  for (auto [p, q] : {std::pair{3, 6}, {5, 2}, {7, 14}, {5, 10}})
    EXPECT_EQ(gamma_pq_presentation(p, q), gamma_tuple_presentation(SchlafliSymbol{p, q}));
  EXPECT_EQ(gamma_pq_presentation(3, 6).relators.back(), (Word{0, 1, 2, 1, 2, 0, 1, 2, 1, 2}));
  EXPECT_THROW(gamma_pq_presentation(1, 6), InvalidArgument);
}

TEST(GammaPresentation, TightRelatorCases) {
  const Presentation p = gamma_tuple_presentation({3, 6, 4});
  const Word r1 = p.relators[p.relators.size() - 2];
  const Word r2 = p.relators.back();
  EXPECT_EQ(r1, (Word{0, 1, 2, 1, 2}.power(2)));
  EXPECT_EQ(r2, (Word{1, 2, 3, 2}.power(2)));
  const Presentation q = gamma_tuple_presentation({6, 3});
  EXPECT_EQ(q.relators.back(), (Word{2, 1, 0, 1, 0}.power(2)));
}

TEST(GammaPresentation, AdjacentOddPairRejected) {
  try {
    gamma_tuple_presentation({4, 3, 3});
    FAIL() << "expected AdjacentOddPair";
  } catch (const AdjacentOddPair& e) {
    EXPECT_EQ(e.index(), 2U);
  }
}

TEST(GammaPresentation, SharesCoxeterRelators) {
  for (const SchlafliSymbol& s : {SchlafliSymbol{3, 6, 4}, SchlafliSymbol{4, 4, 4, 4}, SchlafliSymbol{5, 10, 5}}) {
    const Presentation cox = coxeter_presentation(s);
    const Presentation gam = gamma_tuple_presentation(s);
    ASSERT_GE(gam.relators.size(), cox.relators.size());
    EXPECT_TRUE(std::equal(cox.relators.begin(), cox.relators.end(), gam.relators.begin()));
    EXPECT_EQ(gam.relators.size(), cox.relators.size() + s.size() - 1);
  }
}

TEST(Builders, EveryRelatorEvenExceptLambdaTail) {
  const std::vector<SchlafliSymbol> grid{{3, 6}, {4, 4}, {3, 6, 4}, {6, 3, 6}, {5, 10, 5}, {3, 6, 6, 3}, {4, 3}};
  for (const SchlafliSymbol& s : grid) {
    for (const Word& r : coxeter_presentation(s).relators) EXPECT_EQ(r.size() % 2, 0U);
    for (const Word& r : gamma_tuple_presentation(s).relators) EXPECT_EQ(r.size() % 2, 0U);
  }
  for (int k : {1, 3, 5}) {
    const Presentation l = lambda_k_presentation(k);
    for (std::size_t i = 0; i + 1 < l.relators.size(); ++i) EXPECT_EQ(l.relators[i].size() % 2, 0U);
    EXPECT_EQ(l.relators.back().size(), 9U);
  }
}

TEST(Builders, ReversalIsDuality) {
  const std::vector<SchlafliSymbol> grid{{3, 6}, {3, 6, 4}, {6, 3, 6}, {4, 6, 3}, {3, 6, 6, 3}, {3, 6, 3, 6}, {2, 5, 2}};
  for (const SchlafliSymbol& s : grid)
    EXPECT_EQ(normal_forms(reverse_generators(gamma_tuple_presentation(s))),
              normal_forms(gamma_tuple_presentation(s.reversed())))
        << to_string(s);
}

TEST(Lambda, RejectsEvenK) {
  EXPECT_THROW(lambda_k_presentation(2), InvalidArgument);
  EXPECT_THROW(lambda_k_presentation(0), InvalidArgument);
  EXPECT_THROW(lambda_k_presentation(-3), InvalidArgument);
}

TEST(Admissibility, Examples) {
  EXPECT_TRUE(is_admissible({4, 4, 4}));
  EXPECT_TRUE(is_admissible({3, 6, 3, 6}));
  const AdmissibilityResult r = is_admissible({3, 4});
  EXPECT_FALSE(r);
  EXPECT_EQ(*r.odd_index, 1U);
  EXPECT_EQ(*r.neighbor_index, 2U);
  EXPECT_EQ(describe_violation({3, 4}, r), "p2=4 is not an even divisor of 2p1=6");
  const AdmissibilityResult tail = is_admissible({3, 6, 3, 6, 3, 4});
  EXPECT_FALSE(tail);
  EXPECT_EQ(*tail.odd_index, 5U);
  EXPECT_EQ(*tail.neighbor_index, 6U);
  EXPECT_FALSE(is_admissible({3, 3}));
  EXPECT_TRUE(is_admissible({2, 2}));
}

TEST(Admissibility, BruteForceAgreement) {
  // Direct restatement over all pairs and triples of small entries.
  for (int a = 2; a <= 12; ++a)
    for (int b = 2; b <= 12; ++b)
      for (int c = 2; c <= 12; ++c) {
        const std::vector<int> e{a, b, c};
        bool ok = true;
        for (std::size_t i = 0; i < 3; ++i) {
          if (e[i] % 2 == 0) continue;
          if (i > 0 && !(e[i - 1] % 2 == 0 && (2 * e[i]) % e[i - 1] == 0)) ok = false;
          if (i < 2 && !(e[i + 1] % 2 == 0 && (2 * e[i]) % e[i + 1] == 0)) ok = false;
        }
        EXPECT_EQ(bool(is_admissible(SchlafliSymbol(e))), ok);
      }
}

TEST(KillGenerators, Examples) {
  const Presentation g = gamma_tuple_presentation({3, 6, 4});
  const Presentation k = kill_generators(g, {0, 1});
  EXPECT_EQ(k.ngens, 2);
  EXPECT_EQ(group_order(k), 6);
  EXPECT_EQ(kill_generators(g, {0, 1, 2, 3}), g);
  const Presentation c = kill_generators(coxeter_presentation({3, 2}), {0, 1});
  EXPECT_EQ(group_order(c), group_order(coxeter_presentation({3})));
  const Presentation s = kill_generators(coxeter_presentation({4, 4}), {1, 2});
  EXPECT_EQ(s.ngens, 2);
  EXPECT_EQ(group_order(s), 8);
  EXPECT_THROW(kill_generators(g, {1, 2}), InvalidArgument);
  EXPECT_THROW(kill_generators(g, {0, 2}), InvalidArgument);
}

TEST(TextFormat, RoundTripsByteExactly) {
  for (const Presentation& p : {gamma_tuple_presentation({3, 6, 4}), lambda_k_presentation(3), coxeter_presentation({5})}) {
    const std::string text = write_presentation(p);
    const Presentation back = parse_presentation(text);
    EXPECT_EQ(back, p);
    EXPECT_EQ(write_presentation(back), text);
  }
}

TEST(TextFormat, ErrorsCarryLineNumbers) {
  try {
    parse_presentation("gens 3\n# comment\nrel 0 1\nrel 0 q\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4U);
  }
  EXPECT_THROW(parse_presentation("rel 0 0\n"), ParseError);
  EXPECT_THROW(parse_presentation("gens 0\n"), ParseError);
  EXPECT_THROW(parse_presentation("gens 2\nrel 0 2\n"), ParseError);
  EXPECT_THROW(parse_presentation("gens 2\nfoo\n"), ParseError);
  EXPECT_THROW(parse_presentation(""), ParseError);
}
