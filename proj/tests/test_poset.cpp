#include <gtest/gtest.h>

#include <algorithm>

#include "tightpoly/poset.hpp"
#include "tightpoly/todd_coxeter.hpp"
#include "tightpoly/words.hpp"

using namespace tightpoly;

namespace {

PermRep rep_of(const Presentation& p) { return perm_rep(enumerate(p, {})); }

FacePoset poset_of(const Presentation& p) { return build_poset(rep_of(p)); }

std::vector<Gen> all_but(int n, Gen i) {
  std::vector<Gen> out;
  for (Gen j = 0; j < n; ++j)
    if (j != i) out.push_back(j);
  return out;
}

bool members_meet(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return !common.empty();
}

}  // namespace

TEST(Poset, FaceCountsTimesStabilizerIsGroupOrder) {
  for (const Presentation& pres : {gamma_pq_presentation(3, 6), coxeter_presentation({4, 3}),
                                   gamma_tuple_presentation({3, 6, 4}), lambda_k_presentation(3)}) {
    const PermRep rep = rep_of(pres);
    const FacePoset p = build_poset(rep);
    for (Gen i = 0; i < rep.ngens(); ++i) {
      const std::size_t stab = closure(rep, all_but(rep.ngens(), i)).size();
      EXPECT_EQ(p.face_count(i) * stab, rep.degree);
      for (FaceId f : p.faces_of_rank(i)) EXPECT_EQ(p.members(f).size(), stab);
    }
  }
}

TEST(Poset, GammaThreeSixCounts) {
  const FacePoset p = poset_of(gamma_pq_presentation(3, 6));
  EXPECT_EQ(p.face_count(0), 3U);
  EXPECT_EQ(p.face_count(1), 9U);
  EXPECT_EQ(p.face_count(2), 6U);
  EXPECT_EQ(count_flags(p), 36);
}

TEST(Poset, CoversAreMeetingCosets) {
  const FacePoset p = poset_of(gamma_tuple_presentation({3, 6, 4}));
  for (int r = 0; r + 1 < p.rank(); ++r)
    for (FaceId f : p.faces_of_rank(r))
      for (FaceId g : p.faces_of_rank(r + 1)) {
        const bool cover = std::binary_search(p.up(f).begin(), p.up(f).end(), g);
        EXPECT_EQ(cover, members_meet(p.members(f), p.members(g)));
      }
}

TEST(Poset, SimplexAndDigon) {
  const FacePoset s = poset_of(coxeter_presentation({3, 3}));
  EXPECT_EQ(s.face_count(0), 4U);
  EXPECT_EQ(s.face_count(1), 6U);
  EXPECT_EQ(s.face_count(2), 4U);
  EXPECT_EQ(count_flags(s), 24);
  EXPECT_TRUE(verify_polytope(s).ok());
  const FacePoset d = poset_of(coxeter_presentation({2}));
  EXPECT_EQ(d.face_count(0), 2U);
  EXPECT_EQ(d.face_count(1), 2U);
  EXPECT_EQ(count_flags(d), 4);
  EXPECT_TRUE(verify_polytope(d).ok());
}

TEST(Poset, DegenerateGroupFailsAxioms) {
  Presentation pres = coxeter_presentation({2, 2});
  pres.relators.push_back(Word{0, 2});
  const PolytopeReport r = verify_polytope(poset_of(pres));
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.failures.empty());
}

TEST(Poset, HandBuiltNonDiamond) {
  // Rank 1 with three vertices: the section between bottom and top has three
  // middle faces.
  const FacePoset p(1, {-1, 0, 0, 0, 1}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  const PolytopeReport r = verify_polytope(p);
  EXPECT_FALSE(r.diamond);
  EXPECT_THROW(flags_and_adjacency(p), DiamondViolation);
  EXPECT_THROW(FacePoset(1, {-1, 1}, {{0, 1}}), InvalidArgument);
}

TEST(Flags, AdjacencyIsAnInvolutionChangingOneFace) {
  const FacePoset p = poset_of(coxeter_presentation({4, 3}));
  const FlagSet fs = flags_and_adjacency(p);
  ASSERT_EQ(fs.size(), 48U);
  EXPECT_TRUE(std::is_sorted(fs.flags.begin(), fs.flags.end()));
  for (std::size_t k = 0; k < fs.size(); ++k)
    for (std::size_t j = 0; j < 3; ++j) {
      const std::uint32_t a = fs.adjacent[k][j];
      EXPECT_EQ(fs.adjacent[a][j], k);
      for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(fs.flags[a][i] == fs.flags[k][i], i != j);
    }
}

TEST(Sections, FacetAndVertexFigure) {
  const FacePoset p = poset_of(gamma_tuple_presentation({3, 6, 4}));
  const FacePoset facet = facet_section(p, p.faces_of_rank(3).front());
  const FacePoset vf = vertex_figure(p, p.faces_of_rank(0).front());
  EXPECT_EQ(facet.rank(), 3);
  EXPECT_EQ(vf.rank(), 3);
  EXPECT_EQ(combinatorial_schlafli(facet).symbol, (SchlafliSymbol{3, 6}));
  EXPECT_EQ(combinatorial_schlafli(vf).symbol, (SchlafliSymbol{6, 4}));
  EXPECT_TRUE(is_tight(facet).tight());
  EXPECT_TRUE(is_tight(vf).tight());
  EXPECT_EQ(count_flags(facet), 36);
  EXPECT_EQ(count_flags(vf), 48);
  // Two faces of rank 0 are not comparable.
  EXPECT_THROW(section(p, p.faces_of_rank(0)[0], p.faces_of_rank(0)[1]), NotComparable);
}

TEST(Tight, Examples) {
  const TightResult g = is_tight(poset_of(gamma_pq_presentation(3, 6)));
  EXPECT_TRUE(g.tight());
  EXPECT_TRUE(g.by_flatness);
  EXPECT_EQ(g.flags, 36);
  const TightResult cube = is_tight(poset_of(coxeter_presentation({4, 3})));
  EXPECT_FALSE(cube.tight());
  EXPECT_FALSE(cube.by_flatness);
  EXPECT_EQ(cube.flags, 48);
  EXPECT_EQ(cube.bound, 24);
  EXPECT_FALSE(is_tight(poset_of(coxeter_presentation({3, 3}))).tight());
  EXPECT_TRUE(is_tight(poset_of(gamma_tuple_presentation({3, 6, 4}))).tight());
  EXPECT_TRUE(is_tight(poset_of(coxeter_presentation({2, 2}))).tight());
}

TEST(Tight, PolyhedronHasPVerticesAndQFaces) {
  for (auto [p, q] : {std::pair{3, 6}, {5, 10}, {4, 4}, {4, 8}, {6, 6}}) {
    const FacePoset poset = poset_of(gamma_pq_presentation(p, q));
    ASSERT_TRUE(is_tight(poset).tight());
    EXPECT_EQ(poset.face_count(0), static_cast<std::size_t>(p));
    EXPECT_EQ(poset.face_count(2), static_cast<std::size_t>(q));
    EXPECT_TRUE(is_flat(poset, 0, 2));
  }
}

TEST(Tight, RequiresPolytope) {
  Presentation pres = coxeter_presentation({2, 2});
  pres.relators.push_back(Word{0, 2});
  EXPECT_THROW(is_tight(poset_of(pres)), PreconditionViolated);
  EXPECT_THROW(is_flat(poset_of(coxeter_presentation({3})), 0, 2), InvalidArgument);
  EXPECT_THROW(is_flat(poset_of(coxeter_presentation({3, 3})), 1, 1), InvalidArgument);
}

TEST(Dual, InvolutionReversingType) {
  const FacePoset p = poset_of(gamma_pq_presentation(3, 6));
  const FacePoset d = dual(p);
  EXPECT_EQ(dual(d), p);
  EXPECT_EQ(combinatorial_schlafli(d).symbol, (SchlafliSymbol{6, 3}));
  EXPECT_EQ(d.face_count(0), p.face_count(2));
  EXPECT_EQ(count_flags(d), count_flags(p));
  // The dual of Γ(3,6) is the poset of Γ(6,3) up to relabelling: same counts.
  const FacePoset other = poset_of(gamma_tuple_presentation({6, 3}));
  for (int r = -1; r <= 3; ++r) EXPECT_EQ(d.face_count(r), other.face_count(r));
}

TEST(Json, RoundTrip) {
  const FacePoset p = poset_of(gamma_tuple_presentation({3, 6, 4}));
  const nlohmann::ordered_json j = poset_to_json(p);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["flag_count"], 144);
  const FacePoset back = poset_from_json(nlohmann::ordered_json::parse(j.dump()));
  EXPECT_EQ(back, p);
  nlohmann::ordered_json bad = j;
  bad["flag_count"] = 5;
  EXPECT_THROW(poset_from_json(bad), InvalidArgument);
  bad = j;
  bad["schema_version"] = 9;
  EXPECT_THROW(poset_from_json(bad), InvalidArgument);
}
