#include <gtest/gtest.h>

#include "dynwl/corpus.hpp"
#include "dynwl/error.hpp"
#include "dynwl/oracle.hpp"
#include "dynwl/unfolding.hpp"
#include "helpers.hpp"

using namespace dynwl;

TEST(BuildAttrTree, DepthZeroIsLeaf) {
  auto g = testutil::path(3);
  for (NodeId v : g.nodes()) {
    auto t = buildAttrTree(g, v, 0);
    EXPECT_EQ(t.childCount(), 0u);
    EXPECT_EQ(t.rootAttr(), MaybeAttr(g.nodeAttr(v)));
  }
  EXPECT_THROW(buildAttrTree(g, 9, 1), Error);
}

TEST(BuildAttrTree, TriangleDepthOne) {
  auto t = buildAttrTree(testutil::triangle(), 1, 1);
  auto kids = t.children();
  ASSERT_EQ(kids.size(), 2u);
  EXPECT_EQ(kids[0].second, kids[1].second);
  EXPECT_EQ(kids[0].first, kids[1].first);
}

TEST(BuildAttrTree, PathRevisitsParent) {
  Sauhg g(1, {{1, {1.0}}, {2, {2.0}}, {3, {3.0}}}, {{1, 2, {0.0}}, {2, 3, {0.0}}});
  auto t = buildAttrTree(g, 2, 2);
  auto kids = t.children();
  ASSERT_EQ(kids.size(), 2u);
  std::vector<AttrVec> childRoots;
  for (const auto& [edge, child] : kids) {
    childRoots.push_back(*child.rootAttr());
    auto grand = child.children();
    ASSERT_EQ(grand.size(), 1u);
    EXPECT_EQ(grand[0].second.rootAttr(), MaybeAttr(AttrVec{2.0}));
  }
  std::sort(childRoots.begin(), childRoots.end());
  EXPECT_EQ(childRoots, (std::vector<AttrVec>{{1.0}, {3.0}}));
  EXPECT_LE(t.height(), 2u);
}

TEST(BuildAttrTree, EqualityMatchesNaiveUnfolding) {
  CorpusSpec spec;
  spec.seed = 3;
  spec.count = 150;
  spec.maxNodes = 7;
  spec.edgeProbability = 0.4;
  spec.attrAlphabetSize = 2;
  for (const auto& g : generateStatic(spec)) {
    for (std::size_t d = 0; d <= 4; ++d) {
      TreeBuilder b(g);
      for (NodeId u : g.nodes()) {
        for (NodeId v : g.nodes()) {
          bool naive = testutil::naiveTree(g, u, d) == testutil::naiveTree(g, v, d);
          EXPECT_EQ(b.tree(u, d) == b.tree(v, d), naive);
        }
      }
    }
  }
}

TEST(AutEquivalent, Examples) {
  auto g = testutil::path(3);
  EXPECT_TRUE(autEquivalent(g, 2, g, 2));
  EXPECT_TRUE(autEquivalent(g, 1, g, 3));
  EXPECT_FALSE(autEquivalent(g, 1, g, 2));
  Sauhg k2(2, {{1, {0.0, 0.0}}}, {});
  EXPECT_THROW(autEquivalent(g, 1, k2, 1), Error);
}

namespace {

// Nodes a=1 and c=3 have identical neighborhoods at every timestamp.
DynamicGraph worked() {
  Sauhg s0(1, {{1, {1.0}}, {2, {2.0}}, {3, {1.0}}}, {{1, 2, {0.0}}, {2, 3, {0.0}}});
  Sauhg s1(1, {{1, {1.0}}, {2, {2.0}}, {3, {1.0}}, {4, {3.0}}},
           {{1, 4, {1.0}}, {3, 4, {1.0}}, {2, 4, {0.0}}});
  return DynamicGraph(1, {s0, s1});
}

}  // namespace

TEST(BuildDynTrees, SingleSnapshotMatchesStatic) {
  auto g = testutil::path(4);
  auto seq = buildDynTrees(DynamicGraph(1, {g}), 2, 3);
  ASSERT_EQ(seq.size(), 1u);
  EXPECT_EQ(seq[0].code(), buildAttrTree(g, 2, 3).code());
}

TEST(BuildDynTrees, AbsentNodeGetsAbsentLeaf) {
  auto dg = worked();
  auto seq = buildDynTrees(dg, 4, 2);
  EXPECT_EQ(seq[0].root().kind, RootKind::Absent);
  EXPECT_EQ(seq[0].childCount(), 0u);
  EXPECT_EQ(seq[1].rootAttr(), MaybeAttr(AttrVec{3.0}));
  EXPECT_THROW(buildDynTrees(dg, 9, 1), Error);
}

TEST(BuildDynTrees, IdenticalSnapshotsGiveEqualTrees) {
  auto g = testutil::cycle(4);
  auto seq = buildDynTrees(DynamicGraph(1, {g, g}), 1, 3);
  EXPECT_EQ(seq[0].code(), seq[1].code());
}

TEST(DutEquivalent, Examples) {
  auto dg = worked();
  EXPECT_TRUE(dutEquivalent(dg, 1, dg, 1));
  EXPECT_TRUE(dutEquivalent(dg, 1, dg, 3));
  EXPECT_FALSE(dutEquivalent(dg, 1, dg, 2));
  DynamicGraph swapped(1, {dg.snapshot(1), dg.snapshot(0)});
  EXPECT_FALSE(dutEquivalent(dg, 1, swapped, 1));
  DynamicGraph shorter(1, {dg.snapshot(0)});
  EXPECT_THROW(dutEquivalent(dg, 1, shorter, 1), Error);
}

TEST(DutGraphEquivalent, SeqCodesAgreeWithElementwiseComparison) {
  auto dg = worked();
  auto a = buildDynTrees(dg, 1, 3);
  auto c = buildDynTrees(dg, 3, 3);
  for (std::size_t t = 0; t < a.size(); ++t) EXPECT_TRUE(bruteTreeEqual(a[t], c[t]));
  EXPECT_EQ(seqCode(a), seqCode(c));
  EXPECT_TRUE(dutGraphEquivalent(dg, dg));
  DynamicGraph swapped(1, {dg.snapshot(1), dg.snapshot(0)});
  EXPECT_FALSE(dutGraphEquivalent(dg, swapped));
}
