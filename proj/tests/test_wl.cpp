#include <set>

#include <gtest/gtest.h>

#include "dynwl/corpus.hpp"
#include "dynwl/error.hpp"
#include "dynwl/oracle.hpp"
#include "dynwl/transform.hpp"
#include "dynwl/wl.hpp"
#include "helpers.hpp"

using namespace dynwl;
using testutil::cycle;
using testutil::path;
using testutil::triangle;

TEST(Run1WL, TriangleStaysOneColor) {
  auto h = run1WL(triangle());
  for (std::size_t i = 0; i < h.iterations(); ++i) EXPECT_EQ(h.classCount(i), 1u);
  EXPECT_EQ(h.stableAt, std::optional<std::size_t>(0));
}

TEST(Run1WL, PathSplitsAfterOneStep) {
  auto h = run1WL(path(3));
  EXPECT_EQ(h.partitionAt(0), (Partition{{1, 2, 3}}));
  EXPECT_EQ(h.partitionAt(1), (Partition{{1, 3}, {2}}));
  EXPECT_EQ(h.stablePartition(), (Partition{{1, 3}, {2}}));
}

TEST(Run1WL, HexagonVsTwoTriangles) {
  auto two = disjointUnion(triangle(), triangle()).graph;
  EXPECT_TRUE(wl1GraphEquivalent(cycle(6), two));
  EXPECT_FALSE(bruteForceIsomorphic(cycle(6), two).has_value());
}

TEST(RunAWL, SingleEdgeSymmetric) {
  Sauhg g(1, {{1, {0.0}}, {2, {0.0}}}, {{1, 2, {1.0}}});
  auto h = runAWL(g, 5);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(h.color(1, i), h.color(2, i));
}

TEST(RunAWL, EdgeAttributesSplitPathEndpoints) {
  Sauhg g(1, {{1, {0.0}}, {2, {0.0}}, {3, {0.0}}}, {{1, 2, {0.0}}, {2, 3, {1.0}}});
  auto h = runAWL(g);
  EXPECT_EQ(h.color(1, 0), h.color(3, 0));
  EXPECT_NE(h.color(1, 1), h.color(3, 1));
  // Plain 1-WL ignores the edge attributes.
  auto plain = run1WL(g);
  EXPECT_EQ(plain.stableColor(1), plain.stableColor(3));
}

TEST(RunAWL, EmptyGraphRejected) {
  EXPECT_THROW(runAWL(Sauhg(1)), Error);
  EXPECT_THROW(run1WL(Sauhg(1)), Error);
}

TEST(RunAWL, PartitionsOnlySplitAndStopAtEqualCounts) {
  CorpusSpec spec;
  spec.seed = 5;
  spec.count = 300;
  spec.maxNodes = 8;
  spec.edgeProbability = 0.3;
  for (const auto& g : generateStatic(spec)) {
    auto h = runAWL(g);
    ASSERT_TRUE(h.stableAt.has_value());
    EXPECT_EQ(h.classCount(*h.stableAt), h.classCount(*h.stableAt + 1));
    for (std::size_t i = 0; i + 1 < h.iterations(); ++i) {
      // Same color at i+1 implies same color at i.
      const auto& a = h.colorsAt(i);
      const auto& b = h.colorsAt(i + 1);
      for (std::size_t x = 0; x < a.size(); ++x) {
        for (std::size_t y = 0; y < a.size(); ++y) {
          if (b[x] == b[y]) EXPECT_EQ(a[x], a[y]);
        }
      }
    }
  }
}

TEST(RunAWL, AgreesWithNaiveRefinement) {
  CorpusSpec spec;
  spec.seed = 99;
  spec.count = 300;
  spec.maxNodes = 8;
  spec.attrDim = 2;
  spec.attrAlphabetSize = 2;
  spec.edgeProbability = 0.4;
  for (const auto& g : generateStatic(spec)) {
    for (bool edges : {true, false}) {
      auto h = edges ? runAWL(g) : run1WL(g);
      auto naive = testutil::naiveRefinement(g, 8, edges);
      for (std::size_t i = 0; i <= 8; ++i) {
        EXPECT_EQ(partitionByKey(g.nodes(), h.colorsAt(i)),
                  partitionByKey(g.nodes(), std::vector<ColorId>(naive[i].begin(), naive[i].end())));
      }
    }
  }
}

TEST(AwlNodeEquivalent, Examples) {
  EXPECT_TRUE(awlNodeEquivalent(path(3), 2, path(3), 2));
  Sauhg t2 = testutil::uniformGraph(3, {{10, 11}, {11, 12}, {12, 10}}, 10);
  const Sauhg tri = triangle();
  for (NodeId u : tri.nodes()) {
    for (NodeId v : t2.nodes()) EXPECT_TRUE(awlNodeEquivalent(tri, u, t2, v));
  }
  EXPECT_FALSE(awlNodeEquivalent(path(3), 1, path(3), 2));
  EXPECT_THROW(awlNodeEquivalent(path(3), 9, path(3), 1), Error);
}

TEST(AwlGraphEquivalent, Examples) {
  EXPECT_TRUE(awlGraphEquivalent(path(4), path(4)));
  Sauhg relabeled = testutil::uniformGraph(4, {{13, 11}, {11, 12}, {12, 10}}, 10);
  EXPECT_TRUE(awlGraphEquivalent(path(4), relabeled));
  EXPECT_FALSE(awlGraphEquivalent(triangle(), path(3)));
  Sauhg k2(2, {{1, {0.0, 0.0}}}, {});
  EXPECT_THROW(awlGraphEquivalent(triangle(), k2), Error);
}

TEST(AwlGraphEquivalent, EdgeAttributedHexagonFamily) {
  for (const auto& p : counterexamples()) {
    if (p.name != "c6-vs-2c3-edge-attributed") continue;
    EXPECT_TRUE(wl1GraphEquivalent(p.first, p.second));
    EXPECT_FALSE(awlGraphEquivalent(p.first, p.second));
  }
}

namespace {

DynamicGraph twoStep() {
  Sauhg s0(1, {{1, {1.0}}, {2, {1.0}}, {3, {2.0}}}, {{1, 2, {0.0}}, {2, 3, {0.0}}});
  Sauhg s1(1, {{2, {1.0}}, {3, {2.0}}}, {{2, 3, {1.0}}});
  return DynamicGraph(1, {s0, s1});
}

}  // namespace

TEST(RunDWL, SingleSnapshotMatchesAWL) {
  Sauhg s = path(4);
  auto d = runDWL(DynamicGraph(1, {s}));
  auto a = runAWL(s);
  ASSERT_EQ(d.perTimestamp.size(), 1u);
  EXPECT_EQ(d.perTimestamp[0].stablePartition(), a.stablePartition());
}

TEST(RunDWL, AbsentNodeGetsReservedColor) {
  auto h = runDWL(twoStep());
  const auto& t1 = h.perTimestamp[1];
  // Node 1 is absent at t=1: it never shares a color with a present node.
  for (std::size_t i = 0; i < t1.iterations(); ++i) {
    EXPECT_NE(t1.color(1, i), t1.color(2, i));
    EXPECT_NE(t1.color(1, i), t1.color(3, i));
  }
  // At t=0 node 1 is present and shares its attribute with node 2.
  EXPECT_EQ(h.perTimestamp[0].color(1, 0), h.perTimestamp[0].color(2, 0));
}

TEST(RunDWL, IdenticalSnapshotsGiveIdenticalPartitions) {
  Sauhg s = path(5);
  auto h = runDWL(DynamicGraph(1, {s, s}));
  EXPECT_EQ(h.perTimestamp[0].stablePartition(), h.perTimestamp[1].stablePartition());
}

TEST(DwlEquivalent, Examples) {
  auto dg = twoStep();
  EXPECT_TRUE(dwlEquivalent(dg, dg));
  DynamicGraph swapped(1, {dg.snapshot(1), dg.snapshot(0)});
  EXPECT_FALSE(dwlEquivalent(dg, swapped));
  DynamicGraph shorter(1, {dg.snapshot(0)});
  EXPECT_THROW(dwlEquivalent(dg, shorter), Error);
  EXPECT_FALSE(dwlEquivalent(dg, shorter, true));
  EXPECT_TRUE(dwlEquivalent(shorter, DynamicGraph(1, {dg.snapshot(0)}), true));
}

TEST(DwlEquivalent, StaticEquivalenceOfStatificationsImpliesDynamic) {
  CorpusSpec spec;
  spec.seed = 21;
  spec.count = 80;
  spec.maxNodes = 5;
  spec.attrAlphabetSize = 2;
  spec.timelineLen = 2;
  spec.nodeChurnProb = 0.3;
  spec.edgeChurnProb = 0.3;
  auto graphs = generateDynamic(spec);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i; j < graphs.size(); ++j) {
      if (awlGraphEquivalent(makeStatic(graphs[i]), makeStatic(graphs[j]))) {
        ++hits;
        EXPECT_TRUE(dwlEquivalent(graphs[i], graphs[j]));
      }
    }
  }
  EXPECT_GE(hits, graphs.size());
}
