#include <gtest/gtest.h>

#include "dynwl/corpus.hpp"
#include "dynwl/error.hpp"
#include "dynwl/oracle.hpp"
#include "dynwl/unfolding.hpp"
#include "helpers.hpp"

using namespace dynwl;

TEST(BruteForceIsomorphic, IdentityWitness) {
  auto g = testutil::path(5);
  auto w = bruteForceIsomorphic(g, g);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(isValidWitness(g, g, *w));
}

TEST(BruteForceIsomorphic, NegativeCases) {
  EXPECT_FALSE(bruteForceIsomorphic(testutil::triangle(), testutil::path(3)).has_value());
  auto two = disjointUnion(testutil::triangle(), testutil::triangle()).graph;
  EXPECT_FALSE(bruteForceIsomorphic(testutil::cycle(6), two).has_value());
}

TEST(BruteForceIsomorphic, FindsPermutations) {
  CorpusSpec spec;
  spec.seed = 17;
  spec.count = 100;
  spec.maxNodes = 8;
  spec.edgeProbability = 0.4;
  CorpusRng rng(4);
  for (const auto& g : generateStatic(spec)) {
    std::vector<NodeId> ids = g.nodes();
    for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
    std::map<NodeId, NodeId> to;
    for (std::size_t i = 0; i < ids.size(); ++i) to[g.idAt(i)] = ids[i] + 50;
    std::vector<NodeSpec> nodes;
    for (auto& n : g.nodeSpecs()) nodes.push_back({to[n.id], n.attr});
    std::vector<EdgeSpec> edges;
    for (auto& e : g.edgeSpecs()) edges.push_back({to[e.u], to[e.v], e.attr});
    Sauhg h(g.attrDim(), nodes, edges);
    auto w = bruteForceIsomorphic(g, h);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(isValidWitness(g, h, *w));
  }
}

TEST(BruteForceIsomorphic, StrictVersusRenaming) {
  Sauhg a(1, {{1, {1.0}}, {2, {2.0}}}, {{1, 2, {5.0}}});
  Sauhg b(1, {{1, {3.0}}, {2, {4.0}}}, {{1, 2, {6.0}}});
  EXPECT_FALSE(bruteForceIsomorphic(a, b).has_value());
  auto w = bruteForceIsomorphic(a, b, AttributeMode::Renaming);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(isValidWitness(a, b, *w));
  // Renaming must be a bijection: two distinct values cannot map onto one.
  Sauhg c(1, {{1, {3.0}}, {2, {3.0}}}, {{1, 2, {6.0}}});
  EXPECT_FALSE(bruteForceIsomorphic(a, c, AttributeMode::Renaming).has_value());
}

TEST(BruteForceIsomorphic, TooLarge) {
  try {
    bruteForceIsomorphic(testutil::path(kIsoNodeLimit + 1), testutil::path(kIsoNodeLimit + 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(IsValidWitness, RejectsWrongMap) {
  auto g = testutil::path(3);
  IsoWitness w{{{1, 2}, {2, 1}, {3, 3}}, AttributeMode::Strict};
  EXPECT_FALSE(isValidWitness(g, g, w));
}

TEST(BruteTreeEqual, Examples) {
  auto arena = std::make_shared<TreeArena>();
  auto l1 = UTree::leaf(AttrVec{1.0}, arena);
  auto l2 = UTree::leaf(AttrVec{2.0}, arena);
  EXPECT_TRUE(bruteTreeEqual(l1, UTree::leaf(AttrVec{1.0})));
  auto a = UTree::make(RootLabel::of(AttrVec{0.0}), {{AttrVec{1.0}, l1}, {AttrVec{2.0}, l2}});
  auto b = UTree::make(RootLabel::of(AttrVec{0.0}), {{AttrVec{2.0}, l2}, {AttrVec{1.0}, l1}});
  EXPECT_TRUE(bruteTreeEqual(a, b));
  auto c = UTree::make(RootLabel::of(AttrVec{0.0}), {{AttrVec{1.0}, l1}, {AttrVec{3.0}, l2}});
  EXPECT_FALSE(bruteTreeEqual(a, c));
}

TEST(ExhaustivePartition, Examples) {
  EXPECT_EQ(exhaustivePartition(testutil::cycle(5), Relation::Aut), (Partition{{1, 2, 3, 4, 5}}));
  EXPECT_EQ(exhaustivePartition(testutil::cycle(5), Relation::Awl), (Partition{{1, 2, 3, 4, 5}}));
  EXPECT_EQ(exhaustivePartition(testutil::path(3), Relation::Aut), (Partition{{1, 3}, {2}}));
  EXPECT_EQ(exhaustivePartition(testutil::path(3), Relation::Awl), (Partition{{1, 3}, {2}}));
}

TEST(ExhaustivePartition, RelationsAgreeOnCorpus) {
  CorpusSpec spec;
  spec.seed = 8;
  spec.count = 150;
  spec.maxNodes = 8;
  spec.edgeProbability = 0.35;
  for (const auto& g : generateStatic(spec)) {
    EXPECT_EQ(exhaustivePartition(g, Relation::Aut), exhaustivePartition(g, Relation::Awl));
  }
}
