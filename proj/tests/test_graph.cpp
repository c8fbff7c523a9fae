#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "dynwl/error.hpp"
#include "dynwl/graph.hpp"
#include "dynwl/graph_json.hpp"
#include "helpers.hpp"

using namespace dynwl;
using testutil::path;
using testutil::triangle;

namespace {

ErrorCode codeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no dynwl::Error thrown";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(Sauhg, NeighborsOfTriangleIsolatedAndPath) {
  EXPECT_EQ(neighbors(triangle(), 1), (std::vector<NodeId>{2, 3}));
  Sauhg iso(1, {{7, {0.0}}}, {});
  EXPECT_TRUE(neighbors(iso, 7).empty());
  EXPECT_EQ(neighbors(path(3), 2), (std::vector<NodeId>{1, 3}));
  EXPECT_EQ(codeOf([] { neighbors(triangle(), 9); }), ErrorCode::NodeNotFound);
}

TEST(Sauhg, NeighborEdgeAttrs) {
  Sauhg g(1, {{1, {0.0}}, {2, {0.0}}}, {{1, 2, {5.0}}});
  auto out = neighborEdgeAttrs(g, 1);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].first, 2u);
  EXPECT_EQ(out[0].second, AttrVec{5.0});

  Sauhg star(1, {{0, {0.0}}, {3, {0.0}}, {1, {0.0}}, {2, {0.0}}},
             {{0, 3, {30.0}}, {2, 0, {20.0}}, {0, 1, {10.0}}});
  auto s = neighborEdgeAttrs(star, 0);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], (std::pair<NodeId, AttrVec>{1, {10.0}}));
  EXPECT_EQ(s[1], (std::pair<NodeId, AttrVec>{2, {20.0}}));
  EXPECT_EQ(s[2], (std::pair<NodeId, AttrVec>{3, {30.0}}));
  EXPECT_EQ(codeOf([&] { neighborEdgeAttrs(star, 42); }), ErrorCode::NodeNotFound);
}

TEST(Sauhg, Diameter) {
  EXPECT_EQ(diameter(Sauhg(1, {{1, {0.0}}}, {})), 0u);
  EXPECT_EQ(diameter(path(4)), 3u);
  auto two = disjointUnion(triangle(), triangle()).graph;
  EXPECT_EQ(diameter(two), 1u);
  EXPECT_EQ(codeOf([] { diameter(Sauhg(1)); }), ErrorCode::EmptyGraph);
}

TEST(Sauhg, DisjointUnion) {
  Sauhg a(1, {{1, {0.0}}}, {});
  auto u = disjointUnion(a, a);
  EXPECT_EQ(u.graph.nodeCount(), 2u);
  EXPECT_EQ(u.graph.edgeCount(), 0u);

  auto t = disjointUnion(triangle(), triangle());
  EXPECT_EQ(t.graph.nodeCount(), 6u);
  EXPECT_EQ(t.graph.edgeCount(), 6u);
  const Sauhg tri = triangle();
  for (NodeId v : tri.nodes()) {
    EXPECT_TRUE(t.graph.hasNode(v));
    EXPECT_TRUE(t.graph.hasNode(t.remap.at(v)));
  }

  auto same = disjointUnion(path(3), Sauhg(1));
  EXPECT_EQ(same.graph, path(3));

  Sauhg k2(2, {{1, {0.0, 0.0}}}, {});
  EXPECT_EQ(codeOf([&] { disjointUnion(a, k2); }), ErrorCode::AttrDimMismatch);
}

TEST(Sauhg, ValidationErrors) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(codeOf([&] { Sauhg(1, {{1, {nan}}}, {}); }), ErrorCode::InvalidAttr);
  EXPECT_EQ(codeOf([&] { Sauhg(1, {{1, {0.0}}, {2, {0.0}}}, {{1, 2, {inf}}}); }), ErrorCode::InvalidAttr);
  EXPECT_EQ(codeOf([] { Sauhg(2, {{1, {0.0}}}, {}); }), ErrorCode::AttrDimMismatch);
  EXPECT_EQ(codeOf([] { Sauhg(1, {{1, {0.0}}, {1, {0.0}}}, {}); }), ErrorCode::InvalidGraph);
  EXPECT_EQ(codeOf([] { Sauhg(1, {{1, {0.0}}}, {{1, 2, {0.0}}}); }), ErrorCode::InvalidGraph);
  EXPECT_EQ(codeOf([] { Sauhg(1, {{1, {0.0}}, {2, {0.0}}}, {{1, 2, {0.0}}, {2, 1, {1.0}}}); }),
            ErrorCode::InvalidGraph);
}

TEST(Sauhg, EdgesStoredOnceUnderCanonicalKey) {
  Sauhg g(1, {{5, {0.0}}, {2, {0.0}}}, {{5, 2, {3.0}}});
  ASSERT_EQ(g.edgeKeys().size(), 1u);
  EXPECT_EQ(g.edgeKeys()[0], (EdgeKey{2, 5}));
  EXPECT_EQ(g.edgeAttr(5, 2), AttrVec{3.0});
  EXPECT_EQ(g.edgeAttr(2, 5), AttrVec{3.0});
  EXPECT_EQ(codeOf([&] { g.edgeAttr(2, 2); }), ErrorCode::InvalidGraph);
}

TEST(Sauhg, SelfLoopAppearsOnce) {
  Sauhg g(1, {{1, {0.0}}}, {{1, 1, {2.0}}});
  EXPECT_EQ(neighbors(g, 1), (std::vector<NodeId>{1}));
}

TEST(CanonicalBytes, FoldsNegativeZero) {
  std::vector<double> a{0.0, 1.5};
  std::vector<double> b{-0.0, 1.5};
  EXPECT_EQ(canonicalBytes(a), canonicalBytes(b));
  std::vector<double> c{0.0, 1.25};
  EXPECT_NE(canonicalBytes(a), canonicalBytes(c));
  EXPECT_EQ(canonicalBytes(a).size(), 16u);
}

TEST(DynamicGraph, AbsenceQueries) {
  Sauhg s0(1, {{1, {1.0}}, {2, {2.0}}}, {{1, 2, {3.0}}});
  Sauhg s1(1, {{2, {4.0}}}, {});
  DynamicGraph dg(1, {s0, s1});
  EXPECT_EQ(dg.timelineLength(), 2u);
  EXPECT_EQ(dg.unionNodes(), (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(dg.nodeAttrAt(1, 0), MaybeAttr(AttrVec{1.0}));
  EXPECT_EQ(dg.nodeAttrAt(1, 1), std::nullopt);
  EXPECT_EQ(dg.edgeAttrAt(1, 2, 0), MaybeAttr(AttrVec{3.0}));
  EXPECT_EQ(dg.edgeAttrAt(2, 1, 1), std::nullopt);
  EXPECT_EQ(codeOf([&] { dg.nodeAttrAt(9, 0); }), ErrorCode::NodeNotFound);
  EXPECT_EQ(codeOf([&] { dg.snapshot(2); }), ErrorCode::TimelineMismatch);
  EXPECT_EQ(codeOf([&] { DynamicGraph(2, {s0}); }), ErrorCode::AttrDimMismatch);
}

TEST(GraphJson, RoundTrip) {
  Sauhg g(2, {{3, {1.0, -0.5}}, {10, {0.25, 2.0}}}, {{10, 3, {1.0, 0.0}}});
  EXPECT_EQ(sauhgFromJson(toJson(g)), g);

  DynamicGraph dg(2, {g, Sauhg(2), g});
  auto j = toJson(dg);
  EXPECT_TRUE(isDynamicJson(j));
  EXPECT_FALSE(isDynamicJson(toJson(g)));
  EXPECT_EQ(dynamicFromJson(j), dg);
}

TEST(GraphJson, MalformedInputIsParseError) {
  EXPECT_EQ(codeOf([] { sauhgFromJson(nlohmann::json::parse(R"({"nodes": []})")); }), ErrorCode::ParseError);
  EXPECT_EQ(codeOf([] {
              sauhgFromJson(nlohmann::json::parse(R"({"attr_dim": 1, "nodes": [{"id": -1, "attr": [0]}], "edges": []})"));
            }),
            ErrorCode::ParseError);
  EXPECT_EQ(codeOf([] {
              dynamicFromJson(nlohmann::json::parse(R"({"timeline_len": 2, "snapshots": []})"));
            }),
            ErrorCode::ParseError);
}

TEST(Quantized, RoundsAttributes) {
  Sauhg g(1, {{1, {0.123456}}}, {});
  EXPECT_DOUBLE_EQ(quantized(g, 2).nodeAttr(1)[0], 0.12);
}
