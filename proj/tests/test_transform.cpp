#include <gtest/gtest.h>

#include "dynwl/corpus.hpp"
#include "dynwl/error.hpp"
#include "dynwl/transform.hpp"

using namespace dynwl;

TEST(MakeStatic, SingleSnapshotAppendsPresentFlags) {
  Sauhg s(1, {{1, {2.0}}, {2, {3.0}}}, {{1, 2, {0.5}}});
  Sauhg out = makeStatic(DynamicGraph(1, {s}));
  EXPECT_EQ(out.attrDim(), 2u);
  EXPECT_EQ(out.nodeAttr(1), (AttrVec{2.0, 1.0}));
  EXPECT_EQ(out.nodeAttr(2), (AttrVec{3.0, 1.0}));
  EXPECT_EQ(out.edgeAttr(1, 2), (AttrVec{0.5, 1.0}));
}

TEST(MakeStatic, FlagRuleByHand) {
  // Node 1 present at t=0 only; edge {1,2} at t=1 only.
  Sauhg s0(1, {{1, {3.0}}, {2, {0.0}}}, {});
  Sauhg s1(1, {{1, {3.0}}, {2, {0.0}}}, {{1, 2, {2.0}}});
  Sauhg s0only(1, {{1, {3.0}}}, {});
  Sauhg out = makeStatic(DynamicGraph(1, {s0only, Sauhg(1)}));
  EXPECT_EQ(out.nodeAttr(1), (AttrVec{3.0, 1.0, 0.0, 0.0}));

  Sauhg edges = makeStatic(DynamicGraph(1, {s0, s1}));
  EXPECT_EQ(edges.edgeAttr(1, 2), (AttrVec{0.0, 0.0, 2.0, 1.0}));
}

TEST(MakeDynamic, InvertsHandBuiltGraph) {
  Sauhg g(4, {{1, {1.0, 1.0, 0.0, 0.0}}, {2, {0.0, 0.0, 5.0, 1.0}}, {3, {4.0, 1.0, 4.0, 1.0}}},
          {{1, 3, {7.0, 1.0, 0.0, 0.0}}});
  DynamicGraph dg = makeDynamic(g, 2, 1);
  EXPECT_EQ(dg.timelineLength(), 2u);
  EXPECT_EQ(dg.snapshot(0).nodes(), (std::vector<NodeId>{1, 3}));
  EXPECT_EQ(dg.snapshot(1).nodes(), (std::vector<NodeId>{2, 3}));
  EXPECT_EQ(dg.edgeAttrAt(1, 3, 0), MaybeAttr(AttrVec{7.0}));
  EXPECT_EQ(dg.edgeAttrAt(1, 3, 1), std::nullopt);
  EXPECT_EQ(makeStatic(dg), g);
}

TEST(MakeDynamic, RejectsNonStatifiedInput) {
  auto code = [](const Sauhg& g, std::size_t l, std::size_t k) {
    try {
      makeDynamic(g, l, k);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code(Sauhg(3, {{1, {1.0, 1.0, 0.0}}}, {}), 2, 1), ErrorCode::NotStatified);
  EXPECT_EQ(code(Sauhg(2, {{1, {1.0, 0.5}}}, {}), 1, 1), ErrorCode::NotStatified);
  EXPECT_EQ(code(Sauhg(2, {{1, {1.0, 0.0}}}, {}), 1, 1), ErrorCode::NotStatified);
  EXPECT_EQ(code(Sauhg(2, {{1, {0.0, 0.0}}}, {}), 1, 1), ErrorCode::NotStatified);
  // Edge present at a timestamp where an endpoint is absent.
  EXPECT_EQ(code(Sauhg(2, {{1, {1.0, 1.0}}, {2, {0.0, 0.0}}}, {{1, 2, {1.0, 1.0}}}), 1, 1),
            ErrorCode::NotStatified);
}

TEST(MakeDynamic, RoundTripOnGeneratedCorpus) {
  CorpusSpec spec;
  spec.seed = 11;
  spec.count = 200;
  spec.maxNodes = 6;
  spec.attrDim = 2;
  spec.timelineLen = 4;
  spec.nodeChurnProb = 0.3;
  spec.edgeChurnProb = 0.3;
  for (const auto& dg : generateDynamic(spec)) {
    EXPECT_EQ(makeDynamic(makeStatic(dg), dg.timelineLength(), dg.attrDim()), dg);
  }
}

TEST(ExtendedAttr, SeriesRoundTrip) {
  std::vector<MaybeAttr> series = {AttrVec{1.0, 2.0}, std::nullopt, AttrVec{0.0, 0.0}};
  auto ext = ExtendedAttr::fromSeries(series, 2);
  auto flat = ext.flatten();
  EXPECT_EQ(flat, (AttrVec{1.0, 2.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0}));
  EXPECT_EQ(ExtendedAttr::parse(flat, 3, 2).series(), series);
}

TEST(PadTimeline, PadsWithEmptySnapshots) {
  Sauhg s(1, {{1, {1.0}}}, {});
  DynamicGraph a(1, {s});
  DynamicGraph b(1, {s, s});
  std::vector<DynamicGraph> both{a, b};
  auto padded = padTimeline(both);
  ASSERT_EQ(padded[0].timelineLength(), 2u);
  EXPECT_TRUE(padded[0].snapshot(1).empty());
  EXPECT_EQ(padded[1], b);

  std::vector<DynamicGraph> single{b};
  EXPECT_EQ(padTimeline(single)[0], b);
  std::vector<DynamicGraph> aligned{b, b};
  EXPECT_EQ(padTimeline(aligned), aligned);
}
