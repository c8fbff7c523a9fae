#include "dynwl/unfolding.hpp"

#include <algorithm>

#include "dynwl/error.hpp"
#include "dynwl/transform.hpp"

namespace dynwl {

TreeBuilder::TreeBuilder(const Sauhg& g, std::shared_ptr<TreeArena> arena)
    : g_(g), arena_(std::move(arena)) {
  edgeLabels_.reserve(g_.edgeCount());
  for (std::size_t e = 0; e < g_.edgeCount(); ++e) edgeLabels_.push_back(arena_->edgeLabel(g_.edgeAttrAt(e)));
}

TreeId TreeBuilder::build(std::size_t denseIndex, std::size_t depth) {
  constexpr TreeId kUnset = ~TreeId{0};
  while (memo_.size() <= depth) memo_.emplace_back(g_.nodeCount(), kUnset);
  if (memo_[depth][denseIndex] != kUnset) return memo_[depth][denseIndex];

  for (std::size_t d = 0; d <= depth; ++d) {
    if (memo_[d][denseIndex] != kUnset) continue;
    if (d == 0) {
      memo_[0][denseIndex] = arena_->leaf(g_.attrAt(denseIndex));
      continue;
    }
    std::vector<TreeArena::Child> kids;
    for (const auto& nb : g_.denseNeighbors(denseIndex)) {
      kids.push_back({edgeLabels_[nb.edge], build(nb.index, d - 1)});
    }
    memo_[d][denseIndex] = arena_->make(RootLabel::of(g_.attrAt(denseIndex)), std::move(kids));
  }
  return memo_[depth][denseIndex];
}

UTree TreeBuilder::tree(NodeId v, std::size_t depth) { return UTree(arena_, build(g_.indexOf(v), depth)); }

DynTreeBuilder::DynTreeBuilder(const DynamicGraph& dg, std::shared_ptr<TreeArena> arena)
    : dg_(dg), arena_(std::move(arena)), diameters_(dg.timelineLength()) {
  perTimestamp_.reserve(dg_.timelineLength());
  for (const auto& snap : dg_.snapshots()) perTimestamp_.emplace_back(snap, arena_);
}

TreeId DynTreeBuilder::build(NodeId v, std::size_t t, std::size_t depth) {
  if (!dg_.hasNode(v)) throw Error(ErrorCode::NodeNotFound, std::to_string(v));
  const auto& snap = dg_.snapshot(t);
  if (!snap.hasNode(v)) return arena_->leaf(std::nullopt);
  return perTimestamp_[t].build(snap.indexOf(v), depth);
}

std::vector<TreeId> DynTreeBuilder::buildSeq(NodeId v, const std::vector<std::size_t>& depthPerTimestamp) {
  std::vector<TreeId> out;
  out.reserve(dg_.timelineLength());
  for (std::size_t t = 0; t < dg_.timelineLength(); ++t) out.push_back(build(v, t, depthPerTimestamp[t]));
  return out;
}

std::size_t DynTreeBuilder::snapshotDiameter(std::size_t t) {
  if (!diameters_[t]) {
    const auto& snap = dg_.snapshot(t);
    diameters_[t] = snap.empty() ? 0 : diameter(snap);
  }
  return *diameters_[t];
}

UTree buildAttrTree(const Sauhg& g, NodeId v, std::size_t depth) {
  TreeBuilder builder(g);
  return builder.tree(v, depth);
}

TreeSeq buildDynTrees(const DynamicGraph& dg, NodeId v, std::size_t depth) {
  DynTreeBuilder builder(dg);
  TreeSeq out;
  for (std::size_t t = 0; t < dg.timelineLength(); ++t) out.emplace_back(builder.arena(), builder.build(v, t, depth));
  return out;
}

std::size_t autDepth(const Sauhg& g1, const Sauhg& g2) {
  std::size_t r1 = g1.empty() ? 0 : diameter(g1);
  std::size_t r2 = g2.empty() ? 0 : diameter(g2);
  return std::max(r1, r2) + 1;
}

std::vector<std::size_t> dutDepths(DynTreeBuilder& a, DynTreeBuilder& b) {
  if (a.graph().timelineLength() != b.graph().timelineLength()) {
    throw Error(ErrorCode::TimelineMismatch, "timelines differ; pad first");
  }
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < a.graph().timelineLength(); ++t) {
    out.push_back(std::max(a.snapshotDiameter(t), b.snapshotDiameter(t)) + 1);
  }
  return out;
}

bool autEquivalent(const Sauhg& g1, NodeId u, const Sauhg& g2, NodeId v) {
  if (g1.attrDim() != g2.attrDim()) {
    throw Error(ErrorCode::AttrDimMismatch, "graphs with different attribute dims");
  }
  auto arena = std::make_shared<TreeArena>();
  TreeBuilder a(g1, arena);
  TreeBuilder b(g2, arena);
  std::size_t depth = autDepth(g1, g2);
  return a.build(g1.indexOf(u), depth) == b.build(g2.indexOf(v), depth);
}

bool dutEquivalent(const DynamicGraph& dg1, NodeId u, const DynamicGraph& dg2, NodeId v) {
  if (dg1.attrDim() != dg2.attrDim()) {
    throw Error(ErrorCode::AttrDimMismatch, "graphs with different attribute dims");
  }
  auto arena = std::make_shared<TreeArena>();
  DynTreeBuilder a(dg1, arena);
  DynTreeBuilder b(dg2, arena);
  auto depths = dutDepths(a, b);
  return a.buildSeq(u, depths) == b.buildSeq(v, depths);
}

bool dutGraphEquivalent(DynTreeBuilder& a, DynTreeBuilder& b) {
  if (a.arena() != b.arena()) {
    throw Error(ErrorCode::InvalidTree, "builders must share one arena");
  }
  auto depths = dutDepths(a, b);
  std::vector<std::vector<TreeId>> left;
  std::vector<std::vector<TreeId>> right;
  for (NodeId v : a.graph().unionNodes()) left.push_back(a.buildSeq(v, depths));
  for (NodeId v : b.graph().unionNodes()) right.push_back(b.buildSeq(v, depths));
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  return left == right;
}

bool dutGraphEquivalent(const DynamicGraph& dg1, const DynamicGraph& dg2, bool pad) {
  if (dg1.attrDim() != dg2.attrDim()) {
    throw Error(ErrorCode::AttrDimMismatch, "graphs with different attribute dims");
  }
  if (dg1.timelineLength() != dg2.timelineLength()) {
    if (!pad) throw Error(ErrorCode::TimelineMismatch, "timelines differ; pad first");
    std::vector<DynamicGraph> both{dg1, dg2};
    auto padded = padTimeline(both);
    return dutGraphEquivalent(padded[0], padded[1], false);
  }
  auto arena = std::make_shared<TreeArena>();
  DynTreeBuilder a(dg1, arena);
  DynTreeBuilder b(dg2, arena);
  return dutGraphEquivalent(a, b);
}

}  // namespace dynwl
