#pragma once

#include <memory>
#include <vector>

#include "dynwl/graph.hpp"
#include "dynwl/tree.hpp"

namespace dynwl {

// Memoized attributed unfolding trees T_v^d of one graph. Unfolding revisits
// the parent (plain breadth-first unrolling, no visited set). The graph must
// outlive the builder.
class TreeBuilder {
 public:
  explicit TreeBuilder(const Sauhg& g,
                       std::shared_ptr<TreeArena> arena = std::make_shared<TreeArena>());

  TreeId build(std::size_t denseIndex, std::size_t depth);
  UTree tree(NodeId v, std::size_t depth);

  const Sauhg& graph() const { return g_; }
  const std::shared_ptr<TreeArena>& arena() const { return arena_; }

 private:
  const Sauhg& g_;
  std::shared_ptr<TreeArena> arena_;
  std::vector<std::uint32_t> edgeLabels_;
  std::vector<std::vector<TreeId>> memo_;  // memo_[depth][denseIndex]
};

// Per-timestamp unfolding trees of a dynamic graph. A node absent at t gets
// the absent leaf at every depth.
class DynTreeBuilder {
 public:
  explicit DynTreeBuilder(const DynamicGraph& dg,
                          std::shared_ptr<TreeArena> arena = std::make_shared<TreeArena>());

  TreeId build(NodeId v, std::size_t t, std::size_t depth);
  std::vector<TreeId> buildSeq(NodeId v, const std::vector<std::size_t>& depthPerTimestamp);

  const DynamicGraph& graph() const { return dg_; }
  const std::shared_ptr<TreeArena>& arena() const { return arena_; }
  // Diameter of snapshot t; 0 for an empty snapshot.
  std::size_t snapshotDiameter(std::size_t t);

 private:
  const DynamicGraph& dg_;
  std::shared_ptr<TreeArena> arena_;
  std::vector<TreeBuilder> perTimestamp_;
  std::vector<std::optional<std::size_t>> diameters_;
};

UTree buildAttrTree(const Sauhg& g, NodeId v, std::size_t depth);
TreeSeq buildDynTrees(const DynamicGraph& dg, NodeId v, std::size_t depth);

// Depth r+1 with r = max(diam(g1), diam(g2)).
std::size_t autDepth(const Sauhg& g1, const Sauhg& g2);
// Per-timestamp depths r_t+1 with r_t the larger snapshot diameter at t.
std::vector<std::size_t> dutDepths(DynTreeBuilder& a, DynTreeBuilder& b);

bool autEquivalent(const Sauhg& g1, NodeId u, const Sauhg& g2, NodeId v);

// Timelines must match (TimelineMismatch otherwise).
bool dutEquivalent(const DynamicGraph& dg1, NodeId u, const DynamicGraph& dg2, NodeId v);
bool dutGraphEquivalent(const DynamicGraph& dg1, const DynamicGraph& dg2, bool pad = false);
// Same predicate over builders sharing one arena; reuses their memo tables.
bool dutGraphEquivalent(DynTreeBuilder& a, DynTreeBuilder& b);

}  // namespace dynwl
