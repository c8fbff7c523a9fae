#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dynwl/graph.hpp"

namespace dynwl {

// Dense color id handed out by an injective interner. Two signatures get the
// same id iff their canonical serializations are byte-identical.
using ColorId = std::uint32_t;

// Equivalence classes of node ids; each class ascending, classes ordered by
// their smallest member.
using Partition = std::vector<std::vector<NodeId>>;

Partition partitionByKey(const std::vector<NodeId>& nodes, const std::vector<ColorId>& keys);

// Per-iteration coloring produced by one refinement run.
//
// Ids are assigned by first occurrence in ascending node id within ascending
// iteration, so a history is a pure function of its input graph. Refinement
// only splits classes; once the class count repeats the partition is final and
// colorsAt() keeps returning it for every later iteration.
struct ColorHistory {
  std::vector<NodeId> nodes;
  std::vector<std::vector<ColorId>> perIteration;
  // Iteration whose class count equals the next one's; unset when the run was
  // cut off by maxIter first.
  std::optional<std::size_t> stableAt;

  std::size_t iterations() const { return perIteration.size(); }
  const std::vector<ColorId>& colorsAt(std::size_t iteration) const;
  const std::vector<ColorId>& stableColors() const;
  ColorId color(NodeId v, std::size_t iteration) const;
  ColorId stableColor(NodeId v) const;
  std::size_t classCount(std::size_t iteration) const;
  Partition partitionAt(std::size_t iteration) const;
  Partition stablePartition() const;
};

// One ColorHistory per timestamp, each over the union node set. Nodes absent
// at a timestamp hold a reserved absence color at every iteration.
struct DynColorHistory {
  std::vector<NodeId> nodes;
  std::vector<ColorHistory> perTimestamp;

  // Color vector (one entry per timestamp) of node v at iteration i.
  std::vector<ColorId> colorVector(NodeId v, std::optional<std::size_t> iteration = {}) const;
};

// Plain 1-WL: edge attributes are ignored.
ColorHistory run1WL(const Sauhg& g, std::optional<std::size_t> maxIter = {});

// Attributed 1-WL: each neighbor color is paired with the attribute of the
// edge that leads to it.
ColorHistory runAWL(const Sauhg& g, std::optional<std::size_t> maxIter = {});

// Dynamic 1-WL: independent attributed refinement per timestamp over the union
// node set, each timestamp with its own interner.
DynColorHistory runDWL(const DynamicGraph& dg, std::optional<std::size_t> maxIter = {});

// Cross-graph predicates always use a joint run on the disjoint union.
bool awlNodeEquivalent(const Sauhg& g1, NodeId u, const Sauhg& g2, NodeId v);
bool awlGraphEquivalent(const Sauhg& g1, const Sauhg& g2);
bool wl1GraphEquivalent(const Sauhg& g1, const Sauhg& g2);

// Multiset equality of per-node stable color vectors under a joint run.
// Without `pad`, differing timelines raise TimelineMismatch.
bool dwlEquivalent(const DynamicGraph& dg1, const DynamicGraph& dg2, bool pad = false);

}  // namespace dynwl
