#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dynwl {

using NodeId = std::uint64_t;

// Fixed-length attribute vector (alpha_v or omega_e). Entries must be finite.
using AttrVec = std::vector<double>;

// An attribute at one timestamp, or the absence marker (std::nullopt).
// The absence marker is distinct from every vector, including the zero vector.
using MaybeAttr = std::optional<AttrVec>;

// Undirected edge key, stored once as (min, max). lo == hi is a self-loop.
struct EdgeKey {
  NodeId lo = 0;
  NodeId hi = 0;

  static EdgeKey of(NodeId a, NodeId b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }
  bool isLoop() const { return lo == hi; }
  auto operator<=>(const EdgeKey&) const = default;
};

struct NodeSpec {
  NodeId id = 0;
  AttrVec attr;
};

struct EdgeSpec {
  NodeId u = 0;
  NodeId v = 0;
  AttrVec attr;
};

// Canonical byte encoding of an attribute vector: the IEEE-754 bit pattern of
// each entry, big-endian, with -0.0 folded onto +0.0. Two vectors compare
// equal under == iff their encodings are byte-identical.
std::string canonicalBytes(std::span<const double> attr);

// Static, attributed, undirected, homogeneous graph. Immutable once built.
//
// Node ids are arbitrary naturals; internally nodes are reindexed densely in
// ascending id order and the dense view is exposed for the refinement engines.
class Sauhg {
 public:
  struct DenseNeighbor {
    std::size_t index;     // dense index of the neighbor
    std::size_t edge;      // dense index of the connecting edge
    bool operator==(const DenseNeighbor&) const = default;
  };

  Sauhg() = default;
  explicit Sauhg(std::size_t attrDim) : attrDim_(attrDim) {}
  Sauhg(std::size_t attrDim, std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges);

  std::size_t attrDim() const { return attrDim_; }
  std::size_t nodeCount() const { return ids_.size(); }
  std::size_t edgeCount() const { return edgeKeys_.size(); }
  bool empty() const { return ids_.empty(); }

  // Node ids in ascending order.
  const std::vector<NodeId>& nodes() const { return ids_; }
  bool hasNode(NodeId v) const;
  bool hasEdge(NodeId a, NodeId b) const;

  const AttrVec& nodeAttr(NodeId v) const;
  // Throws InvalidGraph when the edge does not exist.
  const AttrVec& edgeAttr(NodeId a, NodeId b) const;
  std::optional<std::size_t> findEdge(NodeId a, NodeId b) const;

  // Edges in ascending key order, aligned with edgeAttrAt(i).
  const std::vector<EdgeKey>& edgeKeys() const { return edgeKeys_; }
  const AttrVec& edgeAttrAt(std::size_t edgeIndex) const { return edgeAttrs_[edgeIndex]; }

  // Dense view. Neighbor lists are sorted by neighbor index (== ascending id).
  std::size_t indexOf(NodeId v) const;
  NodeId idAt(std::size_t index) const { return ids_[index]; }
  const AttrVec& attrAt(std::size_t index) const { return nodeAttrs_[index]; }
  std::span<const DenseNeighbor> denseNeighbors(std::size_t index) const {
    return adjacency_[index];
  }

  std::vector<NodeSpec> nodeSpecs() const;
  std::vector<EdgeSpec> edgeSpecs() const;

  friend bool operator==(const Sauhg&, const Sauhg&) = default;

 private:
  std::size_t attrDim_ = 0;
  std::vector<NodeId> ids_;
  std::vector<AttrVec> nodeAttrs_;
  std::vector<EdgeKey> edgeKeys_;
  std::vector<AttrVec> edgeAttrs_;
  std::vector<std::vector<DenseNeighbor>> adjacency_;
};

// Sorted neighbor ids of v; v itself appears once iff the self-loop {v} exists.
std::vector<NodeId> neighbors(const Sauhg& g, NodeId v);

// (neighbor, omega of the connecting edge), aligned with neighbors(g, v).
std::vector<std::pair<NodeId, AttrVec>> neighborEdgeAttrs(const Sauhg& g, NodeId v);

// Maximum finite eccentricity over all nodes; 0 for edgeless graphs.
std::size_t diameter(const Sauhg& g);

struct DisjointUnion {
  Sauhg graph;
  // Maps every node id of the second operand to its id in `graph`.
  // Ids of the first operand are kept unchanged.
  std::map<NodeId, NodeId> remap;
};

DisjointUnion disjointUnion(const Sauhg& g1, const Sauhg& g2);

// Rounds every attribute entry to `digits` decimal digits.
Sauhg quantized(const Sauhg& g, int digits);

// Discrete dynamic graph: a sequence of snapshots over the timeline 0..l.
class DynamicGraph {
 public:
  DynamicGraph() = default;
  DynamicGraph(std::size_t attrDim, std::vector<Sauhg> snapshots);

  std::size_t attrDim() const { return attrDim_; }
  std::size_t timelineLength() const { return snapshots_.size(); }
  const Sauhg& snapshot(std::size_t t) const;
  const std::vector<Sauhg>& snapshots() const { return snapshots_; }

  // Union of node ids over all snapshots, ascending.
  const std::vector<NodeId>& unionNodes() const { return unionNodes_; }
  bool hasNode(NodeId v) const;

  // alpha_v(t); std::nullopt (absence) exactly when v is not in snapshot t.
  MaybeAttr nodeAttrAt(NodeId v, std::size_t t) const;
  // omega_{u,v}(t); std::nullopt exactly when the edge is not in snapshot t.
  MaybeAttr edgeAttrAt(NodeId u, NodeId v, std::size_t t) const;

  friend bool operator==(const DynamicGraph&, const DynamicGraph&) = default;

 private:
  std::size_t attrDim_ = 0;
  std::vector<Sauhg> snapshots_;
  std::vector<NodeId> unionNodes_;
};

struct DynamicDisjointUnion {
  DynamicGraph graph;
  std::map<NodeId, NodeId> remap;
};

// Snapshot-wise disjoint union with one consistent remap of the second
// operand's node ids. Timelines must have equal length.
DynamicDisjointUnion disjointUnion(const DynamicGraph& g1, const DynamicGraph& g2);

DynamicGraph quantized(const DynamicGraph& g, int digits);

}  // namespace dynwl
