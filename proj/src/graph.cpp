#include "dynwl/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>

#include "dynwl/error.hpp"

namespace dynwl {

std::string_view toString(ErrorCode code) {
  switch (code) {
    case ErrorCode::NodeNotFound: return "NodeNotFound";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::AttrDimMismatch: return "AttrDimMismatch";
    case ErrorCode::InvalidAttr: return "InvalidAttr";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::NotStatified: return "NotStatified";
    case ErrorCode::TimelineMismatch: return "TimelineMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::TargetUndefined: return "TargetUndefined";
    case ErrorCode::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorCode::SpecError: return "SpecError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidTree: return "InvalidTree";
  }
  return "Unknown";
}

std::string canonicalBytes(std::span<const double> attr) {
  std::string out;
  out.reserve(attr.size() * 8);
  for (double x : attr) {
    if (x == 0.0) x = 0.0;  // fold -0.0
    auto bits = std::bit_cast<std::uint64_t>(x);
    for (int shift = 56; shift >= 0; shift -= 8) {
      out.push_back(static_cast<char>((bits >> shift) & 0xffu));
    }
  }
  return out;
}

namespace {

void checkAttr(const AttrVec& attr, std::size_t dim, const char* what) {
  if (attr.size() != dim) {
    throw Error(ErrorCode::AttrDimMismatch, std::string(what) + " attribute has length " +
                                                std::to_string(attr.size()) + ", expected " +
                                                std::to_string(dim));
  }
  for (double x : attr) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::InvalidAttr, std::string(what) + " attribute is not finite");
    }
  }
}

}  // namespace

Sauhg::Sauhg(std::size_t attrDim, std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges)
    : attrDim_(attrDim) {
  std::sort(nodes.begin(), nodes.end(),
            [](const NodeSpec& a, const NodeSpec& b) { return a.id < b.id; });
  ids_.reserve(nodes.size());
  nodeAttrs_.reserve(nodes.size());
  for (auto& n : nodes) {
    if (!ids_.empty() && ids_.back() == n.id) {
      throw Error(ErrorCode::InvalidGraph, "duplicate node id " + std::to_string(n.id));
    }
    checkAttr(n.attr, attrDim_, "node");
    ids_.push_back(n.id);
    nodeAttrs_.push_back(std::move(n.attr));
  }

  std::vector<std::pair<EdgeKey, AttrVec>> keyed;
  keyed.reserve(edges.size());
  for (auto& e : edges) {
    if (!hasNode(e.u) || !hasNode(e.v)) {
      throw Error(ErrorCode::InvalidGraph, "edge {" + std::to_string(e.u) + "," +
                                               std::to_string(e.v) +
                                               "} references an unknown node");
    }
    checkAttr(e.attr, attrDim_, "edge");
    keyed.emplace_back(EdgeKey::of(e.u, e.v), std::move(e.attr));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    if (keyed[i].first == keyed[i - 1].first) {
      throw Error(ErrorCode::InvalidGraph, "duplicate edge {" + std::to_string(keyed[i].first.lo) +
                                               "," + std::to_string(keyed[i].first.hi) + "}");
    }
  }

  adjacency_.assign(ids_.size(), {});
  edgeKeys_.reserve(keyed.size());
  edgeAttrs_.reserve(keyed.size());
  for (auto& [key, attr] : keyed) {
    std::size_t e = edgeKeys_.size();
    std::size_t a = indexOf(key.lo);
    std::size_t b = indexOf(key.hi);
    adjacency_[a].push_back({b, e});
    if (a != b) adjacency_[b].push_back({a, e});
    edgeKeys_.push_back(key);
    edgeAttrs_.push_back(std::move(attr));
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const DenseNeighbor& x, const DenseNeighbor& y) { return x.index < y.index; });
  }
}

bool Sauhg::hasNode(NodeId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

bool Sauhg::hasEdge(NodeId a, NodeId b) const { return findEdge(a, b).has_value(); }

std::optional<std::size_t> Sauhg::findEdge(NodeId a, NodeId b) const {
  auto key = EdgeKey::of(a, b);
  auto it = std::lower_bound(edgeKeys_.begin(), edgeKeys_.end(), key);
  if (it == edgeKeys_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - edgeKeys_.begin());
}

std::size_t Sauhg::indexOf(NodeId v) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) {
    throw Error(ErrorCode::NodeNotFound, "node " + std::to_string(v));
  }
  return static_cast<std::size_t>(it - ids_.begin());
}

const AttrVec& Sauhg::nodeAttr(NodeId v) const { return nodeAttrs_[indexOf(v)]; }

const AttrVec& Sauhg::edgeAttr(NodeId a, NodeId b) const {
  auto e = findEdge(a, b);
  if (!e) {
    throw Error(ErrorCode::InvalidGraph,
                "no edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
  }
  return edgeAttrs_[*e];
}

std::vector<NodeSpec> Sauhg::nodeSpecs() const {
  std::vector<NodeSpec> out;
  out.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) out.push_back({ids_[i], nodeAttrs_[i]});
  return out;
}

std::vector<EdgeSpec> Sauhg::edgeSpecs() const {
  std::vector<EdgeSpec> out;
  out.reserve(edgeKeys_.size());
  for (std::size_t i = 0; i < edgeKeys_.size(); ++i) {
    out.push_back({edgeKeys_[i].lo, edgeKeys_[i].hi, edgeAttrs_[i]});
  }
  return out;
}

std::vector<NodeId> neighbors(const Sauhg& g, NodeId v) {
  std::vector<NodeId> out;
  for (const auto& n : g.denseNeighbors(g.indexOf(v))) out.push_back(g.idAt(n.index));
  return out;
}

std::vector<std::pair<NodeId, AttrVec>> neighborEdgeAttrs(const Sauhg& g, NodeId v) {
  std::vector<std::pair<NodeId, AttrVec>> out;
  for (const auto& n : g.denseNeighbors(g.indexOf(v))) {
    out.emplace_back(g.idAt(n.index), g.edgeAttrAt(n.edge));
  }
  return out;
}

std::size_t diameter(const Sauhg& g) {
  if (g.empty()) throw Error(ErrorCode::EmptyGraph, "diameter of a graph without nodes");
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  std::size_t best = 0;
  std::vector<std::size_t> dist(g.nodeCount());
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < g.nodeCount(); ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      best = std::max(best, dist[x]);
      for (const auto& n : g.denseNeighbors(x)) {
        if (dist[n.index] == kUnseen) {
          dist[n.index] = dist[x] + 1;
          queue.push_back(n.index);
        }
      }
    }
  }
  return best;
}

namespace {

std::map<NodeId, NodeId> shiftedIds(const std::vector<NodeId>& first,
                                    const std::vector<NodeId>& second) {
  NodeId offset = first.empty() ? 0 : first.back() + 1;
  std::map<NodeId, NodeId> remap;
  for (std::size_t i = 0; i < second.size(); ++i) remap[second[i]] = offset + i;
  return remap;
}

Sauhg unionWithRemap(const Sauhg& g1, const Sauhg& g2, const std::map<NodeId, NodeId>& remap) {
  auto nodes = g1.nodeSpecs();
  auto edges = g1.edgeSpecs();
  for (auto n : g2.nodeSpecs()) {
    n.id = remap.at(n.id);
    nodes.push_back(std::move(n));
  }
  for (auto e : g2.edgeSpecs()) {
    e.u = remap.at(e.u);
    e.v = remap.at(e.v);
    edges.push_back(std::move(e));
  }
  return Sauhg(g1.attrDim(), std::move(nodes), std::move(edges));
}

}  // namespace

DisjointUnion disjointUnion(const Sauhg& g1, const Sauhg& g2) {
  if (g1.attrDim() != g2.attrDim()) {
    throw Error(ErrorCode::AttrDimMismatch, "disjoint union of graphs with attribute dims " +
                                                std::to_string(g1.attrDim()) + " and " +
                                                std::to_string(g2.attrDim()));
  }
  auto remap = shiftedIds(g1.nodes(), g2.nodes());
  return {unionWithRemap(g1, g2, remap), std::move(remap)};
}

Sauhg quantized(const Sauhg& g, int digits) {
  const double scale = std::pow(10.0, digits);
  auto round = [scale](AttrVec a) {
    for (double& x : a) x = std::round(x * scale) / scale;
    return a;
  };
  auto nodes = g.nodeSpecs();
  auto edges = g.edgeSpecs();
  for (auto& n : nodes) n.attr = round(std::move(n.attr));
  for (auto& e : edges) e.attr = round(std::move(e.attr));
  return Sauhg(g.attrDim(), std::move(nodes), std::move(edges));
}

DynamicGraph::DynamicGraph(std::size_t attrDim, std::vector<Sauhg> snapshots)
    : attrDim_(attrDim), snapshots_(std::move(snapshots)) {
  for (auto& s : snapshots_) {
    if (s.empty()) {
      s = Sauhg(attrDim_);
    } else if (s.attrDim() != attrDim_) {
      throw Error(ErrorCode::AttrDimMismatch, "snapshot attribute dim differs from graph dim");
    }
    unionNodes_.insert(unionNodes_.end(), s.nodes().begin(), s.nodes().end());
  }
  std::sort(unionNodes_.begin(), unionNodes_.end());
  unionNodes_.erase(std::unique(unionNodes_.begin(), unionNodes_.end()), unionNodes_.end());
}

const Sauhg& DynamicGraph::snapshot(std::size_t t) const {
  if (t >= snapshots_.size()) {
    throw Error(ErrorCode::TimelineMismatch, "timestamp " + std::to_string(t) +
                                                 " outside timeline of length " +
                                                 std::to_string(snapshots_.size()));
  }
  return snapshots_[t];
}

bool DynamicGraph::hasNode(NodeId v) const {
  return std::binary_search(unionNodes_.begin(), unionNodes_.end(), v);
}

MaybeAttr DynamicGraph::nodeAttrAt(NodeId v, std::size_t t) const {
  if (!hasNode(v)) throw Error(ErrorCode::NodeNotFound, "node " + std::to_string(v));
  const auto& s = snapshot(t);
  if (!s.hasNode(v)) return std::nullopt;
  return s.nodeAttr(v);
}

MaybeAttr DynamicGraph::edgeAttrAt(NodeId u, NodeId v, std::size_t t) const {
  const auto& s = snapshot(t);
  auto e = s.findEdge(u, v);
  if (!e) return std::nullopt;
  return s.edgeAttrAt(*e);
}

DynamicDisjointUnion disjointUnion(const DynamicGraph& g1, const DynamicGraph& g2) {
  if (g1.attrDim() != g2.attrDim()) {
    throw Error(ErrorCode::AttrDimMismatch, "dynamic graphs with different attribute dims");
  }
  if (g1.timelineLength() != g2.timelineLength()) {
    throw Error(ErrorCode::TimelineMismatch, "dynamic graphs with different timelines");
  }
  auto remap = shiftedIds(g1.unionNodes(), g2.unionNodes());
  std::vector<Sauhg> snaps;
  snaps.reserve(g1.timelineLength());
  for (std::size_t t = 0; t < g1.timelineLength(); ++t) {
    snaps.push_back(unionWithRemap(g1.snapshot(t), g2.snapshot(t), remap));
  }
  return {DynamicGraph(g1.attrDim(), std::move(snaps)), std::move(remap)};
}

DynamicGraph quantized(const DynamicGraph& g, int digits) {
  std::vector<Sauhg> snaps;
  for (const auto& s : g.snapshots()) snaps.push_back(quantized(s, digits));
  return DynamicGraph(g.attrDim(), std::move(snaps));
}

}  // namespace dynwl
