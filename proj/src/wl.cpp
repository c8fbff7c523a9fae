#include "dynwl/wl.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "dynwl/error.hpp"
#include "dynwl/transform.hpp"

namespace dynwl {

Partition partitionByKey(const std::vector<NodeId>& nodes, const std::vector<ColorId>& keys) {
  std::map<ColorId, std::vector<NodeId>> classes;
  for (std::size_t i = 0; i < nodes.size(); ++i) classes[keys[i]].push_back(nodes[i]);
  Partition out;
  for (auto& [key, members] : classes) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<ColorId>& ColorHistory::colorsAt(std::size_t iteration) const {
  if (iteration < perIteration.size()) return perIteration[iteration];
  if (!stableAt || perIteration.empty()) {
    throw Error(ErrorCode::InvalidGraph, "iteration " + std::to_string(iteration) +
                                             " was not computed and refinement is not stable");
  }
  return perIteration.back();
}

const std::vector<ColorId>& ColorHistory::stableColors() const {
  if (perIteration.empty()) throw Error(ErrorCode::EmptyGraph, "empty color history");
  return perIteration.back();
}

ColorId ColorHistory::color(NodeId v, std::size_t iteration) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
  if (it == nodes.end() || *it != v) throw Error(ErrorCode::NodeNotFound, std::to_string(v));
  return colorsAt(iteration)[static_cast<std::size_t>(it - nodes.begin())];
}

ColorId ColorHistory::stableColor(NodeId v) const { return color(v, perIteration.size() - 1); }

std::size_t ColorHistory::classCount(std::size_t iteration) const {
  const auto& c = colorsAt(iteration);
  return std::unordered_set<ColorId>(c.begin(), c.end()).size();
}

Partition ColorHistory::partitionAt(std::size_t iteration) const {
  return partitionByKey(nodes, colorsAt(iteration));
}

Partition ColorHistory::stablePartition() const { return partitionByKey(nodes, stableColors()); }

std::vector<ColorId> DynColorHistory::colorVector(NodeId v,
                                                  std::optional<std::size_t> iteration) const {
  std::vector<ColorId> out;
  out.reserve(perTimestamp.size());
  for (const auto& h : perTimestamp) {
    out.push_back(iteration ? h.color(v, *iteration) : h.stableColor(v));
  }
  return out;
}

namespace {

// Refinement input over dense indices. `frozen` nodes keep their iteration-0
// color forever (the absence color of the dynamic test).
struct RefineInput {
  std::vector<NodeId> ids;
  std::vector<std::string> initialLabels;
  std::vector<bool> frozen;
  // (neighbor index, edge label id); edge labels are ignored when
  // useEdgeLabels is false.
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> adjacency;
  bool useEdgeLabels = true;
};

void appendU32(std::string& out, std::uint32_t x) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((x >> shift) & 0xffu));
}

class Interner {
 public:
  ColorId intern(const std::string& key) {
    auto [it, inserted] = table_.try_emplace(key, static_cast<ColorId>(table_.size()));
    return it->second;
  }

 private:
  std::unordered_map<std::string, ColorId> table_;
};

std::size_t distinctCount(const std::vector<ColorId>& colors) {
  return std::unordered_set<ColorId>(colors.begin(), colors.end()).size();
}

ColorHistory refine(const RefineInput& in, std::optional<std::size_t> maxIter) {
  const std::size_t n = in.ids.size();
  ColorHistory hist;
  hist.nodes = in.ids;
  Interner interner;

  std::vector<ColorId> current(n);
  for (std::size_t i = 0; i < n; ++i) current[i] = interner.intern(in.initialLabels[i]);
  hist.perIteration.push_back(current);
  std::size_t count = distinctCount(current);

  std::vector<std::pair<std::uint32_t, ColorId>> pairs;
  std::string key;
  for (std::size_t iter = 1; !maxIter || iter <= *maxIter; ++iter) {
    std::vector<ColorId> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (in.frozen[i]) {
        next[i] = current[i];
        continue;
      }
      pairs.clear();
      for (const auto& [nbr, label] : in.adjacency[i]) {
        pairs.emplace_back(in.useEdgeLabels ? label : 0u, current[nbr]);
      }
      std::sort(pairs.begin(), pairs.end());
      key.assign(1, 'R');
      appendU32(key, current[i]);
      appendU32(key, static_cast<std::uint32_t>(pairs.size()));
      for (const auto& [label, color] : pairs) {
        appendU32(key, label);
        appendU32(key, color);
      }
      next[i] = interner.intern(key);
    }
    hist.perIteration.push_back(next);
    std::size_t nextCount = distinctCount(next);
    current = std::move(next);
    if (nextCount == count) {
      hist.stableAt = iter - 1;
      break;
    }
    count = nextCount;
  }
  return hist;
}

std::string attrLabel(const AttrVec& a) { return "A" + canonicalBytes(a); }

RefineInput staticInput(const Sauhg& g, bool useEdgeLabels) {
  RefineInput in;
  in.ids = g.nodes();
  in.useEdgeLabels = useEdgeLabels;
  in.frozen.assign(g.nodeCount(), false);
  for (std::size_t i = 0; i < g.nodeCount(); ++i) in.initialLabels.push_back(attrLabel(g.attrAt(i)));

  // Edge labels interned in ascending edge order.
  std::unordered_map<std::string, std::uint32_t> edgeLabels;
  std::vector<std::uint32_t> edgeLabelOf(g.edgeCount());
  for (std::size_t e = 0; e < g.edgeCount(); ++e) {
    auto [it, inserted] = edgeLabels.try_emplace(canonicalBytes(g.edgeAttrAt(e)),
                                                 static_cast<std::uint32_t>(edgeLabels.size()));
    edgeLabelOf[e] = it->second;
  }
  in.adjacency.resize(g.nodeCount());
  for (std::size_t i = 0; i < g.nodeCount(); ++i) {
    for (const auto& nb : g.denseNeighbors(i)) in.adjacency[i].emplace_back(nb.index, edgeLabelOf[nb.edge]);
  }
  return in;
}

}  // namespace

ColorHistory run1WL(const Sauhg& g, std::optional<std::size_t> maxIter) {
  if (g.empty()) throw Error(ErrorCode::EmptyGraph, "1-WL on a graph without nodes");
  return refine(staticInput(g, false), maxIter);
}

ColorHistory runAWL(const Sauhg& g, std::optional<std::size_t> maxIter) {
  if (g.empty()) throw Error(ErrorCode::EmptyGraph, "attributed 1-WL on a graph without nodes");
  return refine(staticInput(g, true), maxIter);
}

DynColorHistory runDWL(const DynamicGraph& dg, std::optional<std::size_t> maxIter) {
  DynColorHistory out;
  out.nodes = dg.unionNodes();
  for (const auto& snap : dg.snapshots()) {
    RefineInput in;
    in.ids = dg.unionNodes();
    in.adjacency.resize(in.ids.size());
    in.frozen.assign(in.ids.size(), false);
    std::vector<std::size_t> unionIndexOf(snap.nodeCount());
    for (std::size_t i = 0; i < in.ids.size(); ++i) {
      NodeId v = in.ids[i];
      if (snap.hasNode(v)) {
        std::size_t local = snap.indexOf(v);
        unionIndexOf[local] = i;
        in.initialLabels.push_back(attrLabel(snap.attrAt(local)));
      } else {
        in.initialLabels.push_back("B");
        in.frozen[i] = true;
      }
    }
    std::unordered_map<std::string, std::uint32_t> edgeLabels;
    std::vector<std::uint32_t> edgeLabelOf(snap.edgeCount());
    for (std::size_t e = 0; e < snap.edgeCount(); ++e) {
      auto [it, inserted] = edgeLabels.try_emplace(canonicalBytes(snap.edgeAttrAt(e)),
                                                   static_cast<std::uint32_t>(edgeLabels.size()));
      edgeLabelOf[e] = it->second;
    }
    for (std::size_t local = 0; local < snap.nodeCount(); ++local) {
      for (const auto& nb : snap.denseNeighbors(local)) {
        in.adjacency[unionIndexOf[local]].emplace_back(unionIndexOf[nb.index], edgeLabelOf[nb.edge]);
      }
    }
    out.perTimestamp.push_back(refine(in, maxIter));
  }
  return out;
}

namespace {

// Stable colors of both parts of a joint run, as (part1, part2) multisets.
template <class Run>
std::pair<std::vector<ColorId>, std::vector<ColorId>> jointStable(const Sauhg& g1, const Sauhg& g2,
                                                                  Run run) {
  auto joint = disjointUnion(g1, g2);
  auto hist = run(joint.graph);
  std::vector<ColorId> a;
  std::vector<ColorId> b;
  for (NodeId v : g1.nodes()) a.push_back(hist.stableColor(v));
  for (NodeId v : g2.nodes()) b.push_back(hist.stableColor(joint.remap.at(v)));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return {a, b};
}

bool graphEquivalent(const Sauhg& g1, const Sauhg& g2,
                     ColorHistory (*run)(const Sauhg&, std::optional<std::size_t>)) {
  if (g1.attrDim() != g2.attrDim()) {
    throw Error(ErrorCode::AttrDimMismatch, "graphs with different attribute dims");
  }
  if (g1.empty() || g2.empty()) return g1.empty() && g2.empty();
  auto [a, b] = jointStable(g1, g2, [run](const Sauhg& g) { return run(g, std::nullopt); });
  return a == b;
}

}  // namespace

bool awlNodeEquivalent(const Sauhg& g1, NodeId u, const Sauhg& g2, NodeId v) {
  if (!g1.hasNode(u)) throw Error(ErrorCode::NodeNotFound, std::to_string(u));
  if (!g2.hasNode(v)) throw Error(ErrorCode::NodeNotFound, std::to_string(v));
  auto joint = disjointUnion(g1, g2);
  auto hist = runAWL(joint.graph);
  return hist.stableColor(u) == hist.stableColor(joint.remap.at(v));
}

bool awlGraphEquivalent(const Sauhg& g1, const Sauhg& g2) { return graphEquivalent(g1, g2, runAWL); }

bool wl1GraphEquivalent(const Sauhg& g1, const Sauhg& g2) { return graphEquivalent(g1, g2, run1WL); }

bool dwlEquivalent(const DynamicGraph& dg1, const DynamicGraph& dg2, bool pad) {
  if (dg1.timelineLength() != dg2.timelineLength()) {
    if (!pad) throw Error(ErrorCode::TimelineMismatch, "timelines differ; pad first");
    std::vector<DynamicGraph> both{dg1, dg2};
    auto padded = padTimeline(both);
    return dwlEquivalent(padded[0], padded[1], false);
  }
  auto joint = disjointUnion(dg1, dg2);
  auto hist = runDWL(joint.graph);
  std::vector<std::vector<ColorId>> a;
  std::vector<std::vector<ColorId>> b;
  for (NodeId v : dg1.unionNodes()) a.push_back(hist.colorVector(v));
  for (NodeId v : dg2.unionNodes()) b.push_back(hist.colorVector(joint.remap.at(v)));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace dynwl
