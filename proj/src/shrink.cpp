#include "dynwl/shrink.hpp"

namespace dynwl {

namespace {

template <class Graph, class Pred>
bool reproduces(const Graph& g, const Pred& stillFails) {
  try {
    return stillFails(g);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

Sauhg withoutNode(const Sauhg& g, NodeId v) {
  std::vector<NodeSpec> nodes;
  for (auto& n : g.nodeSpecs()) {
    if (n.id != v) nodes.push_back(std::move(n));
  }
  std::vector<EdgeSpec> edges;
  for (auto& e : g.edgeSpecs()) {
    if (e.u != v && e.v != v) edges.push_back(std::move(e));
  }
  return Sauhg(g.attrDim(), std::move(nodes), std::move(edges));
}

Sauhg withoutEdge(const Sauhg& g, const EdgeKey& key) {
  std::vector<EdgeSpec> edges;
  for (auto& e : g.edgeSpecs()) {
    if (EdgeKey::of(e.u, e.v) != key) edges.push_back(std::move(e));
  }
  return Sauhg(g.attrDim(), g.nodeSpecs(), std::move(edges));
}

Sauhg shrinkStatic(Sauhg g, const StaticFailure& stillFails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (NodeId v : g.nodes()) {
      Sauhg candidate = withoutNode(g, v);
      if (reproduces(candidate, stillFails)) {
        g = std::move(candidate);
        progress = true;
        break;
      }
    }
    if (progress) continue;
    for (const auto& e : g.edgeKeys()) {
      Sauhg candidate = withoutEdge(g, e);
      if (reproduces(candidate, stillFails)) {
        g = std::move(candidate);
        progress = true;
        break;
      }
    }
  }
  return g;
}

DynamicGraph shrinkDynamic(DynamicGraph dg, const DynamicFailure& stillFails) {
  bool progress = true;
  auto attempt = [&](std::vector<Sauhg> snaps) {
    DynamicGraph candidate(dg.attrDim(), std::move(snaps));
    if (!reproduces(candidate, stillFails)) return false;
    dg = std::move(candidate);
    return true;
  };
  while (progress) {
    progress = false;
    for (std::size_t t = 0; t < dg.timelineLength() && dg.timelineLength() > 1 && !progress; ++t) {
      auto snaps = dg.snapshots();
      snaps.erase(snaps.begin() + static_cast<std::ptrdiff_t>(t));
      progress = attempt(std::move(snaps));
    }
    for (NodeId v : dg.unionNodes()) {
      if (progress) break;
      std::vector<Sauhg> snaps;
      for (const auto& s : dg.snapshots()) snaps.push_back(s.hasNode(v) ? withoutNode(s, v) : s);
      progress = attempt(std::move(snaps));
    }
    for (std::size_t t = 0; t < dg.timelineLength() && !progress; ++t) {
      for (NodeId v : dg.snapshot(t).nodes()) {
        auto snaps = dg.snapshots();
        snaps[t] = withoutNode(snaps[t], v);
        if ((progress = attempt(std::move(snaps)))) break;
      }
    }
    for (std::size_t t = 0; t < dg.timelineLength() && !progress; ++t) {
      for (const auto& e : dg.snapshot(t).edgeKeys()) {
        auto snaps = dg.snapshots();
        snaps[t] = withoutEdge(snaps[t], e);
        if ((progress = attempt(std::move(snaps)))) break;
      }
    }
  }
  return dg;
}

}  // namespace dynwl
