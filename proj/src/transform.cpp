#include "dynwl/transform.hpp"

#include <algorithm>
#include <map>

#include "dynwl/error.hpp"

namespace dynwl {

ExtendedAttr ExtendedAttr::fromSeries(std::span<const MaybeAttr> series, std::size_t attrDim) {
  ExtendedAttr out;
  out.perTimestamp.reserve(series.size());
  for (const auto& a : series) {
    if (a) {
      out.perTimestamp.push_back({*a, true});
    } else {
      out.perTimestamp.push_back({AttrVec(attrDim, 0.0), false});
    }
  }
  return out;
}

ExtendedAttr ExtendedAttr::parse(std::span<const double> flat, std::size_t timelineLen,
                                 std::size_t attrDim) {
  if (flat.size() != (attrDim + 1) * timelineLen) {
    throw Error(ErrorCode::NotStatified, "attribute length " + std::to_string(flat.size()) +
                                             " is not (k+1)*timeline = " +
                                             std::to_string((attrDim + 1) * timelineLen));
  }
  ExtendedAttr out;
  for (std::size_t t = 0; t < timelineLen; ++t) {
    auto block = flat.subspan(t * (attrDim + 1), attrDim + 1);
    double flag = block[attrDim];
    Entry entry{AttrVec(block.begin(), block.begin() + attrDim), flag == 1.0};
    if (flag != 0.0 && flag != 1.0) {
      throw Error(ErrorCode::NotStatified, "existence flag must be 0 or 1");
    }
    if (!entry.exists &&
        std::any_of(entry.value.begin(), entry.value.end(), [](double x) { return x != 0.0; })) {
      throw Error(ErrorCode::NotStatified, "absent slot carries a nonzero value");
    }
    out.perTimestamp.push_back(std::move(entry));
  }
  return out;
}

AttrVec ExtendedAttr::flatten() const {
  AttrVec out;
  for (const auto& e : perTimestamp) {
    out.insert(out.end(), e.value.begin(), e.value.end());
    out.push_back(e.exists ? 1.0 : 0.0);
  }
  return out;
}

std::vector<MaybeAttr> ExtendedAttr::series() const {
  std::vector<MaybeAttr> out;
  for (const auto& e : perTimestamp) {
    out.push_back(e.exists ? MaybeAttr(e.value) : std::nullopt);
  }
  return out;
}

Sauhg makeStatic(const DynamicGraph& dg) {
  const std::size_t len = dg.timelineLength();
  const std::size_t k = dg.attrDim();

  std::vector<NodeSpec> nodes;
  for (NodeId v : dg.unionNodes()) {
    std::vector<MaybeAttr> series;
    for (std::size_t t = 0; t < len; ++t) series.push_back(dg.nodeAttrAt(v, t));
    nodes.push_back({v, ExtendedAttr::fromSeries(series, k).flatten()});
  }

  std::map<EdgeKey, std::vector<MaybeAttr>> edgeSeries;
  for (std::size_t t = 0; t < len; ++t) {
    const auto& snap = dg.snapshot(t);
    for (std::size_t e = 0; e < snap.edgeCount(); ++e) {
      auto& series = edgeSeries[snap.edgeKeys()[e]];
      series.resize(len);
      series[t] = snap.edgeAttrAt(e);
    }
  }
  std::vector<EdgeSpec> edges;
  for (const auto& [key, series] : edgeSeries) {
    edges.push_back({key.lo, key.hi, ExtendedAttr::fromSeries(series, k).flatten()});
  }
  return Sauhg((k + 1) * len, std::move(nodes), std::move(edges));
}

DynamicGraph makeDynamic(const Sauhg& g, std::size_t timelineLen, std::size_t attrDim) {
  if (g.attrDim() != (attrDim + 1) * timelineLen) {
    throw Error(ErrorCode::NotStatified, "graph attr_dim " + std::to_string(g.attrDim()) +
                                             " is not (k+1)*timeline = " +
                                             std::to_string((attrDim + 1) * timelineLen));
  }
  std::vector<std::vector<NodeSpec>> nodes(timelineLen);
  std::vector<std::vector<EdgeSpec>> edges(timelineLen);
  for (const auto& n : g.nodeSpecs()) {
    auto series = ExtendedAttr::parse(n.attr, timelineLen, attrDim).series();
    bool anywhere = false;
    for (std::size_t t = 0; t < timelineLen; ++t) {
      if (series[t]) {
        nodes[t].push_back({n.id, std::move(*series[t])});
        anywhere = true;
      }
    }
    if (!anywhere) {
      throw Error(ErrorCode::NotStatified, "node " + std::to_string(n.id) + " exists at no timestamp");
    }
  }
  for (const auto& e : g.edgeSpecs()) {
    auto series = ExtendedAttr::parse(e.attr, timelineLen, attrDim).series();
    bool anywhere = false;
    for (std::size_t t = 0; t < timelineLen; ++t) {
      if (series[t]) {
        edges[t].push_back({e.u, e.v, std::move(*series[t])});
        anywhere = true;
      }
    }
    if (!anywhere) {
      throw Error(ErrorCode::NotStatified, "edge exists at no timestamp");
    }
  }
  std::vector<Sauhg> snaps;
  for (std::size_t t = 0; t < timelineLen; ++t) {
    try {
      snaps.emplace_back(attrDim, std::move(nodes[t]), std::move(edges[t]));
    } catch (const Error& err) {
      throw Error(ErrorCode::NotStatified,
                  "snapshot " + std::to_string(t) + " is inconsistent: " + err.what());
    }
  }
  return DynamicGraph(attrDim, std::move(snaps));
}

std::vector<DynamicGraph> padTimeline(std::span<const DynamicGraph> graphs) {
  std::size_t len = 0;
  for (const auto& g : graphs) len = std::max(len, g.timelineLength());
  std::vector<DynamicGraph> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) {
    if (g.timelineLength() == len) {
      out.push_back(g);
      continue;
    }
    auto snaps = g.snapshots();
    snaps.resize(len, Sauhg(g.attrDim()));
    out.emplace_back(g.attrDim(), std::move(snaps));
  }
  return out;
}

}  // namespace dynwl
