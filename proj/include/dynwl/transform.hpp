#pragma once

#include <span>
#include <vector>

#include "dynwl/graph.hpp"

namespace dynwl {

// Per-timestamp (value, existence flag) series. Absent entries carry the
// all-zero vector and flag 0, so the encoding is injective.
//
// Flattened layout (format-normative): [slot_0..., flag_0, slot_1..., flag_1, ...].
struct ExtendedAttr {
  struct Entry {
    AttrVec value;
    bool exists = false;
  };
  std::vector<Entry> perTimestamp;

  static ExtendedAttr fromSeries(std::span<const MaybeAttr> series, std::size_t attrDim);
  // Throws NotStatified when a flag is not exactly 0/1 or an absent slot is nonzero.
  static ExtendedAttr parse(std::span<const double> flat, std::size_t timelineLen,
                            std::size_t attrDim);

  AttrVec flatten() const;
  std::vector<MaybeAttr> series() const;
};

// Encodes a dynamic graph as a SAUHG whose attributes are time series with
// existence flags. Node ids are kept; attrDim becomes (k+1) * timelineLength.
Sauhg makeStatic(const DynamicGraph& dg);

// Inverse of makeStatic.
DynamicGraph makeDynamic(const Sauhg& g, std::size_t timelineLen, std::size_t attrDim);

// Pads every graph with empty snapshots up to the longest timeline.
std::vector<DynamicGraph> padTimeline(std::span<const DynamicGraph> graphs);

}  // namespace dynwl
