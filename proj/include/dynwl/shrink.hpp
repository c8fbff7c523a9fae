#pragma once

#include <functional>

#include "dynwl/graph.hpp"

namespace dynwl {

// Returns true while the failure still reproduces. Exceptions thrown by the
// predicate count as "does not reproduce".
using StaticFailure = std::function<bool(const Sauhg&)>;
using DynamicFailure = std::function<bool(const DynamicGraph&)>;

// Greedy deletion of nodes, then edges, repeated until no single deletion
// keeps the failure. The input must fail.
Sauhg shrinkStatic(Sauhg g, const StaticFailure& stillFails);

// Same over timestamps, union nodes, and per-timestamp edges.
DynamicGraph shrinkDynamic(DynamicGraph dg, const DynamicFailure& stillFails);

Sauhg withoutNode(const Sauhg& g, NodeId v);
Sauhg withoutEdge(const Sauhg& g, const EdgeKey& e);

}  // namespace dynwl
