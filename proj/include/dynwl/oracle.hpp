#pragma once

#include <map>
#include <optional>

#include "dynwl/graph.hpp"
#include "dynwl/tree.hpp"
#include "dynwl/wl.hpp"

namespace dynwl {

// Brute-force ground truth for desk-scale instances. Nothing here uses tree
// codes or color interning.

enum class AttributeMode {
  Strict,    // alpha_1(v) == alpha_2(phi(v)), omega likewise
  Renaming,  // attributes related by some bijection per attribute kind
};

struct IsoWitness {
  std::map<NodeId, NodeId> nodeBijection;
  AttributeMode mode = AttributeMode::Strict;
};

inline constexpr std::size_t kIsoNodeLimit = 9;
inline constexpr std::size_t kAutPartitionLimit = 16;
inline constexpr std::size_t kAwlPartitionLimit = 64;

// Backtracking search with degree (and, in strict mode, attribute)
// pre-partitioning. Throws TooLarge above kIsoNodeLimit nodes.
std::optional<IsoWitness> bruteForceIsomorphic(const Sauhg& g1, const Sauhg& g2,
                                               AttributeMode mode = AttributeMode::Strict);

// Checks every condition of the witness directly.
bool isValidWitness(const Sauhg& g1, const Sauhg& g2, const IsoWitness& w);

// Recursive equality; children matched as multisets of (edge attribute,
// subtree) by backtracking.
bool bruteTreeEqual(const UTree& a, const UTree& b);

enum class Relation { Aut, Awl };

// Pairwise equivalence classes. Aut compares trees at depth
// maxDepth.value_or(diam+1) with bruteTreeEqual; Awl compares colors at
// iteration maxDepth (or stable colors).
Partition exhaustivePartition(const Sauhg& g, Relation relation,
                              std::optional<std::size_t> maxDepth = std::nullopt);

}  // namespace dynwl
