#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynwl/corpus.hpp"
#include "dynwl/graph.hpp"

namespace dynwl {

// Outcome of one property suite. A biconditional L <=> R is tallied per
// direction: `forward` counts cases where L holds (violated when R fails),
// `backward` cases where R holds (violated when L fails). `identity` counts
// one-sided checks such as round trips and exact code identities.
struct VerdictReport {
  struct Tally {
    std::size_t checked = 0;
    std::size_t violations = 0;
  };

  std::string suite;
  std::string corpusHash;
  std::uint64_t seed = 0;
  std::size_t casesChecked = 0;
  Tally forward;
  Tally backward;
  Tally identity;
  // First failures in case order, each minimized by deletion.
  std::vector<nlohmann::json> failures;
  double wallTimeSeconds = 0.0;

  std::size_t violationCount() const {
    return forward.violations + backward.violations + identity.violations;
  }
  bool pass() const { return violationCount() == 0; }

  // Wall time is left out unless requested, so equal runs serialize to equal bytes.
  nlohmann::json toJson(bool includeWallTime = false) const;
};

struct VerifyOptions {
  std::size_t threads = 1;
  std::size_t maxWitnesses = 5;
  std::uint64_t seed = 1;
};

struct StaticCorpus {
  std::vector<Sauhg> graphs;
  std::string hash;
};

struct DynamicCorpus {
  std::vector<DynamicGraph> graphs;
  std::string hash;
};

StaticCorpus makeStaticCorpus(std::vector<Sauhg> graphs);
DynamicCorpus makeDynamicCorpus(std::vector<DynamicGraph> graphs);

// Acceptance-sized corpora: 1000 static graphs (n <= 8, alphabet <= 4, k <= 2)
// and 300 dynamic graphs (3 snapshots, n <= 6, churn 0.3).
std::vector<CorpusSpec> defaultStaticSpecs(std::uint64_t seed);
CorpusSpec defaultDynamicSpec(std::uint64_t seed);
StaticCorpus defaultStaticCorpus(std::uint64_t seed);
DynamicCorpus defaultDynamicCorpus(std::uint64_t seed);

// Tree equality at depth diam+1 <=> equal stable attributed colors, for every
// node pair of every graph and across the curated counterexample pairs; for
// small graphs also against the brute-force tree partition.
VerdictReport verifyAutAwl(const StaticCorpus& corpus, const VerifyOptions& opt = {});

// Tree equality at depth d <=> equal attributed color at iteration d.
VerdictReport verifyTreeColorDepth(const StaticCorpus& corpus, std::size_t maxDepth = 6,
                                   const VerifyOptions& opt = {});

// Tree equality at depth r+1 <=> tree equality at every depth r+2..2(r+1),
// r the diameter.
VerdictReport verifyDepthSufficiency(const StaticCorpus& corpus, const VerifyOptions& opt = {});

// Dynamic-side equality (per-timestamp tree sequences, per-timestamp color
// vectors, graph-level dynamic WL) <=> the same relation on makeStatic, plus the
// makeDynamic(makeStatic(g)) == g round trip.
VerdictReport verifyDynamicStatic(const DynamicCorpus& corpus, const VerifyOptions& opt = {});

// Graph-level dynamic WL equivalence <=> dynamic unfolding-tree equivalence
// over all graph pairs.
VerdictReport verifyDwlDut(const DynamicCorpus& corpus, const VerifyOptions& opt = {});

// Curated 1-WL / attributed WL / isomorphism verdicts.
VerdictReport verifyHierarchy(const VerifyOptions& opt = {});

// Codec SGNN states at diam+1 layers equal the unfolding tree codes, and
// state equality <=> stable attributed color equality. Also checks the
// numeric backend never separates nodes with equal colors.
VerdictReport verifySgnnAttainment(const StaticCorpus& corpus, const VerifyOptions& opt = {});

// Random code-level targets are fit exactly (codec) and within 1e-9 (numeric
// interned readout) on static and dynamic pattern sets; node-level targets
// that split equal codes are rejected.
VerdictReport verifyApprox(const StaticCorpus& corpus, const DynamicCorpus& dynCorpus,
                           std::size_t nTargets = 50, const VerifyOptions& opt = {});

// Strict isomorphism => attributed WL graph equivalence, over all corpus pairs
// and a relabeled copy of every graph.
VerdictReport verifyOracleSoundness(const StaticCorpus& corpus, const VerifyOptions& opt = {});

std::vector<VerdictReport> verifyAll(const StaticCorpus& corpus, const DynamicCorpus& dynCorpus,
                                     const VerifyOptions& opt = {});

nlohmann::json toJson(const std::vector<VerdictReport>& reports, bool includeWallTime = false);

}  // namespace dynwl
