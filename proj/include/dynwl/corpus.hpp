#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynwl/graph.hpp"

namespace dynwl {

// Attribute values are drawn from this table of exactly representable reals.
inline constexpr std::array<double, 8> kAttrAlphabet = {0.0, 1.0, -1.0, 0.5, 2.0, -0.5, 0.25, 3.0};

struct CorpusSpec {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t minNodes = 1;
  std::size_t maxNodes = 8;
  double edgeProbability = 0.3;
  std::size_t attrDim = 1;
  std::size_t attrAlphabetSize = 3;
  // 0 generates static graphs; otherwise the snapshot count of every dynamic graph.
  std::size_t timelineLen = 0;
  double nodeChurnProb = 0.0;
  double edgeChurnProb = 0.0;

  bool isDynamic() const { return timelineLen > 0; }
  void validate() const;  // throws SpecError
};

nlohmann::json toJson(const CorpusSpec& spec);
CorpusSpec corpusSpecFromJson(const nlohmann::json& j);

// Integer-only sampling on top of mt19937_64, so streams are identical across
// standard libraries (std distributions are implementation-defined).
class CorpusRng {
 public:
  explicit CorpusRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p);
  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::vector<Sauhg> generateStatic(const CorpusSpec& spec);
std::vector<DynamicGraph> generateDynamic(const CorpusSpec& spec);

struct ExpectedVerdicts {
  bool wl1Equivalent;
  bool awlEquivalent;
  bool isomorphic;
};

struct CounterexamplePair {
  std::string name;
  Sauhg first;
  Sauhg second;
  ExpectedVerdicts expected;
};

// Curated pairs separating 1-WL, attributed 1-WL and isomorphism.
std::vector<CounterexamplePair> counterexamples();

// 64-bit FNV-1a of the compact JSON dump, as 16 hex digits.
std::string contentHash(const nlohmann::json& j);

struct LoadedCorpus {
  CorpusSpec spec;
  std::string hash;
  std::vector<Sauhg> staticGraphs;
  std::vector<DynamicGraph> dynamicGraphs;
};

// Writes one JSON graph per file plus manifest.json; returns the corpus hash.
std::string writeCorpus(const std::filesystem::path& dir, const CorpusSpec& spec);
LoadedCorpus loadCorpus(const std::filesystem::path& dir);

// Hash over the serialized graphs, identical to what writeCorpus records.
std::string corpusHash(const std::vector<Sauhg>& graphs);
std::string corpusHash(const std::vector<DynamicGraph>& graphs);

}  // namespace dynwl
