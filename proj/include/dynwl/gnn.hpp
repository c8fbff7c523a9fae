#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "dynwl/graph.hpp"
#include "dynwl/tree.hpp"

namespace dynwl {

enum class Backend { Codec, Numeric };

Backend backendFromString(const std::string& s);

// Codec backend state table: perIteration[k][i] is h^k of the node with dense
// index i, an unfolding tree code.
struct CodecEmbeddings {
  std::vector<NodeId> nodes;
  std::vector<std::vector<TreeCode>> perIteration;

  const TreeCode& at(NodeId v, std::size_t iteration) const;
};

struct NumericEmbeddings {
  std::vector<NodeId> nodes;
  std::vector<std::vector<Eigen::VectorXd>> perIteration;

  const Eigen::VectorXd& at(NodeId v, std::size_t iteration) const;
};

// Weights of the numeric backend.
//
// Layer l maps (neighbor state || edge attr) through wMsg/bMsg and tanh, sums
// the messages, then maps (own state || sum) through wComb/bComb and tanh.
// Layer 0 consumes node attributes (dim k); later layers consume states (dim m).
// The recurrent cell is q(0) = tanh(wh h + bq), q(t) = tanh(wq q + wh h + bq).
struct NumericParams {
  struct Layer {
    Eigen::MatrixXd wMsg;
    Eigen::VectorXd bMsg;
    Eigen::MatrixXd wComb;
    Eigen::VectorXd bComb;
  };

  std::size_t attrDim = 0;
  std::size_t stateDim = 1;
  std::vector<Layer> layers;
  Eigen::MatrixXd wq;
  Eigen::MatrixXd wh;
  Eigen::VectorXd bq;

  // Entries uniform in [-scale, scale], drawn from CorpusRng.
  static NumericParams random(std::size_t attrDim, std::size_t stateDim, std::size_t layerCount,
                              std::uint64_t seed, double scale = 0.5);
  static NumericParams zeros(std::size_t attrDim, std::size_t stateDim, std::size_t layerCount);

  // Throws ShapeError on any inconsistent matrix.
  void validate() const;
};

nlohmann::json toJson(const NumericParams& p);
NumericParams numericParamsFromJson(const nlohmann::json& j);

// h^k computed only through AGGREGATE (tree union of decoded neighbor trees
// with their edge attributes) and COMBINE (attach of the own previous root).
CodecEmbeddings runSgnnCodec(const Sauhg& g, std::size_t layers);

NumericEmbeddings runSgnnNumeric(const Sauhg& g, std::size_t layers, const NumericParams& params);

// Per timestamp: h(t) for every union node (absent nodes get the absent leaf
// code) and the recurrent state q(t) = code of (T_v(0), ..., T_v(t)).
struct CodecDgnnHistory {
  std::vector<NodeId> nodes;
  std::vector<std::vector<TreeCode>> h;
  std::vector<std::vector<SeqCode>> q;

  const SeqCode& qAt(NodeId v, std::size_t t) const;
};

struct NumericDgnnHistory {
  std::vector<NodeId> nodes;
  std::vector<std::vector<Eigen::VectorXd>> h;
  std::vector<std::vector<Eigen::VectorXd>> q;

  const Eigen::VectorXd& qAt(NodeId v, std::size_t t) const;
};

// Default layers per snapshot: diam(snapshot t) + 1.
std::vector<std::size_t> defaultLayers(const DynamicGraph& dg);

CodecDgnnHistory runDgnnCodec(const DynamicGraph& dg,
                              std::optional<std::vector<std::size_t>> layersPerSnapshot = {});
NumericDgnnHistory runDgnnNumeric(const DynamicGraph& dg, const NumericParams& params,
                                  std::optional<std::vector<std::size_t>> layersPerSnapshot = {});

// Finite table from code bytes (TreeCode or SeqCode) to a real value.
struct TargetFunction {
  std::map<std::string, double> table;

  std::optional<double> at(const std::string& code) const;
};

nlohmann::json toJson(const TargetFunction& f);
TargetFunction targetFromJson(const nlohmann::json& j);

// Builds a target from (code, value) samples. Throws InfeasibleTarget when one
// code carries two different values.
TargetFunction targetFromSamples(std::span<const std::pair<std::string, double>> samples);

struct Readout {
  Backend backend = Backend::Codec;
  // Codec: code -> value lookup.
  std::map<std::string, double> lookup;
  // Numeric: a code is interned to the real state s = its rank among the
  // sorted distinct pattern codes, and the readout is sum_j c_j hat(s - j).
  std::vector<std::string> interned;
  Eigen::VectorXd coeffs;

  double evaluate(const std::string& code) const;
};

struct FitResult {
  Readout readout;
  double maxError = 0.0;
};

// Throws TargetUndefined when a pattern code is outside the target's domain.
FitResult fitReadout(std::span<const std::string> patternCodes, const TargetFunction& target,
                     Backend backend = Backend::Codec);

// Least-squares affine readout y ~ w.x + b over arbitrary embeddings.
struct LinearReadout {
  Eigen::VectorXd weights;
  double bias = 0.0;
  double maxError = 0.0;
};

LinearReadout fitLinearReadout(std::span<const Eigen::VectorXd> embeddings, std::span<const double> targets);

}  // namespace dynwl
