#include "dynwl/gnn.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <bit>
#include <cmath>

#include "dynwl/corpus.hpp"
#include "dynwl/error.hpp"

namespace dynwl {

Backend backendFromString(const std::string& s) {
  if (s == "codec") return Backend::Codec;
  if (s == "numeric") return Backend::Numeric;
  throw Error(ErrorCode::ParseError, "unknown backend '" + s + "'");
}

namespace {

std::size_t denseIndex(const std::vector<NodeId>& nodes, NodeId v) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
  if (it == nodes.end() || *it != v) throw Error(ErrorCode::NodeNotFound, std::to_string(v));
  return static_cast<std::size_t>(it - nodes.begin());
}

void shapeCheck(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::ShapeError, what);
}

Eigen::VectorXd toVector(const AttrVec& a) {
  return Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
}

Eigen::VectorXd tanhOf(Eigen::VectorXd x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = std::tanh(x[i]);
  return x;
}

// Total order on bit patterns: ties are bitwise identical vectors.
bool bitLess(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    auto x = std::bit_cast<std::uint64_t>(a[i]);
    auto y = std::bit_cast<std::uint64_t>(b[i]);
    if (x != y) return x < y;
  }
  return false;
}

nlohmann::json matrixJson(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrixFromJson(const nlohmann::json& j, Eigen::Index cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    shapeCheck(static_cast<Eigen::Index>(row.size()) == cols, "ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

nlohmann::json vectorJson(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd vectorFromJson(const nlohmann::json& j) { return toVector(j.get<std::vector<double>>()); }

}  // namespace

const TreeCode& CodecEmbeddings::at(NodeId v, std::size_t iteration) const {
  return perIteration.at(iteration)[denseIndex(nodes, v)];
}

const Eigen::VectorXd& NumericEmbeddings::at(NodeId v, std::size_t iteration) const {
  return perIteration.at(iteration)[denseIndex(nodes, v)];
}

const SeqCode& CodecDgnnHistory::qAt(NodeId v, std::size_t t) const { return q.at(t)[denseIndex(nodes, v)]; }

const Eigen::VectorXd& NumericDgnnHistory::qAt(NodeId v, std::size_t t) const {
  return q.at(t)[denseIndex(nodes, v)];
}

NumericParams NumericParams::random(std::size_t attrDim, std::size_t stateDim, std::size_t layerCount,
                                    std::uint64_t seed, double scale) {
  CorpusRng rng(seed);
  auto fill = [&](Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = (2.0 * rng.unit() - 1.0) * scale;
    }
    return m;
  };
  NumericParams p = zeros(attrDim, stateDim, layerCount);
  for (auto& layer : p.layers) {
    layer.wMsg = fill(layer.wMsg.rows(), layer.wMsg.cols());
    layer.bMsg = fill(layer.bMsg.size(), 1);
    layer.wComb = fill(layer.wComb.rows(), layer.wComb.cols());
    layer.bComb = fill(layer.bComb.size(), 1);
  }
  p.wq = fill(p.wq.rows(), p.wq.cols());
  p.wh = fill(p.wh.rows(), p.wh.cols());
  p.bq = fill(p.bq.size(), 1);
  return p;
}

NumericParams NumericParams::zeros(std::size_t attrDim, std::size_t stateDim, std::size_t layerCount) {
  shapeCheck(stateDim >= 1, "state dimension must be at least 1");
  NumericParams p;
  p.attrDim = attrDim;
  p.stateDim = stateDim;
  auto k = static_cast<Eigen::Index>(attrDim);
  auto m = static_cast<Eigen::Index>(stateDim);
  for (std::size_t l = 0; l < layerCount; ++l) {
    Eigen::Index in = l == 0 ? k : m;
    p.layers.push_back({Eigen::MatrixXd::Zero(m, in + k), Eigen::VectorXd::Zero(m),
                        Eigen::MatrixXd::Zero(m, in + m), Eigen::VectorXd::Zero(m)});
  }
  p.wq = Eigen::MatrixXd::Zero(m, m);
  p.wh = Eigen::MatrixXd::Zero(m, m);
  p.bq = Eigen::VectorXd::Zero(m);
  return p;
}

void NumericParams::validate() const {
  shapeCheck(stateDim >= 1, "state dimension must be at least 1");
  auto k = static_cast<Eigen::Index>(attrDim);
  auto m = static_cast<Eigen::Index>(stateDim);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& L = layers[l];
    Eigen::Index in = l == 0 ? k : m;
    shapeCheck(L.wMsg.rows() == m && L.wMsg.cols() == in + k, "layer " + std::to_string(l) + ": w_msg shape");
    shapeCheck(L.bMsg.size() == m, "layer " + std::to_string(l) + ": b_msg shape");
    shapeCheck(L.wComb.rows() == m && L.wComb.cols() == in + m,
               "layer " + std::to_string(l) + ": w_comb shape");
    shapeCheck(L.bComb.size() == m, "layer " + std::to_string(l) + ": b_comb shape");
  }
  shapeCheck(wq.rows() == m && wq.cols() == m, "w_q shape");
  shapeCheck(wh.rows() == m && wh.cols() == m, "w_h shape");
  shapeCheck(bq.size() == m, "b_q shape");
}

nlohmann::json toJson(const NumericParams& p) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& L : p.layers) {
    layers.push_back({{"w_msg", matrixJson(L.wMsg)},
                      {"b_msg", vectorJson(L.bMsg)},
                      {"w_comb", matrixJson(L.wComb)},
                      {"b_comb", vectorJson(L.bComb)}});
  }
  return {{"attr_dim", p.attrDim}, {"state_dim", p.stateDim}, {"layers", layers},
          {"w_q", matrixJson(p.wq)},   {"w_h", matrixJson(p.wh)},     {"b_q", vectorJson(p.bq)}};
}

NumericParams numericParamsFromJson(const nlohmann::json& j) try {
  NumericParams p;
  p.attrDim = j.at("attr_dim").get<std::size_t>();
  p.stateDim = j.at("state_dim").get<std::size_t>();
  auto k = static_cast<Eigen::Index>(p.attrDim);
  auto m = static_cast<Eigen::Index>(p.stateDim);
  for (const auto& L : j.at("layers")) {
    Eigen::Index in = p.layers.empty() ? k : m;
    p.layers.push_back({matrixFromJson(L.at("w_msg"), in + k), vectorFromJson(L.at("b_msg")),
                        matrixFromJson(L.at("w_comb"), in + m), vectorFromJson(L.at("b_comb"))});
  }
  p.wq = matrixFromJson(j.at("w_q"), m);
  p.wh = matrixFromJson(j.at("w_h"), m);
  p.bq = vectorFromJson(j.at("b_q"));
  p.validate();
  return p;
} catch (const nlohmann::json::exception& e) {
  throw Error(ErrorCode::ParseError, e.what());
}

CodecEmbeddings runSgnnCodec(const Sauhg& g, std::size_t layers) {
  auto arena = std::make_shared<TreeArena>();
  CodecEmbeddings out;
  out.nodes = g.nodes();
  const std::size_t n = g.nodeCount();

  std::vector<TreeCode> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = arena->code(arena->leaf(g.attrAt(i)));
  out.perIteration.push_back(h);

  for (std::size_t k = 1; k <= layers; ++k) {
    const auto& prev = out.perIteration.back();
    std::vector<TreeCode> next;
    next.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<AttrVec, UTree>> neighborhood;
      for (const auto& nb : g.denseNeighbors(i)) {
        neighborhood.emplace_back(g.edgeAttrAt(nb.edge), decodeTree(prev[nb.index], arena));
      }
      UTree aggregate = treeUnion(neighborhood, arena);
      next.push_back(attach(decodeTree(prev[i], arena), aggregate).code());
    }
    out.perIteration.push_back(std::move(next));
  }
  return out;
}

NumericEmbeddings runSgnnNumeric(const Sauhg& g, std::size_t layers, const NumericParams& params) {
  params.validate();
  shapeCheck(g.attrDim() == params.attrDim, "graph attr dim " + std::to_string(g.attrDim()) +
                                                " does not match params attr dim " +
                                                std::to_string(params.attrDim));
  shapeCheck(layers <= params.layers.size(), "params define " + std::to_string(params.layers.size()) +
                                                 " layers, " + std::to_string(layers) + " requested");
  const auto k = static_cast<Eigen::Index>(params.attrDim);
  const auto m = static_cast<Eigen::Index>(params.stateDim);
  const std::size_t n = g.nodeCount();

  NumericEmbeddings out;
  out.nodes = g.nodes();
  std::vector<Eigen::VectorXd> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = toVector(g.attrAt(i));
  out.perIteration.push_back(h);

  std::vector<Eigen::VectorXd> messages;
  for (std::size_t l = 0; l < layers; ++l) {
    const auto& L = params.layers[l];
    const auto& prev = out.perIteration.back();
    const Eigen::Index in = l == 0 ? k : m;
    std::vector<Eigen::VectorXd> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      messages.clear();
      for (const auto& nb : g.denseNeighbors(i)) {
        Eigen::VectorXd x(in + k);
        x << prev[nb.index], toVector(g.edgeAttrAt(nb.edge));
        messages.push_back(tanhOf(L.wMsg * x + L.bMsg));
      }
      // A value-determined summation order makes the sum a function of the
      // message multiset, bit for bit.
      std::sort(messages.begin(), messages.end(), bitLess);
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(m);
      for (const auto& msg : messages) sum += msg;
      Eigen::VectorXd y(in + m);
      y << prev[i], sum;
      next[i] = tanhOf(L.wComb * y + L.bComb);
    }
    out.perIteration.push_back(std::move(next));
  }
  return out;
}

std::vector<std::size_t> defaultLayers(const DynamicGraph& dg) {
  std::vector<std::size_t> out;
  for (const auto& snap : dg.snapshots()) out.push_back((snap.empty() ? 0 : diameter(snap)) + 1);
  return out;
}

namespace {

std::vector<std::size_t> resolveLayers(const DynamicGraph& dg,
                                       const std::optional<std::vector<std::size_t>>& layers) {
  if (dg.timelineLength() == 0) throw Error(ErrorCode::TimelineMismatch, "empty timeline");
  if (!layers) return defaultLayers(dg);
  if (layers->size() != dg.timelineLength()) {
    throw Error(ErrorCode::TimelineMismatch, "one layer count per snapshot required");
  }
  return *layers;
}

}  // namespace

CodecDgnnHistory runDgnnCodec(const DynamicGraph& dg, std::optional<std::vector<std::size_t>> layersPerSnapshot) {
  auto layers = resolveLayers(dg, layersPerSnapshot);
  auto arena = std::make_shared<TreeArena>();
  const TreeCode absent = arena->code(arena->leaf(std::nullopt));

  CodecDgnnHistory out;
  out.nodes = dg.unionNodes();
  for (std::size_t t = 0; t < dg.timelineLength(); ++t) {
    const auto& snap = dg.snapshot(t);
    auto emb = runSgnnCodec(snap, layers[t]);
    std::vector<TreeCode> h;
    std::vector<SeqCode> q;
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
      NodeId v = out.nodes[i];
      h.push_back(snap.hasNode(v) ? emb.perIteration.back()[snap.indexOf(v)] : absent);
      UTree tree = decodeTree(h.back(), arena);
      TreeSeq prefix = t == 0 ? TreeSeq{} : decodeSeq(out.q.back()[i], arena);
      q.push_back(seqCode(appendTree(std::move(prefix), tree)));
    }
    out.h.push_back(std::move(h));
    out.q.push_back(std::move(q));
  }
  return out;
}

NumericDgnnHistory runDgnnNumeric(const DynamicGraph& dg, const NumericParams& params,
                                  std::optional<std::vector<std::size_t>> layersPerSnapshot) {
  auto layers = resolveLayers(dg, layersPerSnapshot);
  params.validate();
  const auto m = static_cast<Eigen::Index>(params.stateDim);

  NumericDgnnHistory out;
  out.nodes = dg.unionNodes();
  for (std::size_t t = 0; t < dg.timelineLength(); ++t) {
    const auto& snap = dg.snapshot(t);
    shapeCheck(layers[t] > 0 || params.attrDim == params.stateDim,
               "zero layers leave states at the attribute dimension");
    auto emb = runSgnnNumeric(snap, layers[t], params);
    std::vector<Eigen::VectorXd> h;
    std::vector<Eigen::VectorXd> q;
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
      NodeId v = out.nodes[i];
      h.push_back(snap.hasNode(v) ? emb.perIteration.back()[snap.indexOf(v)] : Eigen::VectorXd::Zero(m));
      Eigen::VectorXd pre = params.wh * h.back() + params.bq;
      if (t > 0) pre += params.wq * out.q.back()[i];
      q.push_back(tanhOf(std::move(pre)));
    }
    out.h.push_back(std::move(h));
    out.q.push_back(std::move(q));
  }
  return out;
}

std::optional<double> TargetFunction::at(const std::string& code) const {
  auto it = table.find(code);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

nlohmann::json toJson(const TargetFunction& f) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [code, value] : f.table) {
    entries.push_back({{"code", TreeCode{code}.hex()}, {"value", value}});
  }
  return {{"entries", entries}};
}

TargetFunction targetFromJson(const nlohmann::json& j) try {
  std::vector<std::pair<std::string, double>> samples;
  for (const auto& e : j.at("entries")) {
    auto hex = e.at("code").get<std::string>();
    if (hex.size() % 2 != 0) throw Error(ErrorCode::ParseError, "odd-length hex code");
    std::string bytes;
    for (std::size_t i = 0; i < hex.size(); i += 2) {
      bytes.push_back(static_cast<char>(std::stoi(hex.substr(i, 2), nullptr, 16)));
    }
    samples.emplace_back(std::move(bytes), e.at("value").get<double>());
  }
  return targetFromSamples(samples);
} catch (const nlohmann::json::exception& e) {
  throw Error(ErrorCode::ParseError, e.what());
} catch (const std::invalid_argument& e) {
  throw Error(ErrorCode::ParseError, "bad hex digit in target code");
}

TargetFunction targetFromSamples(std::span<const std::pair<std::string, double>> samples) {
  TargetFunction f;
  for (const auto& [code, value] : samples) {
    auto [it, inserted] = f.table.emplace(code, value);
    if (!inserted && it->second != value) {
      throw Error(ErrorCode::InfeasibleTarget, "pattern " + TreeCode{code}.hex().substr(0, 32) +
                                                   "... carries two target values");
    }
  }
  return f;
}

namespace {

double hat(double s) { return std::max(0.0, 1.0 - std::abs(s)); }

}  // namespace

double Readout::evaluate(const std::string& code) const {
  if (backend == Backend::Codec) {
    auto it = lookup.find(code);
    if (it == lookup.end()) throw Error(ErrorCode::TargetUndefined, "code outside the readout table");
    return it->second;
  }
  auto it = std::lower_bound(interned.begin(), interned.end(), code);
  if (it == interned.end() || *it != code) {
    throw Error(ErrorCode::TargetUndefined, "code outside the interned pattern set");
  }
  // Only the hats centered at rank-1, rank, rank+1 can be nonzero.
  const auto rank = static_cast<Eigen::Index>(it - interned.begin());
  double y = 0.0;
  for (Eigen::Index j = std::max<Eigen::Index>(0, rank - 1); j <= rank + 1 && j < coeffs.size(); ++j) {
    y += coeffs[j] * hat(static_cast<double>(rank - j));
  }
  return y;
}

FitResult fitReadout(std::span<const std::string> patternCodes, const TargetFunction& target, Backend backend) {
  std::vector<double> y;
  y.reserve(patternCodes.size());
  for (const auto& code : patternCodes) {
    auto value = target.at(code);
    if (!value) throw Error(ErrorCode::TargetUndefined, "pattern code outside the target domain");
    y.push_back(*value);
  }

  FitResult out;
  out.readout.backend = backend;
  if (backend == Backend::Codec) {
    for (std::size_t p = 0; p < patternCodes.size(); ++p) out.readout.lookup[patternCodes[p]] = y[p];
  } else {
    auto& interned = out.readout.interned;
    interned.assign(patternCodes.begin(), patternCodes.end());
    std::sort(interned.begin(), interned.end());
    interned.erase(std::unique(interned.begin(), interned.end()), interned.end());

    // Each pattern row touches only the hat centered on its rank, so the
    // design matrix is sparse; a dense solve would be cubic in the pattern count.
    const auto rows = static_cast<Eigen::Index>(patternCodes.size());
    const auto cols = static_cast<Eigen::Index>(interned.size());
    std::vector<Eigen::Triplet<double>> entries;
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index p = 0; p < rows; ++p) {
      auto rank = std::lower_bound(interned.begin(), interned.end(), patternCodes[static_cast<std::size_t>(p)]) -
                  interned.begin();
      entries.emplace_back(p, rank, hat(0.0));
      rhs[p] = y[static_cast<std::size_t>(p)];
    }
    if (cols > 0) {
      Eigen::SparseMatrix<double> design(rows, cols);
      design.setFromTriplets(entries.begin(), entries.end());
      design.makeCompressed();
      // Normal equations: the columns have disjoint supports, so A^T A is
      // diagonal and well conditioned.
      Eigen::SparseMatrix<double> normal = design.transpose() * design;
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(normal);
      out.readout.coeffs = solver.solve(design.transpose() * rhs);
    }
  }

  for (std::size_t p = 0; p < patternCodes.size(); ++p) {
    out.maxError = std::max(out.maxError, std::abs(out.readout.evaluate(patternCodes[p]) - y[p]));
  }
  return out;
}

LinearReadout fitLinearReadout(std::span<const Eigen::VectorXd> embeddings, std::span<const double> targets) {
  shapeCheck(embeddings.size() == targets.size(), "one target per embedding required");
  LinearReadout out;
  if (embeddings.empty()) return out;
  const auto d = embeddings.front().size();
  const auto rows = static_cast<Eigen::Index>(embeddings.size());
  Eigen::MatrixXd x(rows, d + 1);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& e = embeddings[static_cast<std::size_t>(r)];
    shapeCheck(e.size() == d, "embeddings of mixed dimension");
    x.row(r) << e.transpose(), 1.0;
    y[r] = targets[static_cast<std::size_t>(r)];
  }
  Eigen::VectorXd sol = x.colPivHouseholderQr().solve(y);
  out.weights = sol.head(d);
  out.bias = sol[d];
  out.maxError = (x * sol - y).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace dynwl
