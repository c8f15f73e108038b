#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ddinet/chem/brics.hpp"
#include "ddinet/encoders.hpp"
#include "ddinet/objective.hpp"
#include "ddinet/params.hpp"
#include "ddinet/pooling.hpp"

namespace ddinet {

/// Per-drug artefacts computed once during preparation.
struct DrugData {
  std::size_t entity = 0;  // global entity index
  chem::SubstructureGraph frags;
  Mat frag_fp;  // |frags| x fp_bits
  chem::MolecularGraph molgraph;
  ad::SpOp mol_adj;
};

/// Per unordered pair: the interaction graph and its operators.
struct PairData {
  HierarchicalInteractionGraph hig;
  ad::SpOp intra;
  std::vector<unsigned char> imask;
  Mat z0;  // fragment fingerprints, u block then v block
};

/// One DDI sample ready for the encoders.
struct SampleData {
  std::size_t u = 0;
  std::size_t v = 0;
  std::size_t label = 0;
  EnclosingSubgraph sub;
  std::vector<unsigned char> attn_mask;
  Mat pc;  // positions || categories, constant part of h^(0)
  std::shared_ptr<const PairData> pair;
  std::shared_ptr<const DrugData> drug_u;
  std::shared_ptr<const DrugData> drug_v;
};

struct SampleResult {
  double loss_p = 0;
  double loss_c = 0;
  double loss_mi = 0;
  std::vector<double> probs;            // softmax over relation types
  std::vector<double> caspool_scores;   // per subgraph node
  std::vector<double> agipool_scores;   // per fragment (u block then v block)
};

struct LossWeights {
  double w_p = 1.0;   // applied to the per-sample prediction loss
  double w_c = 0.0;   // applied to the per-sample center loss
  double w_mi = 0.0;  // applied to the per-sample information overlap loss
};

/// Runs the full per-sample pipeline on its own tape. `entity_features` is
/// the encoded entity table (may be null when the knowledge-graph branch is
/// ablated). When `sink` is given, backpropagates the weighted sample loss
/// and accumulates parameter gradients plus the entity-feature gradient
/// under the reserved name "__entity_features__".
SampleResult run_sample(const TrainConfig& cfg, const ParameterStore& store,
                        const SampleData& s, const Mat* entity_features, GradSink* sink,
                        const LossWeights& w);

/// Optional node-feature masking for the fidelity evaluation: rows of h^(0)
/// listed in `masked_nodes` are zeroed (graph structure untouched).
SampleResult run_sample_masked(const TrainConfig& cfg, const ParameterStore& store,
                               const SampleData& s, const Mat* entity_features,
                               const std::vector<std::size_t>& masked_nodes);

/// Forward pass of the entity encoder over the whole training graph. The
/// tape is kept alive so the gradient accumulated by the batch can be pushed
/// back through it once per step.
class EntityForward {
 public:
  EntityForward(const TrainConfig& cfg, const ParameterStore& store, const ad::SpOp* mean_adj);
  const Mat& table() const { return table_; }
  /// Backpropagates d(loss)/d(table) into the embedding and encoder params.
  void backward(const Mat& table_grad, GradSink& sink);

 private:
  ad::Tape tape_;
  enc::TapeParams params_;
  ad::Var out_{};
  Mat table_;
};

/// Builds data structures for one drug / pair / sample.
DrugData make_drug_data(std::size_t entity, const std::string& smiles, const TrainConfig& cfg,
                        const chem::ElementTable& table);
PairData make_pair_data(const DrugData& du, const DrugData& dv);
SampleData make_sample_data(const BiomedicalKG& train_kg, const DdiSample& sample,
                            std::shared_ptr<const PairData> pair,
                            std::shared_ptr<const DrugData> du,
                            std::shared_ptr<const DrugData> dv, const TrainConfig& cfg);

}  // namespace ddinet
