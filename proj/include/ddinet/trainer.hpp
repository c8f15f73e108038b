#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ddinet/metrics.hpp"
#include "ddinet/model.hpp"

namespace ddinet {

/// Everything the pipeline needs once inputs are ingested: the merged graph,
/// labelled samples, and per-drug / per-pair artefacts.
struct DataBundle {
  Registry registry;
  BiomedicalKG kg;
  std::vector<DdiSample> samples;
  std::map<std::size_t, std::shared_ptr<DrugData>> drugs;  // entity index -> data
  std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<PairData>> pairs;
  std::size_t n_relations = 0;
  std::vector<std::string> exclusions;  // drugs dropped for missing/bad SMILES
};

struct BundlePaths {
  std::string ddi;
  std::string ekg;
  std::string entities;
  std::string smiles;
  bool header = false;
};

/// Ingests the four input files. DDI samples whose drugs lack a parseable
/// SMILES are excluded and reported in `exclusions`.
DataBundle load_bundle(const BundlePaths& paths, const TrainConfig& cfg);

/// Builds encoder-ready samples against a fold's training graph.
std::vector<SampleData> build_samples(const DataBundle& bundle, const BiomedicalKG& train_kg,
                                      const std::vector<DdiSample>& list, const TrainConfig& cfg);

struct BatchOutput {
  double loss_p_sum = 0;
  double loss_c_sum = 0;
  double loss_mi_sum = 0;
  std::vector<std::vector<double>> probs;  // per sample, relation distribution
};

/// Forward (and optionally backward) pass over a span of samples. Sample
/// work is distributed over threads; gradients are reduced in a fixed order
/// so results are deterministic for a fixed thread count. When training,
/// prediction and information losses are weighted 1/B (batch means) and the
/// center loss enters as a sum, matching the loss definition.
BatchOutput batch_pass(const TrainConfig& cfg, ParameterStore& store,
                       const std::vector<const SampleData*>& batch, EntityForward* entity,
                       double beta, double gamma, bool train);

struct FoldOutcome {
  MetricsReport valid;
  MetricsReport test;
  double gamma = 0;
  int best_epoch = -1;
  int epochs_run = 0;
  std::vector<std::string> train_log;  // CSV rows: step,loss_p,loss_c,loss_mi,total
  std::vector<std::size_t> test_labels;
  std::vector<std::vector<double>> test_probs;
};

/// Trains one fold: leakage-safe training graph, mini-batch Adam, early
/// stopping on validation macro-F1, best-epoch weights restored before the
/// test evaluation. The store must be freshly constructed for the fold.
FoldOutcome train_fold(const TrainConfig& cfg, const DataBundle& bundle, const FoldSplit& fold,
                       ParameterStore& store);

/// Forward-only evaluation.
MetricsReport evaluate(const TrainConfig& cfg, ParameterStore& store,
                       const std::vector<SampleData>& samples, EntityForward* entity,
                       std::size_t n_relations, std::vector<std::vector<double>>* probs_out);

}  // namespace ddinet
