#pragma once

#include "ddinet/trainer.hpp"

namespace ddinet {

struct FidelityRow {
  double sparsity = 0;
  double fid_plus = 0;
  double fid_minus = 0;
};

/// Explanation faithfulness under feature masking. For sparsity s the
/// important set is the top (1-s) fraction of subgraph nodes by the
/// attention score; Fid+ masks the important nodes' initial features, Fid-
/// masks the rest. Structure is never touched. Scores are accuracy drops
/// relative to the unmasked model.
std::vector<FidelityRow> fidelity_eval(const TrainConfig& cfg, ParameterStore& store,
                                       const std::vector<SampleData>& test_samples,
                                       EntityForward* entity,
                                       const std::vector<double>& sparsity_levels);

}  // namespace ddinet
