#pragma once

#include "ddinet/trainer.hpp"

namespace ddinet {

/// Predicts the training majority class for every test pair; probabilities
/// are the training class frequencies.
MetricsReport majority_baseline(const std::vector<DdiSample>& train,
                                const std::vector<DdiSample>& test, std::size_t n_relations);

/// Multinomial logistic regression on concatenated whole-molecule
/// fingerprints of the pair, trained with Adam. Deterministic given the
/// seed.
MetricsReport fingerprint_logistic_baseline(const DataBundle& bundle, const FoldSplit& fold,
                                            const TrainConfig& cfg);

}  // namespace ddinet
