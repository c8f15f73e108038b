#pragma once

#include <string>

#include "ddinet/trainer.hpp"

namespace ddinet {

/// Builds the explanation record for one drug pair on a trained model:
/// predicted relation distribution, the top-k fragments per drug by
/// influence score, and the top 10% of subgraph entities by attention.
/// Returns the JSON text (schema shipped in data/explain_schema.json).
std::string explain_pair(const TrainConfig& cfg, const DataBundle& bundle,
                         ParameterStore& store, const std::string& drug_u_id,
                         const std::string& drug_v_id, std::size_t top_k_fragments = 2);

}  // namespace ddinet
