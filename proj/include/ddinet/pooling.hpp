#pragma once

#include "ddinet/encoders.hpp"

namespace ddinet::pool {

struct Pooled {
  ad::Var vec;     // (1, d) pooled pair embedding
  ad::Var scores;  // (1, n) per-node scores aligned to node order
};

/// Context-aware subgraph pooling: attention of every node against the
/// concatenated pair embedding, then mean of the re-weighted node rows.
Pooled caspool(ad::Tape& t, enc::TapeParams& p, ad::Var h, std::size_t u_local,
               std::size_t v_local);

/// Attention-guided influence pooling: influence = summed incoming attention
/// of the final single-head cross-drug layer; mean of influence-weighted
/// node rows.
Pooled agipool(ad::Tape& t, ad::Var z, ad::Var final_attn);

/// Unweighted mean over rows; stands in for both pooling operators in the
/// pooling ablation. Scores export the uniform weight.
Pooled mean_pool(ad::Tape& t, ad::Var x);

}  // namespace ddinet::pool
