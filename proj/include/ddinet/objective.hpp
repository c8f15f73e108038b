#pragma once

#include "ddinet/encoders.hpp"

namespace ddinet::obj {

/// Information-overlap penalty between the two pooled pair embeddings.
/// Each vector becomes a distribution by softmax over its dimensions; the
/// value is the cross-entropy/KL combination
///   H_q(p) + H_p(q) - KL(p||q) - KL(q||p),
/// which reduces to H(p) + H(q). Built term by term so the reduction stays
/// an observable identity rather than an assumption.
ad::Var mi_loss_term(ad::Tape& t, ad::Var h_uv, ad::Var z_uv);

/// 0.5 (||h_u - c_u||^2 + ||h_v - c_v||^2) for one pair; centers come from
/// rows u, v of the center table leaf.
ad::Var center_loss_term(ad::Tape& t, ad::Var h_u, ad::Var h_v, ad::Var centers, std::size_t u,
                         std::size_t v);

/// Two-layer perceptron fusing the subgraph-side and molecule-side drug
/// embeddings.
ad::Var fuse_drug(ad::Tape& t, enc::TapeParams& p, ad::Var h_l2, ad::Var h_mol);

/// Linear classifier over the joint pair feature (no bias).
ad::Var classify(ad::Tape& t, enc::TapeParams& p, ad::Var pair_feature);

/// Cross-entropy of one sample.
ad::Var prediction_loss_term(ad::Tape& t, ad::Var logits, std::size_t label);

struct LossReport {
  double loss_p = 0;
  double loss_c = 0;
  double loss_mi = 0;
  double beta = 0;
  double gamma = 0;
  double total = 0;
};

/// total = L_P + beta*L_C + gamma*L_MI, exactly as summed.
LossReport total_loss(double loss_p, double loss_c, double loss_mi, double beta, double gamma);

}  // namespace ddinet::obj
