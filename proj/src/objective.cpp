#include "ddinet/objective.hpp"

#include "ddinet/common.hpp"

namespace ddinet::obj {

ad::Var mi_loss_term(ad::Tape& t, ad::Var h_uv, ad::Var z_uv) {
  if (t.val(h_uv).cols == 0 || t.val(z_uv).cols == 0)
    throw InputError("mi_loss requires non-empty embeddings");
  if (t.val(h_uv).cols != t.val(z_uv).cols)
    throw InputError("mi_loss requires embeddings of equal dimension");
  auto p = t.softmax_vec(h_uv);
  auto log_p = t.log_softmax_vec(h_uv);
  auto q = t.softmax_vec(z_uv);
  auto log_q = t.log_softmax_vec(z_uv);

  auto cross_pq = t.scale(t.dot(p, log_q), -1.0);  // H_q(p)
  auto cross_qp = t.scale(t.dot(q, log_p), -1.0);  // H_p(q)
  auto kl_pq = t.sub(cross_pq, t.scale(t.dot(p, log_p), -1.0));  // H_q(p) - H(p)
  auto kl_qp = t.sub(cross_qp, t.scale(t.dot(q, log_q), -1.0));
  // grouped so that swapping the arguments swaps the two addends, keeping
  // the value bit-identical under exchange
  return t.add(t.sub(cross_pq, kl_pq), t.sub(cross_qp, kl_qp));
}

ad::Var center_loss_term(ad::Tape& t, ad::Var h_u, ad::Var h_v, ad::Var centers, std::size_t u,
                         std::size_t v) {
  if (u >= t.val(centers).rows || v >= t.val(centers).rows)
    throw InputError("drug without a center vector");
  auto du = t.sumsq(t.sub(h_u, t.row(centers, u)));
  auto dv = t.sumsq(t.sub(h_v, t.row(centers, v)));
  return t.scale(t.add(du, dv), 0.5);
}

ad::Var fuse_drug(ad::Tape& t, enc::TapeParams& p, ad::Var h_l2, ad::Var h_mol) {
  auto joint = t.concat_cols({h_l2, h_mol});
  return t.linear(t.relu(t.linear(joint, p["fuse.w1"])), p["fuse.w2"]);
}

ad::Var classify(ad::Tape& t, enc::TapeParams& p, ad::Var pair_feature) {
  return t.linear(pair_feature, p["cls.w"]);
}

ad::Var prediction_loss_term(ad::Tape& t, ad::Var logits, std::size_t label) {
  if (label >= t.val(logits).cols) throw InputError("class index out of range");
  return t.scale(t.pick(t.log_softmax_vec(logits), 0, label), -1.0);
}

LossReport total_loss(double loss_p, double loss_c, double loss_mi, double beta, double gamma) {
  if (beta < 0 || gamma < 0) throw InputError("beta and gamma must be non-negative");
  LossReport r;
  r.loss_p = loss_p;
  r.loss_c = loss_c;
  r.loss_mi = loss_mi;
  r.beta = beta;
  r.gamma = gamma;
  r.total = loss_p + beta * loss_c + gamma * loss_mi;
  return r;
}

}  // namespace ddinet::obj
