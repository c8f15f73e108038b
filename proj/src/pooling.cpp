#include "ddinet/pooling.hpp"

namespace ddinet::pool {

Pooled caspool(ad::Tape& t, enc::TapeParams& p, ad::Var h, std::size_t u_local,
               std::size_t v_local) {
  const std::size_t n = t.val(h).rows;
  auto base = t.concat_cols({t.row(h, u_local), t.row(h, v_local)});     // (1, 2d)
  auto node_proj = t.linear(h, p["caspool.wh"]);                          // (n, d)
  auto base_proj = t.linear(base, p["caspool.wb"]);                       // (1, d)
  auto logits = t.transpose(t.matmul(node_proj, t.transpose(base_proj)));  // (1, n)
  auto alpha = t.softmax_vec(logits);
  auto pooled = t.scale(t.matmul(alpha, h), 1.0 / static_cast<double>(n));
  return Pooled{pooled, alpha};
}

Pooled agipool(ad::Tape& t, ad::Var z, ad::Var final_attn) {
  const std::size_t m = t.val(z).rows;
  auto influence = t.colsum(final_attn);  // c_i = sum_j alpha_{j,i}
  auto pooled = t.scale(t.matmul(influence, z), 1.0 / static_cast<double>(m));
  return Pooled{pooled, influence};
}

Pooled mean_pool(ad::Tape& t, ad::Var x) {
  const std::size_t n = t.val(x).rows;
  auto pooled = t.scale(t.colsum(x), 1.0 / static_cast<double>(n));
  auto scores = t.constant(Mat(1, n, 1.0 / static_cast<double>(n)));
  return Pooled{pooled, scores};
}

}  // namespace ddinet::pool
