#include "ddinet/encoders.hpp"

#include <cmath>

namespace ddinet::enc {

ad::Var TapeParams::operator[](const std::string& name) {
  auto it = leaves_.find(name);
  if (it != leaves_.end()) return it->second;
  const ad::Var v = tape_->leaf(&store_->get(name));
  leaves_.emplace(name, v);
  return v;
}

void TapeParams::flush(GradSink& sink) const {
  for (const auto& [name, var] : leaves_) sink.accumulate(name, tape_->grad(var));
}

ad::SpOp sage_mean_adjacency(const BiomedicalKG& kg) {
  std::vector<std::tuple<std::size_t, std::size_t, double>> trip;
  for (std::size_t i = 0; i < kg.num_entities(); ++i) {
    const auto& nbrs = kg.adjacency[i];
    if (nbrs.empty()) continue;
    const double w = 1.0 / static_cast<double>(nbrs.size());
    for (const auto& e : nbrs) trip.emplace_back(i, e.nbr, w);
  }
  return ad::SpOp(Csr::from_triplets(kg.num_entities(), kg.num_entities(), std::move(trip)));
}

std::vector<unsigned char> attention_mask(const EnclosingSubgraph& sub, bool self_loops) {
  const std::size_t n = sub.size();
  std::vector<unsigned char> mask(n * n, 0);
  for (const auto& [a, b] : sub.local_edges) {
    mask[a * n + b] = 1;
    mask[b * n + a] = 1;
  }
  if (self_loops)
    for (std::size_t i = 0; i < n; ++i) mask[i * n + i] = 1;
  return mask;
}

ad::SpOp intra_norm_adjacency(const HierarchicalInteractionGraph& hig) {
  const std::size_t m = hig.size();
  std::vector<std::size_t> deg(m, 0);
  for (const auto& [a, b] : hig.intra_edges) {
    ++deg[a];
    ++deg[b];
  }
  std::vector<std::tuple<std::size_t, std::size_t, double>> trip;
  for (const auto& [a, b] : hig.intra_edges) {
    const double w = 1.0 / std::sqrt(static_cast<double>(deg[a]) * static_cast<double>(deg[b]));
    trip.emplace_back(a, b, w);
    trip.emplace_back(b, a, w);
  }
  return ad::SpOp(Csr::from_triplets(m, m, std::move(trip)));
}

std::vector<unsigned char> inter_mask(const HierarchicalInteractionGraph& hig) {
  const std::size_t m = hig.size();
  std::vector<unsigned char> mask(m * m, 0);
  for (const auto& [a, b] : hig.inter_edges) {
    mask[a * m + b] = 1;
    mask[b * m + a] = 1;
  }
  return mask;
}

ad::SpOp mol_norm_adjacency(const chem::MolecularGraph& g) {
  const std::size_t n = g.atom_features.rows;
  std::vector<double> deg(n, 1.0);  // self loop
  for (const auto& [a, b] : g.bonds) {
    deg[a] += 1.0;
    deg[b] += 1.0;
  }
  std::vector<std::tuple<std::size_t, std::size_t, double>> trip;
  for (std::size_t i = 0; i < n; ++i) trip.emplace_back(i, i, 1.0 / deg[i]);
  for (const auto& [a, b] : g.bonds) {
    const double w = 1.0 / std::sqrt(deg[a] * deg[b]);
    trip.emplace_back(a, b, w);
    trip.emplace_back(b, a, w);
  }
  return ad::SpOp(Csr::from_triplets(n, n, std::move(trip)));
}

ad::Var sage_encode(ad::Tape& t, TapeParams& p, ad::Var x0, const ad::SpOp* mean_adj,
                    int layers) {
  ad::Var x = x0;
  for (int l = 0; l < layers; ++l) {
    const std::string pre = "sage.l" + std::to_string(l) + ".";
    auto neigh = t.spmm(mean_adj, t.linear(x, p[pre + "w1"]));
    x = t.relu(t.linear(t.concat_cols({x, neigh}), p[pre + "w2"]));
  }
  return x;
}

ad::Var gt_layer(ad::Tape& t, TapeParams& p, ad::Var h, const std::vector<unsigned char>& mask,
                 int layer, int heads) {
  const std::string pre = "gt.l" + std::to_string(layer) + ".";
  const std::size_t dn = t.val(h).cols / static_cast<std::size_t>(heads);
  std::vector<ad::Var> head_outs;
  for (int n = 0; n < heads; ++n) {
    const std::string hp = pre + "h" + std::to_string(n) + ".";
    auto q = t.linear(h, p[hp + "q"]);
    auto k = t.linear(h, p[hp + "k"]);
    auto v = t.linear(h, p[hp + "v"]);
    auto logits = t.scale(t.linear(q, k), 1.0 / std::sqrt(static_cast<double>(dn)));
    auto attn = t.masked_softmax_rows(logits, mask);
    head_outs.push_back(t.matmul(attn, v));
  }
  auto merged = t.linear(heads == 1 ? head_outs[0] : t.concat_cols(head_outs), p[pre + "o"]);
  auto h1 = t.layer_norm_rows(t.add(h, merged));
  auto ffn = t.linear(t.gelu(t.linear(h1, p[pre + "ffn1"])), p[pre + "ffn2"]);
  return t.layer_norm_rows(t.add(h1, ffn));
}

ad::Var gt_encode(ad::Tape& t, TapeParams& p, ad::Var h0, const std::vector<unsigned char>& mask,
                  int layers, int heads) {
  ad::Var h = h0;
  for (int l = 0; l < layers; ++l) h = gt_layer(t, p, h, mask, l, heads);
  return h;
}

ad::Var intra_gcn_layer(ad::Tape& t, TapeParams& p, ad::Var z, const ad::SpOp* intra, int layer) {
  return t.relu(t.spmm(intra, t.linear(z, p["hig.l" + std::to_string(layer) + ".intra"])));
}

InterOut inter_gat_layer(ad::Tape& t, TapeParams& p, ad::Var z,
                         const std::vector<unsigned char>& mask, int layer, int heads,
                         double slope) {
  const std::string pre = "hig.l" + std::to_string(layer) + ".";
  std::vector<ad::Var> outs;
  ad::Var attn{};
  for (int n = 0; n < heads; ++n) {
    const std::string hp = pre + "h" + std::to_string(n) + ".";
    auto zw = t.linear(z, p[hp + "inter"]);  // (m, out)
    const std::size_t out_w = t.val(zw).cols;
    auto att = p[hp + "att"];  // (1, 2*out)
    auto s_self = t.matmul(zw, t.transpose(t.slice_cols(att, 0, out_w)));       // (m,1)
    auto s_nbr = t.matmul(zw, t.transpose(t.slice_cols(att, out_w, out_w)));    // (m,1)
    auto e = t.leaky_relu(t.outer_add(s_self, s_nbr), slope);
    attn = t.masked_softmax_rows(e, mask);
    outs.push_back(t.relu(t.matmul(attn, zw)));
  }
  return InterOut{heads == 1 ? outs[0] : t.concat_cols(outs), attn};
}

HigOut hig_encode(ad::Tape& t, TapeParams& p, ad::Var z0, const ad::SpOp* intra,
                  const std::vector<unsigned char>& imask, int layers, int heads, double slope) {
  ad::Var z = z0;
  ad::Var final_attn{};
  for (int l = 0; l < layers; ++l) {
    const int layer_heads = (l + 1 == layers) ? 1 : heads;
    auto z_intra = intra_gcn_layer(t, p, z, intra, l);
    auto inter = inter_gat_layer(t, p, z, imask, l, layer_heads, slope);
    z = t.add(z_intra, inter.z);
    final_attn = inter.attn;
  }
  return HigOut{z, final_attn};
}

ad::Var mol_gcn_encode(ad::Tape& t, TapeParams& p, ad::Var x, const ad::SpOp* adj, int layers) {
  ad::Var h = x;
  for (int l = 0; l < layers; ++l)
    h = t.relu(t.spmm(adj, t.linear(h, p["mol.l" + std::to_string(l) + ".w"])));
  return t.colsum(h);  // sum pooling over atoms
}

}  // namespace ddinet::enc
