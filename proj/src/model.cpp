#include "ddinet/model.hpp"

#include <cmath>

#include "ddinet/chem/fingerprint.hpp"
#include "ddinet/common.hpp"

namespace ddinet {

DrugData make_drug_data(std::size_t entity, const std::string& smiles, const TrainConfig& cfg,
                        const chem::ElementTable& table) {
  DrugData d;
  d.entity = entity;
  chem::Mol mol = chem::parse_smiles(smiles);
  d.frags = chem::brics_decompose(mol);
  d.frag_fp = Mat(d.frags.fragments.size(), cfg.fp_bits);
  for (std::size_t f = 0; f < d.frags.fragments.size(); ++f) {
    const auto bits = chem::fingerprint(d.frags.fragments[f].smiles, cfg.fp_bits, cfg.fp_radius);
    for (std::size_t j = 0; j < cfg.fp_bits; ++j) d.frag_fp.at(f, j) = bits[j] ? 1.0 : 0.0;
  }
  d.molgraph = chem::featurize(mol, table);
  d.mol_adj = enc::mol_norm_adjacency(d.molgraph);
  return d;
}

PairData make_pair_data(const DrugData& du, const DrugData& dv) {
  PairData p;
  p.hig = build_hig(du.frags, dv.frags);
  p.intra = enc::intra_norm_adjacency(p.hig);
  p.imask = enc::inter_mask(p.hig);
  p.z0 = Mat(p.hig.size(), du.frag_fp.cols);
  for (std::size_t i = 0; i < p.hig.n_u; ++i)
    for (std::size_t j = 0; j < du.frag_fp.cols; ++j) p.z0.at(i, j) = du.frag_fp.at(i, j);
  for (std::size_t i = 0; i < p.hig.n_v; ++i)
    for (std::size_t j = 0; j < dv.frag_fp.cols; ++j)
      p.z0.at(p.hig.n_u + i, j) = dv.frag_fp.at(i, j);
  return p;
}

SampleData make_sample_data(const BiomedicalKG& train_kg, const DdiSample& sample,
                            std::shared_ptr<const PairData> pair,
                            std::shared_ptr<const DrugData> du,
                            std::shared_ptr<const DrugData> dv, const TrainConfig& cfg) {
  SampleData s;
  s.u = sample.u;
  s.v = sample.v;
  s.label = sample.r;
  SubgraphConfig scfg;
  scfg.k = cfg.k;
  scfg.node_cap = cfg.node_cap;
  s.sub = khop_enclosing_subgraph(train_kg, sample.u, sample.v, scfg);
  s.attn_mask = enc::attention_mask(s.sub, cfg.gt_self_loops);
  s.pc = Mat(s.sub.size(), s.sub.positions.cols + s.sub.categories.cols);
  for (std::size_t i = 0; i < s.sub.size(); ++i) {
    for (std::size_t j = 0; j < s.sub.positions.cols; ++j)
      s.pc.at(i, j) = s.sub.positions.at(i, j);
    for (std::size_t j = 0; j < s.sub.categories.cols; ++j)
      s.pc.at(i, s.sub.positions.cols + j) = s.sub.categories.at(i, j);
  }
  s.pair = std::move(pair);
  s.drug_u = std::move(du);
  s.drug_v = std::move(dv);
  return s;
}

EntityForward::EntityForward(const TrainConfig& cfg, const ParameterStore& store,
                             const ad::SpOp* mean_adj)
    : params_(tape_, store) {
  ad::Var x0 = params_["entity_embed"];
  out_ = enc::sage_encode(tape_, params_, x0, mean_adj, cfg.sage_layers);
  table_ = tape_.val(out_);
}

void EntityForward::backward(const Mat& table_grad, GradSink& sink) {
  tape_.backward_from(out_, table_grad);
  params_.flush(sink);
}

namespace {

SampleResult run_sample_impl(const TrainConfig& cfg, const ParameterStore& store,
                             const SampleData& s, const Mat* entity_features, GradSink* sink,
                             const LossWeights& w,
                             const std::vector<std::size_t>* masked_nodes) {
  ad::Tape t;
  enc::TapeParams P(t, store);
  const std::size_t H = cfg.hidden;
  SampleResult r;

  ad::Var h_uv{}, h_u_l2{}, h_v_l2{}, ef{};
  if (!cfg.no_tsbkg) {
    if (entity_features == nullptr)
      throw InputError("entity features required unless the tsBKG branch is disabled");
    ef = t.leaf(entity_features);
    auto gathered = t.gather_rows(ef, s.sub.node_ids);
    auto pc = t.leaf(&s.pc);
    ad::Var h0 = t.concat_cols({gathered, pc});
    if (masked_nodes && !masked_nodes->empty()) {
      Mat keep(t.val(h0).rows, t.val(h0).cols, 1.0);
      for (std::size_t i : *masked_nodes)
        for (std::size_t j = 0; j < keep.cols; ++j) keep.at(i, j) = 0.0;
      h0 = t.hadamard(h0, t.constant(std::move(keep)));
    }
    auto h = enc::gt_encode(t, P, h0, s.attn_mask, cfg.gt_layers, cfg.heads);
    auto pooled = cfg.mean_pool ? pool::mean_pool(t, h)
                                : pool::caspool(t, P, h, s.sub.u_local, s.sub.v_local);
    h_uv = pooled.vec;
    h_u_l2 = t.row(h, s.sub.u_local);
    h_v_l2 = t.row(h, s.sub.v_local);
    r.caspool_scores = t.val(pooled.scores).d;
  } else {
    h_uv = t.constant(Mat(1, H));
    h_u_l2 = t.constant(Mat(1, H));
    h_v_l2 = t.constant(Mat(1, H));
  }

  ad::Var z_uv{};
  if (!cfg.no_hig) {
    auto z0 = t.leaf(&s.pair->z0);
    auto hig = enc::hig_encode(t, P, z0, &s.pair->intra, s.pair->imask, cfg.hig_layers,
                               cfg.heads, cfg.leaky_slope);
    auto pooled = cfg.mean_pool ? pool::mean_pool(t, hig.z) : pool::agipool(t, hig.z, hig.final_attn);
    z_uv = pooled.vec;
    r.agipool_scores = t.val(pooled.scores).d;
  } else {
    z_uv = t.constant(Mat(1, H));
  }

  auto xu = t.leaf(&s.drug_u->molgraph.atom_features);
  auto h_mu = enc::mol_gcn_encode(t, P, xu, &s.drug_u->mol_adj, cfg.mol_layers);
  auto xv = t.leaf(&s.drug_v->molgraph.atom_features);
  auto h_mv = enc::mol_gcn_encode(t, P, xv, &s.drug_v->mol_adj, cfg.mol_layers);
  auto h_u = obj::fuse_drug(t, P, h_u_l2, h_mu);
  auto h_v = obj::fuse_drug(t, P, h_v_l2, h_mv);

  auto feature = t.concat_cols({h_uv, z_uv, h_u, h_v});
  auto logits = obj::classify(t, P, feature);
  auto loss_p = obj::prediction_loss_term(t, logits, s.label);

  ad::Var loss_c{}, loss_mi{};
  if (!cfg.no_tsbkg)
    loss_c = obj::center_loss_term(t, h_u_l2, h_v_l2, P["centers"], s.u, s.v);
  if (!cfg.no_infomin) loss_mi = obj::mi_loss_term(t, h_uv, z_uv);

  r.loss_p = t.val(loss_p).d[0];
  r.loss_c = loss_c.valid() ? t.val(loss_c).d[0] : 0.0;
  r.loss_mi = loss_mi.valid() ? t.val(loss_mi).d[0] : 0.0;
  r.probs = t.val(t.softmax_vec(logits)).d;

  if (!std::isfinite(r.loss_p + r.loss_c + r.loss_mi))
    throw NumericError("non-finite loss on sample (u=" + std::to_string(s.u) +
                       ", v=" + std::to_string(s.v) + ")");

  if (sink) {
    ad::Var total = t.scale(loss_p, w.w_p);
    if (loss_c.valid() && w.w_c != 0.0) total = t.add(total, t.scale(loss_c, w.w_c));
    if (loss_mi.valid() && w.w_mi != 0.0) total = t.add(total, t.scale(loss_mi, w.w_mi));
    t.backward(total);
    P.flush(*sink);
    if (ef.valid()) sink->accumulate("__entity_features__", t.grad(ef));
  }
  return r;
}

}  // namespace

SampleResult run_sample(const TrainConfig& cfg, const ParameterStore& store, const SampleData& s,
                        const Mat* entity_features, GradSink* sink, const LossWeights& w) {
  return run_sample_impl(cfg, store, s, entity_features, sink, w, nullptr);
}

SampleResult run_sample_masked(const TrainConfig& cfg, const ParameterStore& store,
                               const SampleData& s, const Mat* entity_features,
                               const std::vector<std::size_t>& masked_nodes) {
  LossWeights w;
  return run_sample_impl(cfg, store, s, entity_features, nullptr, w, &masked_nodes);
}

}  // namespace ddinet
