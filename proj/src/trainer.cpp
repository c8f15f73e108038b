#include "ddinet/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ddinet/common.hpp"
#include "ddinet/encoders.hpp"

namespace ddinet {

DataBundle load_bundle(const BundlePaths& paths, const TrainConfig& cfg) {
  DataBundle b;
  load_entity_classes(paths.entities, b.registry, paths.header);
  LoadStats ddi_stats, ekg_stats;
  auto ddi = load_triples(paths.ddi, Origin::ddi, b.registry, paths.header, &ddi_stats);
  auto ekg = load_triples(paths.ekg, Origin::ekg, b.registry, paths.header, &ekg_stats);
  b.kg = build_tsbkg(ddi, ekg, b.registry);
  b.n_relations = b.registry.num_relations(Origin::ddi);

  const auto smiles = load_smiles_table(paths.smiles, paths.header);
  auto all_samples = ddi_samples_from_triples(ddi);

  // Resolve SMILES per DDI drug; drop samples whose drugs cannot be prepared.
  const auto& table = chem::ElementTable::bundled();
  std::map<std::size_t, std::string> drug_smiles;
  for (const auto& s : all_samples) {
    for (std::size_t d : {s.u, s.v}) {
      if (drug_smiles.count(d) || b.drugs.count(d)) continue;
      const std::string& ext = b.kg.entities[d].external_id;
      auto it = smiles.find(ext);
      if (it == smiles.end()) {
        b.exclusions.push_back(ext + ": no SMILES entry");
        drug_smiles[d] = "";
        continue;
      }
      try {
        b.drugs[d] = std::make_shared<DrugData>(make_drug_data(d, it->second, cfg, table));
        drug_smiles[d] = it->second;
      } catch (const InputError& e) {
        b.exclusions.push_back(ext + ": " + e.what());
        drug_smiles[d] = "";
      }
    }
  }
  for (const auto& s : all_samples) {
    if (b.drugs.count(s.u) && b.drugs.count(s.v)) b.samples.push_back(s);
  }
  std::sort(b.exclusions.begin(), b.exclusions.end());
  b.exclusions.erase(std::unique(b.exclusions.begin(), b.exclusions.end()), b.exclusions.end());

  // Pair-level artefacts for every labelled pair.
  for (const auto& s : b.samples) {
    const auto key = std::minmax(s.u, s.v);
    if (!b.pairs.count(key))
      b.pairs[key] = std::make_shared<PairData>(make_pair_data(*b.drugs.at(key.first),
                                                               *b.drugs.at(key.second)));
  }
  return b;
}

std::vector<SampleData> build_samples(const DataBundle& bundle, const BiomedicalKG& train_kg,
                                      const std::vector<DdiSample>& list, const TrainConfig& cfg) {
  std::vector<SampleData> out(list.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(list.size()); ++i) {
    const auto& s = list[static_cast<std::size_t>(i)];
    const auto key = std::minmax(s.u, s.v);
    out[static_cast<std::size_t>(i)] =
        make_sample_data(train_kg, s, bundle.pairs.at(key), bundle.drugs.at(s.u),
                         bundle.drugs.at(s.v), cfg);
  }
  return out;
}

BatchOutput batch_pass(const TrainConfig& cfg, ParameterStore& store,
                       const std::vector<const SampleData*>& batch, EntityForward* entity,
                       double beta, double gamma, bool train) {
  const std::size_t n = batch.size();
  BatchOutput out;
  out.probs.resize(n);
  const Mat* table = entity ? &entity->table() : nullptr;

  LossWeights w;
  w.w_p = 1.0 / static_cast<double>(n);
  w.w_c = beta;                               // center loss enters as a batch sum
  w.w_mi = gamma / static_cast<double>(n);

#ifdef _OPENMP
  const int n_threads = omp_get_max_threads();
#else
  const int n_threads = 1;
#endif
  std::vector<GradSink> sinks(static_cast<std::size_t>(n_threads));
  std::vector<double> lp(n), lc(n), lmi(n);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
#ifdef _OPENMP
    GradSink* sink = train ? &sinks[static_cast<std::size_t>(omp_get_thread_num())] : nullptr;
#else
    GradSink* sink = train ? &sinks[0] : nullptr;
#endif
    const auto idx = static_cast<std::size_t>(i);
    SampleResult r = run_sample(cfg, store, *batch[idx], table, sink, w);
    lp[idx] = r.loss_p;
    lc[idx] = r.loss_c;
    lmi[idx] = r.loss_mi;
    out.probs[idx] = std::move(r.probs);
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.loss_p_sum += lp[i];
    out.loss_c_sum += lc[i];
    out.loss_mi_sum += lmi[i];
  }

  if (train) {
    // fixed reduction order: thread id, then parameter name
    for (const auto& sink : sinks) sink.reduce_into(store);
    if (entity) {
      Mat table_grad(table->rows, table->cols);
      for (const auto& sink : sinks) {
        if (const Mat* g = sink.find("__entity_features__")) {
          for (std::size_t i = 0; i < table_grad.size(); ++i) table_grad.d[i] += g->d[i];
        }
      }
      GradSink main_sink;
      entity->backward(table_grad, main_sink);
      main_sink.reduce_into(store);
    }
  }
  return out;
}

MetricsReport evaluate(const TrainConfig& cfg, ParameterStore& store,
                       const std::vector<SampleData>& samples, EntityForward* entity,
                       std::size_t n_relations, std::vector<std::vector<double>>* probs_out) {
  std::vector<const SampleData*> ptrs;
  for (const auto& s : samples) ptrs.push_back(&s);
  auto out = batch_pass(cfg, store, ptrs, entity, 0.0, 0.0, false);
  std::vector<std::size_t> labels;
  for (const auto& s : samples) labels.push_back(s.label);
  if (probs_out) *probs_out = out.probs;
  return compute_metrics(labels, out.probs, n_relations);
}

FoldOutcome train_fold(const TrainConfig& cfg, const DataBundle& bundle, const FoldSplit& fold,
                       ParameterStore& store) {
#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
  FoldOutcome outcome;

  // Leakage control: the fold's held-out DDI edges never enter the graph
  // used for message passing or subgraph extraction.
  std::vector<DdiSample> held;
  held.insert(held.end(), fold.valid.begin(), fold.valid.end());
  held.insert(held.end(), fold.test.begin(), fold.test.end());
  const BiomedicalKG train_kg = training_graph(bundle.kg, held);

  auto train_samples = build_samples(bundle, train_kg, fold.train, cfg);
  auto valid_samples = build_samples(bundle, train_kg, fold.valid, cfg);
  auto test_samples = build_samples(bundle, train_kg, fold.test, cfg);
  if (train_samples.empty()) throw InputError("fold has no training samples");

  std::unique_ptr<ad::SpOp> mean_adj;
  if (!cfg.no_tsbkg) mean_adj = std::make_unique<ad::SpOp>(enc::sage_mean_adjacency(train_kg));
  auto fresh_entity = [&]() -> std::unique_ptr<EntityForward> {
    if (cfg.no_tsbkg) return nullptr;
    return std::make_unique<EntityForward>(cfg, store, mean_adj.get());
  };

  // gamma calibration on the first batch at the initial parameters
  double gamma = 0.0;
  if (!cfg.no_infomin) {
    const std::size_t first = std::min(cfg.batch_size, train_samples.size());
    std::vector<const SampleData*> probe;
    for (std::size_t i = 0; i < first; ++i) probe.push_back(&train_samples[i]);
    auto ent = fresh_entity();
    auto out = batch_pass(cfg, store, probe, ent.get(), 0.0, 0.0, false);
    const double lp = out.loss_p_sum / static_cast<double>(first);
    const double lmi = out.loss_mi_sum / static_cast<double>(first);
    gamma = lmi > 1e-12 ? cfg.gamma_ratio * lp / lmi : 0.0;
  }
  outcome.gamma = gamma;

  Rng shuffle_rng = make_rng(cfg.seed, "epoch-shuffle-" + std::to_string(fold.fold_id));
  std::vector<std::size_t> order(train_samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  double best_f1 = -1.0;
  std::vector<Mat> best_values;
  int since_best = 0;
  std::size_t step = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      std::vector<const SampleData*> batch;
      for (std::size_t i = start; i < end; ++i) batch.push_back(&train_samples[order[i]]);
      store.zero_grads();
      auto ent = fresh_entity();
      auto out = batch_pass(cfg, store, batch, ent.get(), cfg.beta, gamma, true);
      const double bs = static_cast<double>(batch.size());
      const auto report = obj::total_loss(out.loss_p_sum / bs, out.loss_c_sum,
                                          out.loss_mi_sum / bs, cfg.beta, gamma);
      if (!std::isfinite(report.total))
        throw NumericError("non-finite loss at step " + std::to_string(step));
      std::ostringstream row;
      row << step << ',' << report.loss_p << ',' << report.loss_c << ',' << report.loss_mi
          << ',' << report.total;
      outcome.train_log.push_back(row.str());
      store.adam_step(cfg.learning_rate);
      ++step;
    }
    outcome.epochs_run = epoch + 1;

    const auto& probe_set = valid_samples.empty() ? train_samples : valid_samples;
    auto ent = fresh_entity();
    MetricsReport vm = evaluate(cfg, store, probe_set, ent.get(), bundle.n_relations, nullptr);
    if (vm.macro_f1 > best_f1) {
      best_f1 = vm.macro_f1;
      outcome.best_epoch = epoch;
      outcome.valid = vm;
      best_values.clear();
      for (const auto& e : store.entries()) best_values.push_back(e.value);
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }

  if (!best_values.empty()) {
    auto& entries = store.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].value = best_values[i];
  }

  auto ent = fresh_entity();
  outcome.test = evaluate(cfg, store, test_samples, ent.get(), bundle.n_relations,
                          &outcome.test_probs);
  for (const auto& s : test_samples) outcome.test_labels.push_back(s.label);
  return outcome;
}

}  // namespace ddinet
