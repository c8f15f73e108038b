#include "ddinet/explain.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "ddinet/common.hpp"
#include "ddinet/encoders.hpp"

namespace ddinet {

namespace {

// Closest known ids by longest common prefix, for error messages.
std::vector<std::string> nearest_ids(const Registry& reg, const std::string& id) {
  std::vector<std::pair<int, std::string>> scored;
  for (const auto& e : reg.entities) {
    if (e.entity_class != EntityClass::drug) continue;
    int common = 0;
    while (common < static_cast<int>(std::min(e.external_id.size(), id.size())) &&
           e.external_id[static_cast<std::size_t>(common)] == id[static_cast<std::size_t>(common)])
      ++common;
    scored.emplace_back(-common, e.external_id);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min<std::size_t>(3, scored.size()); ++i)
    out.push_back(scored[i].second);
  return out;
}

}  // namespace

std::string explain_pair(const TrainConfig& cfg, const DataBundle& bundle,
                         ParameterStore& store, const std::string& drug_u_id,
                         const std::string& drug_v_id, std::size_t top_k_fragments) {
  using nlohmann::json;

  auto resolve = [&](const std::string& id) {
    const Entity* e = bundle.registry.find(id);
    if (!e || !bundle.drugs.count(e->index)) {
      std::string msg = "unknown drug id '" + id + "'; nearest known:";
      for (const auto& near : nearest_ids(bundle.registry, id)) msg += " " + near;
      throw InputError(msg);
    }
    return e->index;
  };
  const std::size_t u = resolve(drug_u_id);
  const std::size_t v = resolve(drug_v_id);

  const auto key = std::minmax(u, v);
  std::shared_ptr<const PairData> pair;
  if (bundle.pairs.count(key)) {
    pair = bundle.pairs.at(key);
  } else {
    pair = std::make_shared<PairData>(
        make_pair_data(*bundle.drugs.at(key.first), *bundle.drugs.at(key.second)));
  }
  // order pair data by (u, v) as requested
  std::shared_ptr<const PairData> ordered =
      key.first == u ? pair
                     : std::make_shared<PairData>(make_pair_data(*bundle.drugs.at(u),
                                                                 *bundle.drugs.at(v)));
  DdiSample query{u, v, 0};
  SampleData s = make_sample_data(bundle.kg, query, ordered, bundle.drugs.at(u),
                                  bundle.drugs.at(v), cfg);

  std::unique_ptr<ad::SpOp> adj;
  std::unique_ptr<EntityForward> entity;
  if (!cfg.no_tsbkg) {
    adj = std::make_unique<ad::SpOp>(enc::sage_mean_adjacency(bundle.kg));
    entity = std::make_unique<EntityForward>(cfg, store, adj.get());
  }
  LossWeights w;
  SampleResult r = run_sample(cfg, store, s, entity ? &entity->table() : nullptr, nullptr, w);

  json out;
  out["pair"] = {{"u", drug_u_id}, {"v", drug_v_id}};
  json dist = json::array();
  for (std::size_t c = 0; c < r.probs.size(); ++c)
    dist.push_back({{"relation", bundle.registry.relations[0][c]}, {"probability", r.probs[c]}});
  out["prediction"] = dist;
  out["predicted_relation"] = bundle.registry.relations[0][argmax(r.probs)];

  // fragments sorted by influence, top-k per drug
  auto frag_block = [&](const DrugData& drug, std::size_t offset, std::size_t count) {
    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t i = 0; i < count; ++i)
      scored.emplace_back(r.agipool_scores.empty() ? 0.0 : -r.agipool_scores[offset + i], i);
    std::sort(scored.begin(), scored.end());
    json arr = json::array();
    for (std::size_t rank = 0; rank < std::min(top_k_fragments, scored.size()); ++rank) {
      const std::size_t f = scored[rank].second;
      arr.push_back({{"smiles", drug.frags.fragments[f].smiles},
                     {"influence", -scored[rank].first},
                     {"rank", rank + 1}});
    }
    return arr;
  };
  out["fragments"] = {
      {"u", frag_block(*bundle.drugs.at(u), 0, s.pair->hig.n_u)},
      {"v", frag_block(*bundle.drugs.at(v), s.pair->hig.n_u, s.pair->hig.n_v)}};

  // top 10% subgraph entities by attention
  json nodes = json::array();
  if (!r.caspool_scores.empty()) {
    std::vector<std::size_t> order(r.caspool_scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return r.caspool_scores[a] > r.caspool_scores[b];
    });
    const auto keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(order.size()))));
    for (std::size_t rank = 0; rank < keep; ++rank) {
      const std::size_t local = order[rank];
      const Entity& e = bundle.kg.entities[s.sub.node_ids[local]];
      nodes.push_back({{"external_id", e.external_id},
                       {"class", entity_class_label(e.entity_class)},
                       {"attention", r.caspool_scores[local]}});
    }
  }
  out["subgraph_nodes"] = nodes;
  return out.dump(2);
}

}  // namespace ddinet
