#include "ddinet/kgstore.hpp"

#include <algorithm>
#include <set>

#include "ddinet/common.hpp"
#include "ddinet/tsv.hpp"

namespace ddinet {

namespace {

const std::pair<const char*, EntityClass> kClassLabels[] = {
    {"drug", EntityClass::drug},
    {"protein", EntityClass::protein},
    {"disease", EntityClass::disease},
    {"side_effect", EntityClass::side_effect},
    {"pathway", EntityClass::pathway},
    {"compound", EntityClass::compound},
    {"genetic_disorder", EntityClass::genetic_disorder},
    {"other", EntityClass::other},
};

}  // namespace

EntityClass entity_class_from_label(const std::string& label) {
  for (const auto& [name, c] : kClassLabels)
    if (label == name) return c;
  throw InputError("unknown entity class label: '" + label + "'");
}

const char* entity_class_label(EntityClass c) {
  return kClassLabels[static_cast<std::size_t>(c)].first;
}

std::size_t Registry::add_entity(const std::string& external_id) {
  auto it = entity_index.find(external_id);
  if (it != entity_index.end()) return it->second;
  const std::size_t idx = entities.size();
  entities.push_back(Entity{idx, external_id, EntityClass::other});
  entity_index.emplace(external_id, idx);
  return idx;
}

std::size_t Registry::add_relation(const std::string& label, Origin origin) {
  auto& idx_map = relation_index[static_cast<std::size_t>(origin)];
  auto& labels = relations[static_cast<std::size_t>(origin)];
  auto it = idx_map.find(label);
  if (it != idx_map.end()) return it->second;
  const std::size_t idx = labels.size();
  labels.push_back(label);
  idx_map.emplace(label, idx);
  return idx;
}

const Entity* Registry::find(const std::string& external_id) const {
  auto it = entity_index.find(external_id);
  return it == entity_index.end() ? nullptr : &entities[it->second];
}

std::vector<Triple> load_triples(const std::string& path, Origin origin, Registry& reg,
                                 bool skip_header, LoadStats* stats) {
  std::vector<Triple> out;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  LoadStats local;
  for_each_tsv_row(path, skip_header, [&](std::size_t line_no, const std::vector<std::string>& f) {
    if (f.size() != 3 || f[0].empty() || f[1].empty() || f[2].empty())
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected 3 tab-separated fields (head, relation, tail)");
    ++local.rows;
    const std::size_t h = reg.add_entity(f[0]);
    const std::size_t t = reg.add_entity(f[2]);
    const std::size_t r = reg.add_relation(f[1], origin);
    if (h == t) {
      ++local.self_loops;
      return;
    }
    if (!seen.emplace(h, r, t).second) {
      ++local.duplicates;
      return;
    }
    out.push_back(Triple{h, t, r, origin});
    // DDI endpoints are drugs by definition of the interaction graph.
    if (origin == Origin::ddi) {
      reg.entities[h].entity_class = EntityClass::drug;
      reg.entities[t].entity_class = EntityClass::drug;
    }
  });
  if (stats) *stats = local;
  return out;
}

void load_entity_classes(const std::string& path, Registry& reg, bool skip_header) {
  for_each_tsv_row(path, skip_header, [&](std::size_t line_no, const std::vector<std::string>& f) {
    if (f.size() != 2 || f[0].empty())
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected 2 tab-separated fields (external_id, class)");
    const std::size_t idx = reg.add_entity(f[0]);
    reg.entities[idx].entity_class = entity_class_from_label(f[1]);
  });
}

std::map<std::string, std::string> load_smiles_table(const std::string& path, bool skip_header) {
  std::map<std::string, std::string> out;
  for_each_tsv_row(path, skip_header, [&](std::size_t line_no, const std::vector<std::string>& f) {
    if (f.size() != 2 || f[0].empty() || f[1].empty())
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected 2 tab-separated fields (external_id, SMILES)");
    out[f[0]] = f[1];
  });
  return out;
}

BiomedicalKG build_tsbkg(const std::vector<Triple>& ddi, const std::vector<Triple>& ekg,
                         const Registry& reg) {
  BiomedicalKG kg;
  kg.entities = reg.entities;
  std::set<Triple> merged;
  for (const auto* list : {&ddi, &ekg}) {
    for (const Triple& t : *list) {
      if (t.head >= kg.entities.size() || t.tail >= kg.entities.size())
        throw InputError("triple references an entity outside the registry");
      merged.insert(t);
    }
  }
  kg.triples.assign(merged.begin(), merged.end());
  kg.adjacency.assign(kg.entities.size(), {});
  for (const Triple& t : kg.triples) {
    kg.adjacency[t.head].push_back(AdjEntry{t.tail, t.relation, t.origin});
    kg.adjacency[t.tail].push_back(AdjEntry{t.head, t.relation, t.origin});
  }
  return kg;
}

std::vector<DdiSample> ddi_samples_from_triples(const std::vector<Triple>& ddi) {
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  std::vector<DdiSample> out;
  for (const Triple& t : ddi) {
    const auto key = std::make_tuple(std::min(t.head, t.tail), std::max(t.head, t.tail),
                                     t.relation);
    if (seen.insert(key).second) out.push_back(DdiSample{t.head, t.tail, t.relation});
  }
  return out;
}

FoldMode fold_mode_from_label(const std::string& label) {
  if (label == "random") return FoldMode::random;
  if (label == "novel_existing") return FoldMode::novel_existing;
  if (label == "novel_novel") return FoldMode::novel_novel;
  throw InputError("unknown fold mode: '" + label + "'");
}

const char* fold_mode_label(FoldMode m) {
  switch (m) {
    case FoldMode::random: return "random";
    case FoldMode::novel_existing: return "novel_existing";
    case FoldMode::novel_novel: return "novel_novel";
  }
  return "?";
}

namespace {

// Stratified 10% carve-out for validation; keeps sample order stable.
void carve_validation(FoldSplit& fold, Rng& rng) {
  std::map<std::size_t, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < fold.train.size(); ++i) by_class[fold.train[i].r].push_back(i);
  std::vector<char> to_valid(fold.train.size(), 0);
  for (auto& [r, idx] : by_class) {
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t take = idx.size() / 10;
    for (std::size_t i = 0; i < take; ++i) to_valid[idx[i]] = 1;
  }
  std::vector<DdiSample> train, valid;
  for (std::size_t i = 0; i < fold.train.size(); ++i)
    (to_valid[i] ? valid : train).push_back(fold.train[i]);
  fold.train = std::move(train);
  fold.valid = std::move(valid);
}

std::vector<FoldSplit> make_random_folds(const std::vector<DdiSample>& samples, int n_folds,
                                         std::uint64_t seed, std::vector<std::string>* warnings) {
  Rng rng = make_rng(seed, "folds-random");
  std::map<std::size_t, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < samples.size(); ++i) by_class[samples[i].r].push_back(i);

  std::vector<std::vector<std::size_t>> fold_members(static_cast<std::size_t>(n_folds));
  std::vector<std::size_t> leftover;
  for (auto& [r, idx] : by_class) {
    std::shuffle(idx.begin(), idx.end(), rng);
    if (idx.size() < static_cast<std::size_t>(n_folds)) {
      if (warnings)
        warnings->push_back("relation " + std::to_string(r) + " has " +
                            std::to_string(idx.size()) +
                            " samples (< n_folds); assigned unstratified");
      leftover.insert(leftover.end(), idx.begin(), idx.end());
      continue;
    }
    for (std::size_t i = 0; i < idx.size(); ++i)
      fold_members[i % static_cast<std::size_t>(n_folds)].push_back(idx[i]);
  }
  std::shuffle(leftover.begin(), leftover.end(), rng);
  std::uniform_int_distribution<std::size_t> pick(0, static_cast<std::size_t>(n_folds) - 1);
  std::size_t cursor = pick(rng);
  for (std::size_t i : leftover) fold_members[(cursor++) % static_cast<std::size_t>(n_folds)].push_back(i);

  std::vector<FoldSplit> folds;
  for (int f = 0; f < n_folds; ++f) {
    FoldSplit fold;
    fold.mode = FoldMode::random;
    fold.fold_id = f;
    std::vector<char> in_test(samples.size(), 0);
    for (std::size_t i : fold_members[static_cast<std::size_t>(f)]) in_test[i] = 1;
    for (std::size_t i = 0; i < samples.size(); ++i)
      (in_test[i] ? fold.test : fold.train).push_back(samples[i]);
    carve_validation(fold, rng);
    folds.push_back(std::move(fold));
  }
  return folds;
}

std::vector<FoldSplit> make_novel_folds(const std::vector<DdiSample>& samples, int n_folds,
                                        FoldMode mode, std::uint64_t seed) {
  Rng rng = make_rng(seed, "folds-novel");
  std::set<std::size_t> drug_set;
  for (const DdiSample& s : samples) {
    drug_set.insert(s.u);
    drug_set.insert(s.v);
  }
  std::vector<std::size_t> drugs(drug_set.begin(), drug_set.end());
  if (drugs.size() < static_cast<std::size_t>(n_folds))
    throw InputError("not enough drugs to build novel-drug folds");
  std::shuffle(drugs.begin(), drugs.end(), rng);

  std::vector<int> group_of;  // drug index -> fold group
  std::size_t max_drug = *std::max_element(drugs.begin(), drugs.end());
  group_of.assign(max_drug + 1, -1);
  for (std::size_t i = 0; i < drugs.size(); ++i)
    group_of[drugs[i]] = static_cast<int>(i % static_cast<std::size_t>(n_folds));

  std::vector<FoldSplit> folds;
  for (int f = 0; f < n_folds; ++f) {
    FoldSplit fold;
    fold.mode = mode;
    fold.fold_id = f;
    for (const DdiSample& s : samples) {
      const int held = (group_of[s.u] == f ? 1 : 0) + (group_of[s.v] == f ? 1 : 0);
      if (held == 0) {
        fold.train.push_back(s);
      } else if (mode == FoldMode::novel_existing && held == 1) {
        fold.test.push_back(s);
      } else if (mode == FoldMode::novel_novel && held == 2) {
        fold.test.push_back(s);
      }
      // remaining pairs straddle the split and are excluded from this fold
    }
    carve_validation(fold, rng);
    folds.push_back(std::move(fold));
  }
  return folds;
}

}  // namespace

std::vector<FoldSplit> make_folds(const std::vector<DdiSample>& samples, int n_folds,
                                  FoldMode mode, std::uint64_t seed,
                                  std::vector<std::string>* warnings) {
  if (n_folds < 2) throw InputError("n_folds must be at least 2");
  if (samples.empty()) throw InputError("no samples to split");
  if (mode == FoldMode::random) return make_random_folds(samples, n_folds, seed, warnings);
  return make_novel_folds(samples, n_folds, mode, seed);
}

BiomedicalKG training_graph(const BiomedicalKG& kg, const std::vector<DdiSample>& held_out) {
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> removed;
  for (const DdiSample& s : held_out)
    removed.emplace(std::min(s.u, s.v), std::max(s.u, s.v), s.r);

  BiomedicalKG out;
  out.entities = kg.entities;
  for (const Triple& t : kg.triples) {
    if (t.origin == Origin::ddi &&
        removed.count({std::min(t.head, t.tail), std::max(t.head, t.tail), t.relation}))
      continue;
    out.triples.push_back(t);
  }
  out.adjacency.assign(out.entities.size(), {});
  for (const Triple& t : out.triples) {
    out.adjacency[t.head].push_back(AdjEntry{t.tail, t.relation, t.origin});
    out.adjacency[t.tail].push_back(AdjEntry{t.head, t.relation, t.origin});
  }
  return out;
}

}  // namespace ddinet
