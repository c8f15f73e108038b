#include "ddinet/datasynth.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include "ddinet/chem/smiles.hpp"
#include "ddinet/common.hpp"
#include "ddinet/tsv.hpp"

namespace ddinet {

namespace {

std::string data_dir() {
  if (const char* env = std::getenv("DDINET_DATA")) return env;
#ifdef DDINET_DATA_DIR
  return DDINET_DATA_DIR;
#else
  return "data";
#endif
}

bool has_halogen(const chem::Mol& m) {
  for (const auto& a : m.atoms) {
    const int z = a.atomic_number;
    if (z == 9 || z == 17 || z == 35 || z == 53) return true;
  }
  return false;
}

}  // namespace

std::size_t synthesize_dataset(const std::string& dir, const SynthSpec& spec) {
  std::filesystem::create_directories(dir);
  Rng rng = make_rng(spec.seed, "datasynth");

  // catalog drugs, deterministically shuffled, parseable only
  std::vector<std::pair<std::string, std::string>> catalog;
  for_each_tsv_row(data_dir() + "/drug_smiles.tsv", true,
                   [&](std::size_t, const std::vector<std::string>& f) {
                     catalog.emplace_back(f[0], f[1]);
                   });
  std::shuffle(catalog.begin(), catalog.end(), rng);

  struct Drug {
    std::string id;
    std::string smiles;
    std::size_t group;
    bool mol_bit;
  };
  std::vector<Drug> drugs;
  for (const auto& [name, smiles] : catalog) {
    if (drugs.size() >= spec.n_drugs) break;
    chem::Mol mol;
    try {
      mol = chem::parse_smiles(smiles);
    } catch (const InputError&) {
      continue;
    }
    Drug d;
    d.id = name;
    d.smiles = smiles;
    std::uniform_int_distribution<std::size_t> g(0, spec.groups - 1);
    d.group = g(rng);
    d.mol_bit = has_halogen(mol);
    drugs.push_back(std::move(d));
  }
  if (drugs.size() < spec.n_drugs)
    throw InputError("catalog provides only " + std::to_string(drugs.size()) + " usable drugs");

  std::vector<std::vector<std::string>> entities_rows, ekg_rows, ddi_rows, smiles_rows;
  entities_rows.push_back({"external_id", "class"});
  ekg_rows.push_back({"head", "relation", "tail"});
  ddi_rows.push_back({"head", "relation", "tail"});
  smiles_rows.push_back({"external_id", "smiles"});

  for (const auto& d : drugs) {
    entities_rows.push_back({d.id, "drug"});
    smiles_rows.push_back({d.id, d.smiles});
  }

  // proteins in mechanism clusters
  std::vector<std::vector<std::string>> protein_of_group(spec.groups);
  for (std::size_t g = 0; g < spec.groups; ++g) {
    for (std::size_t i = 0; i < spec.proteins_per_group; ++i) {
      const std::string id = "P" + std::to_string(g) + "_" + std::to_string(i);
      protein_of_group[g].push_back(id);
      entities_rows.push_back({id, "protein"});
    }
  }
  std::vector<std::string> pathways, diseases, side_effects, compounds;
  for (std::size_t i = 0; i < spec.pathways; ++i) {
    pathways.push_back("PW" + std::to_string(i));
    entities_rows.push_back({pathways.back(), "pathway"});
  }
  for (std::size_t i = 0; i < spec.diseases; ++i) {
    diseases.push_back("DIS" + std::to_string(i));
    entities_rows.push_back({diseases.back(), "disease"});
  }
  for (std::size_t i = 0; i < spec.side_effects; ++i) {
    side_effects.push_back("SE" + std::to_string(i));
    entities_rows.push_back({side_effects.back(), "side_effect"});
  }
  for (std::size_t i = 0; i < spec.compounds; ++i) {
    compounds.push_back("CMP" + std::to_string(i));
    entities_rows.push_back({compounds.back(), "compound"});
  }

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto pick = [&](const std::vector<std::string>& pool) {
    std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
    return pool[d(rng)];
  };

  // drug -> proteins of its own cluster (with a little cross-cluster noise)
  std::set<std::vector<std::string>> seen_edges;
  auto add_ekg = [&](const std::string& h, const std::string& r, const std::string& t) {
    std::vector<std::string> row{h, r, t};
    if (seen_edges.insert(row).second) ekg_rows.push_back(std::move(row));
  };
  for (const auto& d : drugs) {
    std::uniform_int_distribution<int> n_targets(2, 3);
    const int k = n_targets(rng);
    for (int i = 0; i < k; ++i) {
      std::size_t g = d.group;
      if (coin(rng) < 0.1) {
        std::uniform_int_distribution<std::size_t> other(0, spec.groups - 1);
        g = other(rng);
      }
      add_ekg(d.id, "targets", pick(protein_of_group[g]));
    }
    // low-signal attachments
    add_ekg(d.id, "causes_side_effect", pick(side_effects));
  }
  // hub distractors reach a large share of the drugs
  for (std::size_t h = 0; h < spec.hub_side_effects && h < side_effects.size(); ++h) {
    for (const auto& d : drugs)
      if (coin(rng) < spec.hub_coverage) add_ekg(d.id, "causes_side_effect", side_effects[h]);
  }
  // protein context: pathways per cluster, diseases, compounds
  for (std::size_t g = 0; g < spec.groups; ++g) {
    for (const auto& p : protein_of_group[g]) {
      add_ekg(p, "in_pathway", pathways[g % pathways.size()]);
      if (coin(rng) < 0.5) add_ekg(p, "linked_disease", pick(diseases));
      if (coin(rng) < 0.2) add_ekg(pick(compounds), "binds", p);
    }
  }

  // labels: unordered group combo x molecular XOR bit (+ noise)
  std::vector<std::pair<std::size_t, std::size_t>> combo_index(spec.groups * spec.groups);
  std::size_t n_combos = 0;
  std::vector<std::vector<std::size_t>> combo(spec.groups, std::vector<std::size_t>(spec.groups));
  for (std::size_t a = 0; a < spec.groups; ++a)
    for (std::size_t b = a; b < spec.groups; ++b) {
      combo[a][b] = combo[b][a] = n_combos;
      ++n_combos;
    }
  const std::size_t n_classes = spec.tiny ? 4 : n_combos * 2;

  std::vector<std::pair<std::size_t, std::size_t>> all_pairs;
  for (std::size_t i = 0; i < drugs.size(); ++i)
    for (std::size_t j = i + 1; j < drugs.size(); ++j) all_pairs.emplace_back(i, j);
  std::shuffle(all_pairs.begin(), all_pairs.end(), rng);
  const std::size_t n_pairs = std::min(spec.n_pairs, all_pairs.size());

  std::uniform_int_distribution<std::size_t> any_class(0, n_classes - 1);
  for (std::size_t p = 0; p < n_pairs; ++p) {
    const auto& [i, j] = all_pairs[p];
    std::size_t label;
    if (spec.tiny) {
      label = (drugs[i].group % 2 == drugs[j].group % 2 ? 0 : 1) * 2 +
              ((drugs[i].mol_bit != drugs[j].mol_bit) ? 1 : 0);
    } else {
      label = combo[drugs[i].group][drugs[j].group] * 2 +
              ((drugs[i].mol_bit != drugs[j].mol_bit) ? 1 : 0);
    }
    if (coin(rng) < spec.label_noise) label = any_class(rng);
    ddi_rows.push_back({drugs[i].id, "ddi_rel_" + std::to_string(label), drugs[j].id});
  }

  write_tsv((std::filesystem::path(dir) / "ddi.tsv").string(), ddi_rows);
  write_tsv((std::filesystem::path(dir) / "ekg.tsv").string(), ekg_rows);
  write_tsv((std::filesystem::path(dir) / "entities.tsv").string(), entities_rows);
  write_tsv((std::filesystem::path(dir) / "smiles.tsv").string(), smiles_rows);
  return n_classes;
}

}  // namespace ddinet
