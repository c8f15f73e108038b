#pragma once

#include <cstdint>
#include <string>

namespace ddinet {

/// Knobs for the bundled desk-scale benchmark generator. Drugs come from the
/// packaged SMILES catalog; the interaction label of a pair is driven partly
/// by a planted protein-cluster structure in the external KG and partly by a
/// molecular property of the pair, plus label noise. Entities, triples and
/// SMILES are emitted as the four standard input files.
struct SynthSpec {
  std::uint64_t seed = 17;
  std::size_t n_drugs = 110;
  std::size_t n_pairs = 2200;
  std::size_t groups = 4;           // protein-cluster mechanism groups
  std::size_t proteins_per_group = 10;
  std::size_t pathways = 6;
  std::size_t diseases = 16;
  std::size_t side_effects = 10;
  std::size_t compounds = 6;
  std::size_t hub_side_effects = 2;  // high-degree distractors
  double hub_coverage = 0.4;         // fraction of drugs attached to each hub
  double label_noise = 0.04;
  bool tiny = false;  // 4-class variant for the overfit smoke test
};

/// Writes ddi.tsv, ekg.tsv, entities.tsv, smiles.tsv into `dir`.
/// Returns the number of relation types written.
std::size_t synthesize_dataset(const std::string& dir, const SynthSpec& spec);

}  // namespace ddinet
