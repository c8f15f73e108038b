#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace ddinet {

enum class EntityClass : std::uint8_t {
  drug,
  protein,
  disease,
  side_effect,
  pathway,
  compound,
  genetic_disorder,
  other,
};
inline constexpr std::size_t kNumEntityClasses = 8;

EntityClass entity_class_from_label(const std::string& label);
const char* entity_class_label(EntityClass c);

enum class Origin : std::uint8_t { ddi, ekg };

struct Entity {
  std::size_t index = 0;
  std::string external_id;
  EntityClass entity_class = EntityClass::other;
};

struct Triple {
  std::size_t head = 0;
  std::size_t tail = 0;
  std::size_t relation = 0;
  Origin origin = Origin::ekg;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Dense registries for entities and for the two relation vocabularies.
/// Indices are assigned first-come; external ids are unique.
struct Registry {
  std::vector<Entity> entities;
  std::unordered_map<std::string, std::size_t> entity_index;
  std::vector<std::string> relations[2];  // indexed by Origin
  std::unordered_map<std::string, std::size_t> relation_index[2];

  std::size_t add_entity(const std::string& external_id);
  std::size_t add_relation(const std::string& label, Origin origin);
  const Entity* find(const std::string& external_id) const;
  std::size_t num_entities() const { return entities.size(); }
  std::size_t num_relations(Origin o) const {
    return relations[static_cast<std::size_t>(o)].size();
  }
};

struct LoadStats {
  std::size_t rows = 0;
  std::size_t duplicates = 0;
  std::size_t self_loops = 0;
};

/// Reads a (head, relation, tail) TSV into triples. Identifiers are
/// registered on first sight. Malformed rows raise InputError with the line
/// number; self-loop rows are dropped and counted; exact duplicate triples
/// are dropped and counted.
std::vector<Triple> load_triples(const std::string& path, Origin origin, Registry& reg,
                                 bool skip_header = false, LoadStats* stats = nullptr);

/// Reads (external_id, class_label) and assigns classes to known or new
/// entities.
void load_entity_classes(const std::string& path, Registry& reg, bool skip_header = false);

/// Reads (drug external_id, SMILES); later rows win on duplicates.
std::map<std::string, std::string> load_smiles_table(const std::string& path,
                                                     bool skip_header = false);

struct AdjEntry {
  std::size_t nbr = 0;
  std::size_t relation = 0;
  Origin origin = Origin::ekg;
};

/// The merged knowledge graph: set union of the DDI and external-KG triples
/// with a symmetric adjacency for traversal. Immutable after construction.
struct BiomedicalKG {
  std::vector<Entity> entities;
  std::vector<Triple> triples;
  std::vector<std::vector<AdjEntry>> adjacency;

  std::size_t num_entities() const { return entities.size(); }
  std::size_t num_edges() const { return triples.size(); }
};

/// Merges the two triple lists (set union over exact triples) and builds the
/// symmetric adjacency. Throws InputError if a triple references an entity
/// outside the registry.
BiomedicalKG build_tsbkg(const std::vector<Triple>& ddi, const std::vector<Triple>& ekg,
                         const Registry& reg);

struct DdiSample {
  std::size_t u = 0;
  std::size_t v = 0;
  std::size_t r = 0;

  friend bool operator==(const DdiSample&, const DdiSample&) = default;
  friend auto operator<=>(const DdiSample&, const DdiSample&) = default;
};

/// DDI triples -> labelled samples, deduplicated per unordered pair-relation.
std::vector<DdiSample> ddi_samples_from_triples(const std::vector<Triple>& ddi);

enum class FoldMode : std::uint8_t { random, novel_existing, novel_novel };

FoldMode fold_mode_from_label(const std::string& label);
const char* fold_mode_label(FoldMode m);

struct FoldSplit {
  FoldMode mode = FoldMode::random;
  int fold_id = 0;
  std::vector<DdiSample> train;
  std::vector<DdiSample> valid;
  std::vector<DdiSample> test;
};

/// Cross-validation folds. Random mode stratifies by relation type where
/// class counts permit; novel modes partition the drug set and assign pairs
/// by how many of their endpoints are held out. Validation is a stratified
/// 10% carve-out of each fold's training pairs.
std::vector<FoldSplit> make_folds(const std::vector<DdiSample>& samples, int n_folds,
                                  FoldMode mode, std::uint64_t seed,
                                  std::vector<std::string>* warnings = nullptr);

/// Copy of `kg` with the DDI edges of the held-out samples removed (matched
/// per unordered pair + relation); external-KG edges are untouched.
BiomedicalKG training_graph(const BiomedicalKG& kg, const std::vector<DdiSample>& held_out);

}  // namespace ddinet
