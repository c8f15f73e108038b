#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddinet/kgstore.hpp"

namespace ddinet {

/// All run settings. Serialises to canonical key=value text; the FNV hash of
/// that text keys checkpoints, caches and run directories.
struct TrainConfig {
  // enclosing subgraph
  int k = 2;
  std::size_t node_cap = 200;

  // encoder widths and depths (one shared hidden width)
  std::size_t hidden = 64;
  int sage_layers = 2;  // tsBKG encoder depth
  int gt_layers = 2;    // graph transformer depth
  int hig_layers = 2;   // substructure interaction depth
  int mol_layers = 2;   // molecular GCN depth
  int heads = 2;
  bool gt_self_loops = true;
  double leaky_slope = 0.2;

  // fragment fingerprints
  std::size_t fp_bits = 1024;
  int fp_radius = 2;

  // objective
  double beta = 2.0;
  double gamma_ratio = 0.1;  // gamma is set so gamma*L_MI = ratio*L_P on the first batch

  // optimisation
  int epochs = 200;
  std::size_t batch_size = 32;
  double learning_rate = 1e-3;
  int patience = 20;
  std::uint64_t seed = 7;

  // evaluation protocol
  int n_folds = 5;
  FoldMode fold_mode = FoldMode::random;

  // ablations
  bool no_tsbkg = false;
  bool no_hig = false;
  bool mean_pool = false;
  bool no_infomin = false;

  // parallelism (0 = library default); results are deterministic for a
  // fixed thread count
  int threads = 0;

  /// Width of the learned entity embedding; chosen so the subgraph node
  /// feature [x || p || c] is exactly `hidden` wide and all residual blocks
  /// share one width.
  std::size_t entity_embed_width() const;

  std::string serialize() const;
  std::uint64_t hash() const;

  static TrainConfig from_file(const std::string& path);
  static TrainConfig from_text(const std::string& text);
  /// key=value override (CLI flags win over file values).
  void apply_override(const std::string& key, const std::string& value);
  void validate() const;
};

}  // namespace ddinet
