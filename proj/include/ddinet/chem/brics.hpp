#pragma once

#include <string>
#include <vector>

#include "ddinet/chem/smiles.hpp"

namespace ddinet::chem {

/// A retrosynthetic cut: the bond index plus the link-environment labels of
/// its two endpoints (a-side first).
struct BricsCut {
  std::size_t bond = 0;
  int label_a = 0;
  int label_b = 0;
};

/// All acyclic bonds matched by the cleavage rule set, in bond-index order.
/// Each bond is reported once with the labels of the first matching rule.
std::vector<BricsCut> find_brics_bonds(const Mol& mol);

struct SubstructureFragment {
  std::string smiles;                  // attachment points kept as labelled wildcards
  std::vector<std::size_t> atoms;      // heavy-atom indices into the parent molecule
};

/// Fragment-level graph: nodes are the connected components left after
/// cutting every matched bond, edges restore the cut bonds.
struct SubstructureGraph {
  std::vector<SubstructureFragment> fragments;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t num_fragments() const { return fragments.size(); }
};

SubstructureGraph brics_decompose(const Mol& mol);

}  // namespace ddinet::chem
