#pragma once

#include <string>
#include <vector>

#include "ddinet/chem/elements.hpp"
#include "ddinet/chem/smiles.hpp"
#include "ddinet/mat.hpp"

namespace ddinet::chem {

inline constexpr std::size_t kBondFeatureWidth = 15;  // dir 7 + type 4 + length 2 + ring 2
inline constexpr std::size_t kAtomFeatureWidth = ElementTable::kEncodingWidth + kBondFeatureWidth;

/// Atomic molecular graph with featurised nodes and bonds. Atom rows are the
/// 92-dim elemental encoding followed by the element-wise sum of the features
/// of all incident bonds.
struct MolecularGraph {
  Mol mol;
  Mat atom_features;                                    // |V| x 107
  std::vector<std::pair<std::size_t, std::size_t>> bonds;  // undirected pairs
  Mat bond_features;                                    // |bonds| x 15
};

/// Bond feature row: directionality one-hot(7), type one-hot(4), estimated
/// length and squared length, in-ring one-hot(2).
std::vector<double> bond_feature_row(const Mol& mol, const Bond& b, const ElementTable& table);

MolecularGraph featurize(const Mol& mol, const ElementTable& table);

/// Parses SMILES and featurises; errors carry the offending SMILES.
MolecularGraph molecular_graph(const std::string& smiles, const ElementTable& table);

}  // namespace ddinet::chem
