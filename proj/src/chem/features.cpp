#include "ddinet/chem/features.hpp"

#include "ddinet/common.hpp"

namespace ddinet::chem {

namespace {

// Empirical shortening of the covalent-radius sum by bond order.
double order_factor(BondType t) {
  switch (t) {
    case BondType::single: return 1.0;
    case BondType::aromatic: return 0.91;
    case BondType::double_bond: return 0.87;
    case BondType::triple: return 0.78;
  }
  return 1.0;
}

}  // namespace

std::vector<double> bond_feature_row(const Mol& mol, const Bond& b, const ElementTable& table) {
  std::vector<double> f(kBondFeatureWidth, 0.0);
  f[static_cast<std::size_t>(b.dir)] = 1.0;                // 7-way direction
  f[7 + static_cast<std::size_t>(b.type)] = 1.0;           // 4-way type
  const double len = table.bond_length(mol.atoms[b.a].atomic_number,
                                       mol.atoms[b.b].atomic_number, order_factor(b.type));
  f[11] = len;
  f[12] = len * len;
  f[13 + (b.in_ring ? 1 : 0)] = 1.0;                       // in-ring one-hot
  return f;
}

MolecularGraph featurize(const Mol& mol, const ElementTable& table) {
  MolecularGraph g;
  g.mol = mol;
  g.atom_features = Mat(mol.num_atoms(), kAtomFeatureWidth);
  g.bond_features = Mat(mol.bonds.size(), kBondFeatureWidth);

  for (std::size_t b = 0; b < mol.bonds.size(); ++b) {
    g.bonds.emplace_back(mol.bonds[b].a, mol.bonds[b].b);
    const auto row = bond_feature_row(mol, mol.bonds[b], table);
    for (std::size_t j = 0; j < kBondFeatureWidth; ++j) g.bond_features.at(b, j) = row[j];
  }

  for (std::size_t a = 0; a < mol.num_atoms(); ++a) {
    const int z = mol.atoms[a].atomic_number;
    if (z == 0)
      throw InputError("cannot featurise a wildcard atom in a molecular graph");
    const auto elem = table.encode(z);
    for (std::size_t j = 0; j < elem.size(); ++j) g.atom_features.at(a, j) = elem[j];
    // Sum of incident bond features keeps degree information.
    for (std::size_t bid : mol.bonds_of[a])
      for (std::size_t j = 0; j < kBondFeatureWidth; ++j)
        g.atom_features.at(a, elem.size() + j) += g.bond_features.at(bid, j);
  }
  return g;
}

MolecularGraph molecular_graph(const std::string& smiles, const ElementTable& table) {
  return featurize(parse_smiles(smiles), table);
}

}  // namespace ddinet::chem
