#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace ddinet::chem {

struct ElementInfo {
  std::string symbol;
  int z = 0;
  int group = 0;
  int period = 0;
  double electronegativity = 0;
  double covalent_radius_pm = 0;
  int valence_electrons = 0;
  double first_ionization_ev = 0;
  double electron_affinity_ev = 0;
  char block = 's';
  double atomic_volume_cm3 = 0;
};

/// Per-element property table loaded from a bundled TSV, plus the binned
/// one-hot elemental encoding (92 dims: group 18, period 9,
/// electronegativity 10, covalent radius 10, valence electrons 12, first
/// ionization 10, electron affinity 10, block 4, atomic volume 9).
class ElementTable {
 public:
  static ElementTable load(const std::string& path);
  /// Table bundled with the library (data/element_properties.tsv); the
  /// search path can be overridden with the DDINET_DATA environment variable.
  static const ElementTable& bundled();

  bool has(int z) const { return by_z_.count(z) > 0; }
  const ElementInfo& info(int z) const;
  const ElementInfo* by_symbol(const std::string& symbol) const;

  static constexpr std::size_t kEncodingWidth = 92;
  /// Binned one-hot encoding; exactly one active bit per property block.
  std::vector<double> encode(int z) const;

  /// Bond length estimate in angstroms from covalent radii; `order_factor`
  /// shortens multiple/aromatic bonds.
  double bond_length(int z1, int z2, double order_factor) const;

 private:
  std::unordered_map<int, ElementInfo> by_z_;
  std::unordered_map<std::string, int> z_by_symbol_;
};

}  // namespace ddinet::chem
