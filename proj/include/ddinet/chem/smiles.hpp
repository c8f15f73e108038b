#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ddinet::chem {

enum class BondType : std::uint8_t { single, double_bond, triple, aromatic };

/// Bond wedge/slash annotations; mirrors the usual 7-way direction encoding.
enum class BondDir : std::uint8_t {
  none,
  begin_wedge,
  begin_dash,
  end_upright,    // '/'
  end_downright,  // '\'
  either_double,
  unknown,
};

struct Atom {
  int atomic_number = 0;  // 0 encodes the '*' wildcard / attachment point
  bool aromatic = false;
  int charge = 0;
  int isotope = 0;          // 0 = unspecified; BRICS link labels live here
  int bracket_h = -1;       // explicit H count from brackets, -1 if absent
  int implicit_h = 0;       // filled in by finalize()
  bool in_ring = false;     // filled in by finalize()
};

struct Bond {
  std::size_t a = 0;
  std::size_t b = 0;
  BondType type = BondType::single;
  BondDir dir = BondDir::none;
  bool in_ring = false;  // filled in by finalize()
};

/// Heavy-atom molecular graph. Hydrogens are implicit.
struct Mol {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::vector<std::vector<std::size_t>> bonds_of;  // atom -> incident bond ids

  std::size_t num_atoms() const { return atoms.size(); }
  std::size_t degree(std::size_t a) const { return bonds_of[a].size(); }
  std::size_t other_end(std::size_t bond_id, std::size_t a) const {
    const Bond& b = bonds[bond_id];
    return b.a == a ? b.b : b.a;
  }
  const Bond* bond_between(std::size_t a, std::size_t b) const;
  int total_h(std::size_t a) const {
    return atoms[a].bracket_h >= 0 ? atoms[a].bracket_h : atoms[a].implicit_h;
  }
  /// True if the atom has a double bond to an oxygen (carbonyl-type probe).
  bool has_double_bond_to(std::size_t a, int z) const;

  /// Ring perception (an edge is in a ring iff it is not a bridge) and
  /// implicit hydrogen assignment. Called by the parser; call again after
  /// structural edits.
  void finalize();
};

/// Parses a SMILES string. Supports the organic subset, aromatic lowercase
/// forms, brackets with isotope/charge/H-count/chirality, ring closures
/// (including %nn), branches, directional bonds and dot-separated components.
/// Throws InputError with the offending SMILES on malformed input.
Mol parse_smiles(const std::string& smiles);

/// Writes a SMILES string for the molecule. Deterministic for a fixed atom
/// order (DFS from atom 0, neighbours in index order); output round-trips
/// through parse_smiles.
std::string write_smiles(const Mol& mol);

/// SMILES of the induced subgraph on `atoms`, with a labelled wildcard
/// appended for every bond that leaves the subset ('cleavage marker').
/// `link_labels[i]` is the isotope label for the i-th leaving bond in
/// discovery order; pass empty labels for plain wildcards.
std::string subgraph_smiles(const Mol& mol, const std::vector<std::size_t>& atoms,
                            const std::vector<std::pair<std::size_t, int>>& attach_labels);

const char* element_symbol(int z);
std::optional<int> element_number(const std::string& symbol);
bool organic_subset(int z);

}  // namespace ddinet::chem
