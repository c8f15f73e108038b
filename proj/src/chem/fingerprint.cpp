#include "ddinet/chem/fingerprint.hpp"

#include <algorithm>
#include <set>

#include "ddinet/common.hpp"

namespace ddinet::chem {

namespace {

int bond_code(BondType t) {
  switch (t) {
    case BondType::single: return 1;
    case BondType::double_bond: return 2;
    case BondType::triple: return 3;
    case BondType::aromatic: return 4;
  }
  return 1;
}

std::uint64_t hash_ints(const std::vector<std::uint64_t>& vals) {
  std::uint64_t h = kFnvOffset;
  for (std::uint64_t v : vals) h = hash_mix(h, v);
  return h;
}

std::uint64_t initial_invariant(const Mol& m, std::size_t a) {
  const Atom& at = m.atoms[a];
  return hash_ints({static_cast<std::uint64_t>(at.atomic_number),
                    static_cast<std::uint64_t>(m.degree(a)),
                    static_cast<std::uint64_t>(m.total_h(a)),
                    static_cast<std::uint64_t>(static_cast<std::int64_t>(at.charge) + 16),
                    static_cast<std::uint64_t>(at.in_ring ? 1 : 0),
                    static_cast<std::uint64_t>(at.isotope)});
}

// Bonds within `radius` hops of `a`, as a sorted id list.
std::vector<std::size_t> environment_bonds(const Mol& m, std::size_t a, int radius) {
  std::vector<int> dist(m.num_atoms(), -1);
  std::vector<std::size_t> frontier{a};
  dist[a] = 0;
  std::set<std::size_t> bonds;
  for (int r = 0; r < radius; ++r) {
    std::vector<std::size_t> next;
    for (std::size_t x : frontier) {
      for (std::size_t bid : m.bonds_of[x]) {
        bonds.insert(bid);
        const std::size_t nb = m.other_end(bid, x);
        if (dist[nb] < 0) {
          dist[nb] = r + 1;
          next.push_back(nb);
        }
      }
    }
    frontier = std::move(next);
  }
  return {bonds.begin(), bonds.end()};
}

}  // namespace

std::vector<std::uint8_t> fingerprint_mol(const Mol& mol, std::size_t n_bits, int radius) {
  if (n_bits == 0) throw InputError("fingerprint length must be positive");
  std::vector<std::uint8_t> bits(n_bits, 0);
  const std::size_t n = mol.num_atoms();

  std::vector<std::uint64_t> id(n);
  for (std::size_t a = 0; a < n; ++a) {
    id[a] = initial_invariant(mol, a);
    bits[id[a] % n_bits] = 1;  // radius-0 environments always contribute
  }

  std::set<std::vector<std::size_t>> seen_envs;
  seen_envs.insert(std::vector<std::size_t>{});  // atoms that stop growing add nothing new

  for (int r = 1; r <= radius; ++r) {
    std::vector<std::uint64_t> next(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::pair<int, std::uint64_t>> nbrs;
      for (std::size_t bid : mol.bonds_of[a])
        nbrs.emplace_back(bond_code(mol.bonds[bid].type), id[mol.other_end(bid, a)]);
      std::sort(nbrs.begin(), nbrs.end());
      std::vector<std::uint64_t> vals{static_cast<std::uint64_t>(r), id[a]};
      for (const auto& [bc, nid] : nbrs) {
        vals.push_back(static_cast<std::uint64_t>(bc));
        vals.push_back(nid);
      }
      next[a] = hash_ints(vals);
    }
    for (std::size_t a = 0; a < n; ++a) {
      auto env = environment_bonds(mol, a, r);
      if (seen_envs.insert(std::move(env)).second) bits[next[a] % n_bits] = 1;
    }
    id = std::move(next);
  }
  return bits;
}

std::vector<std::uint8_t> fingerprint(const std::string& fragment_smiles, std::size_t n_bits,
                                      int radius) {
  return fingerprint_mol(parse_smiles(fragment_smiles), n_bits, radius);
}

std::size_t popcount(const std::vector<std::uint8_t>& bits) {
  std::size_t c = 0;
  for (auto b : bits) c += b ? 1 : 0;
  return c;
}

}  // namespace ddinet::chem
