#include "ddinet/chem/brics.hpp"

#include <algorithm>
#include <map>

namespace ddinet::chem {

// Link environments L1..L16 of the retrosynthetic rule set (Degen et al.),
// following the widely used adaptation in which the original amine
// environment L2 is folded into L5. Uppercase element tests below mean
// aliphatic, lowercase aromatic, as in the source patterns.

namespace {

bool z_in(const Mol& m, std::size_t a, std::initializer_list<int> zs) {
  const int z = m.atoms[a].atomic_number;
  for (int x : zs)
    if (z == x) return true;
  return false;
}

bool aliph(const Mol& m, std::size_t a, int z) {
  return m.atoms[a].atomic_number == z && !m.atoms[a].aromatic;
}

bool has_double_bond(const Mol& m, std::size_t a) {
  for (std::size_t bid : m.bonds_of[a])
    if (m.bonds[bid].type == BondType::double_bond) return true;
  return false;
}

bool all_bonds_single(const Mol& m, std::size_t a) {
  for (std::size_t bid : m.bonds_of[a])
    if (m.bonds[bid].type != BondType::single) return false;
  return true;
}

// Atom has a single acyclic bond to a neighbour whose element is in `zs`.
bool single_acyclic_to(const Mol& m, std::size_t a, std::initializer_list<int> zs) {
  for (std::size_t bid : m.bonds_of[a]) {
    const Bond& b = m.bonds[bid];
    if (b.type == BondType::single && !b.in_ring && z_in(m, m.other_end(bid, a), zs)) return true;
  }
  return false;
}

// --- environments -----------------------------------------------------------

bool env1(const Mol& m, std::size_t a) {  // [C;D3]([#0,#6,#7,#8])(=O)
  if (!aliph(m, a, 6) || m.degree(a) != 3 || !m.has_double_bond_to(a, 8)) return false;
  for (std::size_t bid : m.bonds_of[a]) {
    const std::size_t nb = m.other_end(bid, a);
    if (m.bonds[bid].type == BondType::double_bond && m.atoms[nb].atomic_number == 8) continue;
    if (z_in(m, nb, {0, 6, 7, 8})) return true;
  }
  return false;
}

bool env3(const Mol& m, std::size_t a) {  // [O;D2]-;!@[#0,#6]
  return aliph(m, a, 8) && m.degree(a) == 2 && single_acyclic_to(m, a, {0, 6});
}

bool env4(const Mol& m, std::size_t a) {  // [C;!D1;!$(C=*)]-;!@[#6]
  return aliph(m, a, 6) && m.degree(a) >= 2 && !has_double_bond(m, a) &&
         single_acyclic_to(m, a, {6});
}

bool env5(const Mol& m, std::size_t a) {
  // [N;!D1;!$(N=*);!$(N-[!#6;!#16;!#0;!#1]);!$([N;R]@[C;R]=O)]
  if (!aliph(m, a, 7) || m.degree(a) < 2 || has_double_bond(m, a)) return false;
  for (std::size_t bid : m.bonds_of[a]) {
    if (m.bonds[bid].type != BondType::single) continue;
    if (!z_in(m, m.other_end(bid, a), {0, 6, 16})) return false;
  }
  if (m.atoms[a].in_ring) {
    for (std::size_t bid : m.bonds_of[a]) {
      if (!m.bonds[bid].in_ring) continue;
      const std::size_t c = m.other_end(bid, a);
      if (m.atoms[c].atomic_number == 6 && m.atoms[c].in_ring && m.has_double_bond_to(c, 8))
        return false;  // lactam nitrogens belong to L10
    }
  }
  return true;
}

bool env6(const Mol& m, std::size_t a) {  // [C;D3;!R](=O)-;!@[#0,#6,#7,#8]
  return aliph(m, a, 6) && m.degree(a) == 3 && !m.atoms[a].in_ring &&
         m.has_double_bond_to(a, 8) && single_acyclic_to(m, a, {0, 6, 7, 8});
}

bool env7(const Mol& m, std::size_t a) {  // [C;D2,D3]-[#6]
  if (!aliph(m, a, 6)) return false;
  const std::size_t d = m.degree(a);
  if (d != 2 && d != 3) return false;
  for (std::size_t bid : m.bonds_of[a])
    if (m.bonds[bid].type == BondType::single && z_in(m, m.other_end(bid, a), {6})) return true;
  return false;
}

bool env8(const Mol& m, std::size_t a) {  // [C;!R;!D1;!$(C!-*)]
  return aliph(m, a, 6) && !m.atoms[a].in_ring && m.degree(a) >= 2 && all_bonds_single(m, a);
}

bool env9(const Mol& m, std::size_t a) {  // [n;+0;$(n(:[c,n,o,s]):[c,n,o,s])]
  if (m.atoms[a].atomic_number != 7 || !m.atoms[a].aromatic || m.atoms[a].charge != 0)
    return false;
  int arom_nbrs = 0;
  for (std::size_t bid : m.bonds_of[a]) {
    const std::size_t nb = m.other_end(bid, a);
    if (m.bonds[bid].type == BondType::aromatic && m.atoms[nb].aromatic &&
        z_in(m, nb, {6, 7, 8, 16}))
      ++arom_nbrs;
  }
  return arom_nbrs >= 2;
}

bool env10(const Mol& m, std::size_t a) {  // [N;R;$(N(@C(=O))@[C,N,O,S])]
  if (!aliph(m, a, 7) || !m.atoms[a].in_ring) return false;
  bool carbonyl = false, partner = false;
  for (std::size_t bid : m.bonds_of[a]) {
    if (!m.bonds[bid].in_ring) continue;
    const std::size_t nb = m.other_end(bid, a);
    if (m.atoms[nb].atomic_number == 6 && !m.atoms[nb].aromatic && m.has_double_bond_to(nb, 8) &&
        !carbonyl) {
      carbonyl = true;
      continue;
    }
    if (!m.atoms[nb].aromatic && z_in(m, nb, {6, 7, 8, 16})) partner = true;
  }
  return carbonyl && partner;
}

bool env11(const Mol& m, std::size_t a) {  // [S;D2](-;!@[#0,#6])
  return aliph(m, a, 16) && m.degree(a) == 2 && single_acyclic_to(m, a, {0, 6});
}

bool env12(const Mol& m, std::size_t a) {  // [S;D4]([#6,#0])(=O)(=O)
  if (m.atoms[a].atomic_number != 16 || m.degree(a) != 4) return false;
  int double_o = 0;
  bool c_nbr = false;
  for (std::size_t bid : m.bonds_of[a]) {
    const std::size_t nb = m.other_end(bid, a);
    if (m.bonds[bid].type == BondType::double_bond && m.atoms[nb].atomic_number == 8) ++double_o;
    if (z_in(m, nb, {0, 6})) c_nbr = true;
  }
  return double_o >= 2 && c_nbr;
}

bool env13(const Mol& m, std::size_t a) {  // [C;$(C(-;@[C,N,O,S])-;@[N,O,S])]
  if (!aliph(m, a, 6)) return false;
  // needs two distinct ring single bonds: one to aliphatic C/N/O/S, one to aliphatic N/O/S
  for (std::size_t b1 : m.bonds_of[a]) {
    const Bond& x = m.bonds[b1];
    if (x.type != BondType::single || !x.in_ring) continue;
    const std::size_t n1 = m.other_end(b1, a);
    if (m.atoms[n1].aromatic || !z_in(m, n1, {6, 7, 8, 16})) continue;
    for (std::size_t b2 : m.bonds_of[a]) {
      if (b2 == b1) continue;
      const Bond& y = m.bonds[b2];
      if (y.type != BondType::single || !y.in_ring) continue;
      const std::size_t n2 = m.other_end(b2, a);
      if (!m.atoms[n2].aromatic && z_in(m, n2, {7, 8, 16})) return true;
    }
  }
  return false;
}

bool env14(const Mol& m, std::size_t a) {  // [c;$(c(:[c,n,o,s]):[n,o,s])]
  if (m.atoms[a].atomic_number != 6 || !m.atoms[a].aromatic) return false;
  int any = 0, hetero = 0;
  for (std::size_t bid : m.bonds_of[a]) {
    const std::size_t nb = m.other_end(bid, a);
    if (m.bonds[bid].type != BondType::aromatic || !m.atoms[nb].aromatic) continue;
    if (z_in(m, nb, {6, 7, 8, 16})) ++any;
    if (z_in(m, nb, {7, 8, 16})) ++hetero;
  }
  return hetero >= 1 && any >= 2;
}

bool env15(const Mol& m, std::size_t a) {  // [C;$(C(-;@C)-;@C)]
  if (!aliph(m, a, 6)) return false;
  int ring_c = 0;
  for (std::size_t bid : m.bonds_of[a]) {
    const Bond& b = m.bonds[bid];
    if (b.type == BondType::single && b.in_ring && aliph(m, m.other_end(bid, a), 6)) ++ring_c;
  }
  return ring_c >= 2;
}

bool env16(const Mol& m, std::size_t a) {  // [c;$(c(:c):c)]
  if (m.atoms[a].atomic_number != 6 || !m.atoms[a].aromatic) return false;
  int arom_c = 0;
  for (std::size_t bid : m.bonds_of[a]) {
    const std::size_t nb = m.other_end(bid, a);
    if (m.bonds[bid].type == BondType::aromatic && m.atoms[nb].aromatic &&
        m.atoms[nb].atomic_number == 6)
      ++arom_c;
  }
  return arom_c >= 2;
}

bool env(const Mol& m, std::size_t a, int label) {
  switch (label) {
    case 1: return env1(m, a);
    case 3: return env3(m, a);
    case 4: return env4(m, a);
    case 5: return env5(m, a);
    case 6: return env6(m, a);
    case 7: return env7(m, a);
    case 8: return env8(m, a);
    case 9: return env9(m, a);
    case 10: return env10(m, a);
    case 11: return env11(m, a);
    case 12: return env12(m, a);
    case 13: return env13(m, a);
    case 14: return env14(m, a);
    case 15: return env15(m, a);
    case 16: return env16(m, a);
    default: return false;
  }
}

struct Rule {
  int li;
  int lj;
  BondType bond;
};

// Link matrix; the (7,7) alkene rule is the only double-bond cleavage.
const Rule kRules[] = {
    {1, 3, BondType::single},   {1, 5, BondType::single},   {1, 10, BondType::single},
    {3, 4, BondType::single},   {3, 13, BondType::single},  {3, 14, BondType::single},
    {3, 15, BondType::single},  {3, 16, BondType::single},  {4, 5, BondType::single},
    {4, 11, BondType::single},  {5, 12, BondType::single},  {5, 14, BondType::single},
    {5, 16, BondType::single},  {5, 13, BondType::single},  {5, 15, BondType::single},
    {6, 13, BondType::single},  {6, 14, BondType::single},  {6, 15, BondType::single},
    {6, 16, BondType::single},  {7, 7, BondType::double_bond},
    {8, 9, BondType::single},   {8, 10, BondType::single},  {8, 13, BondType::single},
    {8, 14, BondType::single},  {8, 15, BondType::single},  {8, 16, BondType::single},
    {9, 13, BondType::single},  {9, 14, BondType::single},  {9, 15, BondType::single},
    {9, 16, BondType::single},  {10, 13, BondType::single}, {10, 14, BondType::single},
    {10, 15, BondType::single}, {10, 16, BondType::single}, {11, 13, BondType::single},
    {11, 14, BondType::single}, {11, 15, BondType::single}, {11, 16, BondType::single},
    {12, 14, BondType::single}, {12, 15, BondType::single}, {12, 16, BondType::single},
    {13, 14, BondType::single}, {13, 15, BondType::single}, {13, 16, BondType::single},
    {14, 14, BondType::single}, {14, 15, BondType::single}, {14, 16, BondType::single},
    {15, 16, BondType::single}, {16, 16, BondType::single},
};

}  // namespace

std::vector<BricsCut> find_brics_bonds(const Mol& mol) {
  std::vector<BricsCut> cuts;
  for (std::size_t bid = 0; bid < mol.bonds.size(); ++bid) {
    const Bond& b = mol.bonds[bid];
    if (b.in_ring) continue;
    for (const Rule& r : kRules) {
      if (b.type != r.bond) continue;
      if (env(mol, b.a, r.li) && env(mol, b.b, r.lj)) {
        cuts.push_back(BricsCut{bid, r.li, r.lj});
        break;
      }
      if (env(mol, b.b, r.li) && env(mol, b.a, r.lj)) {
        cuts.push_back(BricsCut{bid, r.lj, r.li});
        break;
      }
    }
  }
  return cuts;
}

SubstructureGraph brics_decompose(const Mol& mol) {
  const auto cuts = find_brics_bonds(mol);
  std::vector<char> cut_bond(mol.bonds.size(), 0);
  for (const auto& c : cuts) cut_bond[c.bond] = 1;

  // Connected components over the uncut bonds, labelled in first-atom order.
  std::vector<long> comp(mol.num_atoms(), -1);
  std::size_t n_comp = 0;
  for (std::size_t root = 0; root < mol.num_atoms(); ++root) {
    if (comp[root] >= 0) continue;
    const long c = static_cast<long>(n_comp++);
    std::vector<std::size_t> stack{root};
    comp[root] = c;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t bid : mol.bonds_of[a]) {
        if (cut_bond[bid]) continue;
        const std::size_t nb = mol.other_end(bid, a);
        if (comp[nb] < 0) {
          comp[nb] = c;
          stack.push_back(nb);
        }
      }
    }
  }

  SubstructureGraph g;
  g.fragments.resize(n_comp);
  for (std::size_t a = 0; a < mol.num_atoms(); ++a)
    g.fragments[static_cast<std::size_t>(comp[a])].atoms.push_back(a);

  // Attachment wildcards carry the environment label of their own side.
  std::vector<std::vector<std::pair<std::size_t, int>>> attach(n_comp);
  for (const auto& c : cuts) {
    const Bond& b = mol.bonds[c.bond];
    attach[static_cast<std::size_t>(comp[b.a])].emplace_back(b.a, c.label_a);
    attach[static_cast<std::size_t>(comp[b.b])].emplace_back(b.b, c.label_b);
    g.edges.emplace_back(static_cast<std::size_t>(comp[b.a]), static_cast<std::size_t>(comp[b.b]));
  }
  for (std::size_t f = 0; f < n_comp; ++f)
    g.fragments[f].smiles = subgraph_smiles(mol, g.fragments[f].atoms, attach[f]);
  return g;
}

}  // namespace ddinet::chem
