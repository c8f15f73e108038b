#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ddinet/chem/brics.hpp"
#include "ddinet/chem/smiles.hpp"
#include "ddinet/common.hpp"
#include "ddinet/tsv.hpp"

using namespace ddinet;
using namespace ddinet::chem;

// ---------------------------------------------------------------------------
// Independent fragmentation oracle. Re-derives the link environments with a
// label-set formulation (bitmask per atom, rule matrix lookup) instead of the
// per-rule scan used by the implementation.
// ---------------------------------------------------------------------------
namespace oracle {

struct Ctx {
  const Mol& m;
  std::size_t a;
};

bool is(const Ctx& c, int z, bool arom) {
  return c.m.atoms[c.a].atomic_number == z && c.m.atoms[c.a].aromatic == arom;
}

int count_bonds(const Ctx& c, BondType t) {
  int n = 0;
  for (auto bid : c.m.bonds_of[c.a])
    if (c.m.bonds[bid].type == t) ++n;
  return n;
}

bool nbr_via(const Ctx& c, BondType t, bool require_acyclic, bool require_ring,
             const std::set<int>& zs, bool nbr_aromatic_any, bool nbr_arom_required) {
  for (auto bid : c.m.bonds_of[c.a]) {
    const Bond& b = c.m.bonds[bid];
    if (b.type != t) continue;
    if (require_acyclic && b.in_ring) continue;
    if (require_ring && !b.in_ring) continue;
    const std::size_t nb = c.m.other_end(bid, c.a);
    if (!zs.count(c.m.atoms[nb].atomic_number)) continue;
    if (!nbr_aromatic_any && c.m.atoms[nb].aromatic != nbr_arom_required) continue;
    return true;
  }
  return false;
}

std::set<int> labels(const Mol& m, std::size_t a) {
  Ctx c{m, a};
  std::set<int> ls;
  const std::size_t deg = m.degree(a);

  const bool no_double = count_bonds(c, BondType::double_bond) == 0;
  const bool carbonyl = [&] {
    for (auto bid : m.bonds_of[a]) {
      if (m.bonds[bid].type == BondType::double_bond &&
          m.atoms[m.other_end(bid, a)].atomic_number == 8)
        return true;
    }
    return false;
  }();

  if (is(c, 6, false) && deg == 3 && carbonyl) {
    for (auto bid : m.bonds_of[a]) {
      const std::size_t nb = m.other_end(bid, a);
      if (m.bonds[bid].type == BondType::double_bond && m.atoms[nb].atomic_number == 8) continue;
      const int z = m.atoms[nb].atomic_number;
      if (z == 0 || z == 6 || z == 7 || z == 8) {
        ls.insert(1);
        break;
      }
    }
    if (!m.atoms[a].in_ring && nbr_via(c, BondType::single, true, false, {0, 6, 7, 8}, true, false))
      ls.insert(6);
  }
  if (is(c, 8, false) && deg == 2 && nbr_via(c, BondType::single, true, false, {0, 6}, true, false))
    ls.insert(3);
  if (is(c, 6, false) && deg >= 2 && no_double &&
      nbr_via(c, BondType::single, true, false, {6}, true, false))
    ls.insert(4);
  if (is(c, 7, false) && deg >= 2 && no_double) {
    bool ok = true;
    for (auto bid : m.bonds_of[a]) {
      if (m.bonds[bid].type != BondType::single) continue;
      const int z = m.atoms[m.other_end(bid, a)].atomic_number;
      if (z != 0 && z != 6 && z != 16) ok = false;
    }
    if (ok && m.atoms[a].in_ring) {
      for (auto bid : m.bonds_of[a]) {
        if (!m.bonds[bid].in_ring) continue;
        const std::size_t nb = m.other_end(bid, a);
        if (m.atoms[nb].atomic_number == 6 && m.atoms[nb].in_ring) {
          for (auto bid2 : m.bonds_of[nb])
            if (m.bonds[bid2].type == BondType::double_bond &&
                m.atoms[m.other_end(bid2, nb)].atomic_number == 8)
              ok = false;
        }
      }
    }
    if (ok) ls.insert(5);
  }
  if (is(c, 6, false) && (deg == 2 || deg == 3) &&
      nbr_via(c, BondType::single, false, false, {6}, true, false))
    ls.insert(7);
  if (is(c, 6, false) && !m.atoms[a].in_ring && deg >= 2 &&
      count_bonds(c, BondType::single) == static_cast<int>(deg))
    ls.insert(8);
  if (is(c, 7, true) && m.atoms[a].charge == 0) {
    int ok = 0;
    for (auto bid : m.bonds_of[a]) {
      const std::size_t nb = m.other_end(bid, a);
      const int z = m.atoms[nb].atomic_number;
      if (m.bonds[bid].type == BondType::aromatic && m.atoms[nb].aromatic &&
          (z == 6 || z == 7 || z == 8 || z == 16))
        ++ok;
    }
    if (ok >= 2) ls.insert(9);
  }
  if (is(c, 7, false) && m.atoms[a].in_ring) {
    bool carbonyl_ring = false, second = false;
    for (auto bid : m.bonds_of[a]) {
      if (!m.bonds[bid].in_ring) continue;
      const std::size_t nb = m.other_end(bid, a);
      const int z = m.atoms[nb].atomic_number;
      bool nb_carbonyl = false;
      if (z == 6 && !m.atoms[nb].aromatic) {
        for (auto bid2 : m.bonds_of[nb])
          if (m.bonds[bid2].type == BondType::double_bond &&
              m.atoms[m.other_end(bid2, nb)].atomic_number == 8)
            nb_carbonyl = true;
      }
      if (nb_carbonyl && !carbonyl_ring) {
        carbonyl_ring = true;
      } else if (!m.atoms[nb].aromatic && (z == 6 || z == 7 || z == 8 || z == 16)) {
        second = true;
      }
    }
    if (carbonyl_ring && second) ls.insert(10);
  }
  if (is(c, 16, false) && deg == 2 && nbr_via(c, BondType::single, true, false, {0, 6}, true, false))
    ls.insert(11);
  if (m.atoms[a].atomic_number == 16 && deg == 4) {
    int dbl_o = 0;
    bool cn = false;
    for (auto bid : m.bonds_of[a]) {
      const std::size_t nb = m.other_end(bid, a);
      if (m.bonds[bid].type == BondType::double_bond && m.atoms[nb].atomic_number == 8) ++dbl_o;
      if (m.atoms[nb].atomic_number == 6 || m.atoms[nb].atomic_number == 0) cn = true;
    }
    if (dbl_o >= 2 && cn) ls.insert(12);
  }
  if (is(c, 6, false)) {
    // L13: ring single bonds to aliphatic C/N/O/S and, distinctly, to N/O/S
    std::vector<int> ringz;
    for (auto bid : m.bonds_of[a]) {
      const Bond& b = m.bonds[bid];
      if (b.type != BondType::single || !b.in_ring) continue;
      const std::size_t nb = m.other_end(bid, a);
      if (m.atoms[nb].aromatic) continue;
      ringz.push_back(m.atoms[nb].atomic_number);
    }
    bool found = false;
    for (std::size_t i = 0; i < ringz.size() && !found; ++i)
      for (std::size_t j = 0; j < ringz.size() && !found; ++j) {
        if (i == j) continue;
        const bool first_ok = ringz[i] == 6 || ringz[i] == 7 || ringz[i] == 8 || ringz[i] == 16;
        const bool second_ok = ringz[j] == 7 || ringz[j] == 8 || ringz[j] == 16;
        found = first_ok && second_ok;
      }
    if (found) ls.insert(13);
    int ring_c = 0;
    for (std::size_t i = 0; i < ringz.size(); ++i)
      if (ringz[i] == 6) ++ring_c;
    if (ring_c >= 2) ls.insert(15);
  }
  if (is(c, 6, true)) {
    int arom = 0, het = 0, aromc = 0;
    for (auto bid : m.bonds_of[a]) {
      const std::size_t nb = m.other_end(bid, a);
      if (m.bonds[bid].type != BondType::aromatic || !m.atoms[nb].aromatic) continue;
      const int z = m.atoms[nb].atomic_number;
      if (z == 6 || z == 7 || z == 8 || z == 16) ++arom;
      if (z == 7 || z == 8 || z == 16) ++het;
      if (z == 6) ++aromc;
    }
    if (het >= 1 && arom >= 2) ls.insert(14);
    if (aromc >= 2) ls.insert(16);
  }
  return ls;
}

// Link matrix in rule order; mirrors Degen's table with the L2-into-L5 merge.
const std::vector<std::tuple<int, int, BondType>>& rules() {
  static const std::vector<std::tuple<int, int, BondType>> r = {
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
  return r;
}

struct Cut {
  std::size_t bond;
  int la, lb;
  bool operator==(const Cut&) const = default;
};

std::vector<Cut> find_cuts(const Mol& m) {
  std::vector<std::set<int>> lab(m.num_atoms());
  for (std::size_t a = 0; a < m.num_atoms(); ++a) lab[a] = labels(m, a);
  std::vector<Cut> cuts;
  for (std::size_t bid = 0; bid < m.bonds.size(); ++bid) {
    const Bond& b = m.bonds[bid];
    if (b.in_ring) continue;
    for (const auto& [li, lj, bt] : rules()) {
      if (b.type != bt) continue;
      if (lab[b.a].count(li) && lab[b.b].count(lj)) {
        cuts.push_back({bid, li, lj});
        break;
      }
      if (lab[b.b].count(li) && lab[b.a].count(lj)) {
        cuts.push_back({bid, lj, li});
        break;
      }
    }
  }
  return cuts;
}

}  // namespace oracle

namespace {

std::map<std::string, std::string> load_catalog() {
  std::map<std::string, std::string> out;
  for_each_tsv_row(std::string(DDINET_DATA_DIR) + "/drug_smiles.tsv", true,
                   [&](std::size_t, const std::vector<std::string>& f) { out[f[0]] = f[1]; });
  return out;
}

std::multiset<std::size_t> fragment_sizes(const SubstructureGraph& g) {
  std::multiset<std::size_t> s;
  for (const auto& f : g.fragments) s.insert(f.atoms.size());
  return s;
}

}  // namespace

TEST_CASE("molecule with no cleavable bond yields one fragment") {
  auto g = brics_decompose(parse_smiles("C"));
  CHECK(g.num_fragments() == 1);
  CHECK(g.edges.empty());

  auto caffeine = brics_decompose(parse_smiles("Cn1cnc2c1c(=O)n(C)c(=O)n2C"));
  CHECK(caffeine.num_fragments() == 1);
}

TEST_CASE("aspirin: ester cut on both sides of the bridging oxygen") {
  Mol m = parse_smiles("CC(=O)Oc1ccccc1C(=O)O");
  // three cuts: acyl-O (1-3), O-ring (3-16), ring-acid (6-16)
  auto cuts = find_brics_bonds(m);
  CHECK(cuts.size() == 3);
  auto g = brics_decompose(m);
  CHECK(g.num_fragments() == 4);
  CHECK(fragment_sizes(g) == std::multiset<std::size_t>{1, 3, 3, 6});
  CHECK(g.edges.size() == 3);
}

TEST_CASE("acetanilide pattern: amide nitrogen is isolated with label 5") {
  // known decomposition: ring [16*] + lone N [5*][NH][5*] + acetyl [1*]
  auto g = brics_decompose(parse_smiles("CC(=O)Nc1ccccc1"));
  REQUIRE(g.num_fragments() == 3);
  CHECK(fragment_sizes(g) == std::multiset<std::size_t>{1, 3, 6});
  bool lone_n = false;
  for (const auto& f : g.fragments)
    if (f.atoms.size() == 1 && f.smiles.find("N") != std::string::npos &&
        f.smiles.find("[5*]") != std::string::npos)
      lone_n = true;
  CHECK(lone_n);
}

TEST_CASE("duloxetine decomposes into five fragments") {
  Mol m = parse_smiles("CNCCC(Oc1cccc2ccccc12)c1cccs1");
  auto cuts = find_brics_bonds(m);
  CHECK(cuts.size() == 4);
  auto g = brics_decompose(m);
  REQUIRE(g.num_fragments() == 5);
  CHECK(fragment_sizes(g) == std::multiset<std::size_t>{1, 2, 3, 5, 10});
  CHECK(g.edges.size() == 4);
  // thiophene fragment keeps its ring and the attachment marker
  bool thiophene = false;
  for (const auto& f : g.fragments)
    if (f.atoms.size() == 5 && f.smiles.find("s") != std::string::npos) thiophene = true;
  CHECK(thiophene);
}

TEST_CASE("alkene double-bond rule fires on tamoxifen") {
  Mol m = parse_smiles("CCC(=C(c1ccccc1)c1ccc(OCCN(C)C)cc1)c1ccccc1");
  auto cuts = find_brics_bonds(m);
  bool double_cut = false;
  for (const auto& c : cuts)
    if (c.label_a == 7 && c.label_b == 7) double_cut = true;
  CHECK(double_cut);
}

TEST_CASE("fragments partition heavy atoms and edges equal cut count") {
  const auto catalog = load_catalog();
  for (const auto& [name, smiles] : catalog) {
    CAPTURE(name);
    Mol m = parse_smiles(smiles);
    auto g = brics_decompose(m);
    std::vector<char> seen(m.num_atoms(), 0);
    for (const auto& f : g.fragments) {
      for (std::size_t a : f.atoms) {
        CHECK_FALSE(seen[a]);  // pairwise disjoint
        seen[a] = 1;
      }
    }
    CHECK(std::count(seen.begin(), seen.end(), 1) == static_cast<long>(m.num_atoms()));
    CHECK(g.edges.size() == find_brics_bonds(m).size());
    // every fragment SMILES parses back
    for (const auto& f : g.fragments) {
      CAPTURE(f.smiles);
      CHECK_NOTHROW(parse_smiles(f.smiles));
    }
  }
}

TEST_CASE("implementation agrees with the label-set oracle on the catalog") {
  const auto catalog = load_catalog();
  for (const auto& [name, smiles] : catalog) {
    CAPTURE(name);
    Mol m = parse_smiles(smiles);
    const auto got = find_brics_bonds(m);
    const auto want = oracle::find_cuts(m);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].bond == want[i].bond);
      CHECK(got[i].label_a == want[i].la);
      CHECK(got[i].label_b == want[i].lb);
    }
  }
}
