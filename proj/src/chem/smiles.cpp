#include "ddinet/chem/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "ddinet/common.hpp"

namespace ddinet::chem {

namespace {

struct SymbolEntry {
  const char* symbol;
  int z;
};

// Two-letter symbols must be matched before their one-letter prefixes.
constexpr SymbolEntry kSymbols[] = {
    {"Cl", 17}, {"Br", 35}, {"Si", 14}, {"Se", 34}, {"As", 33}, {"Li", 3},  {"Na", 11},
    {"Mg", 12}, {"Al", 13}, {"Ca", 20}, {"Ti", 22}, {"Cr", 24}, {"Mn", 25}, {"Fe", 26},
    {"Co", 27}, {"Ni", 28}, {"Cu", 29}, {"Zn", 30}, {"Sr", 38}, {"Tc", 43}, {"Ag", 47},
    {"Sn", 50}, {"Sb", 51}, {"Ba", 56}, {"Gd", 64}, {"Pt", 78}, {"Au", 79}, {"Hg", 80},
    {"Bi", 83}, {"B", 5},   {"C", 6},   {"N", 7},   {"O", 8},   {"F", 9},   {"P", 15},
    {"S", 16},  {"K", 19},  {"I", 53},  {"H", 1},
};

int aromatic_z(char c) {
  switch (c) {
    case 'b': return 5;
    case 'c': return 6;
    case 'n': return 7;
    case 'o': return 8;
    case 'p': return 15;
    case 's': return 16;
    default: return 0;
  }
}

// Daylight default valences for the organic subset.
const std::map<int, std::vector<int>> kValences = {
    {5, {3}}, {6, {4}}, {7, {3, 5}}, {8, {2}}, {15, {3, 5}}, {16, {2, 4, 6}},
    {9, {1}}, {17, {1}}, {35, {1}},  {53, {1}},
};

double bond_order(BondType t) {
  switch (t) {
    case BondType::single: return 1.0;
    case BondType::double_bond: return 2.0;
    case BondType::triple: return 3.0;
    case BondType::aromatic: return 1.5;
  }
  return 1.0;
}

[[noreturn]] void bad(const std::string& smiles, const std::string& why) {
  throw InputError("SMILES parse error (" + why + "): '" + smiles + "'");
}

}  // namespace

const char* element_symbol(int z) {
  for (const auto& e : kSymbols)
    if (e.z == z) return e.symbol;
  return "?";
}

std::optional<int> element_number(const std::string& symbol) {
  for (const auto& e : kSymbols)
    if (symbol == e.symbol) return e.z;
  return std::nullopt;
}

bool organic_subset(int z) {
  return z == 5 || z == 6 || z == 7 || z == 8 || z == 9 || z == 15 || z == 16 || z == 17 ||
         z == 35 || z == 53;
}

const Bond* Mol::bond_between(std::size_t a, std::size_t b) const {
  for (std::size_t bid : bonds_of[a])
    if (other_end(bid, a) == b) return &bonds[bid];
  return nullptr;
}

bool Mol::has_double_bond_to(std::size_t a, int z) const {
  for (std::size_t bid : bonds_of[a]) {
    if (bonds[bid].type == BondType::double_bond && atoms[other_end(bid, a)].atomic_number == z)
      return true;
  }
  return false;
}

void Mol::finalize() {
  bonds_of.assign(atoms.size(), {});
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    bonds_of[bonds[i].a].push_back(i);
    bonds_of[bonds[i].b].push_back(i);
  }

  // Ring membership: an edge is in a ring iff it is not a bridge.
  for (auto& b : bonds) b.in_ring = false;
  for (auto& a : atoms) a.in_ring = false;
  std::vector<int> disc(atoms.size(), -1), low(atoms.size(), 0);
  std::vector<std::size_t> parent_bond(atoms.size(), SIZE_MAX);
  int timer = 0;
  for (std::size_t root = 0; root < atoms.size(); ++root) {
    if (disc[root] >= 0) continue;
    // iterative DFS carrying (atom, next-edge cursor)
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& [a, cursor] = stack.back();
      if (cursor < bonds_of[a].size()) {
        const std::size_t bid = bonds_of[a][cursor++];
        if (bid == parent_bond[a]) continue;
        const std::size_t nb = other_end(bid, a);
        if (disc[nb] < 0) {
          disc[nb] = low[nb] = timer++;
          parent_bond[nb] = bid;
          stack.emplace_back(nb, 0);
        } else {
          low[a] = std::min(low[a], disc[nb]);
          bonds[bid].in_ring = true;  // back edge always closes a cycle
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          const std::size_t p = stack.back().first;
          low[p] = std::min(low[p], low[a]);
          // edge (p,a) is a bridge iff low[a] > disc[p]
          if (low[a] <= disc[p] && parent_bond[a] != SIZE_MAX) bonds[parent_bond[a]].in_ring = true;
        }
      }
    }
  }
  for (const Bond& b : bonds) {
    if (b.in_ring) {
      atoms[b.a].in_ring = true;
      atoms[b.b].in_ring = true;
    }
  }

  // Implicit hydrogens for organic-subset atoms written without brackets.
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Atom& a = atoms[i];
    a.implicit_h = 0;
    if (a.bracket_h >= 0 || a.atomic_number == 0) continue;
    auto it = kValences.find(a.atomic_number);
    if (it == kValences.end()) continue;
    const auto& valences = it->second;
    if (a.aromatic) {
      bool any_arom = false;
      for (std::size_t bid : bonds_of[i]) any_arom |= bonds[bid].type == BondType::aromatic;
      const int eff = static_cast<int>(degree(i)) + (any_arom ? 1 : 0);
      a.implicit_h = std::max(0, valences.front() - eff);
    } else {
      double vsum = 0;
      for (std::size_t bid : bonds_of[i]) vsum += bond_order(bonds[bid].type);
      const int need = static_cast<int>(std::ceil(vsum - 1e-9));
      int target = need;
      for (int v : valences) {
        if (v >= need) {
          target = v;
          break;
        }
      }
      a.implicit_h = std::max(0, target - need);
    }
  }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct RingSlot {
  std::size_t atom;
  char bond_char;  // 0 if unspecified
};

struct Parser {
  const std::string& s;
  std::size_t i = 0;
  Mol mol;
  std::vector<char> bond_was_default;
  long prev = -1;
  std::vector<long> branch_stack;
  char pending_bond = 0;
  std::map<int, RingSlot> ring_open;

  explicit Parser(const std::string& smiles) : s(smiles) {}

  std::size_t add_atom(Atom a) {
    mol.atoms.push_back(a);
    return mol.atoms.size() - 1;
  }

  void add_bond(std::size_t a, std::size_t b, char bond_char) {
    if (a == b) bad(s, "self bond");
    Bond bd;
    bd.a = a;
    bd.b = b;
    bool is_default = false;
    switch (bond_char) {
      case 0:
        bd.type = BondType::single;
        is_default = true;
        break;
      case '-': bd.type = BondType::single; break;
      case '=': bd.type = BondType::double_bond; break;
      case '#': bd.type = BondType::triple; break;
      case ':': bd.type = BondType::aromatic; break;
      case '/':
        bd.type = BondType::single;
        bd.dir = BondDir::end_upright;
        break;
      case '\\':
        bd.type = BondType::single;
        bd.dir = BondDir::end_downright;
        break;
      default: bad(s, std::string("unknown bond symbol '") + bond_char + "'");
    }
    mol.bonds.push_back(bd);
    bond_was_default.push_back(is_default ? 1 : 0);
  }

  void attach(std::size_t atom) {
    if (prev >= 0) add_bond(static_cast<std::size_t>(prev), atom, pending_bond);
    pending_bond = 0;
    prev = static_cast<long>(atom);
  }

  void ring_digit(int num) {
    if (prev < 0) bad(s, "ring closure before any atom");
    auto it = ring_open.find(num);
    if (it == ring_open.end()) {
      ring_open[num] = RingSlot{static_cast<std::size_t>(prev), pending_bond};
      pending_bond = 0;
      return;
    }
    char bc = it->second.bond_char;
    if (pending_bond != 0) {
      if (bc != 0 && bc != pending_bond) bad(s, "conflicting ring bond symbols");
      bc = pending_bond;
    }
    add_bond(it->second.atom, static_cast<std::size_t>(prev), bc);
    ring_open.erase(it);
    pending_bond = 0;
  }

  void parse_bracket() {
    std::size_t start = i;  // at '['
    ++i;
    Atom a;
    a.bracket_h = 0;
    // isotope
    int iso = 0;
    bool has_iso = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      iso = iso * 10 + (s[i] - '0');
      has_iso = true;
      ++i;
    }
    if (has_iso) a.isotope = iso;
    if (i >= s.size()) bad(s, "unterminated bracket atom");
    // symbol
    if (s[i] == '*') {
      a.atomic_number = 0;
      ++i;
    } else if (std::islower(static_cast<unsigned char>(s[i]))) {
      // aromatic: c, n, o, p, s, b, se, as
      if (i + 1 < s.size() && ((s[i] == 's' && s[i + 1] == 'e') || (s[i] == 'a' && s[i + 1] == 's'))) {
        a.atomic_number = s[i] == 's' ? 34 : 33;
        i += 2;
      } else {
        a.atomic_number = aromatic_z(s[i]);
        if (a.atomic_number == 0) bad(s, std::string("unknown aromatic symbol '") + s[i] + "'");
        ++i;
      }
      a.aromatic = true;
    } else if (std::isupper(static_cast<unsigned char>(s[i]))) {
      std::string sym(1, s[i]);
      if (i + 1 < s.size() && std::islower(static_cast<unsigned char>(s[i + 1]))) {
        const std::string two = sym + s[i + 1];
        if (element_number(two)) {
          sym = two;
        }
      }
      auto z = element_number(sym);
      if (!z) bad(s, "unknown element symbol '" + sym + "'");
      a.atomic_number = *z;
      i += sym.size();
    } else {
      bad(s, "bad bracket atom near position " + std::to_string(start));
    }
    // chirality (recorded as present but not used downstream)
    while (i < s.size() && s[i] == '@') ++i;
    if (i < s.size() && (starts_with(std::string_view(s).substr(i), "TH") ||
                         starts_with(std::string_view(s).substr(i), "AL")))
      i += 2;  // @TH1-style tags
    // hydrogens
    if (i < s.size() && s[i] == 'H') {
      ++i;
      int h = 1;
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        h = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          h = h * 10 + (s[i++] - '0');
      }
      a.bracket_h = h;
    }
    // charge
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      const char sign = s[i];
      int count = 0;
      while (i < s.size() && s[i] == sign) {
        ++count;
        ++i;
      }
      if (count == 1 && i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        count = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          count = count * 10 + (s[i++] - '0');
      }
      a.charge = sign == '+' ? count : -count;
    }
    // atom map (ignored)
    if (i < s.size() && s[i] == ':') {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    }
    if (i >= s.size() || s[i] != ']') bad(s, "unterminated bracket atom");
    ++i;
    attach(add_atom(a));
  }

  Mol run() {
    while (i < s.size()) {
      const char c = s[i];
      if (c == '(') {
        if (prev < 0) bad(s, "branch before any atom");
        branch_stack.push_back(prev);
        ++i;
      } else if (c == ')') {
        if (branch_stack.empty()) bad(s, "unbalanced ')'");
        prev = branch_stack.back();
        branch_stack.pop_back();
        ++i;
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\') {
        pending_bond = c;
        ++i;
      } else if (c == '.') {
        if (pending_bond != 0) bad(s, "bond before dot");
        prev = -1;
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        ring_digit(c - '0');
        ++i;
      } else if (c == '%') {
        if (i + 2 >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i + 1])) ||
            !std::isdigit(static_cast<unsigned char>(s[i + 2])))
          bad(s, "bad %nn ring closure");
        ring_digit((s[i + 1] - '0') * 10 + (s[i + 2] - '0'));
        i += 3;
      } else if (c == '[') {
        parse_bracket();
      } else if (c == '*') {
        Atom a;
        a.atomic_number = 0;
        attach(add_atom(a));
        ++i;
      } else if (std::islower(static_cast<unsigned char>(c)) && aromatic_z(c) != 0) {
        Atom a;
        a.atomic_number = aromatic_z(c);
        a.aromatic = true;
        attach(add_atom(a));
        ++i;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        std::string sym(1, c);
        if (i + 1 < s.size() && std::islower(static_cast<unsigned char>(s[i + 1]))) {
          const std::string two = sym + s[i + 1];
          // Only Cl and Br are valid two-letter organic-subset symbols.
          if (two == "Cl" || two == "Br") sym = two;
        }
        auto z = element_number(sym);
        if (!z || !organic_subset(*z)) bad(s, "element '" + sym + "' requires brackets");
        Atom a;
        a.atomic_number = *z;
        attach(add_atom(a));
        i += sym.size();
      } else {
        bad(s, std::string("unexpected character '") + c + "'");
      }
    }
    if (!branch_stack.empty()) bad(s, "unbalanced '('");
    if (!ring_open.empty()) bad(s, "unclosed ring bond");
    if (pending_bond != 0) bad(s, "dangling bond symbol");
    if (mol.atoms.empty()) bad(s, "no atoms");

    mol.finalize();
    // Default bonds between two aromatic atoms inside a ring are aromatic.
    bool changed = false;
    for (std::size_t b = 0; b < mol.bonds.size(); ++b) {
      if (bond_was_default[b] && mol.bonds[b].in_ring && mol.atoms[mol.bonds[b].a].aromatic &&
          mol.atoms[mol.bonds[b].b].aromatic) {
        mol.bonds[b].type = BondType::aromatic;
        changed = true;
      }
    }
    if (changed) mol.finalize();  // hydrogen counts depend on bond orders
    return std::move(mol);
  }
};

}  // namespace

Mol parse_smiles(const std::string& smiles) {
  if (trim(smiles).empty()) throw InputError("SMILES parse error (empty string): ''");
  return Parser(smiles).run();
}

// ---------------------------------------------------------------------------
// Writer
// ---------------------------------------------------------------------------

namespace {

struct Writer {
  const Mol& mol;
  std::vector<char> visited;
  std::vector<std::vector<std::pair<std::size_t, int>>> closures;  // atom -> (bond, number)
  std::vector<char> closure_emitted;
  std::string out;

  explicit Writer(const Mol& m)
      : mol(m), visited(m.num_atoms(), 0), closures(m.num_atoms()), closure_emitted(m.bonds.size(), 0) {}

  static std::string bond_symbol(const Mol& m, const Bond& b) {
    switch (b.type) {
      case BondType::single:
        // explicit '-' between two aromatic atoms, otherwise implied
        return (m.atoms[b.a].aromatic && m.atoms[b.b].aromatic) ? "-" : "";
      case BondType::double_bond: return "=";
      case BondType::triple: return "#";
      case BondType::aromatic: return "";  // default between aromatic atoms
    }
    return "";
  }

  std::string atom_token(std::size_t idx) const {
    const Atom& a = mol.atoms[idx];
    const bool needs_bracket = a.atomic_number == 0 || a.charge != 0 || a.isotope != 0 ||
                               a.bracket_h >= 0 || a.atomic_number == 1 ||
                               !organic_subset(a.atomic_number) ||
                               (a.aromatic && a.atomic_number != 6 && mol.total_h(idx) > 0);
    std::string sym = a.atomic_number == 0 ? "*" : element_symbol(a.atomic_number);
    if (a.aromatic && a.atomic_number != 0)
      for (auto& ch : sym) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (!needs_bracket) return sym;
    std::string t = "[";
    if (a.isotope != 0) t += std::to_string(a.isotope);
    t += sym;
    const int h = mol.total_h(idx);
    if (h == 1)
      t += "H";
    else if (h > 1)
      t += "H" + std::to_string(h);
    if (a.charge == 1)
      t += "+";
    else if (a.charge == -1)
      t += "-";
    else if (a.charge > 1)
      t += "+" + std::to_string(a.charge);
    else if (a.charge < -1)
      t += "-" + std::to_string(-a.charge);
    t += "]";
    return t;
  }

  void assign_closures() {
    // DFS marking non-tree edges as ring closures with stable numbering.
    int next_number = 1;
    std::vector<char> seen(mol.num_atoms(), 0);
    std::vector<char> bond_used(mol.bonds.size(), 0);
    for (std::size_t root = 0; root < mol.num_atoms(); ++root) {
      if (seen[root]) continue;
      std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
      seen[root] = 1;
      while (!stack.empty()) {
        auto& [a, cur] = stack.back();
        if (cur < mol.bonds_of[a].size()) {
          const std::size_t bid = mol.bonds_of[a][cur++];
          if (bond_used[bid]) continue;
          const std::size_t nb = mol.other_end(bid, a);
          bond_used[bid] = 1;
          if (seen[nb]) {
            const int num = next_number++;
            closures[a].emplace_back(bid, num);
            closures[nb].emplace_back(bid, num);
          } else {
            seen[nb] = 1;
            stack.emplace_back(nb, 0);
          }
        } else {
          stack.pop_back();
        }
      }
    }
  }

  std::string closure_token(std::size_t atom) {
    std::string t;
    for (const auto& [bid, num] : closures[atom]) {
      if (!closure_emitted[bid]) {
        t += bond_symbol(mol, mol.bonds[bid]);
        closure_emitted[bid] = 1;
      }
      t += num < 10 ? std::to_string(num) : "%" + std::to_string(num);
    }
    return t;
  }

  void emit(std::size_t atom) {
    visited[atom] = 1;
    out += atom_token(atom);
    out += closure_token(atom);
    std::vector<std::size_t> children;
    for (std::size_t bid : mol.bonds_of[atom]) {
      const std::size_t nb = mol.other_end(bid, atom);
      bool is_closure = false;
      for (const auto& [cb, num] : closures[atom]) is_closure |= cb == bid;
      if (!visited[nb] && !is_closure) children.push_back(bid);
    }
    for (std::size_t k = 0; k < children.size(); ++k) {
      const std::size_t bid = children[k];
      const std::size_t nb = mol.other_end(bid, atom);
      if (visited[nb]) continue;  // reached through an earlier branch
      const bool last = k + 1 == children.size();
      if (!last) out += "(";
      out += bond_symbol(mol, mol.bonds[bid]);
      emit(nb);
      if (!last) out += ")";
    }
  }

  std::string run() {
    assign_closures();
    bool first = true;
    for (std::size_t a = 0; a < mol.num_atoms(); ++a) {
      if (visited[a]) continue;
      if (!first) out += ".";
      first = false;
      emit(a);
    }
    return out;
  }
};

}  // namespace

std::string write_smiles(const Mol& mol) { return Writer(mol).run(); }

std::string subgraph_smiles(const Mol& mol, const std::vector<std::size_t>& atoms,
                            const std::vector<std::pair<std::size_t, int>>& attach_labels) {
  Mol frag;
  std::vector<long> remap(mol.num_atoms(), -1);
  for (std::size_t a : atoms) {
    remap[a] = static_cast<long>(frag.atoms.size());
    Atom copy = mol.atoms[a];
    // Freeze the hydrogen count: broken bonds must not turn into hydrogens.
    copy.bracket_h = mol.total_h(a);
    frag.atoms.push_back(copy);
  }
  for (const Bond& b : mol.bonds) {
    if (remap[b.a] >= 0 && remap[b.b] >= 0) {
      Bond nb = b;
      nb.a = static_cast<std::size_t>(remap[b.a]);
      nb.b = static_cast<std::size_t>(remap[b.b]);
      frag.bonds.push_back(nb);
    }
  }
  for (const auto& [atom, label] : attach_labels) {
    Atom dummy;
    dummy.atomic_number = 0;
    dummy.isotope = label;
    frag.atoms.push_back(dummy);
    Bond nb;
    nb.a = static_cast<std::size_t>(remap[atom]);
    nb.b = frag.atoms.size() - 1;
    nb.type = BondType::single;
    frag.bonds.push_back(nb);
  }
  frag.finalize();
  return write_smiles(frag);
}

}  // namespace ddinet::chem
