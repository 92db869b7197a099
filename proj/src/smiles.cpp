#include "rxngraph/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>

#include "rxngraph/canonical.hpp"
#include "rxngraph/errors.hpp"

namespace rxn {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Hydrogens an organic-subset atom would receive with no H annotation.
// Aromatic atoms fill only up to the lowest valence; plain atoms step
// through the valence list (N can be 3 or 5, S 2/4/6).
int implicit_hydrogens(const ElementInfo &info, bool aromatic, int bond_sum2) {
  if (info.default_valences.empty()) return 0;
  int needed = (bond_sum2 + 1) / 2;
  if (aromatic) return std::max(0, info.default_valences.front() - needed);
  for (int v : info.default_valences)
    if (v >= needed) return v - needed;
  return 0;
}

struct RawAtom {
  Atom atom;
  bool bracket = false;
};

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  std::vector<RawAtom> atoms;
  std::vector<Bond> bonds;
  int prev = -1;
  std::vector<int> branch_stack;
  // ring number -> (atom, twice-order code or 0 for unspecified, open offset)
  struct RingOpen {
    int atom;
    BondOrder order;
    bool has_order;
    std::size_t where;
  };
  std::map<int, RingOpen> rings;
  BondOrder pending_order = BondOrder::Single;
  bool has_pending = false;

  [[noreturn]] void fail(const std::string &msg) const {
    throw SyntaxError(msg, pos);
  }

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  void add_bond(int a, int b, BondOrder order) {
    if (a == b) fail("ring bond closes on the same atom");
    for (const Bond &bond : bonds) {
      int x = bond.a, y = bond.b;
      if ((x == a && y == b) || (x == b && y == a))
        fail("duplicate bond between atom pair");
    }
    bonds.push_back({static_cast<std::uint16_t>(a),
                     static_cast<std::uint16_t>(b), order});
  }

  BondOrder default_order(int a, int b) const {
    return atoms[a].atom.aromatic && atoms[b].atom.aromatic
               ? BondOrder::Aromatic
               : BondOrder::Single;
  }

  void attach(int idx) {
    if (prev >= 0) {
      BondOrder order =
          has_pending ? pending_order : default_order(prev, idx);
      add_bond(prev, idx, order);
    } else if (has_pending) {
      fail("bond symbol with no preceding atom");
    }
    has_pending = false;
    prev = idx;
  }

  int make_atom(ElementId element, bool aromatic, bool bracket) {
    RawAtom raw;
    raw.atom.element = element;
    raw.atom.aromatic = aromatic;
    raw.bracket = bracket;
    atoms.push_back(raw);
    return static_cast<int>(atoms.size()) - 1;
  }

  void ring_closure(int number) {
    if (prev < 0) fail("ring bond with no preceding atom");
    auto it = rings.find(number);
    if (it == rings.end()) {
      rings[number] = {prev, has_pending ? pending_order : BondOrder::Single,
                       has_pending, pos};
      has_pending = false;
      return;
    }
    RingOpen open = it->second;
    rings.erase(it);
    BondOrder order;
    if (has_pending && open.has_order) {
      if (pending_order != open.order)
        fail("conflicting ring bond orders");
      order = pending_order;
    } else if (has_pending) {
      order = pending_order;
    } else if (open.has_order) {
      order = open.order;
    } else {
      order = default_order(open.atom, prev);
    }
    has_pending = false;
    add_bond(open.atom, prev, order);
  }

  int parse_number(const char *what) {
    if (!is_digit(peek())) fail(std::string("expected digits for ") + what);
    int value = 0;
    while (is_digit(peek())) {
      value = value * 10 + (text[pos] - '0');
      if (value > 65535) fail(std::string("number too large for ") + what);
      ++pos;
    }
    return value;
  }

  void parse_bracket_atom() {
    std::size_t open_pos = pos;
    ++pos;  // '['
    if (is_digit(peek()))
      throw UnsupportedFeature("isotope specification",
                               std::string(1, peek()));
    bool aromatic = false;
    ElementId element;
    char c = peek();
    if (is_upper(c)) {
      std::string symbol(1, c);
      if (pos + 1 < text.size() && is_lower(text[pos + 1])) {
        std::string two = symbol + text[pos + 1];
        if (auto id = element_from_symbol(two)) {
          element = *id;
          pos += 2;
        } else if (auto one = element_from_symbol(symbol)) {
          element = *one;
          ++pos;
        } else {
          fail("unknown element '" + two + "'");
        }
      } else if (auto one = element_from_symbol(symbol)) {
        element = *one;
        ++pos;
      } else {
        fail("unknown element '" + symbol + "'");
      }
    } else if (is_lower(c)) {
      std::string symbol(1, static_cast<char>(std::toupper(c)));
      std::size_t used = 1;
      if (pos + 1 < text.size() && is_lower(text[pos + 1])) {
        std::string two = symbol + text[pos + 1];
        if (element_from_symbol(two)) {
          symbol = two;
          used = 2;
        }
      }
      auto id = element_from_symbol(symbol);
      if (!id) fail("unknown element '" + symbol + "'");
      if (!element_info(*id).aromatic_ok)
        fail("element '" + symbol + "' cannot be aromatic");
      element = *id;
      aromatic = true;
      pos += used;
    } else {
      fail("expected element symbol in bracket atom");
    }

    int idx = make_atom(element, aromatic, true);
    Atom &atom = atoms[idx].atom;

    while (true) {
      c = peek();
      if (c == '@') throw UnsupportedFeature("stereochemistry marker", "@");
      if (c == 'H') {
        ++pos;
        int count = 1;
        if (is_digit(peek())) count = parse_number("hydrogen count");
        if (count > 255) fail("hydrogen count too large");
        atom.explicit_h = static_cast<std::uint8_t>(count);
        continue;
      }
      if (c == '+' || c == '-') {
        int sign = c == '+' ? 1 : -1;
        ++pos;
        int magnitude = 1;
        if (is_digit(peek())) {
          magnitude = parse_number("charge");
        } else {
          while (peek() == c) {
            ++magnitude;
            ++pos;
          }
        }
        if (magnitude > 8) fail("charge out of range");
        atom.formal_charge = static_cast<std::int8_t>(sign * magnitude);
        continue;
      }
      if (c == ':') {
        ++pos;
        atom.map_index = static_cast<std::uint16_t>(parse_number("atom map"));
        continue;
      }
      break;
    }
    if (peek() != ']') {
      if (peek() == '\0') {
        pos = open_pos;
        fail("unclosed bracket atom");
      }
      fail(std::string("unexpected character '") + peek() +
           "' in bracket atom");
    }
    ++pos;
    attach(idx);
  }

  void parse_organic_atom() {
    char c = text[pos];
    if (is_upper(c)) {
      std::string symbol(1, c);
      if ((c == 'C' || c == 'B') && pos + 1 < text.size() &&
          (text[pos + 1] == 'l' || text[pos + 1] == 'r')) {
        std::string two = symbol + text[pos + 1];
        if (auto id = element_from_symbol(two);
            id && element_info(*id).organic_subset) {
          pos += 2;
          attach(make_atom(*id, false, false));
          return;
        }
      }
      auto id = element_from_symbol(symbol);
      if (!id || !element_info(*id).organic_subset)
        fail("unknown element '" + symbol + "'");
      ++pos;
      attach(make_atom(*id, false, false));
      return;
    }
    std::string symbol(1, static_cast<char>(std::toupper(c)));
    auto id = element_from_symbol(symbol);
    if (!id || !element_info(*id).organic_subset ||
        !element_info(*id).aromatic_ok)
      fail(std::string("unknown element '") + c + "'");
    ++pos;
    attach(make_atom(*id, true, false));
  }

  void run() {
    if (text.empty()) throw SyntaxError("empty SMILES", 0);
    while (pos < text.size()) {
      char c = text[pos];
      switch (c) {
        case '(':
          if (prev < 0) fail("branch with no preceding atom");
          branch_stack.push_back(prev);
          ++pos;
          break;
        case ')':
          if (branch_stack.empty()) fail("unbalanced parenthesis");
          if (has_pending) fail("dangling bond before ')'");
          prev = branch_stack.back();
          branch_stack.pop_back();
          ++pos;
          break;
        case '.':
          if (has_pending) fail("dangling bond before '.'");
          prev = -1;
          ++pos;
          break;
        case '-':
          if (has_pending) fail("two bond symbols in a row");
          pending_order = BondOrder::Single;
          has_pending = true;
          ++pos;
          break;
        case '=':
          if (has_pending) fail("two bond symbols in a row");
          pending_order = BondOrder::Double;
          has_pending = true;
          ++pos;
          break;
        case '#':
          if (has_pending) fail("two bond symbols in a row");
          pending_order = BondOrder::Triple;
          has_pending = true;
          ++pos;
          break;
        case ':':
          if (has_pending) fail("two bond symbols in a row");
          pending_order = BondOrder::Aromatic;
          has_pending = true;
          ++pos;
          break;
        case '/':
        case '\\':
          throw UnsupportedFeature("stereo bond marker", std::string(1, c));
        case '[':
          parse_bracket_atom();
          break;
        case '%': {
          ++pos;
          if (!is_digit(peek()) || pos + 1 >= text.size() ||
              !is_digit(text[pos + 1]))
            fail("expected two digits after '%'");
          int number = (text[pos] - '0') * 10 + (text[pos + 1] - '0');
          pos += 2;
          ring_closure(number);
          break;
        }
        default:
          if (is_digit(c)) {
            ++pos;
            ring_closure(c - '0');
          } else if (is_upper(c) || is_lower(c)) {
            parse_organic_atom();
          } else {
            fail(std::string("unexpected character '") + c + "'");
          }
      }
    }
    pos = text.size();
    if (!branch_stack.empty()) fail("unbalanced parenthesis");
    if (has_pending) fail("dangling bond at end of input");
    if (!rings.empty()) {
      pos = rings.begin()->second.where;
      fail("unclosed ring bond");
    }
    if (atoms.empty()) fail("no atoms in SMILES");
  }
};

} // namespace

std::vector<Molecule> parse_smiles(std::string_view text) {
  Parser parser{text};
  parser.run();

  auto &atoms = parser.atoms;
  auto &bonds = parser.bonds;
  const std::size_t n = atoms.size();

  std::vector<int> bond_sum2(n, 0);
  std::vector<std::vector<int>> adjacency(n);
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    bond_sum2[bonds[i].a] += bond_order_twice(bonds[i].order);
    bond_sum2[bonds[i].b] += bond_order_twice(bonds[i].order);
    adjacency[bonds[i].a].push_back(static_cast<int>(i));
    adjacency[bonds[i].b].push_back(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!atoms[i].bracket) {
      const ElementInfo &info = element_info(atoms[i].atom.element);
      atoms[i].atom.explicit_h = static_cast<std::uint8_t>(
          implicit_hydrogens(info, atoms[i].atom.aromatic, bond_sum2[i]));
    }
  }

  // Fold explicit [H] atoms into the neighbor's hydrogen count.
  static const ElementId kHydrogen = *element_from_symbol("H");
  std::vector<bool> drop(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom &a = atoms[i].atom;
    if (a.element != kHydrogen) continue;
    bool foldable = !a.aromatic && a.formal_charge == 0 && a.map_index == 0 &&
                    a.explicit_h == 0 && adjacency[i].size() == 1 &&
                    bonds[adjacency[i][0]].order == BondOrder::Single;
    if (foldable) {
      const Bond &b = bonds[adjacency[i][0]];
      std::size_t other = b.a == i ? b.b : b.a;
      if (atoms[other].atom.element != kHydrogen) {
        atoms[other].atom.explicit_h += 1;
        drop[i] = true;
        continue;
      }
    }
    throw UnsupportedFeature("explicit hydrogen atom node", "[H]");
  }

  // Connected components over the surviving atoms, preserving input order.
  std::vector<int> component(n, -1);
  int component_count = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (drop[seed] || component[seed] != -1) continue;
    std::vector<std::size_t> stack{seed};
    component[seed] = component_count;
    while (!stack.empty()) {
      std::size_t at = stack.back();
      stack.pop_back();
      for (int bi : adjacency[at]) {
        std::size_t other = bonds[bi].a == at ? bonds[bi].b : bonds[bi].a;
        if (!drop[other] && component[other] == -1) {
          component[other] = component[at];
          stack.push_back(other);
        }
      }
    }
    ++component_count;
  }

  std::vector<std::vector<Atom>> comp_atoms(component_count);
  std::vector<std::vector<Bond>> comp_bonds(component_count);
  std::vector<int> local_index(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (drop[i]) continue;
    local_index[i] = static_cast<int>(comp_atoms[component[i]].size());
    comp_atoms[component[i]].push_back(atoms[i].atom);
  }
  for (const Bond &b : bonds) {
    if (drop[b.a] || drop[b.b]) continue;
    comp_bonds[component[b.a]].push_back(
        {static_cast<std::uint16_t>(local_index[b.a]),
         static_cast<std::uint16_t>(local_index[b.b]), b.order});
  }

  std::vector<Molecule> result;
  result.reserve(component_count);
  for (int c = 0; c < component_count; ++c)
    result.emplace_back(std::move(comp_atoms[c]), std::move(comp_bonds[c]));
  return result;
}

namespace {

bool needs_bracket(const Molecule &m, std::size_t atom) {
  const Atom &a = m.atoms()[atom];
  const ElementInfo &info = element_info(a.element);
  if (!info.organic_subset) return true;
  if (a.formal_charge != 0 || a.map_index != 0) return true;
  if (a.aromatic && !info.aromatic_ok) return true;
  int sum2 = 0;
  for (auto [nbr, order] : m.neighbors(atom)) {
    (void)nbr;
    sum2 += bond_order_twice(order);
  }
  return a.explicit_h != implicit_hydrogens(info, a.aromatic, sum2);
}

std::string atom_token(const Molecule &m, std::size_t atom) {
  const Atom &a = m.atoms()[atom];
  const ElementInfo &info = element_info(a.element);
  std::string symbol(info.symbol);
  if (a.aromatic)
    std::transform(symbol.begin(), symbol.end(), symbol.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
  if (!needs_bracket(m, atom)) return symbol;
  std::string out = "[" + symbol;
  if (a.explicit_h >= 1) {
    out += 'H';
    if (a.explicit_h > 1) out += std::to_string(a.explicit_h);
  }
  if (a.formal_charge != 0) {
    out += a.formal_charge > 0 ? '+' : '-';
    if (std::abs(a.formal_charge) > 1)
      out += std::to_string(std::abs(a.formal_charge));
  }
  if (a.map_index != 0) {
    out += ':';
    out += std::to_string(a.map_index);
  }
  out += ']';
  return out;
}

std::string bond_token(const Molecule &m, std::size_t a, std::size_t b,
                       BondOrder order) {
  bool both_aromatic = m.atoms()[a].aromatic && m.atoms()[b].aromatic;
  switch (order) {
    case BondOrder::Single: return both_aromatic ? "-" : "";
    case BondOrder::Double: return "=";
    case BondOrder::Triple: return "#";
    case BondOrder::Aromatic: return both_aromatic ? "" : ":";
  }
  return "";
}

struct Writer {
  const Molecule &m;
  std::vector<int> rank;
  std::vector<bool> visited;
  // Per atom: ring bonds to open/close there, in deterministic order.
  std::vector<std::vector<std::pair<std::size_t, BondOrder>>> ring_bonds;
  std::map<std::pair<std::size_t, std::size_t>, int> ring_numbers;
  std::set<int> free_numbers;
  std::string out;

  explicit Writer(const Molecule &mol) : m(mol) {
    rank = canonical_ranks(m);
    visited.assign(m.atom_count(), false);
    ring_bonds.assign(m.atom_count(), {});
    for (int i = 1; i <= 99; ++i) free_numbers.insert(i);
  }

  // DFS in canonical order; classify non-tree edges as ring closures.
  // Planning mirrors emission order exactly.
  void plan(std::size_t root) {
    std::vector<bool> planned(m.atom_count(), false);
    std::set<std::pair<std::size_t, std::size_t>> handled;
    planned[root] = true;
    plan_rec(root, std::numeric_limits<std::size_t>::max(), planned, handled);
  }

  void plan_rec(std::size_t at, std::size_t parent, std::vector<bool> &planned,
                std::set<std::pair<std::size_t, std::size_t>> &handled) {
    auto nbrs = sorted_neighbors(at);
    for (auto [nbr, order] : nbrs) {
      if (nbr == parent) continue;
      auto key = std::minmax(at, static_cast<std::size_t>(nbr));
      if (planned[nbr]) {
        if (handled.insert({key.first, key.second}).second) {
          ring_bonds[nbr].push_back({at, order});   // opened at earlier atom
          ring_bonds[at].push_back({nbr, order});   // closed here
        }
        continue;
      }
      planned[nbr] = true;
      handled.insert({key.first, key.second});
      plan_rec(nbr, at, planned, handled);
    }
  }

  std::vector<std::pair<std::size_t, BondOrder>>
  sorted_neighbors(std::size_t at) const {
    std::vector<std::pair<std::size_t, BondOrder>> nbrs;
    for (auto [nbr, order] : m.neighbors(at)) nbrs.push_back({nbr, order});
    std::sort(nbrs.begin(), nbrs.end(),
              [&](const auto &x, const auto &y) {
                return rank[x.first] < rank[y.first];
              });
    return nbrs;
  }

  void emit(std::size_t at, std::size_t parent) {
    visited[at] = true;
    out += atom_token(m, at);
    // Ring closure digits attached to this atom.
    for (auto [other, order] : ring_bonds[at]) {
      auto key = std::minmax(at, other);
      auto it = ring_numbers.find({key.first, key.second});
      int number;
      if (it == ring_numbers.end()) {
        if (free_numbers.empty()) throw Error("out of ring closure numbers");
        number = *free_numbers.begin();
        free_numbers.erase(free_numbers.begin());
        ring_numbers[{key.first, key.second}] = number;
        out += bond_token(m, at, other, order);
      } else {
        number = it->second;
        ring_numbers.erase(it);
        free_numbers.insert(number);
      }
      if (number >= 10) {
        out += '%';
        out += std::to_string(number / 10);
        out += std::to_string(number % 10);
      } else {
        out += std::to_string(number);
      }
    }
    // Tree children in canonical order.
    std::vector<std::pair<std::size_t, BondOrder>> children;
    for (auto [nbr, order] : sorted_neighbors(at)) {
      if (nbr == parent || visited[nbr]) continue;
      bool is_ring = false;
      for (auto [other, o] : ring_bonds[at]) {
        (void)o;
        if (other == nbr) { is_ring = true; break; }
      }
      if (!is_ring) children.push_back({nbr, order});
    }
    for (std::size_t c = 0; c < children.size(); ++c) {
      auto [child, order] = children[c];
      bool last = c + 1 == children.size();
      if (!last) out += '(';
      out += bond_token(m, at, child, order);
      emit(child, at);
      if (!last) out += ')';
    }
  }
};

} // namespace

std::string write_smiles(const Molecule &m) {
  Writer writer(m);
  std::size_t root = 0;
  for (std::size_t i = 0; i < m.atom_count(); ++i)
    if (writer.rank[i] == 0) root = i;
  writer.plan(root);
  writer.emit(root, std::numeric_limits<std::size_t>::max());
  return writer.out;
}

std::string canonical_key(const Molecule &m) { return m.canonical_key(); }

} // namespace rxn
