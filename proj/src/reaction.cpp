#include "rxngraph/reaction.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "rxngraph/errors.hpp"
#include "rxngraph/smiles.hpp"

namespace rxn {

std::string_view role_name(Role role) {
  switch (role) {
    case Role::Reactant: return "reactant";
    case Role::Reagent: return "reagent";
    case Role::Catalyst: return "catalyst";
    case Role::Solvent: return "solvent";
    case Role::Product: return "product";
  }
  return "reagent";
}

Role role_from_name(std::string_view name) {
  if (name == "reactant") return Role::Reactant;
  if (name == "catalyst") return Role::Catalyst;
  if (name == "solvent") return Role::Solvent;
  if (name == "product") return Role::Product;
  return Role::Reagent;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t at = text.find(sep, start);
    if (at == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, at - start));
    start = at + 1;
  }
}

void check_side_maps(const std::vector<const Molecule *> &mols,
                     const char *side) {
  std::set<std::uint16_t> seen;
  for (const Molecule *m : mols)
    for (const Atom &a : m->atoms())
      if (a.map_index != 0 && !seen.insert(a.map_index).second)
        throw Error(std::string("duplicate atom map index ") +
                    std::to_string(a.map_index) + " on " + side + " side");
}

void validate(const ReactionRecord &r) {
  if (r.reactants.empty() || r.products.empty())
    throw Error("reaction needs at least one reactant and one product");
  if (r.year < kMinYear || r.year > 2100)
    throw Error("implausible publication year " + std::to_string(r.year));
  std::vector<const Molecule *> reactant_side, product_side;
  for (const Molecule &m : r.reactants) reactant_side.push_back(&m);
  for (const Molecule &m : r.products) product_side.push_back(&m);
  check_side_maps(reactant_side, "reactant");
  check_side_maps(product_side, "product");
  std::set<std::uint16_t> reactant_maps;
  for (const Molecule *m : reactant_side)
    for (const Atom &a : m->atoms())
      if (a.map_index != 0) reactant_maps.insert(a.map_index);
  for (const Molecule *m : product_side)
    for (const Atom &a : m->atoms())
      if (a.map_index != 0 && !reactant_maps.count(a.map_index))
        throw Error("product atom map " + std::to_string(a.map_index) +
                    " has no reactant-side counterpart");
}

} // namespace

ReactionRecord parse_reaction_smiles(std::string_view text, std::string id,
                                     int year) {
  auto sides = split(text, '>');
  if (sides.size() != 3)
    throw Error("reaction SMILES must have form reactants>agents>products");
  ReactionRecord record;
  record.id = std::move(id);
  record.year = year;
  for (Molecule &m : parse_smiles(sides[0]))
    record.reactants.push_back(std::move(m));
  if (!sides[1].empty())
    for (Molecule &m : parse_smiles(sides[1]))
      record.agents.push_back({std::move(m), Role::Reagent});
  for (Molecule &m : parse_smiles(sides[2]))
    record.products.push_back(std::move(m));
  validate(record);
  return record;
}

ReactionRecord parse_reaction_line(std::string_view line) {
  auto fields = split(line, '\t');
  if (fields.size() < 3)
    throw Error("expected id<TAB>year<TAB>reaction_smiles[<TAB>roles]");
  int year = 0;
  auto [ptr, ec] = std::from_chars(fields[1].data(),
                                   fields[1].data() + fields[1].size(), year);
  if (ec != std::errc() || ptr != fields[1].data() + fields[1].size())
    throw Error("invalid year field '" + std::string(fields[1]) + "'");
  ReactionRecord record =
      parse_reaction_smiles(fields[2], std::string(fields[0]), year);
  if (fields.size() >= 4 && !fields[3].empty()) {
    auto roles = split(fields[3], ',');
    for (std::size_t i = 0; i < roles.size() && i < record.agents.size(); ++i)
      record.agents[i].second = role_from_name(roles[i]);
  }
  return record;
}

std::string write_reaction_smiles(const ReactionRecord &r) {
  std::string out;
  for (std::size_t i = 0; i < r.reactants.size(); ++i) {
    if (i) out += '.';
    out += write_smiles(r.reactants[i]);
  }
  out += '>';
  for (std::size_t i = 0; i < r.agents.size(); ++i) {
    if (i) out += '.';
    out += write_smiles(r.agents[i].first);
  }
  out += '>';
  for (std::size_t i = 0; i < r.products.size(); ++i) {
    if (i) out += '.';
    out += write_smiles(r.products[i]);
  }
  return out;
}

namespace {

struct MappedAtom {
  int molecule;  // index within its side
  int atom;
};

using MapTable = std::map<std::uint16_t, MappedAtom>;

MapTable side_maps(const std::vector<const Molecule *> &mols) {
  MapTable table;
  for (std::size_t mi = 0; mi < mols.size(); ++mi)
    for (std::size_t ai = 0; ai < mols[mi]->atom_count(); ++ai) {
      std::uint16_t map = mols[mi]->atoms()[ai].map_index;
      if (map != 0)
        table[map] = {static_cast<int>(mi), static_cast<int>(ai)};
    }
  return table;
}

// Bonds between mapped atoms, keyed by the (low, high) map pair.
std::map<std::pair<std::uint16_t, std::uint16_t>, BondOrder>
mapped_bonds(const std::vector<const Molecule *> &mols) {
  std::map<std::pair<std::uint16_t, std::uint16_t>, BondOrder> table;
  for (const Molecule *m : mols)
    for (const Bond &b : m->bonds()) {
      std::uint16_t ma = m->atoms()[b.a].map_index;
      std::uint16_t mb = m->atoms()[b.b].map_index;
      if (ma == 0 || mb == 0) continue;
      if (ma > mb) std::swap(ma, mb);
      table[{ma, mb}] = b.order;
    }
  return table;
}

} // namespace

ReactionCenter reaction_center(const ReactionRecord &r) {
  std::vector<const Molecule *> reactant_side, product_side;
  for (const Molecule &m : r.reactants) reactant_side.push_back(&m);
  for (const Molecule &m : r.products) product_side.push_back(&m);

  MapTable rmaps = side_maps(reactant_side);
  MapTable pmaps = side_maps(product_side);

  bool shared = false;
  for (const auto &[map, at] : pmaps)
    if (rmaps.count(map)) { shared = true; break; }
  if (!shared)
    throw NoMappingError("reaction sides share no atom map indices");

  auto rbonds = mapped_bonds(reactant_side);
  auto pbonds = mapped_bonds(product_side);

  ReactionCenter center;
  for (const auto &[pair, order] : rbonds) {
    auto it = pbonds.find(pair);
    if (it == pbonds.end()) {
      // Broken only if the pair could exist on the product side at all;
      // pairs with a leaving-group endpoint are broken by definition.
      center.changed_bonds.insert({pair.first, pair.second, BondChange::Broken});
    } else if (it->second != order) {
      center.changed_bonds.insert(
          {pair.first, pair.second, BondChange::OrderChanged});
    }
  }
  for (const auto &[pair, order] : pbonds) {
    (void)order;
    if (!rbonds.count(pair))
      center.changed_bonds.insert({pair.first, pair.second, BondChange::Formed});
  }

  // Changed atoms per reactant molecule.
  center.changed_atoms_by_molecule.resize(r.reactants.size());
  for (std::size_t mi = 0; mi < r.reactants.size(); ++mi) {
    const Molecule &mol = r.reactants[mi];
    bool any_mapped = false;
    for (const Atom &a : mol.atoms())
      if (a.map_index != 0) { any_mapped = true; break; }
    if (!any_mapped) continue;  // spectator fragment

    std::set<int> changed;
    for (std::size_t ai = 0; ai < mol.atom_count(); ++ai) {
      const Atom &a = mol.atoms()[ai];
      if (a.map_index == 0) {
        // Unmapped atom of a mapped fragment: no product counterpart.
        changed.insert(static_cast<int>(ai));
        continue;
      }
      auto pit = pmaps.find(a.map_index);
      if (pit == pmaps.end()) {
        changed.insert(static_cast<int>(ai));  // leaving group
        continue;
      }
      const Atom &pa =
          product_side[pit->second.molecule]->atoms()[pit->second.atom];
      if (pa.formal_charge != a.formal_charge || pa.explicit_h != a.explicit_h)
        changed.insert(static_cast<int>(ai));
    }
    for (const ChangedBond &cb : center.changed_bonds) {
      for (std::uint16_t map : {cb.map_a, cb.map_b}) {
        auto rit = rmaps.find(map);
        if (rit != rmaps.end() && rit->second.molecule == static_cast<int>(mi))
          changed.insert(rit->second.atom);
      }
    }
    center.changed_atoms_by_molecule[mi].assign(changed.begin(), changed.end());
  }
  return center;
}

bool is_balanced(const ReactionRecord &r) {
  std::vector<const Molecule *> reactant_side, product_side;
  for (const Molecule &m : r.reactants) reactant_side.push_back(&m);
  for (const Molecule &m : r.products) product_side.push_back(&m);
  MapTable rmaps = side_maps(reactant_side);
  MapTable pmaps = side_maps(product_side);
  std::size_t reactant_atoms = 0, product_atoms = 0;
  for (const Molecule *m : reactant_side) reactant_atoms += m->atom_count();
  for (const Molecule *m : product_side) product_atoms += m->atom_count();
  if (rmaps.size() != reactant_atoms || pmaps.size() != product_atoms)
    return false;  // unmapped atoms somewhere
  for (const auto &[map, at] : rmaps) {
    (void)at;
    if (!pmaps.count(map)) return false;
  }
  return rmaps.size() == pmaps.size();
}

const Molecule &principal_product(const ReactionRecord &r) {
  const Molecule *best = &r.products.front();
  for (const Molecule &m : r.products) {
    if (m.heavy_atoms() > best->heavy_atoms() ||
        (m.heavy_atoms() == best->heavy_atoms() &&
         m.canonical_key() < best->canonical_key()))
      best = &m;
  }
  return *best;
}

} // namespace rxn
