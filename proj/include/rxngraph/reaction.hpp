#ifndef RXNGRAPH_REACTION_HPP
#define RXNGRAPH_REACTION_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "rxngraph/molecule.hpp"

namespace rxn {

enum class Role : std::uint8_t { Reactant = 0, Reagent = 1, Catalyst = 2, Solvent = 3, Product = 4 };

std::string_view role_name(Role role);
// Unknown names default to Reagent.
Role role_from_name(std::string_view name);

// One published reaction: atom-mapped reactant/product molecules plus agents.
struct ReactionRecord {
  std::string id;
  int year = 0;
  std::vector<Molecule> reactants;
  std::vector<std::pair<Molecule, Role>> agents;  // reagent/catalyst/solvent
  std::vector<Molecule> products;
};

// Earliest plausible publication year for a literature reaction.
inline constexpr int kMinYear = 1771;

// Parse one corpus line: `id<TAB>year<TAB>reactants>agents>products<TAB>roles`
// (roles column optional, comma separated, aligned with agent fragments).
// Validates map uniqueness per side, product maps appearing on the reactant
// side, the year range, and >= 1 reactant and product.
ReactionRecord parse_reaction_line(std::string_view line);

// Reaction SMILES only (`reactants>agents>products`), roles all Reagent.
ReactionRecord parse_reaction_smiles(std::string_view text, std::string id = "",
                                     int year = kMinYear);

std::string write_reaction_smiles(const ReactionRecord &r);

enum class BondChange : std::uint8_t { Formed = 0, Broken = 1, OrderChanged = 2 };

struct ChangedBond {
  std::uint16_t map_a;  // map_a < map_b
  std::uint16_t map_b;
  BondChange change;
  auto operator<=>(const ChangedBond &) const = default;
};

// Bonds formed/broken/order-changed between the two sides, plus the reactant
// atoms involved (indices into each reactant molecule).
struct ReactionCenter {
  std::set<ChangedBond> changed_bonds;
  // Per reactant (same order as record.reactants): sorted changed atom indices.
  std::vector<std::vector<int>> changed_atoms_by_molecule;
};

// Extract the reaction center by comparing mapped bonds and atom attributes
// across the two sides. Reactant atoms with no product-side counterpart
// (leaving groups, and unmapped atoms of partly mapped fragments) count as
// changed; fragments with no mapped atom at all are spectators and
// contribute nothing. Throws NoMappingError if the sides share no maps.
ReactionCenter reaction_center(const ReactionRecord &r);

// True when every reactant atom has a product-side counterpart and vice
// versa (heavy atoms fully mapped on both sides).
bool is_balanced(const ReactionRecord &r);

// Largest product by heavy-atom count; ties broken by canonical key.
const Molecule &principal_product(const ReactionRecord &r);

} // namespace rxn

#endif
