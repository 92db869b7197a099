#ifndef RXNGRAPH_MOLECULE_HPP
#define RXNGRAPH_MOLECULE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rxngraph/element.hpp"

namespace rxn {

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

// Twice the integer bond order; aromatic counts 1.5. Used for valence sums.
int bond_order_twice(BondOrder order);

struct Atom {
  ElementId element = 0;
  std::int8_t formal_charge = 0;
  std::uint8_t explicit_h = 0;  // hydrogens are counts, never graph nodes
  bool aromatic = false;
  std::uint16_t map_index = 0;  // 0 = unmapped
};

struct Bond {
  std::uint16_t a = 0;
  std::uint16_t b = 0;
  BondOrder order = BondOrder::Single;
};

// A connected molecular graph. Atom order is whatever the source gave us;
// canonical_key() is independent of it.
class Molecule {
public:
  Molecule() = default;
  // Validates bond endpoints, duplicate bonds and connectivity, then
  // computes the canonical key.
  Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds);

  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }
  std::size_t atom_count() const { return atoms_.size(); }
  const std::string &canonical_key() const { return key_; }

  // Neighbor list as (atom index, bond order) pairs, ascending by index.
  const std::vector<std::pair<std::uint16_t, BondOrder>> &
  neighbors(std::size_t atom) const {
    return adjacency_[atom];
  }

  int degree(std::size_t atom) const {
    return static_cast<int>(adjacency_[atom].size());
  }

  // Sum of twice-bond-orders plus twice explicit hydrogens.
  int valence_twice(std::size_t atom) const;

  bool in_ring(std::size_t atom) const { return in_ring_[atom]; }

  // Copy with all map indices cleared.
  Molecule without_maps() const;

  // Heavy-atom count (hydrogens are never nodes, so this is atom_count()).
  std::size_t heavy_atoms() const { return atoms_.size(); }

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<std::pair<std::uint16_t, BondOrder>>> adjacency_;
  std::vector<bool> in_ring_;
  std::string key_;

  void build_indices();
};

} // namespace rxn

#endif
