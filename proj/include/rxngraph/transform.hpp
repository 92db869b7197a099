#ifndef RXNGRAPH_TRANSFORM_HPP
#define RXNGRAPH_TRANSFORM_HPP

#include <cstdint>
#include <set>
#include <vector>

#include "rxngraph/kgraph.hpp"
#include "rxngraph/search.hpp"

namespace rxn {

// One reactant's share of a binary reaction: edits to its own atoms, the
// atoms it loses, and the bonds it forms to the partner in the product.
struct HalfReaction {
  Molecule owner;  // the record's reactant instance (atom maps intact)

  struct AtomEdit {
    int atom;
    std::int8_t charge;
    std::uint8_t explicit_h;
    bool aromatic;
  };
  struct BondEdit {
    int a;
    int b;
    BondOrder order;        // product-side order (ignored for Broken)
    BondChange change;
  };

  std::vector<AtomEdit> atom_edits;        // product-side values
  std::vector<BondEdit> internal_changes;  // both endpoints persist
  std::vector<std::pair<int, BondOrder>> interface_bonds;
  std::vector<int> lost_atoms;             // no product-side counterpart
};

struct Prediction {
  Molecule product;
  std::vector<Path> supporting_paths;
  std::set<std::pair<NodeId, Role>> conditions;
  int score = 0;  // = supporting path count
};

// Split a binary reaction at the given reactant slot. Throws NotBinary for
// anything but exactly two reactant molecules, NotAReactant for a bad slot,
// NoMappingError when the record's sides share no maps.
HalfReaction derive_half_reaction(const ReactionRecord &r, std::size_t slot);

// Merge two half reactions: apply internal edits, drop lost atoms, join
// interface bonds across the fragments. Interface bond order multisets must
// match, otherwise the halves are incompatible and the result is empty.
// Ambiguous pairings are enumerated exhaustively; pairings that would
// overflow an atom's valence are dropped. Products are deduplicated by
// canonical key, maps stripped, each resulting fragment its own molecule.
std::vector<Molecule> merge_half_reactions(const HalfReaction &h1,
                                           const HalfReaction &h2);

// Eq-style product prediction: each complementary path contributes the
// merge of the first reaction's half of `from` with the last reaction's
// half of `to`; products grouped by canonical key, score = supporting path
// count, conditions = union of the supporting paths' condition sets.
// Sorted by descending score, then canonical key.
std::vector<Prediction> predict_products(const KnowledgeGraph &g, NodeId from,
                                         NodeId to,
                                         const std::vector<Path> &paths);

// Upper-bound mode: merge every known half reaction of `from` with every
// known half reaction of `to`, no path search. Sorted by canonical key.
std::vector<Molecule> enumerate_all_merges(const KnowledgeGraph &g,
                                           NodeId from, NodeId to);

// Condition prediction: union of the reagent/catalyst/solvent edge sets of
// the path's first and last reactions. Throws NotComplementary for
// analogous paths.
std::set<std::pair<NodeId, Role>> predict_conditions(const KnowledgeGraph &g,
                                                     const Path &p);

} // namespace rxn

#endif
