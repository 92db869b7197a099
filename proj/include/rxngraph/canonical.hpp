#ifndef RXNGRAPH_CANONICAL_HPP
#define RXNGRAPH_CANONICAL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rxn {

class Molecule;

// Canonical atom ranks 0..n-1, invariant under atom renumbering. Iterative
// neighborhood refinement with deterministic tie-breaking: ties are split by
// individualizing each candidate in the first non-singleton cell and keeping
// the labeling whose serialized form is lexicographically smallest.
// Map indices are ignored throughout.
std::vector<int> canonical_ranks(const Molecule &m);

// Canonical identity key: the serialization of the canonically ranked graph.
std::string canonical_key_for(const Molecule &m);

// All atom->rank labelings that achieve the canonical serialization, i.e. the
// canonical labeling composed with each graph automorphism. Capped; chemical
// graphs stay far below the cap.
std::vector<std::vector<int>> canonical_labelings(const Molecule &m,
                                                  std::size_t cap = 512);

// Lexicographically smallest image of an atom-index set over all canonical
// labelings: a renumbering-stable name for "these atoms of this molecule".
// Used to compare reacting-site sets coming from different reaction records.
std::vector<int> normalized_atom_set(const Molecule &m,
                                     const std::vector<int> &atom_indices);

} // namespace rxn

#endif
