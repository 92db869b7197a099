#ifndef RXNGRAPH_SEARCH_HPP
#define RXNGRAPH_SEARCH_HPP

#include <cstdint>
#include <vector>

#include "rxngraph/kgraph.hpp"

namespace rxn {

enum class Parity : std::uint8_t { Complementary = 0, Analogous = 1 };

enum class Filter1Mode : std::uint8_t { Equality = 0, Intersection = 1 };

struct SearchParams {
  double tanimoto_threshold = 0.2;
  int max_paths = 1000;
  int max_length = 10;  // even
  Filter1Mode filter1 = Filter1Mode::Equality;

  void validate() const;
};

// Alternating molecule/reaction node sequence. Even positions (0-based) are
// molecule ids, odd positions reaction ids; every (molecule, reaction) step
// is a reactant edge. Length = edge count = nodes.size() - 1, always even.
struct Path {
  std::vector<NodeId> nodes;

  int length() const { return static_cast<int>(nodes.size()) - 1; }
  bool operator==(const Path &) const = default;
};

// Eq-parity rule: L = 4n+2 -> complementary, L = 4n -> analogous.
Parity classify_path(const Path &p);

// Filter 1: the reacting-site atom set of `molecule` in the two flanking
// reactions must be the same non-empty set (or overlap, in intersection
// mode). Throws NotAReactant if the molecule is not a reactant of both.
bool filter_common_atoms(const KnowledgeGraph &g, NodeId molecule,
                         NodeId reaction_prev, NodeId reaction_next,
                         Filter1Mode mode = Filter1Mode::Equality);

// Filter 2: strict Tanimoto threshold on the two difference fingerprints.
bool filter_center_similarity(const KnowledgeGraph &g, NodeId reaction_prev,
                              NodeId reaction_next, const SearchParams &params);

// All simple alternating reactant-edge paths between two molecules, both
// filters applied at every interior molecule, bidirectional frontier
// pruning, capped at max_paths with shorter paths kept preferentially.
// Deterministic order: ascending length, then lexicographic node ids.
// Returns an empty list when no path exists.
std::vector<Path> find_paths(const KnowledgeGraph &g, NodeId from, NodeId to,
                             const SearchParams &params = {});

} // namespace rxn

#endif
