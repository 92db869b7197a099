#include "rxngraph/search.hpp"

#include <algorithm>
#include <limits>

#include "rxngraph/errors.hpp"

namespace rxn {

void SearchParams::validate() const {
  if (tanimoto_threshold < 0.0 || tanimoto_threshold > 1.0)
    throw Error("tanimoto threshold must be in [0, 1]");
  if (max_paths < 1) throw Error("max_paths must be >= 1");
  if (max_length < 2 || max_length % 2 != 0)
    throw Error("max_length must be even and >= 2");
}

Parity classify_path(const Path &p) {
  int length = p.length();
  if (length < 0 || length % 2 != 0)
    throw OddLength("path length must be even, got " + std::to_string(length));
  return length % 4 == 2 ? Parity::Complementary : Parity::Analogous;
}

namespace {

// Per-slot reacting-site sets of `molecule` in `reaction`; empty when it is
// not a reactant there.
std::vector<const std::vector<int> *> slot_sets(const KnowledgeGraph &g,
                                                NodeId molecule,
                                                NodeId reaction) {
  std::vector<const std::vector<int> *> sets;
  const ReactionNode &node = g.reaction(reaction);
  for (std::size_t slot = 0; slot < node.reactants.size(); ++slot)
    if (node.reactants[slot] == molecule)
      sets.push_back(&node.reactant_changed[slot]);
  return sets;
}

bool intersects(const std::vector<int> &a, const std::vector<int> &b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else return true;
  }
  return false;
}

} // namespace

bool filter_common_atoms(const KnowledgeGraph &g, NodeId molecule,
                         NodeId reaction_prev, NodeId reaction_next,
                         Filter1Mode mode) {
  auto prev_sets = slot_sets(g, molecule, reaction_prev);
  auto next_sets = slot_sets(g, molecule, reaction_next);
  if (prev_sets.empty() || next_sets.empty())
    throw NotAReactant("molecule is not a reactant of both reactions");
  for (const auto *a : prev_sets) {
    if (a->empty()) continue;  // spectator: no reacting site to compare
    for (const auto *b : next_sets) {
      if (b->empty()) continue;
      if (mode == Filter1Mode::Equality ? *a == *b : intersects(*a, *b))
        return true;
    }
  }
  return false;
}

bool filter_center_similarity(const KnowledgeGraph &g, NodeId reaction_prev,
                              NodeId reaction_next,
                              const SearchParams &params) {
  double score = tanimoto_continuous(g.reaction(reaction_prev).rfp,
                                     g.reaction(reaction_next).rfp);
  return score > params.tanimoto_threshold;
}

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

// Backward breadth-first sweep from the target over reactant edges; the
// resulting distances are admissible bounds that prune the forward branch
// (the second frontier of the bidirectional search).
struct BackwardDistances {
  std::vector<int> molecule;  // even distances
  std::vector<int> reaction;  // odd distances

  BackwardDistances(const KnowledgeGraph &g, NodeId target, int max_length) {
    molecule.assign(g.molecule_count(), kUnreached);
    reaction.assign(g.reaction_count(), kUnreached);
    molecule[target] = 0;
    std::vector<NodeId> frontier{target};
    int depth = 0;
    while (!frontier.empty() && depth < max_length) {
      std::vector<NodeId> next;
      if (depth % 2 == 0) {
        for (NodeId m : frontier)
          for (NodeId r : g.reactions_where_reactant(m))
            if (reaction[r] == kUnreached) {
              reaction[r] = depth + 1;
              next.push_back(r);
            }
      } else {
        for (NodeId r : frontier)
          for (NodeId m : g.reaction(r).reactants)
            if (molecule[m] == kUnreached) {
              molecule[m] = depth + 1;
              next.push_back(m);
            }
      }
      frontier = std::move(next);
      ++depth;
    }
  }
};

struct Enumerator {
  const KnowledgeGraph &g;
  const SearchParams &params;
  NodeId target;
  const BackwardDistances &dist;

  std::vector<bool> on_path_molecule;
  std::vector<bool> on_path_reaction;
  std::vector<NodeId> sequence;
  std::vector<Path> *out = nullptr;
  int level = 0;

  Enumerator(const KnowledgeGraph &graph, const SearchParams &p, NodeId to,
             const BackwardDistances &d)
      : g(graph), params(p), target(to), dist(d) {
    on_path_molecule.assign(g.molecule_count(), false);
    on_path_reaction.assign(g.reaction_count(), false);
  }

  // Collect every filtered simple path of length exactly `level`.
  void run(NodeId from, int length, std::vector<Path> &paths) {
    level = length;
    out = &paths;
    sequence.clear();
    sequence.push_back(from);
    on_path_molecule[from] = true;
    extend(from, 0, kNoReaction);
    on_path_molecule[from] = false;
  }

  static constexpr NodeId kNoReaction = std::numeric_limits<NodeId>::max();

  void extend(NodeId at, int depth, NodeId prev_reaction) {
    for (NodeId r : g.reactions_where_reactant(at)) {
      if (on_path_reaction[r]) continue;
      if (dist.reaction[r] > level - depth - 1) continue;
      if (prev_reaction != kNoReaction) {
        if (!filter_common_atoms(g, at, prev_reaction, r, params.filter1))
          continue;
        if (!filter_center_similarity(g, prev_reaction, r, params)) continue;
      }
      on_path_reaction[r] = true;
      sequence.push_back(r);
      for (NodeId partner : g.reaction(r).reactants) {
        if (partner == at || on_path_molecule[partner]) continue;
        if (partner == target) {
          if (depth + 2 == level) {
            sequence.push_back(partner);
            out->push_back({sequence});
            sequence.pop_back();
          }
          continue;
        }
        if (depth + 2 >= level) continue;
        if (dist.molecule[partner] > level - depth - 2) continue;
        on_path_molecule[partner] = true;
        sequence.push_back(partner);
        extend(partner, depth + 2, r);
        sequence.pop_back();
        on_path_molecule[partner] = false;
      }
      sequence.pop_back();
      on_path_reaction[r] = false;
    }
  }
};

} // namespace

std::vector<Path> find_paths(const KnowledgeGraph &g, NodeId from, NodeId to,
                             const SearchParams &params) {
  params.validate();
  if (from >= g.molecule_count())
    throw UnknownMolecule("no molecule node " + std::to_string(from));
  if (to >= g.molecule_count())
    throw UnknownMolecule("no molecule node " + std::to_string(to));
  std::vector<Path> result;
  if (from == to) return result;

  BackwardDistances dist(g, to, params.max_length);
  if (dist.molecule[from] > params.max_length) return result;

  Enumerator enumerator(g, params, to, dist);
  for (int length = dist.molecule[from]; length <= params.max_length;
       length += 2) {
    std::vector<Path> level;
    enumerator.run(from, length, level);
    std::sort(level.begin(), level.end(),
              [](const Path &a, const Path &b) { return a.nodes < b.nodes; });
    result.insert(result.end(), std::make_move_iterator(level.begin()),
                  std::make_move_iterator(level.end()));
    if (result.size() >= static_cast<std::size_t>(params.max_paths)) {
      result.resize(params.max_paths);
      break;
    }
  }
  return result;
}

} // namespace rxn
