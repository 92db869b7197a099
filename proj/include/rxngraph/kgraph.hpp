#ifndef RXNGRAPH_KGRAPH_HPP
#define RXNGRAPH_KGRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rxngraph/fingerprint.hpp"
#include "rxngraph/molecule.hpp"
#include "rxngraph/reaction.hpp"

namespace rxn {

using NodeId = std::uint32_t;

struct FingerprintConfig {
  FpVariant variant = FpVariant::Structural;
  int radius = 2;
  bool operator==(const FingerprintConfig &) const = default;
};

// One reaction node: the full mapped record plus everything precomputed at
// ingest (molecule node links, per-slot reacting-site sets, difference
// fingerprint). Filter 1 compares reacting sites across records, so the
// per-slot changed-atom sets are stored renumbering-free: images under the
// molecule's canonical labeling, minimized over automorphisms.
struct ReactionNode {
  ReactionRecord record;
  std::vector<NodeId> reactants;                 // per slot
  std::vector<NodeId> products;
  std::vector<std::pair<NodeId, Role>> agents;
  std::vector<std::vector<int>> reactant_changed;  // per slot, normalized
  CountedFingerprint rfp;
};

struct IngestReport {
  std::size_t lines = 0;
  std::size_t reactions = 0;
  std::size_t molecules = 0;
  std::vector<std::pair<std::size_t, std::string>> skipped;  // line no, reason
};

struct GraphStats {
  std::size_t molecule_count = 0;
  std::size_t reaction_count = 0;
  std::map<Role, std::size_t> edges_by_role;
  std::map<int, std::size_t> molecule_degree_histogram;
  std::map<int, std::size_t> reaction_degree_histogram;
};

// The directed bipartite typed graph G = (M, R, E). Molecules are
// deduplicated by canonical key; reactions keep their slot structure.
// Frozen after ingest: all queries are read-only and lock-free.
class KnowledgeGraph {
public:
  KnowledgeGraph() = default;
  explicit KnowledgeGraph(FingerprintConfig fp) : fp_(fp) {}

  FingerprintConfig fp_config() const { return fp_; }

  std::size_t molecule_count() const { return molecules_.size(); }
  std::size_t reaction_count() const { return reactions_.size(); }

  const Molecule &molecule(NodeId id) const;
  const ReactionNode &reaction(NodeId id) const;

  std::optional<NodeId> find_molecule(const std::string &canonical_key) const;

  // Reactions adjacent to a molecule under a role filter (ascending ids).
  // Role::Product lists reactions producing the molecule.
  std::vector<NodeId> neighbors_of_molecule(NodeId molecule, Role role) const;
  // Molecules adjacent to a reaction under a role filter (ascending ids).
  std::vector<NodeId> neighbors_of_reaction(NodeId reaction, Role role) const;

  // Hot path for the search: reactions with a reactant edge to `molecule`,
  // ascending, no bounds check beyond the assert in debug builds.
  const std::vector<NodeId> &reactions_where_reactant(NodeId molecule) const {
    return mol_reactant_of_[molecule];
  }

  // Add one record; returns the reaction node id. Used by ingest and tests.
  NodeId add_record(ReactionRecord record);

  // External record ids seen so far, for leakage audits.
  const std::vector<std::string> &ingested_ids() const { return record_ids_; }

  GraphStats stats() const;

  void save(const std::string &path) const;
  static KnowledgeGraph load(const std::string &path);

  // Invariant audit used by tests: bipartite role structure, key dedup,
  // >= 1 reactant and product per reaction, sorted adjacency, fingerprints
  // matching a fresh recomputation for sampled reactions.
  void audit(std::size_t fingerprint_samples = 100) const;

private:
  friend class SyntheticGraphBuilder;

  FingerprintConfig fp_;
  std::vector<Molecule> molecules_;
  std::map<std::string, NodeId> molecule_by_key_;
  std::vector<ReactionNode> reactions_;
  std::vector<std::string> record_ids_;

  // Adjacency: per molecule node, reaction ids per role.
  std::vector<std::vector<NodeId>> mol_reactant_of_;
  std::vector<std::vector<NodeId>> mol_product_of_;
  std::vector<std::vector<std::pair<NodeId, Role>>> mol_agent_of_;

  NodeId intern_molecule(const Molecule &m);
};

// Ingest a whole corpus stream (one record line per row). Malformed lines
// become report entries, never failures. Throws EmptyInput for an empty
// stream and IoError for unreadable files.
KnowledgeGraph ingest(std::istream &in, IngestReport &report,
                      FingerprintConfig fp = {});
KnowledgeGraph ingest_file(const std::string &path, IngestReport &report,
                           FingerprintConfig fp = {});

// Test/benchmark helper: build graphs with hand-picked reacting-site sets
// and fingerprints, bypassing chemistry. Molecule identities are synthetic
// single-atom-chain placeholders.
class SyntheticGraphBuilder {
public:
  explicit SyntheticGraphBuilder(FingerprintConfig fp = {});
  // Returns the molecule id; placeholder structure derived from the index.
  NodeId add_molecule();
  // A reaction with the given reactant slots; per-slot changed sets are
  // taken as already-normalized site labels; fingerprint entries given raw.
  NodeId add_reaction(const std::vector<NodeId> &reactant_slots,
                      const std::vector<std::vector<int>> &changed_sets,
                      const std::vector<std::pair<std::uint32_t, std::int32_t>> &rfp,
                      const std::vector<NodeId> &products = {});
  KnowledgeGraph build();

private:
  KnowledgeGraph graph_;
  std::size_t next_molecule_ = 0;
};

} // namespace rxn

#endif
