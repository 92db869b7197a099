#ifndef RXNGRAPH_EVAL_HPP
#define RXNGRAPH_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rxngraph/kgraph.hpp"
#include "rxngraph/search.hpp"

namespace rxn {

struct EvalOutcome {
  std::string id;
  bool correct = false;
  std::size_t predicted_count = 0;
  std::string flag;  // empty, or why the reaction could not be attempted
  bool multi_product = false;
};

struct EvalReport {
  std::size_t total = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;  // 0 with empty_warning for an empty test set
  bool empty_warning = false;
  double median_predicted = 0.0;
  double mean_predicted = 0.0;
  std::vector<EvalOutcome> outcomes;
};

// year < cutoff goes to train, the rest to test.
std::pair<std::vector<ReactionRecord>, std::vector<ReactionRecord>>
time_split(std::vector<ReactionRecord> records, int cutoff_year);

// Forward prediction over a frozen training graph: paths + half-reaction
// merges per test reaction; correct iff the recorded principal product's
// canonical key appears among the predictions. Test reactions whose
// reactants are missing from the graph (or that are not binary) are counted
// incorrect and flagged.
EvalReport evaluate_forward(const KnowledgeGraph &g_train,
                            const std::vector<ReactionRecord> &test,
                            const SearchParams &params = {});

// A reaction rule: the reaction-center environment of both reactants out to
// `radius` bonds, plus the bond/atom edits and cross bonds to apply.
struct ReactionTemplate {
  struct PatternAtom {
    Atom atom;          // element/charge/H/aromatic to match (map unused)
    bool complete;      // interior atom: target degree must match exactly
    bool lost;
    bool has_edit;
    std::int8_t new_charge;
    std::uint8_t new_h;
    bool new_aromatic;
  };
  struct HalfBondEdit {
    int a;
    int b;
    BondOrder order;
    BondChange change;
  };
  struct Side {
    std::vector<PatternAtom> atoms;
    std::vector<Bond> bonds;
    std::vector<HalfBondEdit> bond_edits;
    std::vector<int> core;  // changed-atom indices
  };

  Side left, right;
  std::vector<std::tuple<int, int, BondOrder>> cross_bonds;
  std::string key;        // canonical serialization, used for dedup
  std::string source_id;  // record the template came from
};

// Deterministic template extraction with dedup; binary mapped records only,
// records with no changes are skipped. Every template reproduces its own
// source principal product (tested property).
std::vector<ReactionTemplate> extract_templates(
    const std::vector<ReactionRecord> &records, int radius = 1);

// All products from all matching templates over an (a, b) reactant pair,
// both orientations, deduplicated by canonical key, sorted.
std::vector<Molecule> apply_templates(
    const std::vector<ReactionTemplate> &templates, const Molecule &a,
    const Molecule &b);

// Test reactions whose recorded principal product is NOT reachable by any
// template: the "novel reaction type" subset.
std::vector<ReactionRecord> novel_type_split(
    const std::vector<ReactionRecord> &test,
    const std::vector<ReactionTemplate> &templates);

struct NegativeOutcome {
  std::string id;
  std::size_t wrong_products = 0;
  std::size_t rejected = 0;
};

struct NegativeReport {
  std::size_t wrong_total = 0;
  std::size_t rejected_total = 0;
  double rejection_rate = 0.0;
  std::vector<NegativeOutcome> outcomes;
};

// Wrong-product rejection: template-generated products other than the
// recorded one must not show up in the path model's predictions.
NegativeReport negative_validation(const KnowledgeGraph &g_train,
                                   const std::vector<ReactionRecord> &test,
                                   const std::vector<ReactionTemplate> &templates,
                                   const SearchParams &params = {});

// Rule-based baseline: correct iff the recorded principal product appears
// among the template products of the reactant pair.
EvalReport evaluate_rule_baseline(const std::vector<ReactionTemplate> &templates,
                                  const std::vector<ReactionRecord> &test);

// Pick a product uniformly from the multiset of all test products.
EvalReport random_baseline(const std::vector<ReactionRecord> &test,
                           std::uint64_t seed);

struct ScalingPoint {
  double fraction = 0.0;
  std::size_t edges = 0;
  double accuracy = 0.0;
};

// Nested random subsets of train (same seed => nested), evaluated against a
// fixed test set; supports the accuracy-vs-graph-size study.
std::vector<ScalingPoint> scaling_study(const std::vector<ReactionRecord> &train,
                                        const std::vector<double> &fractions,
                                        const std::vector<ReactionRecord> &test,
                                        const SearchParams &params,
                                        std::uint64_t seed,
                                        FingerprintConfig fp = {});

} // namespace rxn

#endif
