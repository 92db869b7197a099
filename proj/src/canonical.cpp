#include "rxngraph/canonical.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>

#include "rxngraph/errors.hpp"
#include "rxngraph/molecule.hpp"

namespace rxn {

namespace {

// Dense ranks from arbitrary ordered keys; equal keys share a rank.
template <typename Key>
std::vector<int> dense_ranks(const std::vector<Key> &keys) {
  std::vector<int> order(keys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<int> ranks(keys.size(), 0);
  int rank = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && keys[order[i - 1]] < keys[order[i]]) ++rank;
    ranks[order[i]] = rank;
  }
  return ranks;
}

int class_count(const std::vector<int> &ranks) {
  return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
}

std::vector<int> initial_ranks(const Molecule &m) {
  using Key = std::tuple<int, int, int, int, int, std::vector<int>>;
  std::vector<Key> keys;
  keys.reserve(m.atom_count());
  for (std::size_t i = 0; i < m.atom_count(); ++i) {
    const Atom &a = m.atoms()[i];
    std::vector<int> orders;
    for (auto [nbr, order] : m.neighbors(i)) {
      (void)nbr;
      orders.push_back(static_cast<int>(order));
    }
    std::sort(orders.begin(), orders.end());
    keys.push_back({static_cast<int>(a.element), a.formal_charge, a.explicit_h,
                    a.aromatic ? 1 : 0, m.degree(i), std::move(orders)});
  }
  return dense_ranks(keys);
}

// One round of neighborhood refinement until the partition stops splitting.
std::vector<int> refine(const Molecule &m, std::vector<int> ranks) {
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  ranks = dense_ranks(ranks);  // individualization leaves gaps
  int classes = class_count(ranks);
  while (classes < static_cast<int>(m.atom_count())) {
    std::vector<Key> keys(m.atom_count());
    for (std::size_t i = 0; i < m.atom_count(); ++i) {
      std::vector<std::pair<int, int>> nbrs;
      for (auto [nbr, order] : m.neighbors(i))
        nbrs.push_back({static_cast<int>(order), ranks[nbr]});
      std::sort(nbrs.begin(), nbrs.end());
      keys[i] = {ranks[i], std::move(nbrs)};
    }
    std::vector<int> next = dense_ranks(keys);
    int next_classes = class_count(next);
    if (next_classes == classes) break;
    ranks = std::move(next);
    classes = next_classes;
  }
  return ranks;
}

char order_char(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return 's';
    case BondOrder::Double: return 'd';
    case BondOrder::Triple: return 't';
    case BondOrder::Aromatic: return 'a';
  }
  return 's';
}

// Serialize the graph under a discrete labeling atom -> rank.
std::string serialize(const Molecule &m, const std::vector<int> &ranks) {
  const std::size_t n = m.atom_count();
  std::vector<int> atom_of_rank(n);
  for (std::size_t i = 0; i < n; ++i) atom_of_rank[ranks[i]] = static_cast<int>(i);
  std::string out;
  out.reserve(n * 8);
  for (std::size_t r = 0; r < n; ++r) {
    const Atom &a = m.atoms()[atom_of_rank[r]];
    out += element_info(a.element).symbol;
    if (a.formal_charge != 0) {
      out += a.formal_charge > 0 ? '+' : '-';
      out += std::to_string(std::abs(a.formal_charge));
    }
    out += 'H';
    out += std::to_string(a.explicit_h);
    if (a.aromatic) out += '@';
    out += ';';
  }
  out += '|';
  std::vector<std::tuple<int, int, char>> bonds;
  for (const Bond &b : m.bonds()) {
    int ra = ranks[b.a], rb = ranks[b.b];
    if (ra > rb) std::swap(ra, rb);
    bonds.push_back({ra, rb, order_char(b.order)});
  }
  std::sort(bonds.begin(), bonds.end());
  for (auto [ra, rb, oc] : bonds) {
    out += std::to_string(ra);
    out += '-';
    out += std::to_string(rb);
    out += oc;
    out += ';';
  }
  return out;
}

constexpr std::size_t kLeafCap = 1u << 20;

struct SearchState {
  const Molecule &m;
  std::string best;
  std::vector<std::vector<int>> best_labelings;
  std::size_t label_cap;
  std::size_t leaves = 0;

  void visit(std::vector<int> ranks) {
    ranks = refine(m, ranks);
    if (class_count(ranks) == static_cast<int>(m.atom_count())) {
      if (++leaves > kLeafCap)
        throw Error("canonicalization exceeded search budget");
      std::string s = serialize(m, ranks);
      if (best.empty() || s < best) {
        best = std::move(s);
        best_labelings.clear();
        best_labelings.push_back(std::move(ranks));
      } else if (s == best) {
        if (best_labelings.size() < label_cap)
          best_labelings.push_back(std::move(ranks));
      }
      return;
    }
    // First non-singleton cell; individualize each member in turn.
    std::vector<int> counts(m.atom_count(), 0);
    for (int r : ranks) ++counts[r];
    int target = 0;
    while (counts[target] < 2) ++target;
    for (std::size_t i = 0; i < m.atom_count(); ++i) {
      if (ranks[i] != target) continue;
      std::vector<int> split(m.atom_count());
      for (std::size_t j = 0; j < m.atom_count(); ++j) {
        split[j] = 2 * ranks[j];
        if (ranks[j] == target && j != i) split[j] += 1;
      }
      visit(std::move(split));
    }
  }
};

SearchState run_search(const Molecule &m, std::size_t label_cap) {
  SearchState state{m, {}, {}, label_cap};
  state.visit(initial_ranks(m));
  return state;
}

} // namespace

std::vector<int> canonical_ranks(const Molecule &m) {
  return run_search(m, 1).best_labelings.front();
}

std::string canonical_key_for(const Molecule &m) {
  return run_search(m, 1).best;
}

std::vector<std::vector<int>> canonical_labelings(const Molecule &m,
                                                  std::size_t cap) {
  auto state = run_search(m, cap);
  if (state.best_labelings.size() >= cap)
    throw Error("automorphism enumeration exceeded cap");
  return std::move(state.best_labelings);
}

std::vector<int> normalized_atom_set(const Molecule &m,
                                     const std::vector<int> &atom_indices) {
  auto labelings = canonical_labelings(m);
  std::vector<int> best;
  for (const auto &ranks : labelings) {
    std::vector<int> image;
    image.reserve(atom_indices.size());
    for (int a : atom_indices) image.push_back(ranks[a]);
    std::sort(image.begin(), image.end());
    if (best.empty() && !atom_indices.empty()) {
      best = std::move(image);
    } else if (image < best) {
      best = std::move(image);
    }
  }
  return best;
}

} // namespace rxn
