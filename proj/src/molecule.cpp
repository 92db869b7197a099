#include "rxngraph/molecule.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "rxngraph/canonical.hpp"
#include "rxngraph/errors.hpp"

namespace rxn {

int bond_order_twice(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return 2;
    case BondOrder::Double: return 4;
    case BondOrder::Triple: return 6;
    case BondOrder::Aromatic: return 3;
  }
  return 2;
}

Molecule::Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  const std::size_t n = atoms_.size();
  if (n == 0) throw Error("molecule must have at least one atom");
  std::set<std::pair<std::uint16_t, std::uint16_t>> seen;
  for (auto &b : bonds_) {
    if (b.a >= n || b.b >= n || b.a == b.b)
      throw Error("bond endpoints must be distinct valid atom indices");
    if (b.a > b.b) std::swap(b.a, b.b);
    if (!seen.insert({b.a, b.b}).second)
      throw Error("duplicate bond between atom pair");
  }
  std::sort(bonds_.begin(), bonds_.end(), [](const Bond &x, const Bond &y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  build_indices();

  // Connectivity check.
  std::vector<bool> reached(n, false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t at = stack.back();
    stack.pop_back();
    for (auto [nbr, order] : adjacency_[at]) {
      (void)order;
      if (!reached[nbr]) {
        reached[nbr] = true;
        ++count;
        stack.push_back(nbr);
      }
    }
  }
  if (count != n) throw Error("molecule graph must be connected");

  key_ = canonical_key_for(*this);
}

void Molecule::build_indices() {
  const std::size_t n = atoms_.size();
  adjacency_.assign(n, {});
  for (const Bond &b : bonds_) {
    adjacency_[b.a].push_back({b.b, b.order});
    adjacency_[b.b].push_back({b.a, b.order});
  }
  for (auto &nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  // Ring membership: an atom is in a ring iff it touches a non-bridge edge.
  in_ring_.assign(n, false);
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  // Iterative Tarjan bridge search; parent edge tracked by bond index.
  struct Frame {
    std::size_t at;
    int parent_bond;
    std::size_t next;
  };
  std::vector<int> bond_id(n, -1);
  std::vector<std::vector<std::pair<std::uint16_t, int>>> adj_with_bond(n);
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    adj_with_bond[bonds_[i].a].push_back({bonds_[i].b, static_cast<int>(i)});
    adj_with_bond[bonds_[i].b].push_back({bonds_[i].a, static_cast<int>(i)});
  }
  (void)bond_id;
  std::vector<bool> bridge(bonds_.size(), false);
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame &f = stack.back();
      if (f.next < adj_with_bond[f.at].size()) {
        auto [to, bidx] = adj_with_bond[f.at][f.next++];
        if (bidx == f.parent_bond) continue;
        if (disc[to] != -1) {
          low[f.at] = std::min(low[f.at], disc[to]);
        } else {
          disc[to] = low[to] = timer++;
          stack.push_back({to, bidx, 0});
        }
      } else {
        std::size_t at = f.at;
        int pbond = f.parent_bond;
        stack.pop_back();
        if (!stack.empty()) {
          std::size_t parent = stack.back().at;
          low[parent] = std::min(low[parent], low[at]);
          if (low[at] > disc[parent]) bridge[pbond] = true;
        }
      }
    }
  }
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    if (!bridge[i]) {
      in_ring_[bonds_[i].a] = true;
      in_ring_[bonds_[i].b] = true;
    }
  }
}

int Molecule::valence_twice(std::size_t atom) const {
  int sum = 2 * atoms_[atom].explicit_h;
  for (auto [nbr, order] : adjacency_[atom]) {
    (void)nbr;
    sum += bond_order_twice(order);
  }
  return sum;
}

Molecule Molecule::without_maps() const {
  std::vector<Atom> atoms = atoms_;
  for (Atom &a : atoms) a.map_index = 0;
  return Molecule(std::move(atoms), bonds_);
}

} // namespace rxn
