#include "rxngraph/fingerprint.hpp"

#include <algorithm>
#include <cmath>

#include "rxngraph/errors.hpp"

namespace rxn {

std::string_view fp_variant_name(FpVariant v) {
  return v == FpVariant::Structural ? "structural" : "functional";
}

FpVariant fp_variant_from_name(std::string_view name) {
  if (name == "structural") return FpVariant::Structural;
  if (name == "functional") return FpVariant::Functional;
  throw Error("unknown fingerprint variant '" + std::string(name) + "'");
}

void CountedFingerprint::add(std::uint32_t feature, std::int32_t delta) {
  if (delta == 0) return;
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), feature,
      [](const auto &entry, std::uint32_t f) { return entry.first < f; });
  if (it != entries_.end() && it->first == feature) {
    it->second += delta;
    if (it->second == 0) entries_.erase(it);
  } else {
    entries_.insert(it, {feature, delta});
  }
}

CountedFingerprint &CountedFingerprint::operator+=(const CountedFingerprint &other) {
  for (const auto &[feature, count] : other.entries_) add(feature, count);
  return *this;
}

CountedFingerprint &CountedFingerprint::operator-=(const CountedFingerprint &other) {
  for (const auto &[feature, count] : other.entries_) add(feature, -count);
  return *this;
}

namespace {

// FNV-1a over a stream of 32-bit words; fixed constants, so feature ids are
// stable across platforms and runs.
struct Fnv32 {
  std::uint32_t state = 2166136261u;
  void feed(std::uint32_t word) {
    for (int shift = 0; shift < 32; shift += 8) {
      state ^= (word >> shift) & 0xffu;
      state *= 16777619u;
    }
  }
  std::uint32_t value() const { return state; }
};

std::uint32_t bond_code(BondOrder order) {
  return static_cast<std::uint32_t>(order);
}

bool is_halogen(const ElementInfo &info) {
  return info.symbol == "F" || info.symbol == "Cl" || info.symbol == "Br" ||
         info.symbol == "I";
}

std::uint32_t initial_invariant(const Molecule &m, std::size_t atom,
                                FpVariant variant) {
  const Atom &a = m.atoms()[atom];
  const ElementInfo &info = element_info(a.element);
  Fnv32 hash;
  if (variant == FpVariant::Structural) {
    hash.feed(0x5354u);  // tag
    hash.feed(a.element);
    hash.feed(static_cast<std::uint32_t>(a.formal_charge + 16));
    hash.feed(a.explicit_h);
    hash.feed(static_cast<std::uint32_t>(m.degree(atom)));
    hash.feed(m.in_ring(atom) ? 1u : 0u);
  } else {
    bool n_or_o = info.symbol == "N" || info.symbol == "O";
    bool donor = (n_or_o || info.symbol == "S") && a.explicit_h >= 1;
    bool acceptor = n_or_o && a.formal_charge <= 0;
    hash.feed(0x4643u);  // tag
    hash.feed(donor ? 1u : 0u);
    hash.feed(acceptor ? 1u : 0u);
    hash.feed(a.formal_charge > 0 ? 1u : (a.formal_charge < 0 ? 2u : 0u));
    hash.feed(a.aromatic ? 1u : 0u);
    hash.feed(is_halogen(info) ? 1u : 0u);
  }
  return hash.value();
}

} // namespace

CountedFingerprint molecule_fingerprint(const Molecule &m, int radius,
                                        FpVariant variant) {
  if (radius < 0 || radius > kMaxFpRadius)
    throw RadiusTooLarge("fingerprint radius must be in [0, " +
                         std::to_string(kMaxFpRadius) + "]");
  CountedFingerprint fp(variant, radius);
  const std::size_t n = m.atom_count();
  std::vector<std::uint32_t> features(n);
  for (std::size_t i = 0; i < n; ++i) {
    features[i] = initial_invariant(m, i, variant);
    fp.add(features[i], 1);
  }
  std::vector<std::uint32_t> next(n);
  for (int r = 1; r <= radius; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> env;
      for (auto [nbr, order] : m.neighbors(i))
        env.push_back({bond_code(order), features[nbr]});
      std::sort(env.begin(), env.end());
      Fnv32 hash;
      hash.feed(static_cast<std::uint32_t>(r));
      hash.feed(features[i]);
      for (const auto &[code, feature] : env) {
        hash.feed(code);
        hash.feed(feature);
      }
      next[i] = hash.value();
      fp.add(next[i], 1);
    }
    features.swap(next);
  }
  return fp;
}

CountedFingerprint reaction_fingerprint(const ReactionRecord &r, int radius,
                                        FpVariant variant) {
  CountedFingerprint fp(variant, radius);
  for (const Molecule &p : r.products)
    fp += molecule_fingerprint(p, radius, variant);
  for (const Molecule &m : r.reactants)
    fp -= molecule_fingerprint(m, radius, variant);
  return fp;
}

double tanimoto_continuous(const CountedFingerprint &a,
                           const CountedFingerprint &b) {
  if (a.variant() != b.variant() || a.radius() != b.radius())
    throw VariantMismatch("fingerprints differ in variant or radius");
  double dot = 0, norm_a = 0, norm_b = 0;
  const auto &ea = a.entries();
  const auto &eb = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
      norm_a += double(ea[i].second) * ea[i].second;
      ++i;
    } else if (i == ea.size() || eb[j].first < ea[i].first) {
      norm_b += double(eb[j].second) * eb[j].second;
      ++j;
    } else {
      dot += double(ea[i].second) * eb[j].second;
      norm_a += double(ea[i].second) * ea[i].second;
      norm_b += double(eb[j].second) * eb[j].second;
      ++i;
      ++j;
    }
  }
  double denominator = norm_a + norm_b - dot;
  if (denominator <= 0) return 0.0;  // only for empty-vs-empty in practice
  return std::clamp(dot / denominator, -1.0, 1.0);
}

} // namespace rxn
