#ifndef RXNGRAPH_FINGERPRINT_HPP
#define RXNGRAPH_FINGERPRINT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rxngraph/molecule.hpp"
#include "rxngraph/reaction.hpp"

namespace rxn {

enum class FpVariant : std::uint8_t { Structural = 0, Functional = 1 };

std::string_view fp_variant_name(FpVariant v);
FpVariant fp_variant_from_name(std::string_view name);

inline constexpr int kMaxFpRadius = 5;

// Sparse feature -> count vector. Molecule fingerprints have positive
// counts; reaction (difference) fingerprints may go negative.
class CountedFingerprint {
public:
  CountedFingerprint() = default;
  CountedFingerprint(FpVariant variant, int radius)
      : variant_(variant), radius_(radius) {}

  FpVariant variant() const { return variant_; }
  int radius() const { return radius_; }

  // Sorted by feature id; no zero counts stored.
  const std::vector<std::pair<std::uint32_t, std::int32_t>> &entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }

  void add(std::uint32_t feature, std::int32_t delta);
  CountedFingerprint &operator+=(const CountedFingerprint &other);
  CountedFingerprint &operator-=(const CountedFingerprint &other);

  bool operator==(const CountedFingerprint &other) const {
    return variant_ == other.variant_ && radius_ == other.radius_ &&
           entries_ == other.entries_;
  }

private:
  FpVariant variant_ = FpVariant::Structural;
  int radius_ = 2;
  std::vector<std::pair<std::uint32_t, std::int32_t>> entries_;
};

// Circular counted fingerprint: one feature per atom per radius level,
// grown by iteratively hashing sorted (bond order, neighbor feature) pairs.
// Structural initial invariants: element, charge, H count, degree, ring
// flag. Functional: donor/acceptor/charge-sign/aromatic/halogen classes.
CountedFingerprint molecule_fingerprint(const Molecule &m, int radius = 2,
                                        FpVariant variant = FpVariant::Structural);

// Difference fingerprint: sum over products minus sum over reactants.
// Agents never contribute.
CountedFingerprint reaction_fingerprint(const ReactionRecord &r, int radius = 2,
                                        FpVariant variant = FpVariant::Structural);

// Continuous Tanimoto score over the union of feature ids. Both-empty
// compares to 0. Clamped to [-1, 1] (difference vectors can go negative).
double tanimoto_continuous(const CountedFingerprint &a,
                           const CountedFingerprint &b);

} // namespace rxn

#endif
