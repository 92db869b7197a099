#ifndef RXNGRAPH_ELEMENT_HPP
#define RXNGRAPH_ELEMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rxn {

// Fixed supported element set: organic subset plus the metals and halogens
// that show up in coupling chemistry. Anything else is a parse error.
struct ElementInfo {
  std::string_view symbol;
  std::uint8_t atomic_number;
  // Valences used to fill implicit hydrogens on organic-subset atoms.
  // Empty list means "never add implicit hydrogens" (metals, bracket-only).
  std::vector<std::uint8_t> default_valences;
  bool organic_subset;  // may be written without brackets
  bool aromatic_ok;     // may carry the aromatic flag
};

// Index into the element table; not the atomic number.
using ElementId = std::uint8_t;

const std::vector<ElementInfo> &element_table();

// Lookup by exact symbol ("Cl", "Br", "C", ...). Returns nullopt if the
// symbol is not in the supported set.
std::optional<ElementId> element_from_symbol(std::string_view symbol);

const ElementInfo &element_info(ElementId id);

// Maximum plausible total valence (bond order sum + explicit hydrogens) used
// to reject impossible half-reaction merges. Positive charge buys one extra
// bond for C/N/O/P/S/B; metals get a permissive cap.
int max_valence(ElementId id, int formal_charge);

} // namespace rxn

#endif
