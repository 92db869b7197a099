#include "rxngraph/element.hpp"

#include <algorithm>

namespace rxn {

const std::vector<ElementInfo> &element_table() {
  static const std::vector<ElementInfo> table = {
      // symbol, Z, default valences, organic subset, aromatic ok
      {"H", 1, {1}, false, false},
      {"B", 5, {3}, true, true},
      {"C", 6, {4}, true, true},
      {"N", 7, {3, 5}, true, true},
      {"O", 8, {2}, true, true},
      {"F", 9, {1}, true, false},
      {"Si", 14, {4}, false, false},
      {"P", 15, {3, 5}, true, true},
      {"S", 16, {2, 4, 6}, true, true},
      {"Cl", 17, {1}, true, false},
      {"Br", 35, {1}, true, false},
      {"I", 53, {1}, true, false},
      {"Li", 3, {}, false, false},
      {"Na", 11, {}, false, false},
      {"K", 19, {}, false, false},
      {"Mg", 12, {}, false, false},
      {"Ca", 20, {}, false, false},
      {"Zn", 30, {}, false, false},
      {"Cu", 29, {}, false, false},
      {"Pd", 46, {}, false, false},
      {"Ni", 28, {}, false, false},
      {"Fe", 26, {}, false, false},
      {"Sn", 50, {}, false, false},
      {"Al", 13, {}, false, false},
      {"Cs", 55, {}, false, false},
      {"Ag", 47, {}, false, false},
      {"Au", 79, {}, false, false},
      {"Rh", 45, {}, false, false},
      {"Ru", 44, {}, false, false},
      {"Ir", 77, {}, false, false},
      {"Pt", 78, {}, false, false},
      {"Mn", 25, {}, false, false},
      {"Cr", 24, {}, false, false},
      {"Ti", 22, {}, false, false},
      {"Se", 34, {2, 4, 6}, false, true},
  };
  return table;
}

std::optional<ElementId> element_from_symbol(std::string_view symbol) {
  const auto &table = element_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].symbol == symbol) return static_cast<ElementId>(i);
  }
  return std::nullopt;
}

const ElementInfo &element_info(ElementId id) { return element_table()[id]; }

int max_valence(ElementId id, int formal_charge) {
  const ElementInfo &info = element_info(id);
  if (info.default_valences.empty()) return 8;  // metals: permissive
  int base = info.default_valences.back();
  if (formal_charge > 0) base += formal_charge;
  if (formal_charge < 0 && info.symbol != "O" && info.symbol != "S")
    base += formal_charge;  // anions of C/N lose a bond slot; O/S keep two
  return std::max(base, 0);
}

} // namespace rxn
