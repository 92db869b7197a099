#ifndef RXNGRAPH_SMILES_HPP
#define RXNGRAPH_SMILES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "rxngraph/molecule.hpp"

namespace rxn {

// Parse a SMILES string into one Molecule per connected fragment (dots split
// fragments). Supported subset: organic-subset atoms, bracket atoms with
// charge / H count / atom map, ring closures (digits and %nn), branches,
// bond symbols - = # :, aromatic lowercase atoms. Explicit [H] atoms are
// folded into the neighbor's hydrogen count. Stereo markers and isotopes
// raise UnsupportedFeature; everything else malformed raises SyntaxError
// with a byte offset.
std::vector<Molecule> parse_smiles(std::string_view text);

// Serialize one molecule. Output re-parses to an identical canonical key.
// Atoms are emitted in canonical order, so equal molecules (up to atom maps)
// serialize identically.
std::string write_smiles(const Molecule &m);

// Canonical identity key; equal for isomorphic molecular graphs regardless
// of atom order, map indices ignored.
std::string canonical_key(const Molecule &m);

} // namespace rxn

#endif
