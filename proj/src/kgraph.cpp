#include "rxngraph/kgraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

#include "rxngraph/canonical.hpp"
#include "rxngraph/errors.hpp"

namespace rxn {

const Molecule &KnowledgeGraph::molecule(NodeId id) const {
  if (id >= molecules_.size())
    throw UnknownNode("no molecule node " + std::to_string(id));
  return molecules_[id];
}

const ReactionNode &KnowledgeGraph::reaction(NodeId id) const {
  if (id >= reactions_.size())
    throw UnknownNode("no reaction node " + std::to_string(id));
  return reactions_[id];
}

std::optional<NodeId> KnowledgeGraph::find_molecule(
    const std::string &canonical_key) const {
  auto it = molecule_by_key_.find(canonical_key);
  if (it == molecule_by_key_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> KnowledgeGraph::neighbors_of_molecule(NodeId molecule,
                                                          Role role) const {
  if (molecule >= molecules_.size())
    throw UnknownNode("no molecule node " + std::to_string(molecule));
  switch (role) {
    case Role::Reactant: return mol_reactant_of_[molecule];
    case Role::Product: return mol_product_of_[molecule];
    default: break;
  }
  std::vector<NodeId> out;
  for (const auto &[reaction, agent_role] : mol_agent_of_[molecule])
    if (agent_role == role) out.push_back(reaction);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NodeId> KnowledgeGraph::neighbors_of_reaction(NodeId reaction,
                                                          Role role) const {
  if (reaction >= reactions_.size())
    throw UnknownNode("no reaction node " + std::to_string(reaction));
  const ReactionNode &node = reactions_[reaction];
  std::vector<NodeId> out;
  switch (role) {
    case Role::Reactant: out = node.reactants; break;
    case Role::Product: out = node.products; break;
    default:
      for (const auto &[mol, agent_role] : node.agents)
        if (agent_role == role) out.push_back(mol);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NodeId KnowledgeGraph::intern_molecule(const Molecule &m) {
  auto it = molecule_by_key_.find(m.canonical_key());
  if (it != molecule_by_key_.end()) return it->second;
  NodeId id = static_cast<NodeId>(molecules_.size());
  molecules_.push_back(m.without_maps());
  molecule_by_key_[m.canonical_key()] = id;
  mol_reactant_of_.emplace_back();
  mol_product_of_.emplace_back();
  mol_agent_of_.emplace_back();
  return id;
}

NodeId KnowledgeGraph::add_record(ReactionRecord record) {
  // Everything that can fail must fail before the graph is touched.
  ReactionCenter center = reaction_center(record);
  CountedFingerprint rfp = reaction_fingerprint(record, fp_.radius, fp_.variant);

  ReactionNode node;
  node.rfp = std::move(rfp);
  node.reactant_changed.resize(record.reactants.size());
  for (std::size_t slot = 0; slot < record.reactants.size(); ++slot)
    node.reactant_changed[slot] = normalized_atom_set(
        record.reactants[slot], center.changed_atoms_by_molecule[slot]);

  NodeId rid = static_cast<NodeId>(reactions_.size());
  for (const Molecule &m : record.reactants) {
    NodeId mid = intern_molecule(m);
    node.reactants.push_back(mid);
    mol_reactant_of_[mid].push_back(rid);
  }
  for (const Molecule &m : record.products) {
    NodeId mid = intern_molecule(m);
    node.products.push_back(mid);
    mol_product_of_[mid].push_back(rid);
  }
  for (const auto &[m, role] : record.agents) {
    NodeId mid = intern_molecule(m);
    node.agents.push_back({mid, role});
    mol_agent_of_[mid].push_back({rid, role});
  }
  record_ids_.push_back(record.id);
  node.record = std::move(record);
  reactions_.push_back(std::move(node));

  // Keep adjacency sorted and duplicate-free (a molecule can fill two slots
  // of one reaction; the edge index lists the reaction once).
  for (NodeId mid : reactions_.back().reactants) {
    auto &vec = mol_reactant_of_[mid];
    std::sort(vec.begin(), vec.end());
    vec.erase(std::unique(vec.begin(), vec.end()), vec.end());
  }
  for (NodeId mid : reactions_.back().products) {
    auto &vec = mol_product_of_[mid];
    std::sort(vec.begin(), vec.end());
    vec.erase(std::unique(vec.begin(), vec.end()), vec.end());
  }
  return rid;
}

GraphStats KnowledgeGraph::stats() const {
  GraphStats s;
  s.molecule_count = molecules_.size();
  s.reaction_count = reactions_.size();
  for (Role role : {Role::Reactant, Role::Reagent, Role::Catalyst,
                    Role::Solvent, Role::Product})
    s.edges_by_role[role] = 0;
  for (const ReactionNode &node : reactions_) {
    s.edges_by_role[Role::Reactant] += node.reactants.size();
    s.edges_by_role[Role::Product] += node.products.size();
    for (const auto &[mol, role] : node.agents) {
      (void)mol;
      s.edges_by_role[role] += 1;
    }
    int degree = static_cast<int>(node.reactants.size() +
                                  node.products.size() + node.agents.size());
    s.reaction_degree_histogram[degree] += 1;
  }
  for (std::size_t i = 0; i < molecules_.size(); ++i) {
    int degree = static_cast<int>(mol_reactant_of_[i].size() +
                                  mol_product_of_[i].size() +
                                  mol_agent_of_[i].size());
    s.molecule_degree_histogram[degree] += 1;
  }
  return s;
}

void KnowledgeGraph::audit(std::size_t fingerprint_samples) const {
  std::set<std::string> keys;
  for (const Molecule &m : molecules_)
    if (!keys.insert(m.canonical_key()).second)
      throw Error("audit: duplicate molecule canonical key");
  for (std::size_t i = 0; i < reactions_.size(); ++i) {
    const ReactionNode &node = reactions_[i];
    if (node.reactants.empty() || node.products.empty())
      throw Error("audit: reaction without reactant or product edge");
    for (NodeId mid : node.reactants) {
      if (mid >= molecules_.size()) throw Error("audit: edge to missing node");
      const auto &vec = mol_reactant_of_[mid];
      if (!std::binary_search(vec.begin(), vec.end(), static_cast<NodeId>(i)))
        throw Error("audit: reactant adjacency out of sync");
    }
    for (NodeId mid : node.products) {
      const auto &vec = mol_product_of_[mid];
      if (!std::binary_search(vec.begin(), vec.end(), static_cast<NodeId>(i)))
        throw Error("audit: product adjacency out of sync");
    }
    if (node.reactant_changed.size() != node.record.reactants.size())
      throw Error("audit: changed-set table out of sync");
  }
  // Precomputed fingerprints must match fresh recomputation.
  std::mt19937 rng(12345);
  std::size_t samples = std::min(fingerprint_samples, reactions_.size());
  for (std::size_t k = 0; k < samples; ++k) {
    std::size_t i = reactions_.size() <= fingerprint_samples
                        ? k
                        : rng() % reactions_.size();
    const ReactionNode &node = reactions_[i];
    if (node.record.reactants.empty()) continue;  // synthetic graph
    CountedFingerprint fresh =
        reaction_fingerprint(node.record, fp_.radius, fp_.variant);
    if (!(fresh == node.rfp))
      throw Error("audit: stored reaction fingerprint is stale");
  }
}

// --- ingest ---------------------------------------------------------------

KnowledgeGraph ingest(std::istream &in, IngestReport &report,
                      FingerprintConfig fp) {
  KnowledgeGraph graph(fp);
  std::string line;
  std::size_t line_no = 0;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    ++seen;
    ++report.lines;
    try {
      graph.add_record(parse_reaction_line(line));
      ++report.reactions;
    } catch (const Error &e) {
      report.skipped.push_back({line_no, e.what()});
    }
  }
  if (seen == 0) throw EmptyInput("corpus stream contains no records");
  report.molecules = graph.molecule_count();
  return graph;
}

KnowledgeGraph ingest_file(const std::string &path, IngestReport &report,
                           FingerprintConfig fp) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file '" + path + "'");
  return ingest(in, report, fp);
}

// --- persistence ----------------------------------------------------------

namespace {

constexpr std::uint32_t kMagic = 0x524b4731;  // "RKG1"
constexpr std::uint32_t kVersion = 1;

struct Hasher {
  std::uint64_t state = 14695981039346656037ull;
  void feed(const char *data, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i) {
      state ^= static_cast<unsigned char>(data[i]);
      state *= 1099511628211ull;
    }
  }
};

struct BinWriter {
  std::ostream &out;
  Hasher hash;

  void raw(const void *data, std::size_t size) {
    out.write(static_cast<const char *>(data), size);
    hash.feed(static_cast<const char *>(data), size);
  }
  void u8(std::uint8_t v) { raw(&v, 1); }
  void u16(std::uint16_t v) { u8(v & 0xff); u8(v >> 8); }
  void u32(std::uint32_t v) { u16(v & 0xffff); u16(v >> 16); }
  void u64(std::uint64_t v) { u32(v & 0xffffffffu); u32(v >> 32); }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void str(const std::string &s) {
    u32(static_cast<std::uint32_t>(s.size()));
    raw(s.data(), s.size());
  }
  void molecule(const Molecule &m) {
    u32(static_cast<std::uint32_t>(m.atom_count()));
    for (const Atom &a : m.atoms()) {
      u8(a.element);
      u8(static_cast<std::uint8_t>(a.formal_charge));
      u8(a.explicit_h);
      u8(a.aromatic ? 1 : 0);
      u16(a.map_index);
    }
    u32(static_cast<std::uint32_t>(m.bonds().size()));
    for (const Bond &b : m.bonds()) {
      u16(b.a);
      u16(b.b);
      u8(static_cast<std::uint8_t>(b.order));
    }
  }
  void fingerprint(const CountedFingerprint &fp) {
    u8(static_cast<std::uint8_t>(fp.variant()));
    u8(static_cast<std::uint8_t>(fp.radius()));
    u32(static_cast<std::uint32_t>(fp.entries().size()));
    for (const auto &[feature, count] : fp.entries()) {
      u32(feature);
      i32(count);
    }
  }
};

struct BinReader {
  std::istream &in;
  Hasher hash;

  void raw(void *data, std::size_t size) {
    in.read(static_cast<char *>(data), size);
    if (in.gcount() != static_cast<std::streamsize>(size))
      throw ChecksumError("snapshot file truncated");
    hash.feed(static_cast<const char *>(data), size);
  }
  std::uint8_t u8() { std::uint8_t v; raw(&v, 1); return v; }
  std::uint16_t u16() { std::uint16_t lo = u8(); return lo | (std::uint16_t(u8()) << 8); }
  std::uint32_t u32() { std::uint32_t lo = u16(); return lo | (std::uint32_t(u16()) << 16); }
  std::uint64_t u64() { std::uint64_t lo = u32(); return lo | (std::uint64_t(u32()) << 32); }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  std::string str() {
    std::uint32_t size = u32();
    if (size > (1u << 28)) throw ChecksumError("snapshot string too large");
    std::string s(size, '\0');
    raw(s.data(), size);
    return s;
  }
  Molecule molecule() {
    std::uint32_t atom_count = u32();
    std::vector<Atom> atoms(atom_count);
    for (Atom &a : atoms) {
      a.element = u8();
      a.formal_charge = static_cast<std::int8_t>(u8());
      a.explicit_h = u8();
      a.aromatic = u8() != 0;
      a.map_index = u16();
    }
    std::uint32_t bond_count = u32();
    std::vector<Bond> bonds(bond_count);
    for (Bond &b : bonds) {
      b.a = u16();
      b.b = u16();
      b.order = static_cast<BondOrder>(u8());
    }
    return Molecule(std::move(atoms), std::move(bonds));
  }
  CountedFingerprint fingerprint() {
    FpVariant variant = static_cast<FpVariant>(u8());
    int radius = u8();
    CountedFingerprint fp(variant, radius);
    std::uint32_t size = u32();
    for (std::uint32_t i = 0; i < size; ++i) {
      std::uint32_t feature = u32();
      std::int32_t count = i32();
      fp.add(feature, count);
    }
    return fp;
  }
};

void write_record(BinWriter &w, const ReactionRecord &r) {
  w.str(r.id);
  w.i32(r.year);
  w.u32(static_cast<std::uint32_t>(r.reactants.size()));
  for (const Molecule &m : r.reactants) w.molecule(m);
  w.u32(static_cast<std::uint32_t>(r.agents.size()));
  for (const auto &[m, role] : r.agents) {
    w.molecule(m);
    w.u8(static_cast<std::uint8_t>(role));
  }
  w.u32(static_cast<std::uint32_t>(r.products.size()));
  for (const Molecule &m : r.products) w.molecule(m);
}

ReactionRecord read_record(BinReader &r) {
  ReactionRecord record;
  record.id = r.str();
  record.year = r.i32();
  std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i)
    record.reactants.push_back(r.molecule());
  n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    Molecule m = r.molecule();
    Role role = static_cast<Role>(r.u8());
    record.agents.push_back({std::move(m), role});
  }
  n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i)
    record.products.push_back(r.molecule());
  return record;
}

} // namespace

void KnowledgeGraph::save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  BinWriter w{out};
  w.u32(kMagic);
  w.u32(kVersion);
  w.u8(static_cast<std::uint8_t>(fp_.variant));
  w.u8(static_cast<std::uint8_t>(fp_.radius));

  w.u32(static_cast<std::uint32_t>(molecules_.size()));
  for (const Molecule &m : molecules_) w.molecule(m);

  w.u32(static_cast<std::uint32_t>(reactions_.size()));
  for (const ReactionNode &node : reactions_) {
    write_record(w, node.record);
    w.u32(static_cast<std::uint32_t>(node.reactants.size()));
    for (NodeId id : node.reactants) w.u32(id);
    w.u32(static_cast<std::uint32_t>(node.products.size()));
    for (NodeId id : node.products) w.u32(id);
    w.u32(static_cast<std::uint32_t>(node.agents.size()));
    for (const auto &[id, role] : node.agents) {
      w.u32(id);
      w.u8(static_cast<std::uint8_t>(role));
    }
    w.u32(static_cast<std::uint32_t>(node.reactant_changed.size()));
    for (const auto &set : node.reactant_changed) {
      w.u32(static_cast<std::uint32_t>(set.size()));
      for (int a : set) w.i32(a);
    }
    w.fingerprint(node.rfp);
  }
  std::uint64_t digest = w.hash.state;
  out.write(reinterpret_cast<const char *>(&digest), sizeof digest);
  if (!out) throw IoError("failed writing snapshot to '" + path + "'");
}

KnowledgeGraph KnowledgeGraph::load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path + "'");
  BinReader r{in};
  if (r.u32() != kMagic) throw FormatVersionError("not a rxngraph snapshot");
  std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FormatVersionError("unsupported snapshot version " +
                             std::to_string(version));
  KnowledgeGraph g;
  g.fp_.variant = static_cast<FpVariant>(r.u8());
  g.fp_.radius = r.u8();

  std::uint32_t mol_count = r.u32();
  for (std::uint32_t i = 0; i < mol_count; ++i) {
    Molecule m = r.molecule();
    g.molecule_by_key_[m.canonical_key()] = static_cast<NodeId>(i);
    g.molecules_.push_back(std::move(m));
  }
  g.mol_reactant_of_.resize(mol_count);
  g.mol_product_of_.resize(mol_count);
  g.mol_agent_of_.resize(mol_count);

  std::uint32_t rxn_count = r.u32();
  for (std::uint32_t i = 0; i < rxn_count; ++i) {
    ReactionNode node;
    node.record = read_record(r);
    std::uint32_t n = r.u32();
    for (std::uint32_t k = 0; k < n; ++k) node.reactants.push_back(r.u32());
    n = r.u32();
    for (std::uint32_t k = 0; k < n; ++k) node.products.push_back(r.u32());
    n = r.u32();
    for (std::uint32_t k = 0; k < n; ++k) {
      NodeId id = r.u32();
      Role role = static_cast<Role>(r.u8());
      node.agents.push_back({id, role});
    }
    n = r.u32();
    node.reactant_changed.resize(n);
    for (std::uint32_t k = 0; k < n; ++k) {
      std::uint32_t size = r.u32();
      for (std::uint32_t j = 0; j < size; ++j)
        node.reactant_changed[k].push_back(r.i32());
    }
    node.rfp = r.fingerprint();
    for (NodeId id : node.reactants) {
      if (id >= mol_count) throw ChecksumError("snapshot edge out of range");
      g.mol_reactant_of_[id].push_back(static_cast<NodeId>(i));
    }
    for (NodeId id : node.products) {
      if (id >= mol_count) throw ChecksumError("snapshot edge out of range");
      g.mol_product_of_[id].push_back(static_cast<NodeId>(i));
    }
    for (const auto &[id, role] : node.agents) {
      if (id >= mol_count) throw ChecksumError("snapshot edge out of range");
      g.mol_agent_of_[id].push_back({static_cast<NodeId>(i), role});
    }
    g.record_ids_.push_back(node.record.id);
    g.reactions_.push_back(std::move(node));
  }
  std::uint64_t expected = r.hash.state;
  std::uint64_t digest = 0;
  in.read(reinterpret_cast<char *>(&digest), sizeof digest);
  if (in.gcount() != sizeof digest)
    throw ChecksumError("snapshot file truncated");
  if (digest != expected) throw ChecksumError("snapshot checksum mismatch");
  for (auto &vec : g.mol_reactant_of_) {
    std::sort(vec.begin(), vec.end());
    vec.erase(std::unique(vec.begin(), vec.end()), vec.end());
  }
  for (auto &vec : g.mol_product_of_) {
    std::sort(vec.begin(), vec.end());
    vec.erase(std::unique(vec.begin(), vec.end()), vec.end());
  }
  return g;
}

// --- synthetic builder ----------------------------------------------------

SyntheticGraphBuilder::SyntheticGraphBuilder(FingerprintConfig fp)
    : graph_(fp) {}

NodeId SyntheticGraphBuilder::add_molecule() {
  // Distinct single-atom structures: hydrogen count, charge and element
  // enumerate ~119k unique canonical keys.
  std::size_t idx = next_molecule_++;
  std::uint8_t h = static_cast<std::uint8_t>(idx % 200);
  std::int8_t charge = static_cast<std::int8_t>((idx / 200) % 17 - 8);
  ElementId element = static_cast<ElementId>((idx / 3400) % 35);
  if (idx >= 200 * 17 * 35)
    throw Error("synthetic molecule space exhausted");
  Atom atom;
  atom.element = element;
  atom.formal_charge = charge;
  atom.explicit_h = h;
  Molecule m({atom}, {});
  return graph_.intern_molecule(m);
}

NodeId SyntheticGraphBuilder::add_reaction(
    const std::vector<NodeId> &reactant_slots,
    const std::vector<std::vector<int>> &changed_sets,
    const std::vector<std::pair<std::uint32_t, std::int32_t>> &rfp,
    const std::vector<NodeId> &products) {
  if (reactant_slots.empty() || reactant_slots.size() != changed_sets.size())
    throw Error("synthetic reaction needs one changed set per reactant slot");
  ReactionNode node;
  node.reactants = reactant_slots;
  node.reactant_changed = changed_sets;
  for (auto &set : node.reactant_changed)
    std::sort(set.begin(), set.end());
  node.rfp = CountedFingerprint(graph_.fp_.variant, graph_.fp_.radius);
  for (const auto &[feature, count] : rfp) node.rfp.add(feature, count);
  node.products = products;
  if (node.products.empty()) node.products.push_back(add_molecule());

  NodeId rid = static_cast<NodeId>(graph_.reactions_.size());
  for (NodeId mid : node.reactants) {
    if (mid >= graph_.molecules_.size())
      throw UnknownNode("synthetic reactant id out of range");
    graph_.mol_reactant_of_[mid].push_back(rid);
  }
  for (NodeId mid : node.products) graph_.mol_product_of_[mid].push_back(rid);
  graph_.record_ids_.push_back("syn:" + std::to_string(rid));
  node.record.id = graph_.record_ids_.back();
  node.record.year = 2000;
  graph_.reactions_.push_back(std::move(node));
  for (NodeId mid : graph_.reactions_.back().reactants) {
    auto &vec = graph_.mol_reactant_of_[mid];
    std::sort(vec.begin(), vec.end());
    vec.erase(std::unique(vec.begin(), vec.end()), vec.end());
  }
  for (NodeId mid : graph_.reactions_.back().products) {
    auto &vec = graph_.mol_product_of_[mid];
    std::sort(vec.begin(), vec.end());
    vec.erase(std::unique(vec.begin(), vec.end()), vec.end());
  }
  return rid;
}

KnowledgeGraph SyntheticGraphBuilder::build() { return std::move(graph_); }

} // namespace rxn
