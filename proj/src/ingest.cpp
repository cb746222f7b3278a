#include "irmetro/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iterator>
#include <set>
#include <sstream>

#include "irmetro/error.hpp"
#include "json.hpp"

namespace irmetro {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void fail_field(std::string_view source, const std::string& field,
                             const std::string& what) {
  throw Error(ErrorKind::parse, std::string(source) + ": field '" + field + "': " + what);
}

const json& require(const json& obj, const char* key, std::string_view source,
                    const std::string& prefix) {
  auto it = obj.find(key);
  if (it == obj.end()) fail_field(source, prefix + key, "missing");
  return *it;
}

std::uint64_t as_uint(const json& v, std::string_view source, const std::string& field) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0)) {
    fail_field(source, field, "expected non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint32_t as_u32(const json& v, std::string_view source, const std::string& field) {
  const auto x = as_uint(v, source, field);
  if (x > 0xFFFFFFFFull) fail_field(source, field, "value out of range");
  return static_cast<std::uint32_t>(x);
}

std::string as_string(const json& v, std::string_view source, const std::string& field) {
  if (!v.is_string()) fail_field(source, field, "expected string");
  return v.get<std::string>();
}

bool as_bool(const json& v, std::string_view source, const std::string& field) {
  if (!v.is_boolean()) fail_field(source, field, "expected boolean");
  return v.get<bool>();
}

std::vector<NodeId> as_id_list(const json& v, std::string_view source,
                               const std::string& field) {
  if (!v.is_array()) fail_field(source, field, "expected array of node ids");
  std::vector<NodeId> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_uint(v[i], source, field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

}  // namespace

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::parse, path.string() + ": cannot write file");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

IRGraph parse_dump(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string(source) + ":" +
                                      std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) fail_field(source, "<root>", "expected object");

  IRGraph g;
  g.ir_id = as_u32(require(doc, "ir_id", source, ""), source, "ir_id");
  const std::string label = as_string(require(doc, "label", source, ""), source, "label");
  if (label == "original") {
    g.label = GraphLabel::original;
  } else if (label == "variant") {
    g.label = GraphLabel::variant;
  } else {
    fail_field(source, "label", "expected \"original\" or \"variant\"");
  }
  if (auto it = doc.find("buggy"); it != doc.end() && !it->is_null()) {
    g.buggy = as_bool(*it, source, "buggy");
  }

  const json& nodes = require(doc, "nodes", source, "");
  if (!nodes.is_array()) fail_field(source, "nodes", "expected array");
  std::map<NodeId, std::optional<std::uint32_t>> explicit_ordinal;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string p = "nodes[" + std::to_string(i) + "].";
    const json& jn = nodes[i];
    if (!jn.is_object()) fail_field(source, "nodes[" + std::to_string(i) + "]", "expected object");
    IRNode n;
    n.id = as_uint(require(jn, "id", source, p), source, p + "id");
    n.address = as_string(require(jn, "address", source, p), source, p + "address");
    n.opcode.name = as_string(require(jn, "opcode", source, p), source, p + "opcode");
    n.opcode.code = as_u32(require(jn, "opcode_num", source, p), source, p + "opcode_num");
    const auto nb = as_id_list(require(jn, "neighbors", source, p), source, p + "neighbors");
    n.neighbors.insert(nb.begin(), nb.end());
    if (n.neighbors.size() != nb.size()) fail_field(source, p + "neighbors", "duplicate entries");
    const json& st = require(jn, "status", source, p);
    if (!st.is_object()) fail_field(source, p + "status", "expected object");
    const std::string sp = p + "status.";
    n.status.replaced = as_bool(require(st, "replaced", source, sp), source, sp + "replaced");
    n.status.killed = as_bool(require(st, "killed", source, sp), source, sp + "killed");
    n.status.removed = as_bool(require(st, "removed", source, sp), source, sp + "removed");
    n.status.appended = as_bool(require(st, "appended", source, sp), source, sp + "appended");
    n.ir_id = g.ir_id;
    if (auto it = jn.find("ir_id"); it != jn.end()) n.ir_id = as_u32(*it, source, p + "ir_id");
    if (auto it = jn.find("merged_count"); it != jn.end()) {
      n.merged_count = as_u32(*it, source, p + "merged_count");
    }
    if (auto it = jn.find("is_dummy"); it != jn.end()) n.is_dummy = as_bool(*it, source, p + "is_dummy");
    std::optional<std::uint32_t> ordinal;
    if (auto it = jn.find("ordinal"); it != jn.end()) ordinal = as_u32(*it, source, p + "ordinal");
    const NodeId id = n.id;
    if (!g.nodes.emplace(id, std::move(n)).second) {
      throw Error(ErrorKind::invariant,
                  std::string(source) + ": duplicate node id " + std::to_string(id));
    }
    explicit_ordinal[id] = ordinal;
  }

  const json& phases = require(doc, "phases", source, "");
  if (!phases.is_array()) fail_field(source, "phases", "expected array");
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const std::string p = "phases[" + std::to_string(i) + "].";
    const json& jp = phases[i];
    if (!jp.is_object()) fail_field(source, "phases[" + std::to_string(i) + "]", "expected object");
    PhaseExecution pe;
    pe.phase.name = as_string(require(jp, "name", source, p), source, p + "name");
    pe.phase.exec_order = as_u32(require(jp, "exec_order", source, p), source, p + "exec_order");
    pe.generated = as_id_list(require(jp, "generated", source, p), source, p + "generated");
    pe.optimized = as_id_list(require(jp, "optimized", source, p), source, p + "optimized");
    pe.hyperedge_id = std::to_string(pe.phase.exec_order);
    if (auto it = jp.find("hyperedge_id"); it != jp.end()) {
      pe.hyperedge_id = as_string(*it, source, p + "hyperedge_id");
    }
    g.phases.push_back(std::move(pe));
  }

  derive_node_phases(g);
  assign_gen_ordinals(g);
  for (const auto& [id, ordinal] : explicit_ordinal) {
    if (ordinal) g.nodes.at(id).gen_ordinal = *ordinal;
  }

  if (auto violations = validate_graph(g); !violations.empty()) {
    std::string msg = std::string(source) + ": " + std::to_string(violations.size()) +
                      " invariant violation(s)";
    for (std::size_t i = 0; i < std::min<std::size_t>(violations.size(), 5); ++i) {
      msg += "; " + to_string(violations[i]);
    }
    throw Error(ErrorKind::invariant, msg);
  }
  return g;
}

IRGraph read_dump(const fs::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error&) {
    throw Error(ErrorKind::parse, path.string() + ": no such file or unreadable");
  }
  return parse_dump(text, path.string());
}

std::string serialize_dump(const IRGraph& g) {
  using ojson = nlohmann::ordered_json;
  std::map<NodeId, std::uint32_t> position;
  for (const auto& p : g.phases) {
    std::uint32_t i = 0;
    for (NodeId id : p.generated) position[id] = i++;
  }

  std::ostringstream os;
  os << "{\"ir_id\": " << g.ir_id << ", \"label\": \""
     << (g.label == GraphLabel::original ? "original" : "variant") << "\", \"buggy\": "
     << (g.buggy ? (*g.buggy ? "true" : "false") : "null") << ",\n \"phases\": [";
  bool first = true;
  for (const auto& p : g.phases) {
    ojson jp;
    jp["name"] = p.phase.name;
    jp["exec_order"] = p.phase.exec_order;
    jp["generated"] = p.generated;
    jp["optimized"] = p.optimized;
    if (p.hyperedge_id != std::to_string(p.phase.exec_order)) jp["hyperedge_id"] = p.hyperedge_id;
    os << (first ? "\n  " : ",\n  ") << jp.dump();
    first = false;
  }
  os << "\n ],\n \"nodes\": [";
  first = true;
  for (const auto& [id, n] : g.nodes) {
    ojson jn;
    jn["id"] = n.id;
    jn["address"] = n.address;
    jn["opcode"] = n.opcode.name;
    jn["opcode_num"] = n.opcode.code;
    jn["neighbors"] = std::vector<NodeId>(n.neighbors.begin(), n.neighbors.end());
    jn["status"] = {{"replaced", n.status.replaced},
                    {"killed", n.status.killed},
                    {"removed", n.status.removed},
                    {"appended", n.status.appended}};
    if (n.ir_id != g.ir_id) jn["ir_id"] = n.ir_id;
    if (n.merged_count != 1) jn["merged_count"] = n.merged_count;
    if (n.is_dummy) jn["is_dummy"] = true;
    auto pos = position.find(id);
    if (!n.is_dummy && (pos == position.end() || pos->second != n.gen_ordinal)) {
      jn["ordinal"] = n.gen_ordinal;
    }
    os << (first ? "\n  " : ",\n  ") << jn.dump();
    first = false;
  }
  os << "\n ]}\n";
  return os.str();
}

void write_dump(const fs::path& path, const IRGraph& g) { write_text_file(path, serialize_dump(g)); }

CorpusManifest read_manifest(const fs::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error&) {
    throw Error(ErrorKind::parse, path.string() + ": no such manifest");
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse,
                path.string() + ":" + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  const std::string source = path.string();
  if (!doc.is_object()) fail_field(source, "<root>", "expected object");
  const fs::path base = path.parent_path();
  auto resolve = [&](const fs::path& p) { return p.is_absolute() ? p : base / p; };

  CorpusManifest m;
  m.original = resolve(as_string(require(doc, "original", source, ""), source, "original"));
  const json& vars = require(doc, "variants", source, "");
  if (!vars.is_array()) fail_field(source, "variants", "expected array");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    m.variants.push_back(resolve(as_string(vars[i], source, "variants[" + std::to_string(i) + "]")));
  }
  std::set<fs::path> distinct;
  distinct.insert(m.original.lexically_normal());
  for (const auto& v : m.variants) {
    if (!distinct.insert(v.lexically_normal()).second) {
      fail_field(source, "variants", "duplicate path " + v.string());
    }
  }
  return m;
}

void write_manifest(const fs::path& path, const CorpusManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["original"] = manifest.original.generic_string();
  doc["variants"] = json::array();
  for (const auto& v : manifest.variants) doc["variants"].push_back(v.generic_string());
  doc["n_variants"] = manifest.n_variants();
  write_text_file(path, doc.dump(2) + "\n");
}

Corpus load_corpus(const CorpusManifest& manifest) {
  std::vector<fs::path> paths;
  paths.push_back(manifest.original);
  paths.insert(paths.end(), manifest.variants.begin(), manifest.variants.end());

  std::vector<std::future<IRGraph>> pending;
  pending.reserve(paths.size());
  for (const auto& p : paths) {
    pending.push_back(std::async(std::launch::async, [p] { return read_dump(p); }));
  }
  std::vector<IRGraph> graphs;
  graphs.reserve(paths.size());
  // get() in manifest order so the first failing file is the one reported.
  for (auto& f : pending) graphs.push_back(f.get());

  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const IRGraph& g = graphs[i];
    if (g.ir_id != i) {
      throw Error(ErrorKind::ir_id_conflict,
                  paths[i].string() + ": carries ir_id " + std::to_string(g.ir_id) +
                      " but manifest position assigns " + std::to_string(i));
    }
    const GraphLabel expected = i == 0 ? GraphLabel::original : GraphLabel::variant;
    if (g.label != expected) {
      throw Error(ErrorKind::invariant,
                  paths[i].string() + ": label does not match manifest position");
    }
  }
  Corpus c;
  c.original = std::move(graphs.front());
  c.variants.assign(std::make_move_iterator(graphs.begin() + 1),
                    std::make_move_iterator(graphs.end()));
  return c;
}

Corpus load_corpus(const fs::path& manifest_path) {
  return load_corpus(read_manifest(manifest_path));
}

}  // namespace irmetro
