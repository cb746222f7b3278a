#include "irmetro/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "irmetro/error.hpp"
#include "irmetro/hypergraph.hpp"
#include "irmetro/simplify.hpp"
#include "json.hpp"

namespace irmetro {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

double reduction_pct(std::uint64_t original, std::uint64_t reduced) {
  if (original == 0) return 0.0;
  const double pct =
      (1.0 - static_cast<double>(reduced) / static_cast<double>(original)) * 100.0;
  return std::round(pct * 100.0) / 100.0;
}

ReductionStats make_stats(std::uint64_t original_sets, std::uint64_t reduced_sets,
                          std::uint64_t original_elements, std::uint64_t reduced_elements) {
  ReductionStats s;
  s.original_set_count = original_sets;
  s.reduced_set_count = reduced_sets;
  s.original_element_count = original_elements;
  s.reduced_element_count = reduced_elements;
  s.set_reduction_pct = reduction_pct(original_sets, reduced_sets);
  s.element_reduction_pct = reduction_pct(original_elements, reduced_elements);
  return s;
}

PipelineResult run_pipeline(const IRGraph& original, std::span<const IRGraph> variants,
                            const AnalyzeOptions& options) {
  PipelineResult r;
  std::vector<std::future<SubIR>> pending;
  pending.reserve(variants.size());
  for (const IRGraph& v : variants) {
    pending.push_back(std::async(std::launch::deferred,
                                 [&original, &v] { return select_candidates(original, v); }));
  }
  for (auto& f : pending) {
    SubIR sub = f.get();
    if (!sub.empty()) r.subirs.push_back(std::move(sub));
  }

  r.merged = merge_into_original(original, r.subirs);
  r.simplified = merge_equivalent_nodes(remove_dead_nodes(r.merged), {options.single_pass});
  r.hypergraph = simplify_hyperedges(reduce_hyperedges(construct_hypergraph(r.simplified)));
  r.report = score_hyperedges(r.hypergraph, options.exclude);
  attach_suspiciousness(r.hypergraph, r.report);
  r.metro = prepare_for_metromap(r.hypergraph);

  const auto reduced_elements = static_cast<std::uint64_t>(
      std::count_if(r.hypergraph.nodes.begin(), r.hypergraph.nodes.end(),
                    [](const auto& kv) { return !kv.second.is_dummy; }));
  r.stats = make_stats(r.merged.phases.size(), r.hypergraph.hyperedges.size(),
                       r.merged.nodes.size(), reduced_elements);
  return r;
}

PipelineResult run_pipeline(const Corpus& corpus, const AnalyzeOptions& options) {
  return run_pipeline(corpus.original, corpus.variants, options);
}

namespace {

ojson stats_to_json(const ReductionStats& s) {
  ojson j;
  j["original_set_count"] = s.original_set_count;
  j["reduced_set_count"] = s.reduced_set_count;
  j["original_element_count"] = s.original_element_count;
  j["reduced_element_count"] = s.reduced_element_count;
  j["set_reduction_pct"] = s.set_reduction_pct;
  j["element_reduction_pct"] = s.element_reduction_pct;
  return j;
}

std::string hex_code(std::uint32_t code) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%04x", code);
  return buf;
}

// Timeline of node generation: dummies trail.
bool generated_before(const IRNode& a, const IRNode& b) {
  return std::tuple(a.is_dummy, a.gen_phase.exec_order, a.gen_ordinal, a.ir_id, a.id) <
         std::tuple(b.is_dummy, b.gen_phase.exec_order, b.gen_ordinal, b.ir_id, b.id);
}

}  // namespace

std::string export_json(const PipelineResult& result, const AnalyzeOptions& options) {
  std::map<NodeId, const IRNode*> stations = {};
  for (const auto& [id, n] : result.metro.main.nodes) stations.emplace(id, &n);
  for (const auto& [id, n] : result.metro.isolated_nodes) stations.emplace(id, &n);

  std::vector<const IRNode*> ordered;
  for (const auto& [id, n] : stations) ordered.push_back(n);
  std::sort(ordered.begin(), ordered.end(),
            [](const IRNode* a, const IRNode* b) { return generated_before(*a, *b); });

  ojson doc;
  doc["schema_version"] = kExportSchemaVersion;
  ojson jstations = ojson::array();
  for (const IRNode* n : ordered) {
    ojson s;
    s["node_id"] = n->id;
    s["label"] = std::to_string(n->id);
    s["is_dummy"] = n->is_dummy;
    s["merged_count"] = n->merged_count;
    ojson attrs;
    attrs["phase"] = n->gen_phase.name;
    attrs["opcode"] = {{"name", n->opcode.name}, {"code", hex_code(n->opcode.code)}};
    attrs["address"] = n->address;
    attrs["graph_id"] = n->ir_id;
    attrs["phase_id"] = n->gen_phase.exec_order;
    s["attributes"] = std::move(attrs);
    std::vector<std::string> opt;
    for (const auto& p : n->opt_phases) {
      if (std::find(opt.begin(), opt.end(), p.name) == opt.end()) opt.push_back(p.name);
    }
    s["optimized_in"] = opt;
    jstations.push_back(std::move(s));
  }
  doc["stations"] = std::move(jstations);

  std::map<std::string, const Hyperedge*> by_id;
  for (const auto& e : result.metro.main.hyperedges) by_id.emplace(e.id, &e);
  for (const auto& e : result.metro.isolated) by_id.emplace(e.id, &e);

  ojson lines = ojson::array();
  for (const auto& he : result.hypergraph.hyperedges) {
    const Hyperedge& e = *by_id.at(he.id);
    const SuspicionRow* row = nullptr;
    for (const auto& r : result.report.rows) {
      if (r.hyperedge_id == e.id) row = &r;
    }
    std::vector<const IRNode*> members;
    for (NodeId id : e.members) members.push_back(stations.at(id));
    std::sort(members.begin(), members.end(),
              [](const IRNode* a, const IRNode* b) { return generated_before(*a, *b); });
    ojson l;
    l["name"] = e.name;
    l["id"] = e.id;
    ojson ids = ojson::array();
    std::size_t real = 0;
    for (const IRNode* m : members) {
      ids.push_back(m->id);
      if (!m->is_dummy) ++real;
    }
    l["members"] = std::move(ids);
    l["member_count"] = real;
    l["suspiciousness"] = e.suspiciousness ? ojson(*e.suspiciousness) : ojson(nullptr);
    l["is_isolated"] = e.is_isolated;
    if (row && row->rank) {
      l["rank"] = *row->rank;
      l["highlighted"] = *row->rank <= options.top_k;
    } else {
      l["rank"] = nullptr;
      l["highlighted"] = false;
    }
    lines.push_back(std::move(l));
  }
  doc["lines"] = std::move(lines);

  ojson report;
  ojson rows = ojson::array();
  for (const auto& r : result.report.rows) {
    ojson jr;
    jr["name"] = r.name;
    jr["hyperedge_id"] = r.hyperedge_id;
    jr["total_members"] = r.total_members;
    jr["foreign_members"] = r.foreign_members;
    jr["score"] = r.score;
    jr["generation_anomaly"] = r.generation_anomaly;
    jr["excluded"] = r.excluded;
    jr["rank"] = r.rank ? ojson(*r.rank) : ojson(nullptr);
    rows.push_back(std::move(jr));
  }
  report["rows"] = std::move(rows);
  report["ranking"] = result.report.ranking;
  report["excluded"] = result.report.excluded;
  report["top_k"] = options.top_k;
  doc["report"] = std::move(report);
  doc["stats"] = stats_to_json(result.stats);
  doc["warnings"] = result.metro.warnings;
  return doc.dump(1) + "\n";
}

std::string stats_json(const ReductionStats& stats) { return stats_to_json(stats).dump(2) + "\n"; }

ReductionStats stats_from_export(std::string_view export_text) {
  json doc;
  try {
    doc = json::parse(export_text.begin(), export_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("export: ") + e.what());
  }
  // Accept either a full export or a bare stats document.
  const json* stats = &doc;
  if (doc.is_object() && doc.contains("stats")) stats = &doc["stats"];
  if (!stats->is_object()) throw Error(ErrorKind::parse, "export: missing stats block");

  auto count = [&](const char* key) {
    auto it = stats->find(key);
    if (it == stats->end() || !it->is_number_unsigned()) {
      throw Error(ErrorKind::parse, std::string("export: stats.") + key + " missing or invalid");
    }
    return it->get<std::uint64_t>();
  };
  auto pct = [&](const char* key) {
    auto it = stats->find(key);
    if (it == stats->end() || !it->is_number()) {
      throw Error(ErrorKind::parse, std::string("export: stats.") + key + " missing or invalid");
    }
    return it->get<double>();
  };
  ReductionStats s;
  s.original_set_count = count("original_set_count");
  s.reduced_set_count = count("reduced_set_count");
  s.original_element_count = count("original_element_count");
  s.reduced_element_count = count("reduced_element_count");
  s.set_reduction_pct = pct("set_reduction_pct");
  s.element_reduction_pct = pct("element_reduction_pct");
  if (s.reduced_set_count > s.original_set_count ||
      s.reduced_element_count > s.original_element_count) {
    throw Error(ErrorKind::invariant, "export: reduced counts exceed original counts");
  }
  const ReductionStats expected = make_stats(s.original_set_count, s.reduced_set_count,
                                             s.original_element_count, s.reduced_element_count);
  if (expected.set_reduction_pct != s.set_reduction_pct ||
      expected.element_reduction_pct != s.element_reduction_pct) {
    throw Error(ErrorKind::invariant, "export: percentages disagree with raw counts");
  }
  return s;
}

std::string format_report(const SuspicionReport& report, std::size_t top_k) {
  std::size_t name_w = 5;
  std::size_t id_w = 2;
  for (const auto& r : report.rows) {
    name_w = std::max(name_w, r.name.size());
    id_w = std::max(id_w, r.hyperedge_id.size());
  }
  std::vector<const SuspicionRow*> order;
  for (const auto& name : report.ranking) order.push_back(report.find(name));
  for (const auto& r : report.rows) {
    if (r.excluded) order.push_back(&r);
  }

  std::ostringstream os;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-5s %-4s %-*s %-*s %15s %7s %s\n", "rank", "flag",
                static_cast<int>(name_w), "phase", static_cast<int>(id_w), "id", "foreign/total",
                "score", "gen-anomaly");
  os << buf;
  for (const SuspicionRow* r : order) {
    const std::string rank = r->rank ? std::to_string(*r->rank) : "-";
    const char* flag = r->excluded ? "excl" : (r->rank && *r->rank <= top_k ? "**" : "");
    const std::string ratio = std::to_string(r->foreign_members) + "/" + std::to_string(r->total_members);
    std::snprintf(buf, sizeof buf, "%-5s %-4s %-*s %-*s %15s %7.4f %s\n", rank.c_str(), flag,
                  static_cast<int>(name_w), r->name.c_str(), static_cast<int>(id_w),
                  r->hyperedge_id.c_str(), ratio.c_str(), r->score,
                  r->generation_anomaly ? "yes" : "no");
    os << buf;
  }
  return os.str();
}

std::string format_stats(const ReductionStats& s) {
  char buf[256];
  std::ostringstream os;
  std::snprintf(buf, sizeof buf, "%-9s %10s %10s %10s\n", "", "original", "reduced", "reduction");
  os << buf;
  std::snprintf(buf, sizeof buf, "%-9s %10llu %10llu %9.2f%%\n", "sets",
                static_cast<unsigned long long>(s.original_set_count),
                static_cast<unsigned long long>(s.reduced_set_count), s.set_reduction_pct);
  os << buf;
  std::snprintf(buf, sizeof buf, "%-9s %10llu %10llu %9.2f%%\n", "elements",
                static_cast<unsigned long long>(s.original_element_count),
                static_cast<unsigned long long>(s.reduced_element_count), s.element_reduction_pct);
  os << buf;
  return os.str();
}

}  // namespace irmetro
