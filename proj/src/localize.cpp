#include "irmetro/localize.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "irmetro/error.hpp"

namespace irmetro {

std::vector<std::string> default_excluded_phases() { return {"GraphBuilder"}; }

const SuspicionRow* SuspicionReport::find(const std::string& name) const {
  auto it = std::find_if(rows.begin(), rows.end(),
                         [&](const SuspicionRow& r) { return r.name == name; });
  return it == rows.end() ? nullptr : &*it;
}

SuspicionReport score_hyperedges(const Hypergraph& h, std::span<const std::string> exclude) {
  const bool any_real = std::any_of(h.nodes.begin(), h.nodes.end(),
                                    [](const auto& kv) { return !kv.second.is_dummy; });
  if (!any_real) throw Error(ErrorKind::empty_hypergraph, "hypergraph has no non-dummy nodes");

  const std::set<std::string> excluded(exclude.begin(), exclude.end());
  SuspicionReport report;
  for (const auto& e : h.hyperedges) {
    SuspicionRow row;
    row.name = e.name;
    row.hyperedge_id = e.id;
    bool foreign_generated_here = false;
    bool native_generated_here = false;
    for (NodeId id : e.members) {
      const IRNode& n = h.nodes.at(id);
      if (n.is_dummy) continue;
      row.total_members += n.merged_count;
      const bool foreign = n.ir_id != kOriginalIrId;
      if (foreign) row.foreign_members += n.merged_count;
      if (n.gen_phase.name == e.name) {
        (foreign ? foreign_generated_here : native_generated_here) = true;
      }
    }
    row.score = row.total_members == 0
                    ? 0.0
                    : static_cast<double>(row.foreign_members) /
                          static_cast<double>(row.total_members);
    row.generation_anomaly = foreign_generated_here && !native_generated_here;
    row.excluded = excluded.contains(e.name);
    report.rows.push_back(std::move(row));
  }

  std::vector<std::size_t> ranked;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (report.rows[i].excluded) {
      report.excluded.push_back(report.rows[i].name);
    } else {
      ranked.push_back(i);
    }
  }
  // Integer cross-multiplication keeps equal fractions tied exactly.
  std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t ia, std::size_t ib) {
    const SuspicionRow& a = report.rows[ia];
    const SuspicionRow& b = report.rows[ib];
    const auto lhs = static_cast<unsigned __int128>(a.foreign_members) * b.total_members;
    const auto rhs = static_cast<unsigned __int128>(b.foreign_members) * a.total_members;
    if (lhs != rhs) return lhs > rhs;
    if (a.foreign_members != b.foreign_members) return a.foreign_members > b.foreign_members;
    return a.name < b.name;
  });
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    report.ranking.push_back(report.rows[ranked[i]].name);
    report.rows[ranked[i]].rank = i + 1;
  }
  return report;
}

void attach_suspiciousness(Hypergraph& h, const SuspicionReport& report) {
  for (auto& e : h.hyperedges) {
    auto it = std::find_if(report.rows.begin(), report.rows.end(),
                           [&](const SuspicionRow& r) { return r.hyperedge_id == e.id; });
    if (it != report.rows.end()) e.suspiciousness = it->score;
  }
}

MetroPrep prepare_for_metromap(const Hypergraph& h) {
  MetroPrep prep;
  Hypergraph padded = h;
  NodeId next_id = padded.nodes.empty() ? 0 : padded.nodes.rbegin()->first + 1;
  for (auto& e : padded.hyperedges) {
    if (e.members.size() != 1) continue;
    IRNode dummy;
    dummy.id = next_id++;
    dummy.is_dummy = true;
    dummy.opcode = {"Dummy", 0};
    dummy.gen_phase = {e.name, e.exec_orders.empty() ? 0u : e.exec_orders.front()};
    e.members.insert(dummy.id);
    padded.nodes.emplace(dummy.id, std::move(dummy));
  }

  std::map<NodeId, std::size_t> degree;
  for (const auto& e : padded.hyperedges) {
    for (NodeId id : e.members) ++degree[id];
  }
  for (auto& e : padded.hyperedges) {
    e.is_isolated = std::none_of(e.members.begin(), e.members.end(),
                                 [&](NodeId id) { return degree[id] > 1; });
  }

  std::set<NodeId> in_main;
  for (const auto& e : padded.hyperedges) {
    if (e.is_isolated) {
      prep.isolated.push_back(e);
    } else {
      prep.main.hyperedges.push_back(e);
      in_main.insert(e.members.begin(), e.members.end());
    }
  }
  for (const auto& [id, n] : padded.nodes) {
    if (in_main.contains(id)) {
      prep.main.nodes.emplace(id, n);
    } else if (degree.contains(id)) {
      prep.isolated_nodes.emplace(id, n);
    }
  }

  const auto real_nodes = static_cast<std::size_t>(
      std::count_if(prep.main.nodes.begin(), prep.main.nodes.end(),
                    [](const auto& kv) { return !kv.second.is_dummy; }));
  if (real_nodes > kMetroNodeBudget) {
    prep.warnings.push_back("node-budget-exceeded: " + std::to_string(real_nodes) + " nodes > " +
                            std::to_string(kMetroNodeBudget));
  }
  if (prep.main.hyperedges.size() > kMetroLineBudget) {
    prep.warnings.push_back("line-budget-exceeded: " + std::to_string(prep.main.hyperedges.size()) +
                            " hyperedges > " + std::to_string(kMetroLineBudget));
  }
  return prep;
}

}  // namespace irmetro
