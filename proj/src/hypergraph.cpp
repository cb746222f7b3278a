#include "irmetro/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace irmetro {

Hypergraph construct_hypergraph(const IRGraph& g) {
  Hypergraph h;
  for (const auto& p : g.phases) {
    Hyperedge e;
    e.id = p.hyperedge_id.empty() ? std::to_string(p.phase.exec_order) : p.hyperedge_id;
    e.name = p.phase.name;
    e.exec_orders = {p.phase.exec_order};
    e.members.insert(p.generated.begin(), p.generated.end());
    e.members.insert(p.optimized.begin(), p.optimized.end());
    if (e.members.empty()) continue;
    for (NodeId id : e.members) h.nodes.emplace(id, g.nodes.at(id));
    h.hyperedges.push_back(std::move(e));
  }
  std::stable_sort(h.hyperedges.begin(), h.hyperedges.end(),
                   [](const Hyperedge& a, const Hyperedge& b) {
                     return a.exec_orders.front() < b.exec_orders.front();
                   });
  return h;
}

Hypergraph reduce_hyperedges(const Hypergraph& h) {
  std::vector<const Hyperedge*> sorted;
  for (const auto& e : h.hyperedges) sorted.push_back(&e);
  auto first_exec = [](const Hyperedge* e) {
    return e->exec_orders.empty() ? 0u : e->exec_orders.front();
  };
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const Hyperedge* a, const Hyperedge* b) { return first_exec(a) < first_exec(b); });

  Hypergraph out;
  out.nodes = h.nodes;
  std::map<std::string, std::size_t> slot;
  for (const Hyperedge* e : sorted) {
    auto [it, fresh] = slot.emplace(e->name, out.hyperedges.size());
    if (fresh) {
      out.hyperedges.push_back(*e);
      continue;
    }
    Hyperedge& into = out.hyperedges[it->second];
    into.id += "@" + e->id;
    into.exec_orders.insert(into.exec_orders.end(), e->exec_orders.begin(), e->exec_orders.end());
    std::sort(into.exec_orders.begin(), into.exec_orders.end());
    into.members.insert(e->members.begin(), e->members.end());
  }
  return out;
}

bool same_hyper_properties(const IRNode& a, const IRNode& b) {
  return a.opcode == b.opcode && a.status == b.status && a.ir_id == b.ir_id &&
         a.is_dummy == b.is_dummy;
}

Hypergraph simplify_hyperedges(const Hypergraph& h) {
  Hypergraph out = h;
  const auto membership = h.memberships();

  using ClassKey = std::tuple<Opcode, StatusFlags, IrId, bool, std::set<std::string>>;
  std::map<ClassKey, NodeId> survivor;
  std::map<NodeId, NodeId> merged_into;
  // Ascending id, so the first node seen in a class survives.
  for (const auto& [id, n] : h.nodes) {
    auto m = membership.find(id);
    if (m == membership.end()) continue;
    ClassKey key{n.opcode, n.status, n.ir_id, n.is_dummy, m->second};
    auto [it, fresh] = survivor.emplace(std::move(key), id);
    if (!fresh) merged_into.emplace(id, it->second);
  }

  for (const auto& [drop, keep] : merged_into) {
    IRNode& kept = out.nodes.at(keep);
    const IRNode removed = out.nodes.at(drop);
    kept.merged_count += removed.merged_count;
    for (NodeId nb : removed.neighbors) {
      auto it = out.nodes.find(nb);
      if (it == out.nodes.end() || nb == drop) continue;
      it->second.neighbors.erase(drop);
      if (nb != keep) {
        it->second.neighbors.insert(keep);
        kept.neighbors.insert(nb);
      }
    }
    kept.neighbors.erase(drop);
    out.nodes.erase(drop);
  }
  for (auto& e : out.hyperedges) {
    for (const auto& [drop, keep] : merged_into) e.members.erase(drop);
  }
  return out;
}

std::vector<std::uint32_t> split_hyperedge_id(const std::string& id) {
  std::vector<std::uint32_t> out;
  std::size_t start = 0;
  while (start <= id.size()) {
    const auto at = id.find('@', start);
    const auto end = at == std::string::npos ? id.size() : at;
    out.push_back(static_cast<std::uint32_t>(std::stoul(id.substr(start, end - start))));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  return out;
}

}  // namespace irmetro
