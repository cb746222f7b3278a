#include "irmetro/simplify.hpp"

#include <algorithm>
#include <vector>

namespace irmetro {

namespace {

bool same_optimization_info(const IRNode& a, const IRNode& b) {
  if (a.gen_phase.name != b.gen_phase.name || a.status != b.status) return false;
  return std::equal(a.opt_phases.begin(), a.opt_phases.end(), b.opt_phases.begin(),
                    b.opt_phases.end(),
                    [](const PhaseRef& x, const PhaseRef& y) { return x.name == y.name; });
}

// N(a) \ {b} == N(b) \ {a}
bool same_neighbors_except_pair(const IRNode& a, const IRNode& b) {
  const bool adjacent = a.neighbors.contains(b.id);
  if (adjacent != b.neighbors.contains(a.id)) return false;
  if (!adjacent) return a.neighbors == b.neighbors;
  if (a.neighbors.size() != b.neighbors.size()) return false;
  auto ia = a.neighbors.begin();
  auto ib = b.neighbors.begin();
  while (true) {
    if (ia != a.neighbors.end() && *ia == b.id) ++ia;
    if (ib != b.neighbors.end() && *ib == a.id) ++ib;
    if (ia == a.neighbors.end() || ib == b.neighbors.end()) {
      return ia == a.neighbors.end() && ib == b.neighbors.end();
    }
    if (*ia != *ib) return false;
    ++ia;
    ++ib;
  }
}

}  // namespace

IRGraph remove_dead_nodes(const IRGraph& g) {
  IRGraph out = g;
  for (const auto& [id, n] : g.nodes) {
    const bool dead = std::all_of(n.neighbors.begin(), n.neighbors.end(),
                                  [id = id](NodeId nb) { return nb == id; });
    if (dead) out.remove_node(id);
  }
  return out;
}

bool equivalent_nodes(const IRNode& a, const IRNode& b) {
  return a.id != b.id && a.opcode == b.opcode && a.ir_id == b.ir_id &&
         a.is_dummy == b.is_dummy && same_optimization_info(a, b) &&
         same_neighbors_except_pair(a, b);
}

IRGraph merge_equivalent_nodes(const IRGraph& g, MergeOptions options) {
  IRGraph out = g;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<NodeId> order;
    order.reserve(out.nodes.size());
    for (const auto& [id, n] : out.nodes) order.push_back(id);

    for (std::size_t i = 0; i < order.size(); ++i) {
      auto keep = out.nodes.find(order[i]);
      if (keep == out.nodes.end()) continue;
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        auto drop = out.nodes.find(order[j]);
        if (drop == out.nodes.end()) continue;
        // Cheap rejections before the full comparison.
        if (keep->second.neighbors.size() != drop->second.neighbors.size() ||
            keep->second.opcode != drop->second.opcode || keep->second.ir_id != drop->second.ir_id) {
          continue;
        }
        if (!equivalent_nodes(keep->second, drop->second)) continue;
        keep->second.merged_count += drop->second.merged_count;
        out.remove_node(order[j]);
        changed = true;
      }
    }
    if (options.single_pass) break;
  }
  derive_node_phases(out);
  return out;
}

}  // namespace irmetro
