#include "irmetro/ir.hpp"

#include <algorithm>
#include <sstream>

#include "irmetro/error.hpp"

namespace irmetro {

namespace {

std::string node_where(NodeId id) { return "node " + std::to_string(id); }

std::string phase_where(const PhaseRef& p) {
  return "phase " + p.name + "@" + std::to_string(p.exec_order);
}

}  // namespace

const PhaseExecution* IRGraph::find_phase(const PhaseRef& ref) const {
  auto it = std::find_if(phases.begin(), phases.end(),
                         [&](const PhaseExecution& p) { return p.phase == ref; });
  return it == phases.end() ? nullptr : &*it;
}

PhaseExecution* IRGraph::find_phase(const PhaseRef& ref) {
  auto it = std::find_if(phases.begin(), phases.end(),
                         [&](const PhaseExecution& p) { return p.phase == ref; });
  return it == phases.end() ? nullptr : &*it;
}

void IRGraph::add_edge(NodeId a, NodeId b) {
  nodes.at(a).neighbors.insert(b);
  nodes.at(b).neighbors.insert(a);
}

void IRGraph::remove_node(NodeId id) {
  auto it = nodes.find(id);
  if (it == nodes.end()) return;
  for (NodeId n : it->second.neighbors) {
    if (n == id) continue;
    if (auto nit = nodes.find(n); nit != nodes.end()) nit->second.neighbors.erase(id);
  }
  nodes.erase(it);
  for (auto& p : phases) {
    std::erase(p.generated, id);
    std::erase(p.optimized, id);
  }
}

NodeId IRGraph::next_node_id() const {
  return nodes.empty() ? 0 : nodes.rbegin()->first + 1;
}

void derive_node_phases(IRGraph& g) {
  for (auto& [id, n] : g.nodes) n.opt_phases.clear();
  for (const auto& p : g.phases) {
    for (NodeId id : p.generated) {
      if (auto it = g.nodes.find(id); it != g.nodes.end()) it->second.gen_phase = p.phase;
    }
    for (NodeId id : p.optimized) {
      if (auto it = g.nodes.find(id); it != g.nodes.end()) {
        it->second.opt_phases.push_back(p.phase);
      }
    }
  }
}

void assign_gen_ordinals(IRGraph& g) {
  for (const auto& p : g.phases) {
    std::uint32_t ordinal = 0;
    for (NodeId id : p.generated) {
      if (auto it = g.nodes.find(id); it != g.nodes.end()) it->second.gen_ordinal = ordinal;
      ++ordinal;
    }
  }
}

std::string to_string(const Violation& v) {
  return v.kind + " at " + v.where + (v.detail.empty() ? "" : ": " + v.detail);
}

std::vector<Violation> validate_graph(const IRGraph& g) {
  std::vector<Violation> out;
  auto report = [&](std::string kind, std::string where, std::string detail = {}) {
    out.push_back({std::move(kind), std::move(where), std::move(detail)});
  };

  for (const auto& [id, n] : g.nodes) {
    if (n.id != id) {
      report("node-id-mismatch", node_where(id), "record carries id " + std::to_string(n.id));
    }
    if (n.merged_count < 1) report("invalid-merged-count", node_where(id));
    if (n.is_dummy && (!n.neighbors.empty() || n.merged_count != 1)) {
      report("dummy-invariant", node_where(id));
    }
    for (NodeId nb : n.neighbors) {
      auto it = g.nodes.find(nb);
      if (it == g.nodes.end()) {
        report("dangling-neighbor", node_where(id), "neighbor " + std::to_string(nb));
      } else if (!it->second.neighbors.contains(id)) {
        report("asymmetric-edge", node_where(id),
               "lists " + std::to_string(nb) + " but " + std::to_string(nb) +
                   " does not list it");
      }
    }
  }

  std::set<PhaseRef> seen_phases;
  std::map<NodeId, PhaseRef> generated_in;
  std::map<NodeId, std::vector<PhaseRef>> optimized_in;
  for (const auto& p : g.phases) {
    if (!seen_phases.insert(p.phase).second) report("duplicate-phase", phase_where(p.phase));
    std::set<NodeId> gen_set;
    for (NodeId id : p.generated) {
      if (!g.nodes.contains(id)) {
        report("unknown-node", phase_where(p.phase), "generated " + std::to_string(id));
        continue;
      }
      if (!gen_set.insert(id).second) {
        report("duplicate-member", phase_where(p.phase), "generated " + std::to_string(id));
        continue;
      }
      if (auto [it, fresh] = generated_in.emplace(id, p.phase); !fresh) {
        report("multiple-generation", node_where(id),
               "generated in " + phase_where(it->second) + " and " + phase_where(p.phase));
      }
    }
    std::set<NodeId> opt_set;
    for (NodeId id : p.optimized) {
      if (!g.nodes.contains(id)) {
        report("unknown-node", phase_where(p.phase), "optimized " + std::to_string(id));
        continue;
      }
      if (!opt_set.insert(id).second) {
        report("duplicate-member", phase_where(p.phase), "optimized " + std::to_string(id));
        continue;
      }
      if (gen_set.contains(id)) {
        report("gen-opt-overlap", phase_where(p.phase), "node " + std::to_string(id));
      }
      optimized_in[id].push_back(p.phase);
    }
  }

  for (const auto& [id, n] : g.nodes) {
    if (n.is_dummy) continue;
    auto gen = generated_in.find(id);
    if (gen == generated_in.end()) {
      report("missing-generation", node_where(id));
    } else if (gen->second != n.gen_phase) {
      report("gen-phase-mismatch", node_where(id),
             "attribute says " + phase_where(n.gen_phase) + ", lists say " +
                 phase_where(gen->second));
    }
    const auto opt = optimized_in.find(id);
    const std::vector<PhaseRef> expected =
        opt == optimized_in.end() ? std::vector<PhaseRef>{} : opt->second;
    if (expected != n.opt_phases) report("opt-phases-mismatch", node_where(id));
  }
  return out;
}

std::string to_string(const NodeKey& key) {
  std::ostringstream os;
  os << '(' << key.phase << ", " << key.ordinal << ", " << key.opcode << ')';
  return os.str();
}

NodeKey node_key(const IRNode& n) {
  if (n.is_dummy) {
    throw Error(ErrorKind::invariant,
                "dummy node " + std::to_string(n.id) + " has no node key");
  }
  return NodeKey{n.gen_phase.name, n.gen_ordinal, n.opcode.name};
}

AnchoredKey anchored_key(const IRNode& n) {
  return AnchoredKey{n.gen_phase.exec_order, node_key(n)};
}

std::map<NodeId, std::set<std::string>> Hypergraph::memberships() const {
  std::map<NodeId, std::set<std::string>> out;
  for (const auto& e : hyperedges) {
    for (NodeId id : e.members) out[id].insert(e.id);
  }
  return out;
}

std::vector<Violation> validate_hypergraph(const Hypergraph& h) {
  std::vector<Violation> out;
  std::set<NodeId> covered;
  std::set<std::string> ids;
  for (const auto& e : h.hyperedges) {
    if (!ids.insert(e.id).second) out.push_back({"duplicate-hyperedge", "hyperedge " + e.id, {}});
    for (NodeId id : e.members) {
      if (!h.nodes.contains(id)) {
        out.push_back({"unknown-node", "hyperedge " + e.id, "member " + std::to_string(id)});
      }
      covered.insert(id);
    }
  }
  for (const auto& [id, n] : h.nodes) {
    if (!covered.contains(id)) out.push_back({"uncovered-node", node_where(id), {}});
  }
  return out;
}

}  // namespace irmetro
