#pragma once

// Brute-force reference implementations. Deliberately naive: quadratic pair
// scans and union-find instead of the library's incremental bookkeeping.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "irmetro/ir.hpp"

namespace irmetro::oracle {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

inline void erase_node(IRGraph& g, NodeId id) {
  g.nodes.erase(id);
  for (auto& [other, n] : g.nodes) n.neighbors.erase(id);
  for (auto& p : g.phases) {
    p.generated.erase(std::remove(p.generated.begin(), p.generated.end(), id), p.generated.end());
    p.optimized.erase(std::remove(p.optimized.begin(), p.optimized.end(), id), p.optimized.end());
  }
}

inline IRGraph remove_dead(const IRGraph& g) {
  IRGraph out = g;
  std::vector<NodeId> dead;
  for (const auto& [id, n] : g.nodes) {
    std::size_t degree = 0;
    for (NodeId nb : n.neighbors) degree += nb != id;
    if (degree == 0) dead.push_back(id);
  }
  for (NodeId id : dead) erase_node(out, id);
  return out;
}

inline std::vector<std::string> opt_names(const IRNode& n) {
  std::vector<std::string> out;
  for (const auto& p : n.opt_phases) out.push_back(p.name);
  return out;
}

inline bool mergeable(const IRNode& a, const IRNode& b) {
  if (a.opcode != b.opcode) return false;
  if (a.gen_phase.name != b.gen_phase.name || opt_names(a) != opt_names(b) || a.status != b.status) {
    return false;
  }
  if (a.ir_id != b.ir_id || a.is_dummy != b.is_dummy) return false;
  std::set<NodeId> na = a.neighbors;
  std::set<NodeId> nb = b.neighbors;
  na.erase(b.id);
  nb.erase(a.id);
  return na == nb;
}

/// Rounds of: partition by the pairwise criteria, collapse each class onto
/// its lowest id. Stops when a round finds nothing to merge.
inline IRGraph merge_to_fixpoint(const IRGraph& g) {
  IRGraph out = g;
  while (true) {
    std::vector<NodeId> ids;
    for (const auto& [id, n] : out.nodes) ids.push_back(id);
    UnionFind uf(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        if (mergeable(out.nodes.at(ids[i]), out.nodes.at(ids[j]))) uf.unite(i, j);
      }
    }
    bool any = false;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const std::size_t root = uf.find(i);
      if (root == i) continue;
      any = true;
      out.nodes.at(ids[root]).merged_count += out.nodes.at(ids[i]).merged_count;
    }
    if (!any) break;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (uf.find(i) != i) erase_node(out, ids[i]);
    }
  }
  return out;
}

inline IRGraph simplify(const IRGraph& g) { return merge_to_fixpoint(remove_dead(g)); }

/// Member union per hyperedge name.
inline std::map<std::string, std::set<NodeId>> group_by_name(const Hypergraph& h) {
  std::map<std::string, std::set<NodeId>> out;
  for (const auto& e : h.hyperedges) out[e.name].insert(e.members.begin(), e.members.end());
  return out;
}

struct HyperPartition {
  // surviving id -> summed merged_count
  std::map<NodeId, std::uint32_t> survivors;
  // hyperedge name -> members after collapsing
  std::map<std::string, std::set<NodeId>> members;
};

inline HyperPartition hyper_classes(const Hypergraph& h) {
  std::vector<NodeId> ids;
  for (const auto& [id, n] : h.nodes) ids.push_back(id);
  auto membership = [&](NodeId id) {
    std::set<std::string> s;
    for (const auto& e : h.hyperedges) {
      if (e.members.count(id)) s.insert(e.id);
    }
    return s;
  };
  std::vector<std::set<std::string>> ms;
  for (NodeId id : ids) ms.push_back(membership(id));

  UnionFind uf(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ms[i].empty()) continue;
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const IRNode& a = h.nodes.at(ids[i]);
      const IRNode& b = h.nodes.at(ids[j]);
      if (ms[i] == ms[j] && a.opcode == b.opcode && a.status == b.status && a.ir_id == b.ir_id &&
          a.is_dummy == b.is_dummy) {
        uf.unite(i, j);
      }
    }
  }
  HyperPartition out;
  std::map<NodeId, NodeId> rep;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const NodeId r = ids[uf.find(i)];
    rep[ids[i]] = r;
    out.survivors[r] += h.nodes.at(ids[i]).merged_count;
  }
  for (const auto& e : h.hyperedges) {
    auto& m = out.members[e.name];
    for (NodeId id : e.members) m.insert(rep.at(id));
  }
  return out;
}

inline std::vector<AnchoredKey> member_keys(const IRGraph& g, const PhaseExecution& p) {
  std::vector<AnchoredKey> keys;
  for (NodeId id : p.generated) keys.push_back(anchored_key(g.nodes.at(id)));
  for (NodeId id : p.optimized) keys.push_back(anchored_key(g.nodes.at(id)));
  std::sort(keys.begin(), keys.end());
  return keys;
}

inline std::set<AnchoredKey> graph_keys(const IRGraph& g) {
  std::set<AnchoredKey> out;
  for (const auto& [id, n] : g.nodes) {
    if (!n.is_dummy) out.insert(anchored_key(n));
  }
  return out;
}

/// Original keys plus every key of every variant phase execution whose
/// member-key multiset differs from the original's.
inline std::set<AnchoredKey> expected_merged_keys(const IRGraph& original,
                                                   const std::vector<IRGraph>& variants) {
  std::set<AnchoredKey> out = graph_keys(original);
  for (const auto& v : variants) {
    for (const auto& vp : v.phases) {
      const PhaseExecution* op = nullptr;
      for (const auto& p : original.phases) {
        if (p.phase.name == vp.phase.name && p.phase.exec_order == vp.phase.exec_order) op = &p;
      }
      const auto vk = member_keys(v, vp);
      if (op && member_keys(original, *op) == vk) continue;
      out.insert(vk.begin(), vk.end());
    }
  }
  return out;
}

}  // namespace irmetro::oracle
