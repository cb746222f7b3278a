#include "irmetro/diffmerge.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "irmetro/error.hpp"

namespace irmetro {

namespace {

std::vector<AnchoredKey> neighbor_keys(const IRGraph& g, const IRNode& n) {
  std::vector<AnchoredKey> out;
  for (NodeId nb : n.neighbors) {
    auto it = g.nodes.find(nb);
    if (it != g.nodes.end() && !it->second.is_dummy) out.push_back(anchored_key(it->second));
  }
  return out;
}

PhaseExecution& ensure_phase(IRGraph& g, const PhaseRef& ref) {
  if (auto* p = g.find_phase(ref)) return *p;
  PhaseExecution pe;
  pe.phase = ref;
  pe.hyperedge_id = std::to_string(ref.exec_order);
  auto pos = std::upper_bound(g.phases.begin(), g.phases.end(), ref.exec_order,
                              [](std::uint32_t order, const PhaseExecution& p) {
                                return order < p.phase.exec_order;
                              });
  return *g.phases.insert(pos, std::move(pe));
}

// Member keys per phase execution of the graph being merged into.
class PhaseKeyIndex {
 public:
  explicit PhaseKeyIndex(const IRGraph& g) {
    for (const auto& p : g.phases) {
      auto& keys = keys_[p.phase];
      for (NodeId id : p.generated) keys.insert(anchored_key(g.nodes.at(id)));
      for (NodeId id : p.optimized) keys.insert(anchored_key(g.nodes.at(id)));
    }
  }

  bool contains(const PhaseRef& phase, const AnchoredKey& key) const {
    auto it = keys_.find(phase);
    return it != keys_.end() && it->second.contains(key);
  }

  void insert(const PhaseRef& phase, const AnchoredKey& key) { keys_[phase].insert(key); }

 private:
  std::map<PhaseRef, std::set<AnchoredKey>> keys_;
};

}  // namespace

std::vector<AnchoredKey> phase_member_keys(const IRGraph& g, const PhaseExecution& p) {
  std::vector<AnchoredKey> keys;
  keys.reserve(p.generated.size() + p.optimized.size());
  for (NodeId id : p.generated) keys.push_back(anchored_key(g.nodes.at(id)));
  for (NodeId id : p.optimized) keys.push_back(anchored_key(g.nodes.at(id)));
  std::sort(keys.begin(), keys.end());
  return keys;
}

SubIR select_candidates(const IRGraph& original, const IRGraph& variant) {
  SubIR sub;
  sub.source_ir_id = variant.ir_id;
  for (const auto& vp : variant.phases) {
    const PhaseExecution* op = original.find_phase(vp.phase);
    if (op && phase_member_keys(original, *op) == phase_member_keys(variant, vp)) continue;

    CandidatePhase cand;
    cand.phase = vp.phase;
    auto add = [&](NodeId id, MemberRole role) {
      const IRNode& n = variant.nodes.at(id);
      cand.members.push_back({anchored_key(n), n, role, neighbor_keys(variant, n)});
    };
    for (NodeId id : vp.generated) add(id, MemberRole::generated);
    for (NodeId id : vp.optimized) add(id, MemberRole::optimized);
    sub.candidate_phases.push_back(std::move(cand));
  }
  return sub;
}

IRGraph merge_into_original(const IRGraph& original, std::span<const SubIR> subirs) {
  if (original.ir_id != kOriginalIrId) {
    throw Error(ErrorKind::invariant, "merge target must be the original IR (ir_id 0)");
  }
  IRGraph merged = original;
  PhaseKeyIndex phase_keys(merged);

  std::map<AnchoredKey, NodeId> native;
  for (const auto& [id, n] : merged.nodes) {
    if (!n.is_dummy) native.emplace(anchored_key(n), id);
  }
  // Variant nodes already imported, by source run.
  std::map<std::pair<IrId, AnchoredKey>, NodeId> imported;

  for (const SubIR& sub : subirs) {
    std::vector<std::pair<NodeId, const CandidateNode*>> added;

    for (const CandidatePhase& cp : sub.candidate_phases) {
      std::map<AnchoredKey, NodeId> seen;
      for (const CandidateNode& cn : cp.members) {
        if (auto [it, fresh] = seen.emplace(cn.key, cn.node.id); !fresh && it->second != cn.node.id) {
          throw Error(ErrorKind::key_collision,
                      "ir " + std::to_string(sub.source_ir_id) + " phase " + cp.phase.name + "@" +
                          std::to_string(cp.phase.exec_order) + ": nodes " +
                          std::to_string(it->second) + " and " + std::to_string(cn.node.id) +
                          " share key " + to_string(cn.key.key));
        }
      }

      ensure_phase(merged, cp.phase);
      for (const CandidateNode& cn : cp.members) {
        if (phase_keys.contains(cp.phase, cn.key)) continue;

        const auto import_key = std::make_pair(sub.source_ir_id, cn.key);
        NodeId id;
        if (auto it = imported.find(import_key); it != imported.end()) {
          id = it->second;
        } else {
          id = merged.next_node_id();
          IRNode n = cn.node;
          n.id = id;
          n.ir_id = sub.source_ir_id;
          n.neighbors.clear();
          n.opt_phases.clear();
          merged.nodes.emplace(id, std::move(n));
          imported.emplace(import_key, id);
          added.emplace_back(id, &cn);

          const PhaseRef gen = cn.node.gen_phase;
          if (gen != cp.phase || cn.role != MemberRole::generated) {
            // Generated elsewhere: register with its generating execution too.
            ensure_phase(merged, gen).generated.push_back(id);
            phase_keys.insert(gen, cn.key);
          }
        }
        PhaseExecution& target = *merged.find_phase(cp.phase);
        if (cn.role == MemberRole::generated) {
          if (std::find(target.generated.begin(), target.generated.end(), id) ==
              target.generated.end()) {
            target.generated.push_back(id);
          }
        } else {
          target.optimized.push_back(id);
        }
        phase_keys.insert(cp.phase, cn.key);
      }
    }

    for (const auto& [id, cn] : added) {
      for (const AnchoredKey& nk : cn->neighbor_keys) {
        NodeId target;
        if (auto it = imported.find({sub.source_ir_id, nk}); it != imported.end()) {
          target = it->second;
        } else if (auto nit = native.find(nk); nit != native.end()) {
          target = nit->second;
        } else {
          continue;
        }
        merged.add_edge(id, target);
      }
    }
  }

  derive_node_phases(merged);
  return merged;
}

}  // namespace irmetro
