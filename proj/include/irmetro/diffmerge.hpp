#pragma once

// Candidate-hyperedge selection from variant IRs and merging into the
// original IR.

#include <span>
#include <vector>

#include "irmetro/ir.hpp"

namespace irmetro {

enum class MemberRole { generated, optimized };

/// A variant node carried across runs by its key.
struct CandidateNode {
  AnchoredKey key;
  IRNode node;
  MemberRole role = MemberRole::generated;
  std::vector<AnchoredKey> neighbor_keys;
};

struct CandidatePhase {
  PhaseRef phase;
  std::vector<CandidateNode> members;
};

struct SubIR {
  IrId source_ir_id = 0;
  std::vector<CandidatePhase> candidate_phases;

  bool empty() const { return candidate_phases.empty(); }
};

/// Sorted multiset of member keys (generated and optimized) of one phase.
std::vector<AnchoredKey> phase_member_keys(const IRGraph& g, const PhaseExecution& p);

/// Variant phase executions that are missing from the original or whose
/// member-key multiset differs from the original's execution of the same
/// (name, exec_order).
SubIR select_candidates(const IRGraph& original, const IRGraph& variant);

/// Folds candidate phases into a copy of the original, in order. Variant
/// nodes whose key is already a member of the target phase are dropped;
/// others are added with fresh ids and their source ir_id.
IRGraph merge_into_original(const IRGraph& original, std::span<const SubIR> subirs);

}  // namespace irmetro
