#pragma once

#include "irmetro/ir.hpp"

namespace irmetro {

/// Keeps nodes with at least one edge to another node. Phase lists are
/// filtered to match.
IRGraph remove_dead_nodes(const IRGraph& g);

struct MergeOptions {
  // One ascending sweep instead of iterating to a fixpoint.
  bool single_pass = false;
};

/// True when a and b have the same opcode, the same optimization information
/// (generating phase name, optimizing phase names in order, status flags),
/// the same ir_id, and the same neighbors once their mutual edge is ignored.
bool equivalent_nodes(const IRNode& a, const IRNode& b);

/// Merges equivalent node pairs, keeping the lower id and summing
/// merged_count.
IRGraph merge_equivalent_nodes(const IRGraph& g, MergeOptions options = {});

}  // namespace irmetro
