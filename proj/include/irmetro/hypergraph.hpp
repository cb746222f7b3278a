#pragma once

#include <string>
#include <vector>

#include "irmetro/ir.hpp"

namespace irmetro {

/// One hyperedge per phase execution with surviving members; every node
/// joins its generating execution and each execution that optimized it.
Hypergraph construct_hypergraph(const IRGraph& g);

/// Merges hyperedges sharing a name. Ids are joined with '@' in ascending
/// exec_order; output is ordered by first exec_order.
Hypergraph reduce_hyperedges(const Hypergraph& h);

/// Properties compared when merging nodes inside the hypergraph.
bool same_hyper_properties(const IRNode& a, const IRNode& b);

/// Merges nodes with equal properties (opcode, status, ir_id) and identical
/// hyperedge memberships, keeping the lower id.
Hypergraph simplify_hyperedges(const Hypergraph& h);

/// Splits a reduced hyperedge id back into exec_orders.
std::vector<std::uint32_t> split_hyperedge_id(const std::string& id);

}  // namespace irmetro
