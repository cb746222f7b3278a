#pragma once

// Sea-of-nodes IR model shared by every pipeline stage: per-run IR graphs,
// the phase executions that touched them, and the hypergraph they become.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace irmetro {

using NodeId = std::uint64_t;
using IrId = std::uint32_t;

/// ir_id reserved for the original (possibly buggy) program.
inline constexpr IrId kOriginalIrId = 0;

struct StatusFlags {
  bool replaced = false;
  bool killed = false;
  bool removed = false;
  bool appended = false;

  auto operator<=>(const StatusFlags&) const = default;
};

struct Opcode {
  std::string name;
  std::uint32_t code = 0;

  auto operator<=>(const Opcode&) const = default;
};

/// One execution of a named phase; exec_order is its position in the run.
struct PhaseRef {
  std::string name;
  std::uint32_t exec_order = 0;

  auto operator<=>(const PhaseRef&) const = default;
};

struct IRNode {
  NodeId id = 0;
  std::string address;
  Opcode opcode;
  IrId ir_id = kOriginalIrId;
  PhaseRef gen_phase;
  // Position among the nodes its generating phase execution produced, as
  // observed in the run the node came from. Survives merging unchanged.
  std::uint32_t gen_ordinal = 0;
  std::vector<PhaseRef> opt_phases;
  std::set<NodeId> neighbors;
  StatusFlags status;
  std::uint32_t merged_count = 1;
  bool is_dummy = false;

  bool operator==(const IRNode&) const = default;
};

struct PhaseExecution {
  PhaseRef phase;
  std::vector<NodeId> generated;
  std::vector<NodeId> optimized;
  std::string hyperedge_id;

  bool operator==(const PhaseExecution&) const = default;
};

enum class GraphLabel { original, variant };

struct IRGraph {
  IrId ir_id = kOriginalIrId;
  GraphLabel label = GraphLabel::original;
  std::optional<bool> buggy;
  std::map<NodeId, IRNode> nodes;
  std::vector<PhaseExecution> phases;

  bool operator==(const IRGraph&) const = default;

  const PhaseExecution* find_phase(const PhaseRef& ref) const;
  PhaseExecution* find_phase(const PhaseRef& ref);

  /// Symmetric insert. Both endpoints must exist.
  void add_edge(NodeId a, NodeId b);
  /// Drops the node, its incident edges and its phase memberships.
  void remove_node(NodeId id);
  NodeId next_node_id() const;
};

/// Recomputes every node's gen_phase and opt_phases from the phase lists.
/// gen_ordinal is left untouched.
void derive_node_phases(IRGraph& g);

/// Sets gen_ordinal to the node's position in its generated list.
void assign_gen_ordinals(IRGraph& g);

struct Violation {
  std::string kind;
  std::string where;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& v);

std::vector<Violation> validate_graph(const IRGraph& g);

/// Cross-run node identity: generating phase name, ordinal within that
/// phase execution, opcode name.
struct NodeKey {
  std::string phase;
  std::uint32_t ordinal = 0;
  std::string opcode;

  auto operator<=>(const NodeKey&) const = default;
};

std::string to_string(const NodeKey& key);

/// Throws Error(invariant) for dummy nodes.
NodeKey node_key(const IRNode& n);

/// NodeKey plus the exec_order of the generating phase execution. Unlike the
/// bare key it stays unique when a phase name runs more than once, so it is
/// what cross-run correspondence compares.
struct AnchoredKey {
  std::uint32_t gen_exec = 0;
  NodeKey key;

  auto operator<=>(const AnchoredKey&) const = default;
};

AnchoredKey anchored_key(const IRNode& n);

struct Hyperedge {
  std::string id;
  std::string name;
  // Constituent phase executions, ascending.
  std::vector<std::uint32_t> exec_orders;
  std::set<NodeId> members;
  std::optional<double> suspiciousness;
  bool is_isolated = false;

  bool operator==(const Hyperedge&) const = default;
};

struct Hypergraph {
  std::map<NodeId, IRNode> nodes;
  std::vector<Hyperedge> hyperedges;

  bool operator==(const Hypergraph&) const = default;

  /// Hyperedge ids each node belongs to.
  std::map<NodeId, std::set<std::string>> memberships() const;
};

std::vector<Violation> validate_hypergraph(const Hypergraph& h);

}  // namespace irmetro
