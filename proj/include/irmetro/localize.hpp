#pragma once

// Suspiciousness scoring of phase lines and metro-map preparation.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irmetro/ir.hpp"

namespace irmetro {

inline constexpr std::size_t kMetroNodeBudget = 500;
inline constexpr std::size_t kMetroLineBudget = 30;

/// GraphBuilder always holds the most nodes but is not an optimization.
std::vector<std::string> default_excluded_phases();

struct SuspicionRow {
  std::string name;
  std::string hyperedge_id;
  std::uint64_t total_members = 0;
  std::uint64_t foreign_members = 0;
  double score = 0.0;
  bool generation_anomaly = false;
  bool excluded = false;
  // 1-based; empty for excluded phases.
  std::optional<std::size_t> rank;
};

struct SuspicionReport {
  std::vector<SuspicionRow> rows;  // hyperedge order
  std::vector<std::string> ranking;
  std::vector<std::string> excluded;

  const SuspicionRow* find(const std::string& name) const;
};

/// Foreign density per hyperedge, counting merged_count multiplicities.
/// Throws Error(empty_hypergraph) when there are no non-dummy nodes.
SuspicionReport score_hyperedges(const Hypergraph& h, std::span<const std::string> exclude);

/// Copies each row's score onto the matching hyperedge.
void attach_suspiciousness(Hypergraph& h, const SuspicionReport& report);

struct MetroPrep {
  Hypergraph main;
  std::vector<Hyperedge> isolated;
  // Node records for members of isolated hyperedges that left `main`.
  std::map<NodeId, IRNode> isolated_nodes;
  std::vector<std::string> warnings;
};

/// Pads singleton hyperedges with a dummy node, separates hyperedges that
/// intersect no other, and warns past the metro node/line budgets.
MetroPrep prepare_for_metromap(const Hypergraph& h);

}  // namespace irmetro
