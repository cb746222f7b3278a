#pragma once

// End-to-end analysis: select, merge, simplify, lift, reduce, score, and
// build the metro-map export.

#include <span>
#include <string>
#include <vector>

#include "irmetro/diffmerge.hpp"
#include "irmetro/ingest.hpp"
#include "irmetro/ir.hpp"
#include "irmetro/localize.hpp"

namespace irmetro {

inline constexpr const char* kExportSchemaVersion = "1";

struct ReductionStats {
  std::uint64_t original_set_count = 0;
  std::uint64_t reduced_set_count = 0;
  std::uint64_t original_element_count = 0;
  std::uint64_t reduced_element_count = 0;
  double set_reduction_pct = 0.0;
  double element_reduction_pct = 0.0;

  bool operator==(const ReductionStats&) const = default;
};

/// (1 - reduced/original) * 100 rounded to two decimals; 0 when original is 0.
double reduction_pct(std::uint64_t original, std::uint64_t reduced);

ReductionStats make_stats(std::uint64_t original_sets, std::uint64_t reduced_sets,
                          std::uint64_t original_elements, std::uint64_t reduced_elements);

struct AnalyzeOptions {
  std::vector<std::string> exclude = default_excluded_phases();
  bool single_pass = false;
  std::size_t top_k = 3;
};

struct PipelineResult {
  std::vector<SubIR> subirs;
  IRGraph merged;
  IRGraph simplified;
  Hypergraph hypergraph;  // reduced and simplified, scores attached
  SuspicionReport report;
  MetroPrep metro;
  ReductionStats stats;
};

PipelineResult run_pipeline(const IRGraph& original, std::span<const IRGraph> variants,
                            const AnalyzeOptions& options = {});
PipelineResult run_pipeline(const Corpus& corpus, const AnalyzeOptions& options = {});

/// The metro-map dataset consumed by the UI, as JSON text.
std::string export_json(const PipelineResult& result, const AnalyzeOptions& options = {});
std::string stats_json(const ReductionStats& stats);
ReductionStats stats_from_export(std::string_view export_text);

/// Aligned ranking table; the top_k ranked lines are flagged with "**".
std::string format_report(const SuspicionReport& report, std::size_t top_k);
std::string format_stats(const ReductionStats& stats);

}  // namespace irmetro
