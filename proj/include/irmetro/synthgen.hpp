#pragma once

// Seedable synthetic IR corpus: one original program and N mutated variants
// sharing a phase schedule, with optional bug injection into the original.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irmetro/ingest.hpp"
#include "irmetro/ir.hpp"

namespace irmetro {

enum class BugMode { missing_optimization, extra_node };

std::string_view to_string(BugMode mode);
BugMode parse_bug_mode(std::string_view text);

struct BugSpec {
  std::string phase;
  BugMode mode = BugMode::missing_optimization;

  bool operator==(const BugSpec&) const = default;
};

/// Parses "Phase:mode", e.g. "EarlyOptimization:missing-optimization".
BugSpec parse_bug_spec(std::string_view text);

struct CountRange {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;

  bool operator==(const CountRange&) const = default;
};

std::vector<std::string> default_phase_names();

struct GenConfig {
  std::uint64_t seed = 0;
  std::uint32_t n_variants = 20;
  std::vector<std::string> phase_names = default_phase_names();
  // Length of the shared phase schedule.
  CountRange phase_executions{30, 40};
  // Distinct phase names the schedule draws from; repeats fill the rest.
  CountRange active_phases{13, 18};
  CountRange nodes_per_graph{300, 500};
  double opt_probability = 0.15;
  double variant_mutation_rate = 0.1;
  double dead_fraction = 0.03;
  double twin_fraction = 0.05;
  std::optional<BugSpec> bug;

  bool operator==(const GenConfig&) const = default;
};

/// Throws Error(config) describing the first invalid field.
void validate_config(const GenConfig& cfg);

/// Reads a JSON object; absent keys keep their defaults.
GenConfig gen_config_from_json(std::string_view text);
std::string gen_config_to_json(const GenConfig& cfg);

struct GroundTruth {
  std::optional<std::string> bug_phase;
  std::optional<BugMode> mode;

  bool operator==(const GroundTruth&) const = default;
};

std::string ground_truth_to_json(const GroundTruth& truth);
GroundTruth ground_truth_from_json(std::string_view text);

struct GeneratedCorpus {
  IRGraph original;
  std::vector<IRGraph> variants;
  GroundTruth truth;
};

GeneratedCorpus generate_corpus(const GenConfig& cfg);

/// Writes ir_000.json .. ir_NNN.json, manifest.json and truth.json into dir.
/// Returns the manifest path.
std::filesystem::path write_corpus(const GeneratedCorpus& corpus, const std::filesystem::path& dir);

}  // namespace irmetro
