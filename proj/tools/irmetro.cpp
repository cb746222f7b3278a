// irmetro: generate synthetic IR corpora, analyze them into metro-map
// datasets, and inspect the results.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "irmetro/error.hpp"
#include "irmetro/ingest.hpp"
#include "irmetro/pipeline.hpp"
#include "irmetro/synthgen.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace irmetro;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEmpty = 3;

void init_logging() {
  auto logger = spdlog::stderr_color_mt("irmetro");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("IRMETRO_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::empty_hypergraph ? kExitEmpty : kExitInput;
}

struct GenArgs {
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::uint32_t variants = 20;
  bool variants_set = false;
  std::string bug;
  std::string config;
  std::string out = "corpus";
};

int run_gen(const GenArgs& args) {
  GenConfig cfg;
  if (!args.config.empty()) cfg = gen_config_from_json(read_text_file(args.config));
  if (args.seed_set) cfg.seed = args.seed;
  if (args.variants_set) cfg.n_variants = args.variants;
  if (!args.bug.empty()) cfg.bug = parse_bug_spec(args.bug);
  spdlog::info("generating corpus seed={} variants={}", cfg.seed, cfg.n_variants);
  const auto corpus = generate_corpus(cfg);
  const auto manifest = write_corpus(corpus, args.out);
  std::cout << "wrote " << (1 + corpus.variants.size()) << " dumps, " << manifest.string() << "\n";
  return kExitOk;
}

struct AnalyzeArgs {
  std::string manifest;
  std::string out = "out";
  std::vector<std::string> exclude;
  bool single_pass = false;
  std::size_t top_k = 3;
  std::string format = "text";
};

int run_analyze(const AnalyzeArgs& args) {
  AnalyzeOptions opts;
  if (!args.exclude.empty()) opts.exclude = args.exclude;
  opts.single_pass = args.single_pass;
  opts.top_k = args.top_k;

  const Corpus corpus = load_corpus(fs::path(args.manifest));
  spdlog::info("loaded original + {} variants", corpus.variants.size());
  const PipelineResult r = run_pipeline(corpus, opts);
  spdlog::info("merged graph: {} nodes, {} phase executions", r.merged.nodes.size(),
               r.merged.phases.size());
  for (const auto& w : r.metro.warnings) spdlog::warn("{}", w);

  const fs::path out(args.out);
  fs::create_directories(out);
  const std::string report = format_report(r.report, opts.top_k);
  write_text_file(out / "metromap.json", export_json(r, opts));
  write_text_file(out / "stats.json", stats_json(r.stats));
  write_text_file(out / "report.txt", report);

  if (args.format == "json") {
    std::cout << stats_json(r.stats);
  } else {
    std::cout << report << "\n" << format_stats(r.stats);
  }
  return kExitOk;
}

int run_stats(const std::string& path, const std::string& format) {
  const ReductionStats s = stats_from_export(read_text_file(path));
  std::cout << (format == "json" ? stats_json(s) : format_stats(s));
  return kExitOk;
}

int run_validate(const std::vector<std::string>& files, const std::string& format) {
  int status = kExitOk;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& f : files) {
    nlohmann::ordered_json entry;
    entry["file"] = f;
    try {
      const std::string text = read_text_file(f);
      const auto doc = nlohmann::json::parse(text, nullptr, false);
      if (!doc.is_discarded() && doc.is_object() && doc.contains("original")) {
        const Corpus c = load_corpus(fs::path(f));
        entry["graphs"] = 1 + c.variants.size();
      } else {
        parse_dump(text, f);
        entry["graphs"] = 1;
      }
      entry["ok"] = true;
    } catch (const Error& e) {
      entry["ok"] = false;
      entry["error"] = e.what();
      status = kExitInput;
    }
    if (format != "json") {
      std::cout << f << ": " << (entry["ok"].get<bool>() ? "ok" : entry["error"].get<std::string>())
                << "\n";
    }
    results.push_back(std::move(entry));
  }
  if (format == "json") std::cout << results.dump(2) << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  CLI::App app{"IR merge/simplify pipeline and metro-map exporter"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic IR corpus");
  gen_cmd->add_option("--seed", gen.seed, "Corpus seed")->each([&](const std::string&) { gen.seed_set = true; });
  gen_cmd->add_option("--variants", gen.variants, "Number of variant IRs")
      ->each([&](const std::string&) { gen.variants_set = true; });
  gen_cmd->add_option("--bug", gen.bug, "Injected bug, PHASE:missing-optimization|extra-node");
  gen_cmd->add_option("--config", gen.config, "JSON generator config");
  gen_cmd->add_option("--out", gen.out, "Output directory");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the pipeline over a corpus manifest");
  analyze_cmd->add_option("manifest", analyze.manifest, "Corpus manifest")->required();
  analyze_cmd->add_option("--out", analyze.out, "Output directory");
  analyze_cmd->add_option("--exclude-phase", analyze.exclude,
                          "Phase left out of the ranking (repeatable; replaces the default GraphBuilder)");
  analyze_cmd->add_flag("--single-pass", analyze.single_pass, "Single sweep for equivalent-node merging");
  analyze_cmd->add_option("--top-k", analyze.top_k, "Number of lines to flag");
  analyze_cmd->add_option("--format", analyze.format, "Console output")
      ->check(CLI::IsMember({"json", "text"}));

  std::string stats_path;
  std::string stats_format = "text";
  auto* stats_cmd = app.add_subcommand("stats", "Print reduction statistics of an export");
  stats_cmd->add_option("export", stats_path, "metromap.json or stats.json")->required();
  stats_cmd->add_option("--format", stats_format)->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> validate_files;
  std::string validate_format = "text";
  auto* validate_cmd = app.add_subcommand("validate", "Validate IR dumps or corpus manifests");
  validate_cmd->add_option("files", validate_files, "Dump or manifest files")->required();
  validate_cmd->add_option("--format", validate_format)->check(CLI::IsMember({"json", "text"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*analyze_cmd) return run_analyze(analyze);
    if (*stats_cmd) return run_stats(stats_path, stats_format);
    if (*validate_cmd) return run_validate(validate_files, validate_format);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitInput;
  }
  return kExitOk;
}
