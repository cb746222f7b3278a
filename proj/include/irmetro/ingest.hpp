#pragma once

// IR dump files (one graph per file) and corpus manifests.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "irmetro/ir.hpp"

namespace irmetro {

struct CorpusManifest {
  std::filesystem::path original;
  std::vector<std::filesystem::path> variants;

  std::size_t n_variants() const { return variants.size(); }
};

/// Relative entries are resolved against the manifest's directory.
CorpusManifest read_manifest(const std::filesystem::path& path);
/// Paths are written as given.
void write_manifest(const std::filesystem::path& path, const CorpusManifest& manifest);

/// Throws Error(parse) on malformed text and Error(invariant) when the text is
/// well formed but describes an invalid graph.
IRGraph parse_dump(std::string_view text, std::string_view source = "<memory>");
IRGraph read_dump(const std::filesystem::path& path);

std::string serialize_dump(const IRGraph& g);
void write_dump(const std::filesystem::path& path, const IRGraph& g);

struct Corpus {
  IRGraph original;
  std::vector<IRGraph> variants;
};

/// Loads the original (ir_id 0) and variants (ir_id 1..N, manifest order).
Corpus load_corpus(const CorpusManifest& manifest);
Corpus load_corpus(const std::filesystem::path& manifest_path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace irmetro
