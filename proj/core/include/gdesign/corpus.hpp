#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gdesign/decomp.hpp"

namespace gdesign {

/// One `decomp` record: a target, a development rule and base blocks that may
/// serve several graphs at once (each graph's blocks form a separate decomposition).
struct CorpusEntry {
  BaseDecomposition decomposition;
  std::vector<GraphId> graph_indices;  // ascending
  std::string source;                  // "file:line" of the record header

  ShapeKey shape() const { return decomposition.target.shape(); }
  bool serves(GraphId g) const;
  /// Same target and rule, only the base blocks of graph g.
  BaseDecomposition restrict_to(GraphId g) const;
};

/// Parses corpus text. Points are 0-based. Throws ParseError with the line number.
std::vector<CorpusEntry> parse_corpus(std::string_view text, const std::string& source_name = "<input>");

std::string serialize(const CorpusEntry& entry);
std::string serialize(const std::vector<CorpusEntry>& entries);

/// Per-graph exact coverage of one entry.
std::vector<std::pair<GraphId, VerificationReport>> verify_entry(const CorpusEntry& entry, int workers = 1);

/// A single allowlisted correction to a stored base block.
struct Erratum {
  std::string record;
  std::size_t base_index = 0;
  PlacedBlock before;
  PlacedBlock after;
  std::string justification;
  std::string source;
};

/// Parses `patch <record> <base-index> <gid> z1..z6 => <gid> z1..z6  # justification` lines.
std::vector<Erratum> parse_errata(std::string_view text, const std::string& source_name = "<errata>");

/// Applies errata in order; each must match its `before` block exactly.
void apply_errata(std::vector<CorpusEntry>& entries, const std::vector<Erratum>& errata);

class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<CorpusEntry> entries) : entries_(std::move(entries)) {}

  /// Loads every *.decomp file below `dir`, applies *.errata files, and in strict
  /// mode verifies every entry (VerificationFailure names the offending pair and block).
  static Corpus load_directory(const std::filesystem::path& dir, bool strict = true);

  void add(CorpusEntry entry) { entries_.push_back(std::move(entry)); }

  const std::vector<CorpusEntry>& entries() const { return entries_; }

  /// The stored decomposition of `shape` restricted to graph g, if any.
  std::optional<BaseDecomposition> lookup(const ShapeKey& shape, GraphId g) const;

  std::vector<ShapeKey> shapes_for(GraphId g) const;

 private:
  std::vector<CorpusEntry> entries_;
};

std::string read_text_file(const std::filesystem::path& path);

/// DESIGN_DATA_DIR if set, otherwise the data directory recorded at build time.
std::filesystem::path default_data_dir();

}  // namespace gdesign
