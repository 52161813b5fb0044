#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddr/library.hpp"

namespace ddr {

inline constexpr char kDelimiter = '\x01';

enum class MatchStatus { Exact, Partial, None };

const char* match_status_name(MatchStatus s);  // "exact" / "partial" / "none"

// Verdict for one candidate. resolved holds the fqns the query denotes as a
// whole object (exact match plus component-suffix hits); partial_hits holds
// component-aligned occurrences that do not resolve (the query is a qualified
// prefix or an interior component run). For batch entries that were invalid
// queries, error is nonempty and status is None.
struct MatchResult {
  std::string query;
  MatchStatus status = MatchStatus::None;
  std::vector<std::string> resolved;
  std::vector<std::string> partial_hits;
  std::string error;

  bool operator==(const MatchResult&) const = default;
};

struct IndexInfo {
  std::uint64_t item_count = 0;
  std::uint64_t text_bytes = 0;
  std::int64_t built_at = 0;  // unix seconds
  std::uint32_t format_version = 0;
};

// Per-call instrumentation for the cost contract: a lookup never needs more
// than 8 binary searches (4 patterns, lower and upper bound each).
struct LookupStats {
  std::uint64_t binary_searches = 0;
};

// Immutable suffix-array database over all library identifiers. The text is
// every fqn joined and bracketed by the 0x01 delimiter, so exactness and
// component alignment are plain substring patterns. Safe to share across
// concurrent readers.
class DependencyIndex {
 public:
  // Deduplicates on fqn keeping the first occurrence; one warning string per
  // duplicate is appended to *warnings when given. Throws EmptyLibrary or
  // InvalidIdentifier.
  static DependencyIndex build(std::vector<LibraryItem> items,
                               std::vector<std::string>* warnings = nullptr);

  // Test-only: wrap arbitrary bytes (no delimiter layout, no items). Only
  // prefix_range is meaningful on such an index.
  static DependencyIndex from_raw_text(std::string text);

  // Half-open [lo, hi) into suffix_array(): exactly the suffixes that begin
  // with pattern. Empty pattern covers everything.
  std::pair<std::uint64_t, std::uint64_t> prefix_range(std::string_view pattern,
                                                       LookupStats* stats = nullptr) const;

  // Maps a text position to the item whose fqn covers it. Throws
  // DelimiterPosition if pos points at a delimiter byte.
  std::uint64_t item_of_position(std::uint64_t pos) const;

  // Component-aligned query resolution. Throws InvalidQuery on empty queries
  // or queries containing the delimiter byte.
  MatchResult lookup(std::string_view query, LookupStats* stats = nullptr) const;

  // Positionally aligned results; invalid queries get a per-entry error
  // marker instead of aborting the batch.
  std::vector<MatchResult> verify_batch(const std::vector<std::string>& queries) const;

  IndexInfo info() const;

  const std::string& text() const { return text_; }
  const std::vector<std::uint64_t>& suffix_array() const { return sa_; }
  const std::vector<std::uint64_t>& item_offsets() const { return item_offsets_; }
  const std::vector<LibraryItem>& items() const { return items_; }
  std::int64_t built_at() const { return built_at_; }
  void set_built_at(std::int64_t t) { built_at_ = t; }

 private:
  friend DependencyIndex load_index(std::istream&);

  std::string text_;
  std::vector<std::uint64_t> sa_;
  std::vector<std::uint64_t> item_offsets_;
  std::vector<LibraryItem> items_;
  std::int64_t built_at_ = 0;
};

}  // namespace ddr
