#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ddr {

// One formal library object. Only the fully-qualified name is required; kind,
// signature and doc are carried as opaque metadata.
struct LibraryItem {
  std::string fqn;
  std::optional<std::string> kind;
  std::optional<std::string> signature;
  std::optional<std::string> doc;

  bool operator==(const LibraryItem&) const = default;
};

// Throws Error(InvalidIdentifier) unless fqn is nonempty, valid UTF-8, free of
// the 0x01 delimiter byte, and has no empty dot-component.
void validate_fqn(const std::string& fqn);

// JSON Lines ingest: one object per line, keys name (required) and optional
// kind/signature/doc. Throws Error(MalformedLine) with a line number on bad
// input. Blank lines are skipped.
std::vector<LibraryItem> load_library_jsonl(std::istream& in);

// Plain-text ingest: one identifier per line, blank lines skipped.
std::vector<LibraryItem> load_library_plain(std::istream& in);

// Dispatches on extension: ".jsonl"/".json" -> JSONL, anything else plain text.
std::vector<LibraryItem> load_library_file(const std::string& path);

}  // namespace ddr
