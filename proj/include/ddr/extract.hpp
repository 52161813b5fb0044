#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ddr/index.hpp"

namespace ddr {

// Identifier character classes, byte-level UTF-8 aware. The grammar follows
// Lean 4 conventions: Greek and letterlike symbols start identifiers,
// apostrophes and Unicode subscripts continue them, '!' and '?' do not.
bool is_identifier_start(char32_t cp);
bool is_identifier_continue(char32_t cp);

struct Token {
  std::string text;
  std::size_t begin = 0;  // byte offset into the source
  std::size_t end = 0;
};

// Maximal identifier runs in source order, duplicates retained. A '.' joins
// segments only when flanked by identifier characters on both sides.
std::vector<Token> tokenize_with_positions(std::string_view code);
std::vector<std::string> tokenize(std::string_view code);

class KeywordList {
 public:
  static KeywordList defaults();
  static KeywordList load_file(const std::string& path);

  bool contains(const std::string& word) const { return words_.count(word) > 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

struct CandidateSet {
  std::string source;
  std::vector<std::string> candidates;  // first-occurrence order, duplicate-free
};

struct DroppedCandidate {
  std::string candidate;
  std::string reason;

  bool operator==(const DroppedCandidate&) const = default;
};

struct DependencyList {
  std::vector<std::string> dependencies;  // exact library fqns, duplicate-free
  std::vector<DroppedCandidate> dropped;
};

// Tokenize, drop blacklisted keywords, drop bare binder names (single-letter
// names, optionally digit/subscript/apostrophe-suffixed, introduced between an
// opening bracket and a ':'), dedupe preserving first occurrence.
CandidateSet extract_candidates(std::string_view code, const KeywordList& keywords);

// Look up every candidate; candidates resolving to nothing are retried once
// with the leading component stripped (field-access syntax like f.Injective).
DependencyList resolve_dependencies(const DependencyIndex& index, const CandidateSet& cs);

}  // namespace ddr
