#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ddr/library.hpp"

namespace ddr {

struct RetrievalScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;

  bool operator==(const RetrievalScore&) const = default;
};

struct AggregateScore {
  RetrievalScore mean;
  RetrievalScore std;  // population standard deviation per metric
  std::size_t n = 0;
};

// True iff the dot-component sequence of one identifier is a suffix of the
// other's (covers "sqrt" vs "Nat.sqrt" in both directions). Throws
// InvalidIdentifier on empty identifiers or empty components.
bool match_identifiers(std::string_view a, std::string_view b);

// Existential matching: precision counts predicted items covered by some gold
// item, recall counts gold items covered by some prediction. Inputs are
// deduplicated. Empty-set conventions: (∅,∅) -> (1,1,1); (∅,gold) -> (0,0,0);
// (pred,∅) -> (0,1,0).
RetrievalScore score_sample(const std::vector<std::string>& predicted,
                            const std::vector<std::string>& gold);

// Macro average over samples plus population standard deviation. Throws
// EmptyCorpus when pairs is empty.
AggregateScore score_corpus(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs);

std::vector<std::string> truncate_top_k(const std::vector<std::string>& ranked, std::size_t k);

struct RankedItem {
  std::string fqn;
  double score = 0;
};

// Lexical stand-in for embedding retrieval: cosine similarity over lowercase
// word-token counts (fqn components split on '.', '_' and camelCase, plus doc
// words) against the informal statement's words. Ties and zero scores order
// lexicographically by fqn.
std::vector<RankedItem> lexical_retrieve(const std::vector<LibraryItem>& library,
                                         std::string_view informal, std::size_t k);

}  // namespace ddr
