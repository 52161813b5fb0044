#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddr/dataset.hpp"
#include "ddr/library.hpp"

namespace ddr {

// Deterministic desk-scale stand-in for a real library dump: dot-qualified
// names over seeded namespace/word pools, 1-4 components deep, all unique.
std::vector<LibraryItem> synthetic_library(std::size_t n, std::uint64_t seed);

// Seeded query mix: 40% existing fqns, 30% component suffixes of existing
// fqns, 30% garbage that cannot resolve.
std::vector<std::string> synthetic_queries(const std::vector<LibraryItem>& items, std::size_t m,
                                           std::uint64_t seed);

struct SyntheticCorpus {
  std::vector<CorpusSample> samples;
  std::vector<std::vector<std::string>> planted;  // gold dependency set per sample
};

// Formal statements generated to reference a known dependency set. Planted
// fqns are chosen suffix-clean (no other fqn ends with "."+fqn), so labeling
// must recover exactly the planted list.
SyntheticCorpus synthetic_corpus(const std::vector<LibraryItem>& items, std::size_t n,
                                 std::uint64_t seed);

}  // namespace ddr
