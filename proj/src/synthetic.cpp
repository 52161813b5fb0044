#include "ddr/synthetic.hpp"

#include <unordered_set>

#include "ddr/rng.hpp"
#include "ddr/text.hpp"

namespace ddr {

namespace {

const char* const kNamespaces[] = {
    "Nat",      "Int",       "Real",    "Complex",   "List",    "Array",   "Set",
    "Finset",   "Multiset",  "Order",   "Group",     "Ring",    "Field",   "Module",
    "Algebra",  "Topology",  "Measure", "Prob",      "Matrix",  "Polynomial",
    "Filter",   "Metric",    "Norm",    "Linear",    "Cat",     "Graph",   "Logic",
    "Bool",     "Option",    "Sum",     "Prod",      "Quot",    "Fin",     "Vector",
    "Ideal",    "Subgroup",  "Submodule", "Sigma",   "Units",   "Gamma"};

const char* const kLeafWords[] = {
    "add",    "mul",   "sub",    "div",   "neg",   "inv",    "sqrt",   "abs",   "succ",
    "pred",   "zero",  "one",    "comm",  "assoc", "distrib", "le",    "lt",    "ge",
    "gt",     "ne",    "refl",   "symm",  "trans", "mono",   "strict", "map",   "comap",
    "fold",   "filter", "union", "inter", "compl", "subset", "mem",    "card",  "sum",
    "prod",   "pow",   "log",    "exp",   "sin",   "cos",    "lift",   "cast",  "coe",
    "iff",    "imp",   "induct", "aux",   "of",    "to"};

constexpr std::size_t kNamespaceCount = sizeof(kNamespaces) / sizeof(kNamespaces[0]);
constexpr std::size_t kLeafCount = sizeof(kLeafWords) / sizeof(kLeafWords[0]);

std::string random_leaf(SplitMix64& rng) {
  std::uint64_t r = rng.below(100);
  std::size_t words = r < 40 ? 1 : r < 85 ? 2 : 3;
  std::string leaf;
  for (std::size_t w = 0; w < words; ++w) {
    if (w > 0) leaf.push_back('_');
    leaf += kLeafWords[rng.below(kLeafCount)];
  }
  return leaf;
}

std::string random_fqn(SplitMix64& rng) {
  std::uint64_t r = rng.below(100);
  std::size_t depth = r < 10 ? 1 : r < 50 ? 2 : r < 85 ? 3 : 4;
  if (depth == 1) return kNamespaces[rng.below(kNamespaceCount)];
  std::string fqn;
  for (std::size_t c = 0; c + 1 < depth; ++c) {
    fqn += kNamespaces[rng.below(kNamespaceCount)];
    fqn.push_back('.');
  }
  fqn += random_leaf(rng);
  return fqn;
}

const char* const kKinds[] = {"theorem", "def", "lemma", "instance"};

}  // namespace

std::vector<LibraryItem> synthetic_library(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<LibraryItem> items;
  items.reserve(n);
  std::unordered_set<std::string> used;
  used.reserve(n);
  std::size_t counter = 0;
  while (items.size() < n) {
    std::string fqn = random_fqn(rng);
    for (int attempt = 0; attempt < 20 && used.count(fqn); ++attempt) fqn = random_fqn(rng);
    if (used.count(fqn)) fqn += "_v" + std::to_string(counter++);
    used.insert(fqn);

    LibraryItem item;
    item.fqn = std::move(fqn);
    item.kind = kKinds[rng.below(4)];
    if (rng.below(4) == 0) {
      std::string doc = "about";
      auto parts = text::split(item.fqn, '.');
      for (auto& p : text::split(parts.back(), '_')) doc += " " + p;
      item.doc = doc;
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<std::string> synthetic_queries(const std::vector<LibraryItem>& items, std::size_t m,
                                           std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::string> queries;
  queries.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t bucket = i % 10;
    if (bucket < 4) {
      queries.push_back(items[rng.below(items.size())].fqn);
    } else if (bucket < 7) {
      const std::string& fqn = items[rng.below(items.size())].fqn;
      auto parts = text::split(fqn, '.');
      std::size_t drop = parts.size() > 1 ? 1 + rng.below(parts.size() - 1) : 0;
      std::string q;
      for (std::size_t p = drop; p < parts.size(); ++p) {
        if (!q.empty()) q.push_back('.');
        q += parts[p];
      }
      queries.push_back(std::move(q));
    } else {
      // "zz" never prefixes a pool word, so these cannot match any component.
      std::size_t segments = 1 + rng.below(3);
      std::string q;
      for (std::size_t seg = 0; seg < segments; ++seg) {
        if (!q.empty()) q.push_back('.');
        q += "zz";
        std::size_t len = 2 + rng.below(8);
        for (std::size_t c = 0; c < len; ++c)
          q.push_back(static_cast<char>('a' + rng.below(26)));
      }
      queries.push_back(std::move(q));
    }
  }
  return queries;
}

SyntheticCorpus synthetic_corpus(const std::vector<LibraryItem>& items, std::size_t n,
                                 std::uint64_t seed) {
  // Suffix-clean fqns: no other fqn ends with "." + fqn, so lookup resolves
  // them to exactly themselves.
  std::unordered_set<std::string> dirty;
  for (const auto& item : items) {
    const std::string& fqn = item.fqn;
    for (std::size_t at = fqn.find('.'); at != std::string::npos; at = fqn.find('.', at + 1))
      dirty.insert(fqn.substr(at + 1));
  }
  std::vector<const std::string*> clean;
  for (const auto& item : items)
    if (dirty.count(item.fqn) == 0) clean.push_back(&item.fqn);

  SplitMix64 rng(seed);
  SyntheticCorpus corpus;
  corpus.samples.reserve(n);
  corpus.planted.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t want = clean.empty() ? 0 : rng.below(6);  // 0..5 dependencies
    std::vector<std::string> deps;
    std::unordered_set<std::string_view> picked;
    for (std::size_t tries = 0; deps.size() < want && tries < 4 * want + 8; ++tries) {
      const std::string& fqn = *clean[rng.below(clean.size())];
      if (picked.insert(fqn).second) deps.push_back(fqn);
    }

    CorpusSample s;
    s.id = "syn" + std::to_string(i);
    s.difficulty = static_cast<int>(rng.below(11));
    std::string body;
    if (deps.empty()) {
      body = "1 + 1 = 2";
    } else {
      for (std::size_t k = 0; k < deps.size(); ++k) {
        if (k > 0) body += " ∧ ";
        body += deps[k];
      }
    }
    s.formal_statement = "theorem thm_" + std::to_string(i) + " : " + body + " := by sorry";
    s.informal_statement = "Synthetic statement " + std::to_string(i) + " referencing " +
                           std::to_string(deps.size()) + " library facts.";
    corpus.samples.push_back(std::move(s));
    corpus.planted.push_back(std::move(deps));
  }
  return corpus;
}

}  // namespace ddr
