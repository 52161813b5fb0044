#include "ddr/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_set>

#include "ddr/errors.hpp"
#include "ddr/text.hpp"

namespace ddr {

namespace {

std::vector<std::string_view> components(std::string_view id) {
  if (id.empty()) raise(ErrorCode::InvalidIdentifier, "empty identifier");
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = id.find('.', start);
    std::string_view part = id.substr(start, dot == std::string_view::npos ? dot : dot - start);
    if (part.empty())
      raise(ErrorCode::InvalidIdentifier,
            "empty dot-component in identifier: " + std::string(id));
    parts.push_back(part);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

bool is_component_suffix(const std::vector<std::string_view>& shorter,
                         const std::vector<std::string_view>& longer) {
  return std::equal(shorter.rbegin(), shorter.rend(), longer.rbegin());
}

std::vector<std::string> dedupe(const std::vector<std::string>& xs) {
  std::vector<std::string> out;
  std::unordered_set<std::string_view> seen;
  for (const auto& x : xs)
    if (seen.insert(x).second) out.push_back(x);
  return out;
}

}  // namespace

bool match_identifiers(std::string_view a, std::string_view b) {
  auto ca = components(a);
  auto cb = components(b);
  return ca.size() <= cb.size() ? is_component_suffix(ca, cb) : is_component_suffix(cb, ca);
}

RetrievalScore score_sample(const std::vector<std::string>& predicted,
                            const std::vector<std::string>& gold) {
  auto pred = dedupe(predicted);
  auto gd = dedupe(gold);

  RetrievalScore s;
  if (pred.empty() && gd.empty()) return RetrievalScore{1, 1, 1};
  if (pred.empty()) return RetrievalScore{0, 0, 0};
  if (gd.empty()) return RetrievalScore{0, 1, 0};

  std::size_t covered_pred = 0;
  for (const auto& p : pred)
    if (std::any_of(gd.begin(), gd.end(), [&](const auto& g) { return match_identifiers(p, g); }))
      ++covered_pred;
  std::size_t covered_gold = 0;
  for (const auto& g : gd)
    if (std::any_of(pred.begin(), pred.end(),
                    [&](const auto& p) { return match_identifiers(p, g); }))
      ++covered_gold;

  s.precision = static_cast<double>(covered_pred) / static_cast<double>(pred.size());
  s.recall = static_cast<double>(covered_gold) / static_cast<double>(gd.size());
  s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0;
  return s;
}

AggregateScore score_corpus(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs) {
  if (pairs.empty()) raise(ErrorCode::EmptyCorpus, "no samples to score");

  std::vector<RetrievalScore> scores;
  scores.reserve(pairs.size());
  for (const auto& [pred, gold] : pairs) scores.push_back(score_sample(pred, gold));

  AggregateScore agg;
  agg.n = scores.size();
  const double n = static_cast<double>(scores.size());
  for (const auto& s : scores) {
    agg.mean.precision += s.precision;
    agg.mean.recall += s.recall;
    agg.mean.f1 += s.f1;
  }
  agg.mean.precision /= n;
  agg.mean.recall /= n;
  agg.mean.f1 /= n;
  double vp = 0, vr = 0, vf = 0;
  for (const auto& s : scores) {
    vp += (s.precision - agg.mean.precision) * (s.precision - agg.mean.precision);
    vr += (s.recall - agg.mean.recall) * (s.recall - agg.mean.recall);
    vf += (s.f1 - agg.mean.f1) * (s.f1 - agg.mean.f1);
  }
  agg.std.precision = std::sqrt(vp / n);
  agg.std.recall = std::sqrt(vr / n);
  agg.std.f1 = std::sqrt(vf / n);
  return agg;
}

std::vector<std::string> truncate_top_k(const std::vector<std::string>& ranked, std::size_t k) {
  return {ranked.begin(), ranked.begin() + std::min(k, ranked.size())};
}

namespace {

// Lowercase word tokens: ASCII alphanumeric runs, with camelCase splits
// (lower/digit -> upper, and the last upper of an acronym run before a lower).
void append_words(std::string_view s, std::vector<std::string>& out) {
  std::string word;
  auto flush = [&]() {
    if (!word.empty()) {
      out.push_back(word);
      word.clear();
    }
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (!std::isalnum(c)) {
      flush();
      continue;
    }
    if (std::isupper(c)) {
      bool prev_lower = i > 0 && std::islower(static_cast<unsigned char>(s[i - 1]));
      bool prev_digit = i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]));
      bool next_lower = i + 1 < s.size() && std::islower(static_cast<unsigned char>(s[i + 1]));
      bool prev_upper = i > 0 && std::isupper(static_cast<unsigned char>(s[i - 1]));
      if (prev_lower || prev_digit || (prev_upper && next_lower)) flush();
    }
    word.push_back(static_cast<char>(std::tolower(c)));
  }
  flush();
}

std::map<std::string, double> term_counts(const std::vector<std::string>& words) {
  std::map<std::string, double> counts;
  for (const auto& w : words) counts[w] += 1;
  return counts;
}

double cosine(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (const auto& [w, c] : a) {
    na += c * c;
    auto it = b.find(w);
    if (it != b.end()) dot += c * it->second;
  }
  for (const auto& [w, c] : b) nb += c * c;
  if (dot == 0 || na == 0 || nb == 0) return 0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

std::vector<RankedItem> lexical_retrieve(const std::vector<LibraryItem>& library,
                                         std::string_view informal, std::size_t k) {
  std::vector<std::string> query_words;
  append_words(informal, query_words);
  auto query = term_counts(query_words);

  std::vector<RankedItem> ranked;
  ranked.reserve(library.size());
  for (const auto& item : library) {
    std::vector<std::string> words;
    append_words(item.fqn, words);
    if (item.doc) append_words(*item.doc, words);
    ranked.push_back(RankedItem{item.fqn, cosine(query, term_counts(words))});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedItem& a, const RankedItem& b) {
    return a.score != b.score ? a.score > b.score : a.fqn < b.fqn;
  });
  ranked.resize(std::min(k, ranked.size()));
  return ranked;
}

}  // namespace ddr
