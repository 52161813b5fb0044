#include "ddr/index.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include "ddr/errors.hpp"
#include "ddr/suffix_array.hpp"

namespace ddr {

const char* match_status_name(MatchStatus s) {
  switch (s) {
    case MatchStatus::Exact: return "exact";
    case MatchStatus::Partial: return "partial";
    case MatchStatus::None: return "none";
  }
  return "none";
}

namespace {

std::int64_t now_unix_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

DependencyIndex DependencyIndex::build(std::vector<LibraryItem> items,
                                       std::vector<std::string>* warnings) {
  if (items.empty()) raise(ErrorCode::EmptyLibrary, "cannot build an index over zero items");

  DependencyIndex idx;
  // Mark duplicates before moving anything; views into items stay valid while
  // the vector is untouched.
  std::vector<bool> keep(items.size());
  {
    std::unordered_set<std::string_view> seen;
    seen.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      validate_fqn(items[i].fqn);
      keep[i] = seen.insert(items[i].fqn).second;
    }
  }
  idx.items_.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (keep[i])
      idx.items_.push_back(std::move(items[i]));
    else if (warnings)
      warnings->push_back("duplicate identifier dropped: " + items[i].fqn);
  }

  std::size_t total = 1;
  for (const auto& item : idx.items_) total += item.fqn.size() + 1;
  idx.text_.reserve(total);
  idx.text_.push_back(kDelimiter);
  idx.item_offsets_.reserve(idx.items_.size());
  for (const auto& item : idx.items_) {
    idx.item_offsets_.push_back(idx.text_.size());
    idx.text_ += item.fqn;
    idx.text_.push_back(kDelimiter);
  }

  idx.sa_ = build_suffix_array(idx.text_);
  idx.built_at_ = now_unix_seconds();
  return idx;
}

DependencyIndex DependencyIndex::from_raw_text(std::string text) {
  DependencyIndex idx;
  idx.text_ = std::move(text);
  idx.sa_ = build_suffix_array(idx.text_);
  idx.built_at_ = now_unix_seconds();
  return idx;
}

std::pair<std::uint64_t, std::uint64_t> DependencyIndex::prefix_range(
    std::string_view pattern, LookupStats* stats) const {
  if (stats) stats->binary_searches += 2;
  return suffix_prefix_range(text_, sa_, pattern);
}

std::uint64_t DependencyIndex::item_of_position(std::uint64_t pos) const {
  if (pos >= text_.size()) throw std::out_of_range("position beyond index text");
  auto it = std::upper_bound(item_offsets_.begin(), item_offsets_.end(), pos);
  if (it == item_offsets_.begin())
    raise(ErrorCode::DelimiterPosition,
          "position " + std::to_string(pos) + " points at a delimiter byte");
  std::uint64_t i = static_cast<std::uint64_t>(it - item_offsets_.begin()) - 1;
  if (pos >= item_offsets_[i] + items_[i].fqn.size())
    raise(ErrorCode::DelimiterPosition,
          "position " + std::to_string(pos) + " points at a delimiter byte");
  return i;
}

MatchResult DependencyIndex::lookup(std::string_view query, LookupStats* stats) const {
  if (query.empty()) raise(ErrorCode::InvalidQuery, "query is empty");
  if (query.find(kDelimiter) != std::string_view::npos)
    raise(ErrorCode::InvalidQuery, "query contains the 0x01 delimiter byte");

  MatchResult r;
  r.query = std::string(query);

  std::string pat;
  pat.reserve(query.size() + 2);

  // Pattern 1: \x01 q \x01 — the query is a whole fqn.
  pat.push_back(kDelimiter);
  pat += query;
  pat.push_back(kDelimiter);
  auto [elo, ehi] = prefix_range(pat, stats);
  bool exact = ehi > elo;
  if (exact) r.resolved.push_back(std::string(query));

  // Pattern 2: . q \x01 — component suffix; these resolve.
  pat.front() = '.';
  auto [slo, shi] = prefix_range(pat, stats);
  for (std::uint64_t k = slo; k < shi; ++k)
    r.resolved.push_back(items_[item_of_position(sa_[k])].fqn);

  // Pattern 3: \x01 q . — the query is a qualified prefix.
  pat.front() = kDelimiter;
  pat.back() = '.';
  auto [plo, phi] = prefix_range(pat, stats);
  for (std::uint64_t k = plo; k < phi; ++k)
    r.partial_hits.push_back(items_[item_of_position(sa_[k] + 1)].fqn);

  // Pattern 4: . q . — interior component run.
  pat.front() = '.';
  auto [ilo, ihi] = prefix_range(pat, stats);
  for (std::uint64_t k = ilo; k < ihi; ++k)
    r.partial_hits.push_back(items_[item_of_position(sa_[k])].fqn);

  std::sort(r.resolved.begin(), r.resolved.end());
  r.resolved.erase(std::unique(r.resolved.begin(), r.resolved.end()), r.resolved.end());
  std::sort(r.partial_hits.begin(), r.partial_hits.end());
  r.partial_hits.erase(std::unique(r.partial_hits.begin(), r.partial_hits.end()),
                       r.partial_hits.end());
  // An fqn can be hit both ways (e.g. "a.q.q" for query "q"); resolution wins.
  std::vector<std::string> ph;
  ph.reserve(r.partial_hits.size());
  std::set_difference(r.partial_hits.begin(), r.partial_hits.end(), r.resolved.begin(),
                      r.resolved.end(), std::back_inserter(ph));
  r.partial_hits = std::move(ph);

  r.status = exact                                          ? MatchStatus::Exact
             : (!r.resolved.empty() || !r.partial_hits.empty()) ? MatchStatus::Partial
                                                                : MatchStatus::None;
  return r;
}

std::vector<MatchResult> DependencyIndex::verify_batch(
    const std::vector<std::string>& queries) const {
  std::vector<MatchResult> results;
  results.reserve(queries.size());
  for (const auto& q : queries) {
    try {
      results.push_back(lookup(q));
    } catch (const Error& e) {
      MatchResult r;
      r.query = q;
      r.status = MatchStatus::None;
      r.error = e.what();
      results.push_back(std::move(r));
    }
  }
  return results;
}

IndexInfo DependencyIndex::info() const {
  IndexInfo info;
  info.item_count = items_.size();
  info.text_bytes = text_.size();
  info.built_at = built_at_;
  info.format_version = 1;
  return info;
}

}  // namespace ddr
