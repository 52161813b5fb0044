#include "ddr/suffix_array.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ddr {

namespace {

using Index = std::int32_t;

void compute_buckets(const std::vector<Index>& s, std::vector<Index>& bkt, Index alphabet,
                     bool ends) {
  std::fill(bkt.begin(), bkt.end(), 0);
  for (Index c : s) ++bkt[c];
  Index sum = 0;
  for (Index c = 0; c < alphabet; ++c) {
    sum += bkt[c];
    bkt[c] = ends ? sum : sum - bkt[c];
  }
}

void induce_l(const std::vector<Index>& s, std::vector<Index>& sa, const std::vector<bool>& is_s,
              std::vector<Index>& bkt, Index alphabet) {
  compute_buckets(s, bkt, alphabet, false);
  const Index n = static_cast<Index>(s.size());
  for (Index i = 0; i < n; ++i) {
    Index v = sa[i];
    if (v > 0 && !is_s[v - 1]) sa[bkt[s[v - 1]]++] = v - 1;
  }
}

void induce_s(const std::vector<Index>& s, std::vector<Index>& sa, const std::vector<bool>& is_s,
              std::vector<Index>& bkt, Index alphabet) {
  compute_buckets(s, bkt, alphabet, true);
  const Index n = static_cast<Index>(s.size());
  for (Index i = n - 1; i >= 0; --i) {
    Index v = sa[i];
    if (v > 0 && is_s[v - 1]) sa[--bkt[s[v - 1]]] = v - 1;
  }
}

// SA-IS over an integer alphabet (Nong/Zhang/Chan induced sorting).
// s must end with a unique, smallest sentinel value 0; values lie in [0, alphabet).
void sais(const std::vector<Index>& s, std::vector<Index>& sa, Index alphabet) {
  const Index n = static_cast<Index>(s.size());
  sa.assign(s.size(), -1);
  if (n == 0) return;
  if (n == 1) {
    sa[0] = 0;
    return;
  }

  std::vector<bool> is_s(s.size());
  is_s[n - 1] = true;
  for (Index i = n - 2; i >= 0; --i)
    is_s[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && is_s[i + 1]);
  auto is_lms = [&](Index i) { return i > 0 && is_s[i] && !is_s[i - 1]; };

  std::vector<Index> bkt(alphabet);

  // Round 1: seed LMS suffixes at bucket ends, induce L then S. Afterwards the
  // LMS substrings appear in sa in sorted order.
  compute_buckets(s, bkt, alphabet, true);
  for (Index i = n - 1; i >= 1; --i)
    if (is_lms(i)) sa[--bkt[s[i]]] = i;
  induce_l(s, sa, is_s, bkt, alphabet);
  induce_s(s, sa, is_s, bkt, alphabet);

  Index m = 0;
  for (Index i = 0; i < n; ++i)
    if (is_lms(sa[i])) sa[m++] = sa[i];

  // Name the LMS substrings; equal substrings share a name.
  std::fill(sa.begin() + m, sa.end(), -1);
  Index names = 0;
  Index prev = -1;
  for (Index k = 0; k < m; ++k) {
    Index pos = sa[k];
    bool same = prev >= 0;
    for (Index d = 0; same; ++d) {
      if (s[prev + d] != s[pos + d] || is_s[prev + d] != is_s[pos + d]) {
        same = false;
        break;
      }
      bool end_prev = d > 0 && is_lms(prev + d);
      bool end_pos = d > 0 && is_lms(pos + d);
      if (end_prev || end_pos) {
        same = end_prev && end_pos;
        break;
      }
    }
    if (!same) {
      ++names;
      prev = pos;
    }
    sa[m + pos / 2] = names - 1;
  }

  std::vector<Index> lms(m);
  {
    Index j = 0;
    for (Index i = 1; i < n; ++i)
      if (is_lms(i)) lms[j++] = i;
  }
  std::vector<Index> s1(m);
  for (Index k = 0; k < m; ++k) s1[k] = sa[m + lms[k] / 2];

  std::vector<Index> sa1;
  if (names < m) {
    sais(s1, sa1, names);
  } else {
    sa1.assign(m, 0);
    for (Index k = 0; k < m; ++k) sa1[s1[k]] = k;
  }

  // Round 2: place LMS suffixes in their final relative order, induce again.
  std::fill(sa.begin(), sa.end(), -1);
  compute_buckets(s, bkt, alphabet, true);
  for (Index k = m - 1; k >= 0; --k) {
    Index j = lms[sa1[k]];
    sa[--bkt[s[j]]] = j;
  }
  induce_l(s, sa, is_s, bkt, alphabet);
  induce_s(s, sa, is_s, bkt, alphabet);
}

}  // namespace

std::vector<std::uint64_t> build_suffix_array(std::string_view bytes) {
  const std::size_t n = bytes.size();
  if (n == 0) return {};
  if (n > static_cast<std::size_t>(std::numeric_limits<Index>::max()) - 2)
    throw std::length_error("suffix array input exceeds 2^31-2 bytes");

  // Shift bytes by one so 0 is free for the appended sentinel.
  std::vector<Index> s(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = static_cast<Index>(static_cast<unsigned char>(bytes[i])) + 1;
  s[n] = 0;

  std::vector<Index> sa;
  sais(s, sa, 257);

  // sa[0] is the sentinel suffix; drop it.
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 1; i <= n; ++i) out[i - 1] = static_cast<std::uint64_t>(sa[i]);
  return out;
}

std::pair<std::uint64_t, std::uint64_t> suffix_prefix_range(
    std::string_view text, const std::vector<std::uint64_t>& sa, std::string_view pattern) {
  auto lo = std::partition_point(sa.begin(), sa.end(), [&](std::uint64_t pos) {
    return text.substr(pos).compare(pattern) < 0;
  });
  auto hi = std::partition_point(lo, sa.end(), [&](std::uint64_t pos) {
    return text.substr(pos).starts_with(pattern);
  });
  return {static_cast<std::uint64_t>(lo - sa.begin()), static_cast<std::uint64_t>(hi - sa.begin())};
}

}  // namespace ddr
