#include "ddr/extract.hpp"

#include <cctype>
#include <fstream>

#include "ddr/errors.hpp"
#include "ddr/text.hpp"

namespace ddr {

namespace {

bool is_letterlike(char32_t c) {
  return (c >= 0x3b1 && c <= 0x3c9 && c != 0x3bb) ||     // lower Greek, minus λ
         (c >= 0x391 && c <= 0x3A9 && c != 0x3A0 && c != 0x3A3) ||  // upper Greek, minus Π Σ
         (c >= 0x3ca && c <= 0x3fb) ||                   // accented Greek
         (c >= 0x1f00 && c <= 0x1ffe) ||                 // polytonic Greek
         (c >= 0x2100 && c <= 0x214f) ||                 // letterlike symbols (ℕ, ℝ, …)
         (c >= 0x1d49c && c <= 0x1d59f);                 // script / double-struck / fraktur
}

bool is_subscript(char32_t c) {
  return (c >= 0x2080 && c <= 0x209c) || (c >= 0x1d62 && c <= 0x1d6a) || c == 0x2c7c;
}

bool is_ascii_letter(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ascii_digit(char32_t c) { return c >= '0' && c <= '9'; }

}  // namespace

bool is_identifier_start(char32_t cp) {
  return is_ascii_letter(cp) || cp == '_' || is_letterlike(cp);
}

bool is_identifier_continue(char32_t cp) {
  return is_identifier_start(cp) || is_ascii_digit(cp) || cp == '\'' || is_subscript(cp);
}

std::vector<Token> tokenize_with_positions(std::string_view code) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = code.size();
  while (i < n) {
    std::size_t start = i;
    std::size_t probe = i;
    char32_t cp = text::decode_utf8(code, probe);
    if (!is_identifier_start(cp)) {
      i = probe;
      continue;
    }
    // Consume one segment.
    auto eat_segment = [&](std::size_t from) {
      std::size_t at = from;
      while (at < n) {
        std::size_t next = at;
        char32_t c = text::decode_utf8(code, next);
        if (!is_identifier_continue(c)) break;
        at = next;
      }
      return at;
    };
    i = eat_segment(probe);
    // A '.' extends the token only when a fresh segment starts right after it.
    while (i < n && code[i] == '.') {
      std::size_t after = i + 1;
      if (after >= n) break;
      std::size_t next = after;
      char32_t c = text::decode_utf8(code, next);
      if (!is_identifier_start(c)) break;
      i = eat_segment(next);
    }
    tokens.push_back(Token{std::string(code.substr(start, i - start)), start, i});
  }
  return tokens;
}

std::vector<std::string> tokenize(std::string_view code) {
  std::vector<std::string> out;
  for (auto& t : tokenize_with_positions(code)) out.push_back(std::move(t.text));
  return out;
}

KeywordList KeywordList::defaults() {
  static const char* kLean4Keywords[] = {
      "theorem", "lemma",  "def",   "by",    "sorry",    "fun",      "let",
      "have",    "show",   "calc",  "match", "with",     "do",       "then",
      "else",    "if",     "at",    "exact", "intro",    "apply",    "rfl",
      "open",    "import", "namespace", "end", "variable", "instance", "structure",
      "where"};
  KeywordList kl;
  for (const char* w : kLean4Keywords) kl.words_.insert(w);
  return kl;
}

KeywordList KeywordList::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open keyword file: " + path);
  KeywordList kl;
  std::string line;
  while (std::getline(in, line)) {
    std::string w(text::trim(line));
    if (!w.empty()) kl.words_.insert(std::move(w));
  }
  return kl;
}

namespace {

// Binder-style: a single letter followed only by digits, subscripts or
// apostrophes (n, f, h₀, x1, a').
bool binder_style(const std::string& tok) {
  if (tok.find('.') != std::string::npos) return false;
  std::size_t i = 0;
  char32_t first = text::decode_utf8(tok, i);
  if (!is_ascii_letter(first) && !is_letterlike(first)) return false;
  while (i < tok.size()) {
    char32_t c = text::decode_utf8(tok, i);
    if (!is_ascii_digit(c) && !is_subscript(c) && c != '\'') return false;
  }
  return true;
}

bool all_whitespace(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

// Names introduced as binders: a run of binder-style tokens directly after an
// opening bracket and directly before a ':'. This is a shallow heuristic, not
// a parser; library verification catches what it misses.
std::unordered_set<std::string> binder_names(std::string_view code,
                                             const std::vector<Token>& tokens) {
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    // Preceding non-whitespace character must be an opening bracket.
    std::size_t b = tokens[i].begin;
    while (b > 0 && std::isspace(static_cast<unsigned char>(code[b - 1]))) --b;
    if (b == 0) continue;
    char open = code[b - 1];
    if (open != '(' && open != '{' && open != '[') continue;

    std::size_t j = i;
    while (j < tokens.size() && binder_style(tokens[j].text) &&
           (j == i || all_whitespace(code.substr(tokens[j - 1].end,
                                                 tokens[j].begin - tokens[j - 1].end))))
      ++j;
    if (j == i) continue;

    std::size_t a = tokens[j - 1].end;
    while (a < code.size() && std::isspace(static_cast<unsigned char>(code[a]))) ++a;
    if (a < code.size() && code[a] == ':')
      for (std::size_t k = i; k < j; ++k) names.insert(tokens[k].text);
  }
  return names;
}

}  // namespace

CandidateSet extract_candidates(std::string_view code, const KeywordList& keywords) {
  CandidateSet cs;
  cs.source = std::string(code);
  auto tokens = tokenize_with_positions(code);
  auto binders = binder_names(code, tokens);
  std::unordered_set<std::string> seen;
  for (auto& t : tokens) {
    if (keywords.contains(t.text)) continue;
    if (binders.count(t.text) > 0) continue;
    if (seen.insert(t.text).second) cs.candidates.push_back(std::move(t.text));
  }
  return cs;
}

DependencyList resolve_dependencies(const DependencyIndex& index, const CandidateSet& cs) {
  DependencyList out;
  std::unordered_set<std::string> emitted;
  for (const auto& cand : cs.candidates) {
    MatchResult first = index.lookup(cand);
    const MatchResult* effective = &first;
    MatchResult retry;
    if (first.status == MatchStatus::None) {
      auto dot = cand.find('.');
      if (dot != std::string::npos) {
        retry = index.lookup(cand.substr(dot + 1));
        effective = &retry;
      }
    }
    if (!effective->resolved.empty()) {
      for (const auto& fqn : effective->resolved)
        if (emitted.insert(fqn).second) out.dependencies.push_back(fqn);
    } else {
      out.dropped.push_back(DroppedCandidate{
          cand, effective->status == MatchStatus::Partial ? "partial" : "unresolved"});
    }
  }
  return out;
}

}  // namespace ddr
