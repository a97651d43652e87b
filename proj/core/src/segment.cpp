#include <array>
#include <string>
#include <string_view>

#include "embedded_data.hpp"
#include "sentpair/corpus.hpp"
#include "sentpair/text.hpp"

namespace sentpair::corpus {
namespace {

constexpr std::array<std::string_view, 7> kClosers = {")", "]", "\"", "'", "’", "”", "»"};
constexpr std::array<std::string_view, 7> kOpeners = {"(", "[", "\"", "'", "‘", "“", "«"};

template <std::size_t N>
std::size_t match_any(std::string_view s, std::size_t pos, const std::array<std::string_view, N>& set) {
  for (std::string_view m : set) {
    if (s.substr(pos, m.size()) == m) return m.size();
  }
  return 0;
}

bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

bool starts_sentence(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || u >= 0x80;
}

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// The word that ends right before the period at s[period].
std::string_view word_before(std::string_view s, std::size_t period) {
  std::size_t b = period;
  while (b > 0 && s[b - 1] != ' ') --b;
  std::string_view word = s.substr(b, period - b);
  while (!word.empty() && (word.front() == '(' || word.front() == '[' || word.front() == '"' ||
                           word.front() == '\'')) {
    word.remove_prefix(1);
  }
  return word;
}

bool suppresses_break(std::string_view word, const AbbreviationSet& abbreviations) {
  if (word.empty()) return false;
  if (word.size() == 1 && is_ascii_alpha(word[0])) return true;
  // Dotted forms: "U.S", "e.g", "Ph.D".
  if (word.find('.') != std::string_view::npos && is_ascii_alpha(word.back())) return true;
  return abbreviations.contains(text::ascii_lower(word));
}

}  // namespace

AbbreviationSet AbbreviationSet::parse(std::string_view data) {
  AbbreviationSet set;
  std::string_view rest = data;
  while (!rest.empty()) {
    const std::size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest.remove_prefix(nl == std::string_view::npos ? rest.size() : nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string word = text::normalize_whitespace(line);
    if (!word.empty()) set.words_.insert(text::ascii_lower(word));
  }
  return set;
}

const AbbreviationSet& AbbreviationSet::builtin() {
  static const AbbreviationSet set = parse(detail::abbreviations_data());
  return set;
}

bool AbbreviationSet::contains(std::string_view lowercase_word) const {
  return words_.count(std::string(lowercase_word)) > 0;
}

std::vector<Sentence> segment_paragraph(std::string_view input) {
  return segment_paragraph(input, AbbreviationSet::builtin());
}

std::vector<Sentence> segment_paragraph(std::string_view input, const AbbreviationSet& abbreviations) {
  const std::string s = text::normalize_whitespace(input);
  std::vector<Sentence> sentences;
  const std::size_t n = s.size();
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    if (!is_terminal(s[i])) {
      ++i;
      continue;
    }
    const std::size_t run_start = i;
    std::size_t j = i;
    while (j < n && is_terminal(s[j])) ++j;
    const bool single_period = (j - run_start == 1) && s[run_start] == '.';
    while (j < n) {
      const std::size_t len = match_any(s, j, kClosers);
      if (len == 0) break;
      j += len;
    }
    if (j >= n || s[j] != ' ') {
      i = j;
      continue;
    }
    std::size_t k = j + 1;
    while (k < n) {
      const std::size_t len = match_any(s, k, kOpeners);
      if (len == 0) break;
      k += len;
    }
    const bool boundary = k < n && starts_sentence(s[k]) &&
                          !(single_period && suppresses_break(word_before(s, run_start), abbreviations));
    if (boundary) {
      sentences.push_back(Sentence{s.substr(start, j - start)});
      start = j + 1;
    }
    i = j;
  }
  if (start < n) sentences.push_back(Sentence{s.substr(start)});
  return sentences;
}

}  // namespace sentpair::corpus
