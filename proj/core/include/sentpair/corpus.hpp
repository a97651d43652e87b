#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sentpair::corpus {

struct RawDocument {
  std::string id;
  std::string source;
  std::string text;
};

struct CleaningConfig {
  std::size_t min_paragraph_chars = 60;
  std::size_t min_document_chars = 200;
  bool strip_markup = true;
  // Drops short lines with no lowercase letters, and "== Title ==" lines.
  bool drop_header_lines = true;
  std::size_t header_max_chars = 40;
  // Drops lines with at least three tab or pipe separators.
  bool drop_table_lines = true;

  // Throws ConfigError.
  void validate() const;
};

struct Sentence {
  std::string text;

  auto operator<=>(const Sentence&) const = default;
};

struct Paragraph {
  std::size_t index = 0;
  std::vector<Sentence> sentences;

  // Sentences joined by single spaces.
  std::string text() const;
  // Sentences [start, start + count) joined by single spaces.
  std::string text(std::size_t start, std::size_t count) const;
  // Everything except [start, start + count), in order.
  std::string text_without(std::size_t start, std::size_t count) const;
  std::size_t char_count() const;

  bool operator==(const Paragraph&) const = default;
};

struct Document {
  std::string id;
  std::string source;
  std::vector<Paragraph> paragraphs;

  std::size_t char_count() const;

  bool operator==(const Document&) const = default;
};

// Strips markup, splits on blank lines, applies the length thresholds and
// segments each surviving paragraph. Returns nullopt when nothing survives
// or the document is below min_document_chars. The document total is the
// sum of its paragraph lengths in Unicode scalar values after whitespace
// normalization. Throws EncodingError on invalid UTF-8.
std::optional<Document> clean_document(const RawDocument& raw, const CleaningConfig& cfg);

// The markup-stripping stage of clean_document. Returns text whose
// paragraphs are separated by blank lines.
std::string strip_markup(std::string_view text, const CleaningConfig& cfg);

// Paragraph texts after stripping, prior to length filtering.
std::vector<std::string> split_paragraphs(std::string_view text);

class AbbreviationSet {
 public:
  // The list compiled in from data/abbreviations.txt.
  static const AbbreviationSet& builtin();
  // One lowercase entry per line; '#' starts a comment.
  static AbbreviationSet parse(std::string_view data);

  bool contains(std::string_view lowercase_word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Rule-based splitter: a sentence ends at [.?!] (plus closing quotes or
// brackets) followed by whitespace and an uppercase letter, a digit or a
// non-ASCII character. A period after a listed abbreviation, a single
// letter initial or a dotted form such as "U.S." does not end a sentence.
std::vector<Sentence> segment_paragraph(std::string_view text);
std::vector<Sentence> segment_paragraph(std::string_view text, const AbbreviationSet& abbreviations);

struct SourceCounts {
  std::uint64_t documents = 0;
  std::uint64_t paragraphs = 0;
  std::uint64_t sentences = 0;
  std::uint64_t chars = 0;

  SourceCounts& operator+=(const SourceCounts& other);
  bool operator==(const SourceCounts&) const = default;
};

struct CorpusStats {
  SourceCounts total;
  std::map<std::string, SourceCounts> by_source;

  void add(const Document& doc);
  // Associative and commutative.
  CorpusStats& merge(const CorpusStats& other);

  bool operator==(const CorpusStats&) const = default;
};

CorpusStats corpus_stats(std::span<const Document> docs);

}  // namespace sentpair::corpus
