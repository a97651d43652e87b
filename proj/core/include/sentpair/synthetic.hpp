#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sentpair/corpus.hpp"

namespace sentpair::synthetic {

// Shape of a generated corpus. Counts are drawn uniformly from [min, max].
struct CorpusShape {
  std::size_t documents = 100;
  std::size_t min_paragraphs = 4;
  std::size_t max_paragraphs = 4;
  std::size_t min_sentences = 6;
  std::size_t max_sentences = 6;
  std::size_t min_words = 8;
  std::size_t max_words = 14;
  std::string source = "synthetic";
  std::string id_prefix = "doc-";
};

// Random prose over a fixed lowercase vocabulary. Each sentence starts
// with a capital letter and ends with a period, and contains no other
// punctuation, so cleaning the raw form reproduces the same structure
// whenever paragraphs clear the length thresholds.
std::vector<corpus::Document> make_documents(const CorpusShape& shape, std::uint64_t seed);

// Raw form: sentences joined by spaces, paragraphs by blank lines.
corpus::RawDocument to_raw(const corpus::Document& doc);

}  // namespace sentpair::synthetic
