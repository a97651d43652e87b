#include "sentpair/corpus.hpp"

namespace sentpair::corpus {

SourceCounts& SourceCounts::operator+=(const SourceCounts& other) {
  documents += other.documents;
  paragraphs += other.paragraphs;
  sentences += other.sentences;
  chars += other.chars;
  return *this;
}

void CorpusStats::add(const Document& doc) {
  SourceCounts counts;
  counts.documents = 1;
  counts.paragraphs = doc.paragraphs.size();
  for (const auto& p : doc.paragraphs) {
    counts.sentences += p.sentences.size();
    counts.chars += p.char_count();
  }
  total += counts;
  by_source[doc.source] += counts;
}

CorpusStats& CorpusStats::merge(const CorpusStats& other) {
  total += other.total;
  for (const auto& [source, counts] : other.by_source) by_source[source] += counts;
  return *this;
}

CorpusStats corpus_stats(std::span<const Document> docs) {
  CorpusStats stats;
  for (const auto& doc : docs) stats.add(doc);
  return stats;
}

}  // namespace sentpair::corpus
