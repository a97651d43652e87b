#include "sentpair/synthetic.hpp"

#include <array>
#include <string_view>

#include "sentpair/rng.hpp"

namespace sentpair::synthetic {
namespace {

constexpr std::array<std::string_view, 64> kWords = {
    "river",   "stone",    "market",  "engine",   "garden",  "winter",  "signal",  "harbor",
    "copper",  "lantern",  "meadow",  "archive",  "bridge",  "canyon",  "violet",  "orbit",
    "thunder", "village",  "marble",  "compass",  "velvet",  "glacier", "pepper",  "tunnel",
    "falcon",  "quartz",   "saddle",  "harvest",  "mirror",  "pillar",  "ember",   "cobalt",
    "walks",   "builds",   "carries", "measures", "follows", "gathers", "opens",   "turns",
    "slowly",  "quietly",  "often",   "rarely",   "together", "beyond", "under",   "across",
    "the",     "an",       "of",      "with",     "and",     "near",    "from",    "into",
    "bright",  "ancient",  "narrow",  "distant",  "heavy",   "silent",  "golden",  "hollow"};

std::string make_sentence(Rng& rng, const CorpusShape& shape) {
  const std::size_t n = static_cast<std::size_t>(rng.between(shape.min_words, shape.max_words));
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    std::string word(kWords[static_cast<std::size_t>(rng.below(kWords.size()))]);
    if (i == 0) word[0] = static_cast<char>(word[0] - 'a' + 'A');
    if (i > 0) s.push_back(' ');
    s += word;
  }
  s.push_back('.');
  return s;
}

}  // namespace

std::vector<corpus::Document> make_documents(const CorpusShape& shape, std::uint64_t seed) {
  std::vector<corpus::Document> docs;
  docs.reserve(shape.documents);
  for (std::size_t d = 0; d < shape.documents; ++d) {
    corpus::Document doc;
    doc.id = shape.id_prefix + std::to_string(d);
    doc.source = shape.source;
    Rng rng(derive_doc_seed(seed, doc.id));
    const std::size_t paragraphs = static_cast<std::size_t>(rng.between(shape.min_paragraphs, shape.max_paragraphs));
    for (std::size_t p = 0; p < paragraphs; ++p) {
      corpus::Paragraph para{p, {}};
      const std::size_t sentences = static_cast<std::size_t>(rng.between(shape.min_sentences, shape.max_sentences));
      for (std::size_t s = 0; s < sentences; ++s) para.sentences.push_back({make_sentence(rng, shape)});
      doc.paragraphs.push_back(std::move(para));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

corpus::RawDocument to_raw(const corpus::Document& doc) {
  corpus::RawDocument raw{doc.id, doc.source, {}};
  for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
    if (p > 0) raw.text += "\n\n";
    raw.text += doc.paragraphs[p].text();
  }
  return raw;
}

}  // namespace sentpair::synthetic
