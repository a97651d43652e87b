#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sentpair/corpus.hpp"
#include "sentpair/sampler.hpp"

namespace sentpair::sampler {

// Lookup of source documents by id.
class CorpusIndex {
 public:
  explicit CorpusIndex(std::span<const Document> docs);
  // Adds pool paragraphs so easy negatives can be resolved even when the
  // foreign document is not part of docs.
  void add_pool(const NegativePool& pool);

  const Paragraph* find(std::string_view doc_id, std::size_t paragraph_index) const;
  const Document* document(std::string_view doc_id) const;

 private:
  std::unordered_map<std::string, const Document*> docs_;
  std::map<std::pair<std::string, std::size_t>, const Paragraph*> extra_;
};

// Structural problems with one example, checked against its sources:
// label/hardness agreement, provenance bounds, text reconstruction and
// truncation, and the per-objective positive/negative rules.
std::vector<std::string> validate_example(const PairExample& example, const CorpusIndex& index,
                                          const SamplingConfig& cfg);

struct ValidationReport {
  std::size_t examples = 0;
  std::size_t positives = 0;
  std::size_t violation_count = 0;
  // First 50 messages.
  std::vector<std::string> violations;
  // Number of groups with (hard, easy) negatives.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> negative_histogram;

  bool ok() const { return violation_count == 0; }
};

// validate_example over every example plus per-group checks: one positive
// per group, hard <= max_hard_negatives, hard + easy <= total_negatives.
// With a pool, also checks that each group holds exactly as many
// negatives as the document and pool can supply.
ValidationReport validate_examples(std::span<const PairExample> examples, const CorpusIndex& index,
                                   const SamplingConfig& cfg, const NegativePool* pool = nullptr);

}  // namespace sentpair::sampler
