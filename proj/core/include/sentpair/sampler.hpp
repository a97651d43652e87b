#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentpair/corpus.hpp"
#include "sentpair/rng.hpp"

namespace sentpair::sampler {

using corpus::Document;
using corpus::Paragraph;

enum class Objective : std::uint8_t { ssp, sp, psd };

inline constexpr Objective kAllObjectives[] = {Objective::ssp, Objective::sp, Objective::psd};

// "SSP", "SP", "PSD".
std::string_view to_string(Objective objective);
// Case-insensitive. Throws ConfigError.
Objective parse_objective(std::string_view name);

enum class Hardness : std::uint8_t { positive, hard, easy };

std::string_view to_string(Hardness hardness);
Hardness parse_hardness(std::string_view name);

// Closed integer interval [lo, hi].
struct Interval {
  std::size_t lo = 1;
  std::size_t hi = 1;

  bool operator==(const Interval&) const = default;
};

// Accepts "lo:hi" or a single number. Throws ConfigError.
Interval parse_interval(std::string_view s);
std::string to_string(Interval interval);

// Where SSP hard negatives come from. other_paragraphs takes B' from a
// different paragraph of the same document. same_paragraph takes B' from
// A's own paragraph, outside A.
enum class HardNegativeSource : std::uint8_t { other_paragraphs, same_paragraph };

std::string_view to_string(HardNegativeSource source);
HardNegativeSource parse_hard_negative_source(std::string_view name);

struct SamplingConfig {
  Interval ssp_a_sentences{1, 3};
  Interval ssp_b_sentences{1, 5};
  Interval sp_a_sentences{1, 3};
  std::size_t max_hard_negatives = 2;
  std::size_t total_negatives = 4;
  std::size_t positives_per_unit = 1;
  std::size_t token_budget_ssp = 128;
  std::size_t token_budget_sp_psd = 256;
  std::uint64_t global_seed = 0;
  HardNegativeSource ssp_hard_negative_source = HardNegativeSource::other_paragraphs;

  // Throws ConfigError.
  void validate() const;

  std::size_t token_budget(Objective objective) const;
  // Token cap for sequence A; B receives the rest of the budget.
  std::size_t a_token_cap(Objective objective) const;

  bool operator==(const SamplingConfig&) const = default;
};

// Canonical JSON object with a fixed key order.
std::string to_json(const SamplingConfig& cfg);
SamplingConfig sampling_config_from_json(std::string_view json);

// What part of a paragraph a sequence was built from.
enum class ProvenanceKind : std::uint8_t {
  span,        // sentences [start, start + count)
  complement,  // the paragraph with [start, start + count) removed
  paragraph,   // the whole paragraph; start = 0, count = its length
};

std::string_view to_string(ProvenanceKind kind);
ProvenanceKind parse_provenance_kind(std::string_view name);

struct Provenance {
  std::string doc_id;
  std::size_t paragraph_index = 0;
  std::size_t sentence_start = 0;
  std::size_t sentence_count = 0;
  ProvenanceKind kind = ProvenanceKind::span;

  auto operator<=>(const Provenance&) const = default;
};

struct PairExample {
  Objective objective = Objective::ssp;
  std::string seq_a;
  std::string seq_b;
  std::uint8_t label = 0;
  Hardness hardness = Hardness::easy;
  Provenance a_provenance;
  Provenance b_provenance;
  bool truncated = false;
  // A positive and its negatives share a group; member 0 is the positive.
  std::uint32_t group = 0;
  std::uint32_t member = 0;

  auto operator<=>(const PairExample&) const = default;
};

struct SentenceRange {
  std::size_t start = 0;
  std::size_t count = 0;

  std::size_t end() const { return start + count; }
  bool operator==(const SentenceRange&) const = default;
};

// Length drawn uniformly from the interval and clamped to the sentences
// available; the start is uniform over all valid starts. sentence_count
// must be positive.
SentenceRange draw_span(std::size_t sentence_count, Interval interval, Rng& rng);
SentenceRange draw_span(const Paragraph& paragraph, Interval interval, Rng& rng);

struct PoolEntry {
  std::uint64_t key = 0;
  std::string doc_id;
  Paragraph paragraph;
};

// Fixed-capacity uniform sample of paragraphs, used for easy negatives.
// Every paragraph gets a pseudo-random key from (salt, doc_id, index) and
// the pool keeps the capacity smallest keys. Membership is the same for
// any offer order, and two pools over disjoint streams merge into the
// pool of the combined stream.
class NegativePool {
 public:
  // Throws ConfigError when capacity is 0.
  NegativePool(std::size_t capacity, std::uint64_t salt);

  void offer(const Document& doc);
  void offer(std::string_view doc_id, const Paragraph& paragraph);
  void merge(const NegativePool& other);

  // Ascending key order. Safe to call from several threads at once.
  std::span<const PoolEntry> entries() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t salt() const { return salt_; }
  std::uint64_t seen() const { return seen_; }

 private:
  // Copies and moves get a fresh mutex.
  struct Guard {
    std::mutex mutex;
    Guard() = default;
    Guard(const Guard&) {}
    Guard& operator=(const Guard&) { return *this; }
  };

  void insert(PoolEntry entry);

  std::size_t capacity_;
  std::uint64_t salt_;
  std::uint64_t seen_ = 0;
  // A max-heap on key while offers arrive, sorted on first read.
  mutable std::vector<PoolEntry> entries_;
  mutable bool sorted_ = true;
  mutable Guard guard_;
};

// The salt is drawn from rng.
NegativePool build_negative_pool(std::span<const Document> docs, std::size_t capacity, Rng& rng);

std::vector<PairExample> sample_ssp(const Document& doc, const NegativePool& pool,
                                    const SamplingConfig& cfg, Rng& rng);
std::vector<PairExample> sample_sp(const Document& doc, const NegativePool& pool,
                                   const SamplingConfig& cfg, Rng& rng);
std::vector<PairExample> sample_psd(const Document& doc, const NegativePool& pool,
                                    const SamplingConfig& cfg, Rng& rng);
std::vector<PairExample> sample(Objective objective, const Document& doc, const NegativePool& pool,
                                const SamplingConfig& cfg, Rng& rng);

// Seed used for one document and objective.
std::uint64_t document_seed(const SamplingConfig& cfg, Objective objective, std::string_view doc_id);

// Pool salt used by generate_examples for a given global seed.
std::uint64_t pool_seed(std::uint64_t global_seed);

// Samples every document with its own derived seed, spread across workers.
// The result is ordered by input document position and is identical for
// any worker count.
std::vector<PairExample> generate_examples(Objective objective, std::span<const Document> docs,
                                           const NegativePool& pool, const SamplingConfig& cfg,
                                           std::size_t workers = 1);

}  // namespace sentpair::sampler
