#include "sentpair/validator.hpp"

#include <algorithm>
#include <tuple>

#include "sentpair/text.hpp"

namespace sentpair::sampler {
namespace {

std::string describe(const PairExample& ex) {
  return std::string(to_string(ex.objective)) + " " + ex.a_provenance.doc_id + " group " +
         std::to_string(ex.group) + " member " + std::to_string(ex.member) + ": ";
}

bool disjoint(const Provenance& a, const Provenance& b) {
  return a.sentence_start + a.sentence_count <= b.sentence_start ||
         b.sentence_start + b.sentence_count <= a.sentence_start;
}

// Text the provenance denotes, or nullopt with a message appended.
std::optional<std::string> resolve(const Provenance& prov, const CorpusIndex& index, const char* side,
                                   std::vector<std::string>& problems) {
  const Paragraph* p = index.find(prov.doc_id, prov.paragraph_index);
  if (!p) {
    problems.push_back(std::string(side) + " provenance does not resolve to a paragraph");
    return std::nullopt;
  }
  const std::size_t n = p->sentences.size();
  if (prov.sentence_count == 0 || prov.sentence_start + prov.sentence_count > n) {
    problems.push_back(std::string(side) + " sentence range outside paragraph");
    return std::nullopt;
  }
  switch (prov.kind) {
    case ProvenanceKind::span:
      return p->text(prov.sentence_start, prov.sentence_count);
    case ProvenanceKind::complement:
      if (prov.sentence_count >= n) {
        problems.push_back(std::string(side) + " complement is empty");
        return std::nullopt;
      }
      return p->text_without(prov.sentence_start, prov.sentence_count);
    case ProvenanceKind::paragraph:
      if (prov.sentence_start != 0 || prov.sentence_count != n) {
        problems.push_back(std::string(side) + " paragraph provenance does not cover the paragraph");
        return std::nullopt;
      }
      return p->text();
  }
  return std::nullopt;
}

struct GroupKey {
  std::string doc_id;
  Objective objective;
  std::uint32_t group;

  auto operator<=>(const GroupKey&) const = default;
};

struct GroupTally {
  std::size_t positives = 0;
  std::size_t hard = 0;
  std::size_t easy = 0;
  const PairExample* positive = nullptr;
};

}  // namespace

CorpusIndex::CorpusIndex(std::span<const Document> docs) {
  for (const auto& d : docs) docs_.emplace(d.id, &d);
}

void CorpusIndex::add_pool(const NegativePool& pool) {
  for (const auto& e : pool.entries()) extra_.emplace(std::make_pair(e.doc_id, e.paragraph.index), &e.paragraph);
}

const Document* CorpusIndex::document(std::string_view doc_id) const {
  const auto it = docs_.find(std::string(doc_id));
  return it == docs_.end() ? nullptr : it->second;
}

const Paragraph* CorpusIndex::find(std::string_view doc_id, std::size_t paragraph_index) const {
  if (const Document* d = document(doc_id)) {
    if (paragraph_index < d->paragraphs.size()) return &d->paragraphs[paragraph_index];
    return nullptr;
  }
  const auto it = extra_.find(std::make_pair(std::string(doc_id), paragraph_index));
  return it == extra_.end() ? nullptr : it->second;
}

std::vector<std::string> validate_example(const PairExample& ex, const CorpusIndex& index,
                                          const SamplingConfig& cfg) {
  std::vector<std::string> problems;
  const Provenance& a = ex.a_provenance;
  const Provenance& b = ex.b_provenance;

  if ((ex.label == 1) != (ex.hardness == Hardness::positive) || ex.label > 1) {
    problems.push_back("label disagrees with hardness");
  }
  if (ex.seq_a.empty()) problems.push_back("seq_a is empty");
  if (ex.seq_b.empty()) problems.push_back("seq_b is empty");

  const auto a_text = resolve(a, index, "a", problems);
  const auto b_text = resolve(b, index, "b", problems);
  if (a_text && b_text) {
    bool a_clipped = false;
    bool b_clipped = false;
    const std::string want_a = text::take_tokens(*a_text, cfg.a_token_cap(ex.objective), &a_clipped);
    const std::string want_b =
        text::take_tokens(*b_text, cfg.token_budget(ex.objective) - text::token_count(want_a), &b_clipped);
    if (ex.seq_a != want_a) problems.push_back("seq_a does not match its provenance");
    if (ex.seq_b != want_b) problems.push_back("seq_b does not match its provenance");
    if (ex.truncated != (a_clipped || b_clipped)) problems.push_back("truncated flag is wrong");
  }
  if (text::token_count(ex.seq_a) + text::token_count(ex.seq_b) > cfg.token_budget(ex.objective)) {
    problems.push_back("token budget exceeded");
  }

  const bool same_doc = a.doc_id == b.doc_id;
  const bool same_paragraph = same_doc && a.paragraph_index == b.paragraph_index;
  switch (ex.objective) {
    case Objective::ssp:
      if (a.kind != ProvenanceKind::span || b.kind != ProvenanceKind::span) {
        problems.push_back("SSP sequences must be spans");
      }
      if (a.sentence_count > cfg.ssp_a_sentences.hi) problems.push_back("SSP A longer than ssp_a_sentences");
      if (b.sentence_count > cfg.ssp_b_sentences.hi) problems.push_back("SSP B longer than ssp_b_sentences");
      if (ex.hardness == Hardness::positive) {
        if (!same_paragraph) problems.push_back("SSP positive spans come from different paragraphs");
        if (!disjoint(a, b)) problems.push_back("SSP positive spans overlap");
      } else if (ex.hardness == Hardness::hard) {
        if (!same_doc) problems.push_back("SSP hard negative from another document");
        if (cfg.ssp_hard_negative_source == HardNegativeSource::other_paragraphs && same_paragraph) {
          problems.push_back("SSP hard negative from A's paragraph");
        }
        if (cfg.ssp_hard_negative_source == HardNegativeSource::same_paragraph &&
            (!same_paragraph || !disjoint(a, b))) {
          problems.push_back("SSP same-paragraph hard negative is not a disjoint span of A's paragraph");
        }
      } else if (same_doc) {
        problems.push_back("SSP easy negative from the same document");
      }
      break;
    case Objective::sp:
      if (a.kind != ProvenanceKind::span || b.kind != ProvenanceKind::complement) {
        problems.push_back("SP needs a span A and a clipped paragraph B");
      }
      if (a.sentence_count > cfg.sp_a_sentences.hi) problems.push_back("SP A longer than sp_a_sentences");
      if (b.sentence_count > cfg.sp_a_sentences.hi) problems.push_back("SP removed span longer than sp_a_sentences");
      if (ex.hardness == Hardness::positive) {
        if (!same_paragraph || a.sentence_start != b.sentence_start || a.sentence_count != b.sentence_count) {
          problems.push_back("SP positive B is not A's paragraph minus A");
        }
      } else if (ex.hardness == Hardness::hard) {
        if (!same_doc || same_paragraph) problems.push_back("SP hard negative not from another paragraph of A's document");
      } else if (same_doc) {
        problems.push_back("SP easy negative from the same document");
      }
      break;
    case Objective::psd:
      if (a.kind != ProvenanceKind::paragraph || b.kind != ProvenanceKind::paragraph) {
        problems.push_back("PSD sequences must be whole paragraphs");
      }
      if (ex.hardness == Hardness::hard) problems.push_back("PSD has no hard negatives");
      if (ex.hardness == Hardness::positive && (!same_doc || same_paragraph)) {
        problems.push_back("PSD positive is not two distinct paragraphs of one document");
      }
      if (ex.hardness == Hardness::easy && same_doc) problems.push_back("PSD negative from the same document");
      break;
  }
  return problems;
}

ValidationReport validate_examples(std::span<const PairExample> examples, const CorpusIndex& index,
                                   const SamplingConfig& cfg, const NegativePool* pool) {
  ValidationReport report;
  auto fail = [&](std::string message) {
    ++report.violation_count;
    if (report.violations.size() < 50) report.violations.push_back(std::move(message));
  };

  std::map<GroupKey, GroupTally> groups;
  for (const auto& ex : examples) {
    ++report.examples;
    for (auto& problem : validate_example(ex, index, cfg)) fail(describe(ex) + problem);
    GroupTally& tally = groups[GroupKey{ex.a_provenance.doc_id, ex.objective, ex.group}];
    switch (ex.hardness) {
      case Hardness::positive:
        ++tally.positives;
        ++report.positives;
        tally.positive = &ex;
        if (ex.member != 0) fail(describe(ex) + "positive is not member 0");
        break;
      case Hardness::hard:
        ++tally.hard;
        break;
      case Hardness::easy:
        ++tally.easy;
        break;
    }
  }

  // Foreign pool material per document: (any size, at least two sentences).
  std::map<std::string, std::pair<std::size_t, std::size_t>, std::less<>> own;
  std::size_t pool_total = 0;
  std::size_t pool_multi = 0;
  if (pool) {
    for (const auto& e : pool->entries()) {
      auto& slot = own[e.doc_id];
      ++slot.first;
      ++pool_total;
      if (e.paragraph.sentences.size() >= 2) {
        ++slot.second;
        ++pool_multi;
      }
    }
  }

  for (const auto& [key, tally] : groups) {
    const std::string where = std::string(to_string(key.objective)) + " " + key.doc_id + " group " +
                              std::to_string(key.group) + ": ";
    report.negative_histogram[{tally.hard, tally.easy}] += 1;
    if (tally.positives != 1) {
      fail(where + std::to_string(tally.positives) + " positives in group");
      continue;
    }
    if (tally.hard > cfg.max_hard_negatives) fail(where + "too many hard negatives");
    if (tally.hard + tally.easy > cfg.total_negatives) fail(where + "too many negatives");
    if (!pool) continue;

    const Document* doc = index.document(key.doc_id);
    if (!doc) {
      fail(where + "source document not indexed");
      continue;
    }
    const std::size_t para = tally.positive->a_provenance.paragraph_index;
    std::size_t hard_available = 0;
    std::size_t easy_available = 0;
    const auto it = own.find(key.doc_id);
    const auto self = it == own.end() ? std::make_pair<std::size_t, std::size_t>(0, 0) : it->second;
    switch (key.objective) {
      case Objective::ssp:
        hard_available = cfg.ssp_hard_negative_source == HardNegativeSource::same_paragraph
                             ? cfg.max_hard_negatives
                             : doc->paragraphs.size() - 1;
        easy_available = pool_total - self.first;
        break;
      case Objective::sp:
        for (const auto& p : doc->paragraphs) {
          if (p.index != para && p.sentences.size() >= 2) ++hard_available;
        }
        easy_available = pool_multi - self.second;
        break;
      case Objective::psd:
        easy_available = pool_total - self.first;
        break;
    }
    const std::size_t want_hard = std::min(cfg.max_hard_negatives, hard_available);
    const std::size_t want_easy = std::min(cfg.total_negatives - want_hard, easy_available);
    const std::size_t hard_cap = key.objective == Objective::psd ? 0 : want_hard;
    if (tally.hard != hard_cap || tally.easy != (key.objective == Objective::psd
                                                     ? std::min(cfg.total_negatives, easy_available)
                                                     : want_easy)) {
      fail(where + "negatives (" + std::to_string(tally.hard) + " hard, " + std::to_string(tally.easy) +
           " easy) fall short of the available material");
    }
  }
  return report;
}

}  // namespace sentpair::sampler
