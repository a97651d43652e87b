#include "sentpair/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "sentpair/text.hpp"

namespace sentpair::sampler {
namespace {

// Like draw_span, but the count never exceeds max_count so that the rest
// of the paragraph stays non-empty.
SentenceRange draw_span_capped(std::size_t n, Interval interval, std::size_t max_count, Rng& rng) {
  const std::size_t wanted = static_cast<std::size_t>(rng.between(interval.lo, interval.hi));
  const std::size_t count = std::min({wanted, n, max_count});
  const std::size_t start = static_cast<std::size_t>(rng.below(n - count + 1));
  return SentenceRange{start, count};
}

Provenance span_of(std::string_view doc_id, const Paragraph& p, SentenceRange r) {
  return Provenance{std::string(doc_id), p.index, r.start, r.count, ProvenanceKind::span};
}

Provenance complement_of(std::string_view doc_id, const Paragraph& p, SentenceRange removed) {
  return Provenance{std::string(doc_id), p.index, removed.start, removed.count, ProvenanceKind::complement};
}

Provenance whole(std::string_view doc_id, const Paragraph& p) {
  return Provenance{std::string(doc_id), p.index, 0, p.sentences.size(), ProvenanceKind::paragraph};
}

// k distinct values from [0, n), order as drawn.
std::vector<std::size_t> choose_distinct(std::vector<std::size_t> items, std::size_t k, Rng& rng) {
  k = std::min(k, items.size());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(items.size() - i));
    std::swap(items[i], items[j]);
  }
  items.resize(k);
  return items;
}

// Up to want distinct pool entries from documents other than doc_id with
// at least min_sentences sentences, uniformly without replacement.
std::vector<const PoolEntry*> pick_foreign(const NegativePool& pool, std::string_view doc_id,
                                           std::size_t min_sentences, std::size_t want, Rng& rng) {
  std::vector<const PoolEntry*> picked;
  const auto entries = pool.entries();
  if (want == 0 || entries.empty()) return picked;
  auto eligible = [&](const PoolEntry& e) {
    return e.doc_id != doc_id && e.paragraph.sentences.size() >= min_sentences;
  };
  auto taken = [&](const PoolEntry* e) { return std::find(picked.begin(), picked.end(), e) != picked.end(); };

  // Rejection sampling is cheap while most of the pool is eligible; the
  // exact pass below finishes the job otherwise.
  const std::size_t attempts = 8 * want + 32;
  for (std::size_t t = 0; t < attempts && picked.size() < want; ++t) {
    const PoolEntry* e = &entries[static_cast<std::size_t>(rng.below(entries.size()))];
    if (eligible(*e) && !taken(e)) picked.push_back(e);
  }
  if (picked.size() < want) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (eligible(entries[i]) && !taken(&entries[i])) rest.push_back(i);
    }
    for (std::size_t i : choose_distinct(std::move(rest), want - picked.size(), rng)) {
      picked.push_back(&entries[i]);
    }
  }
  return picked;
}

class Emitter {
 public:
  Emitter(const SamplingConfig& cfg, Objective objective, std::vector<PairExample>& out)
      : cfg_(cfg), objective_(objective), out_(out) {}

  void emit(const std::string& a_text, const std::string& b_text, Hardness hardness, Provenance a,
            Provenance b) {
    PairExample ex;
    ex.objective = objective_;
    bool a_clipped = false;
    bool b_clipped = false;
    ex.seq_a = text::take_tokens(a_text, cfg_.a_token_cap(objective_), &a_clipped);
    const std::size_t b_budget = cfg_.token_budget(objective_) - text::token_count(ex.seq_a);
    ex.seq_b = text::take_tokens(b_text, b_budget, &b_clipped);
    ex.truncated = a_clipped || b_clipped;
    ex.hardness = hardness;
    ex.label = hardness == Hardness::positive ? 1 : 0;
    ex.a_provenance = std::move(a);
    ex.b_provenance = std::move(b);
    ex.group = group_;
    ex.member = member_++;
    out_.push_back(std::move(ex));
  }

  void next_group() {
    ++group_;
    member_ = 0;
  }

 private:
  const SamplingConfig& cfg_;
  Objective objective_;
  std::vector<PairExample>& out_;
  std::uint32_t group_ = 0;
  std::uint32_t member_ = 0;
};

std::vector<std::size_t> other_paragraphs(const Document& doc, std::size_t skip, std::size_t min_sentences) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < doc.paragraphs.size(); ++j) {
    if (j != skip && doc.paragraphs[j].sentences.size() >= min_sentences) idx.push_back(j);
  }
  return idx;
}

// A span from the sentences strictly before or strictly after a, picking
// uniformly between the non-empty sides.
SentenceRange draw_beside(std::size_t n, SentenceRange a, Interval interval, Rng& rng) {
  const std::size_t before = a.start;
  const std::size_t after = n - a.end();
  bool use_before = before > 0;
  if (before > 0 && after > 0) use_before = rng.below(2) == 0;
  if (use_before) return draw_span(before, interval, rng);
  SentenceRange r = draw_span(after, interval, rng);
  r.start += a.end();
  return r;
}

}  // namespace

SentenceRange draw_span(std::size_t sentence_count, Interval interval, Rng& rng) {
  return draw_span_capped(sentence_count, interval, sentence_count, rng);
}

SentenceRange draw_span(const Paragraph& paragraph, Interval interval, Rng& rng) {
  return draw_span(paragraph.sentences.size(), interval, rng);
}

std::vector<PairExample> sample_ssp(const Document& doc, const NegativePool& pool,
                                    const SamplingConfig& cfg, Rng& rng) {
  std::vector<PairExample> out;
  Emitter emitter(cfg, Objective::ssp, out);
  for (std::size_t i = 0; i < doc.paragraphs.size(); ++i) {
    const Paragraph& para = doc.paragraphs[i];
    const std::size_t n = para.sentences.size();
    if (n < 2) continue;
    for (std::size_t rep = 0; rep < cfg.positives_per_unit; ++rep) {
      const SentenceRange a = draw_span_capped(n, cfg.ssp_a_sentences, n - 1, rng);
      const SentenceRange b = draw_beside(n, a, cfg.ssp_b_sentences, rng);
      const std::string a_text = para.text(a.start, a.count);
      const Provenance a_prov = span_of(doc.id, para, a);
      emitter.emit(a_text, para.text(b.start, b.count), Hardness::positive, a_prov, span_of(doc.id, para, b));

      std::size_t hard = 0;
      if (cfg.ssp_hard_negative_source == HardNegativeSource::other_paragraphs) {
        for (std::size_t j : choose_distinct(other_paragraphs(doc, i, 1), cfg.max_hard_negatives, rng)) {
          const Paragraph& other = doc.paragraphs[j];
          const SentenceRange r = draw_span(other, cfg.ssp_b_sentences, rng);
          emitter.emit(a_text, other.text(r.start, r.count), Hardness::hard, a_prov, span_of(doc.id, other, r));
          ++hard;
        }
      } else {
        for (; hard < cfg.max_hard_negatives; ++hard) {
          const SentenceRange r = draw_beside(n, a, cfg.ssp_b_sentences, rng);
          emitter.emit(a_text, para.text(r.start, r.count), Hardness::hard, a_prov, span_of(doc.id, para, r));
        }
      }

      for (const PoolEntry* e : pick_foreign(pool, doc.id, 1, cfg.total_negatives - hard, rng)) {
        const SentenceRange r = draw_span(e->paragraph, cfg.ssp_b_sentences, rng);
        emitter.emit(a_text, e->paragraph.text(r.start, r.count), Hardness::easy, a_prov,
                     span_of(e->doc_id, e->paragraph, r));
      }
      emitter.next_group();
    }
  }
  return out;
}

std::vector<PairExample> sample_sp(const Document& doc, const NegativePool& pool,
                                   const SamplingConfig& cfg, Rng& rng) {
  std::vector<PairExample> out;
  Emitter emitter(cfg, Objective::sp, out);
  auto clipped = [&](std::string_view doc_id, const Paragraph& p, Hardness hardness, const std::string& a_text,
                     const Provenance& a_prov) {
    const std::size_t n = p.sentences.size();
    const SentenceRange removed = draw_span_capped(n, cfg.sp_a_sentences, n - 1, rng);
    emitter.emit(a_text, p.text_without(removed.start, removed.count), hardness, a_prov,
                 complement_of(doc_id, p, removed));
  };

  for (std::size_t i = 0; i < doc.paragraphs.size(); ++i) {
    const Paragraph& para = doc.paragraphs[i];
    const std::size_t n = para.sentences.size();
    if (n < 2) continue;
    for (std::size_t rep = 0; rep < cfg.positives_per_unit; ++rep) {
      const SentenceRange a = draw_span_capped(n, cfg.sp_a_sentences, n - 1, rng);
      const std::string a_text = para.text(a.start, a.count);
      const Provenance a_prov = span_of(doc.id, para, a);
      emitter.emit(a_text, para.text_without(a.start, a.count), Hardness::positive, a_prov,
                   complement_of(doc.id, para, a));

      std::size_t hard = 0;
      for (std::size_t j : choose_distinct(other_paragraphs(doc, i, 2), cfg.max_hard_negatives, rng)) {
        clipped(doc.id, doc.paragraphs[j], Hardness::hard, a_text, a_prov);
        ++hard;
      }
      for (const PoolEntry* e : pick_foreign(pool, doc.id, 2, cfg.total_negatives - hard, rng)) {
        clipped(e->doc_id, e->paragraph, Hardness::easy, a_text, a_prov);
      }
      emitter.next_group();
    }
  }
  return out;
}

std::vector<PairExample> sample_psd(const Document& doc, const NegativePool& pool,
                                    const SamplingConfig& cfg, Rng& rng) {
  std::vector<PairExample> out;
  const std::size_t m = doc.paragraphs.size();
  if (m < 2) return out;
  Emitter emitter(cfg, Objective::psd, out);
  for (std::size_t rep = 0; rep < cfg.positives_per_unit; ++rep) {
    const std::size_t i = static_cast<std::size_t>(rng.below(m));
    std::size_t j = static_cast<std::size_t>(rng.below(m - 1));
    if (j >= i) ++j;
    const Paragraph& a = doc.paragraphs[i];
    const Paragraph& b = doc.paragraphs[j];
    const std::string a_text = a.text();
    const Provenance a_prov = whole(doc.id, a);
    emitter.emit(a_text, b.text(), Hardness::positive, a_prov, whole(doc.id, b));
    for (const PoolEntry* e : pick_foreign(pool, doc.id, 1, cfg.total_negatives, rng)) {
      emitter.emit(a_text, e->paragraph.text(), Hardness::easy, a_prov, whole(e->doc_id, e->paragraph));
    }
    emitter.next_group();
  }
  return out;
}

std::vector<PairExample> sample(Objective objective, const Document& doc, const NegativePool& pool,
                                const SamplingConfig& cfg, Rng& rng) {
  switch (objective) {
    case Objective::ssp:
      return sample_ssp(doc, pool, cfg, rng);
    case Objective::sp:
      return sample_sp(doc, pool, cfg, rng);
    case Objective::psd:
      return sample_psd(doc, pool, cfg, rng);
  }
  return {};
}

std::uint64_t document_seed(const SamplingConfig& cfg, Objective objective, std::string_view doc_id) {
  const auto tag = static_cast<std::uint64_t>(objective) + 1;
  return mix64(derive_doc_seed(cfg.global_seed, doc_id) ^ (tag * 0xA24BAED4963EE407ULL));
}

std::uint64_t pool_seed(std::uint64_t global_seed) { return mix64(global_seed ^ 0x6E65672D706F6F6CULL); }

std::vector<PairExample> generate_examples(Objective objective, std::span<const Document> docs,
                                           const NegativePool& pool, const SamplingConfig& cfg,
                                           std::size_t workers) {
  cfg.validate();
  std::vector<std::vector<PairExample>> per_doc(docs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= docs.size()) return;
      try {
        Rng rng(document_seed(cfg, objective, docs[k].id));
        per_doc[k] = sample(objective, docs[k], pool, cfg, rng);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(docs.size());
      }
    }
  };

  workers = std::max<std::size_t>(1, std::min(workers, docs.size()));
  {
    std::vector<std::jthread> threads;
    for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);

  std::size_t total = 0;
  for (const auto& v : per_doc) total += v.size();
  std::vector<PairExample> out;
  out.reserve(total);
  for (auto& v : per_doc) std::move(v.begin(), v.end(), std::back_inserter(out));
  return out;
}

}  // namespace sentpair::sampler
