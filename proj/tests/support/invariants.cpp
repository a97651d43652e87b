#include "support/invariants.hpp"

#include <sstream>
#include <tuple>

namespace sentpair::testing {
namespace {

using sampler::Hardness;
using sampler::Objective;
using sampler::PairExample;

std::string join(const std::vector<corpus::Sentence>& s, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += ' ';
    out += s[i].text;
  }
  return out;
}

std::size_t count_tokens(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = 0;
  std::string w;
  while (in >> w) ++n;
  return n;
}

struct Lookup {
  std::map<std::pair<std::string, std::size_t>, const corpus::Paragraph*> paragraphs;
  std::map<std::string, const corpus::Document*> docs;

  const corpus::Paragraph* find(const sampler::Provenance& p) const {
    const auto it = paragraphs.find({p.doc_id, p.paragraph_index});
    return it == paragraphs.end() ? nullptr : it->second;
  }
};

// Full text a provenance stands for.
std::string source_text(const corpus::Paragraph& p, const sampler::Provenance& prov) {
  const auto& s = p.sentences;
  const std::size_t lo = prov.sentence_start;
  const std::size_t hi = prov.sentence_start + prov.sentence_count;
  switch (prov.kind) {
    case sampler::ProvenanceKind::span:
      return join(s, lo, hi);
    case sampler::ProvenanceKind::complement: {
      std::string before = join(s, 0, lo);
      const std::string after = join(s, hi, s.size());
      if (!before.empty() && !after.empty()) before += ' ';
      return before + after;
    }
    case sampler::ProvenanceKind::paragraph:
      return join(s, 0, s.size());
  }
  return {};
}

}  // namespace

std::string clip_tokens(const std::string& text, std::size_t max, bool& clipped) {
  std::istringstream in(text);
  std::string w;
  std::string out;
  std::size_t n = 0;
  clipped = false;
  while (in >> w) {
    if (n == max) {
      clipped = true;
      break;
    }
    if (n > 0) out += ' ';
    out += w;
    ++n;
  }
  return out;
}

void InvariantTally::check(bool ok, const std::string& what) {
  ++checked;
  if (ok) return;
  ++failed;
  if (first_failures.size() < 10) first_failures.push_back(what);
}

bool InvariantReport::ok() const {
  return ssp_positive_spans.ok() && sp_positive_complement.ok() && psd_negative_cross_doc.ok() && texts.ok() &&
         budget.ok();
}

std::string InvariantReport::summary() const {
  std::ostringstream out;
  auto line = [&](const char* name, const InvariantTally& t) {
    out << name << " " << (t.checked - t.failed) << "/" << t.checked;
    for (const auto& f : t.first_failures) out << "\n  " << f;
    out << "\n";
  };
  line("ssp_positive_spans", ssp_positive_spans);
  line("sp_positive_complement", sp_positive_complement);
  line("psd_negative_cross_doc", psd_negative_cross_doc);
  line("texts", texts);
  line("budget", budget);
  out << "histogram";
  for (const auto& [k, v] : histogram) out << " (" << k.first << "," << k.second << "):" << v;
  return out.str();
}

void check_invariants(const std::vector<PairExample>& examples, const std::vector<corpus::Document>& docs,
                      const sampler::NegativePool& pool, const sampler::SamplingConfig& cfg,
                      InvariantReport& report) {
  Lookup lookup;
  for (const auto& d : docs) {
    lookup.docs[d.id] = &d;
    for (std::size_t i = 0; i < d.paragraphs.size(); ++i) lookup.paragraphs[{d.id, i}] = &d.paragraphs[i];
  }
  for (const auto& e : pool.entries()) lookup.paragraphs.emplace(std::make_pair(e.doc_id, e.paragraph.index), &e.paragraph);

  struct Group {
    const PairExample* positive = nullptr;
    std::size_t positives = 0, hard = 0, easy = 0;
  };
  std::map<std::tuple<std::string, Objective, std::uint32_t>, Group> groups;

  for (const auto& ex : examples) {
    const std::string where = std::string(sampler::to_string(ex.objective)) + " " + ex.a_provenance.doc_id + "#" +
                              std::to_string(ex.group) + "." + std::to_string(ex.member);
    const auto* pa = lookup.find(ex.a_provenance);
    const auto* pb = lookup.find(ex.b_provenance);
    const std::size_t budget = ex.objective == Objective::ssp ? cfg.token_budget_ssp : cfg.token_budget_sp_psd;
    const std::size_t a_cap = ex.objective == Objective::sp ? budget / 4 : budget / 2;
    if (!pa || !pb) {
      report.texts.check(false, where + ": provenance does not resolve");
      continue;
    }
    bool ca = false, cb = false;
    const std::string want_a = clip_tokens(source_text(*pa, ex.a_provenance), a_cap, ca);
    const std::string want_b = clip_tokens(source_text(*pb, ex.b_provenance), budget - count_tokens(want_a), cb);
    report.texts.check(ex.seq_a == want_a && ex.seq_b == want_b && ex.truncated == (ca || cb) &&
                           !ex.seq_a.empty() && !ex.seq_b.empty() &&
                           count_tokens(ex.seq_a) + count_tokens(ex.seq_b) <= budget &&
                           ex.label == (ex.hardness == Hardness::positive ? 1 : 0),
                       where + ": text, truncation or label mismatch");

    const auto& a = ex.a_provenance;
    const auto& b = ex.b_provenance;
    if (ex.objective == Objective::ssp && ex.hardness == Hardness::positive) {
      const bool same_paragraph = a.doc_id == b.doc_id && a.paragraph_index == b.paragraph_index;
      const bool spans = a.kind == sampler::ProvenanceKind::span && b.kind == sampler::ProvenanceKind::span;
      const bool disjoint = a.sentence_start + a.sentence_count <= b.sentence_start ||
                            b.sentence_start + b.sentence_count <= a.sentence_start;
      const bool sized = a.sentence_count >= cfg.ssp_a_sentences.lo || a.sentence_count == pa->sentences.size() - 1;
      report.ssp_positive_spans.check(same_paragraph && spans && disjoint && a.sentence_count >= 1 &&
                                          b.sentence_count >= 1 && a.sentence_count <= cfg.ssp_a_sentences.hi &&
                                          b.sentence_count <= cfg.ssp_b_sentences.hi && sized,
                                      where + ": not disjoint spans of one paragraph");
    }
    if (ex.objective == Objective::sp && ex.hardness == Hardness::positive) {
      // Rebuild P \ A from the paragraph and A's own range.
      const auto& s = pa->sentences;
      std::vector<corpus::Sentence> rest;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i < a.sentence_start || i >= a.sentence_start + a.sentence_count) rest.push_back(s[i]);
      }
      bool c1 = false, c2 = false;
      const std::string a_clip = clip_tokens(join(s, a.sentence_start, a.sentence_start + a.sentence_count), a_cap, c1);
      const std::string expected = clip_tokens(join(rest, 0, rest.size()), budget - count_tokens(a_clip), c2);
      report.sp_positive_complement.check(
          !rest.empty() && ex.seq_b == expected && b.doc_id == a.doc_id && b.paragraph_index == a.paragraph_index,
          where + ": seq_b is not the paragraph minus A");
    }
    if (ex.objective == Objective::psd && ex.hardness != Hardness::positive) {
      report.psd_negative_cross_doc.check(a.doc_id != b.doc_id && ex.hardness == Hardness::easy,
                                          where + ": negative from the same document");
    }
    auto& g = groups[{a.doc_id, ex.objective, ex.group}];
    if (ex.hardness == Hardness::positive) {
      ++g.positives;
      g.positive = &ex;
    } else if (ex.hardness == Hardness::hard) {
      ++g.hard;
    } else {
      ++g.easy;
    }
  }

  for (const auto& [key, g] : groups) {
    const auto& [doc_id, objective, group] = key;
    const std::string where = std::string(sampler::to_string(objective)) + " " + doc_id + "#" + std::to_string(group);
    if (g.positives != 1) {
      report.budget.check(false, where + ": " + std::to_string(g.positives) + " positives");
      continue;
    }
    report.histogram[{g.hard, g.easy}] += 1;
    const auto* doc = lookup.docs.at(doc_id);
    const std::size_t min_sentences = objective == Objective::sp ? 2 : 1;
    std::size_t other = 0;
    for (const auto& p : doc->paragraphs) {
      if (p.index != g.positive->a_provenance.paragraph_index && p.sentences.size() >= min_sentences) ++other;
    }
    std::size_t foreign = 0;
    for (const auto& e : pool.entries()) {
      if (e.doc_id != doc_id && e.paragraph.sentences.size() >= min_sentences) ++foreign;
    }
    const std::size_t max_hard = objective == Objective::psd ? 0 : cfg.max_hard_negatives;
    const bool enough = objective == Objective::psd ? foreign >= cfg.total_negatives
                                                    : other >= max_hard && foreign >= cfg.total_negatives - max_hard;
    bool ok = g.hard <= max_hard && g.hard + g.easy <= cfg.total_negatives;
    if (enough) ok = ok && g.hard == max_hard && g.hard + g.easy == cfg.total_negatives;
    report.budget.check(ok, where + ": " + std::to_string(g.hard) + " hard, " + std::to_string(g.easy) + " easy");
  }
}

}  // namespace sentpair::testing
