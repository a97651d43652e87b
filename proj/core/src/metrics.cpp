#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include <json.hpp>

#include "sentpair/eval.hpp"

namespace sentpair::eval {
namespace {

double score_of(const Candidate& c, std::size_t i) {
  if (!c.score) throw EvalError("", "candidate " + std::to_string(i) + " has no score");
  if (std::isnan(*c.score)) throw EvalError("", "candidate " + std::to_string(i) + " has a NaN score");
  return *c.score;
}

std::vector<bool> ranked_labels(const QAItem& item) {
  std::vector<bool> labels;
  labels.reserve(item.candidates.size());
  bool any_positive = false;
  for (std::size_t i : rank_candidates(item.candidates)) {
    const auto& label = item.candidates[i].label;
    if (!label) throw EvalError(item.question.id, "candidate " + std::to_string(i) + " has no label");
    labels.push_back(*label);
    any_positive = any_positive || *label;
  }
  if (!any_positive) {
    throw EvalError(item.question.id, "question has no positive candidate; apply clean_filter first");
  }
  return labels;
}

template <typename Fn>
auto with_question(const QAItem& item, Fn&& fn) {
  try {
    return fn();
  } catch (const EvalError& e) {
    if (!e.question_id().empty()) throw;
    throw EvalError(item.question.id, e.what());
  }
}

}  // namespace

EvalError::EvalError(std::string question_id, const std::string& what)
    : Error(question_id.empty() ? what : "question '" + question_id + "': " + what),
      question_id_(std::move(question_id)) {}

std::size_t select_best(std::span<const Candidate> candidates) {
  if (candidates.empty()) throw EvalError("", "cannot select from an empty candidate list");
  std::size_t best = 0;
  double best_score = score_of(candidates[0], 0);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double s = score_of(candidates[i], i);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return best;
}

std::vector<std::size_t> rank_candidates(std::span<const Candidate> candidates) {
  std::vector<double> scores(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) scores[i] = score_of(candidates[i], i);
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

double average_precision(std::span<const bool> ranked) {
  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    if (!ranked[k]) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(k + 1);
  }
  if (hits == 0) throw EvalError("", "average precision needs at least one positive");
  return sum / static_cast<double>(hits);
}

double reciprocal_rank(std::span<const bool> ranked) {
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    if (ranked[k]) return 1.0 / static_cast<double>(k + 1);
  }
  throw EvalError("", "reciprocal rank needs at least one positive");
}

double precision_at_1(const QASet& qaset) {
  if (qaset.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& item : qaset) {
    with_question(item, [&] {
      const auto labels = ranked_labels(item);
      if (labels.front()) ++hits;
      return 0;
    });
  }
  return static_cast<double>(hits) / static_cast<double>(qaset.size());
}

RankingReport evaluate(const QASet& qaset) {
  RankingReport report;
  report.question_count = qaset.size();
  if (qaset.empty()) return report;
  double p1 = 0.0;
  double ap = 0.0;
  double rr = 0.0;
  for (const auto& item : qaset) {
    with_question(item, [&] {
      const std::vector<bool> labels = ranked_labels(item);
      // vector<bool> has no contiguous storage; copy for the span overloads.
      const std::unique_ptr<bool[]> flat(new bool[labels.size()]);
      std::copy(labels.begin(), labels.end(), flat.get());
      const std::span<const bool> view(flat.get(), labels.size());
      p1 += labels.front() ? 1.0 : 0.0;
      ap += average_precision(view);
      rr += reciprocal_rank(view);
      return 0;
    });
  }
  const auto n = static_cast<double>(qaset.size());
  report.p_at_1 = p1 / n;
  report.map = ap / n;
  report.mrr = rr / n;
  return report;
}

QASet clean_filter(const QASet& qaset) {
  QASet out;
  for (const auto& item : qaset) {
    bool pos = false;
    bool neg = false;
    for (const auto& c : item.candidates) {
      if (!c.label) continue;
      pos = pos || *c.label;
      neg = neg || !*c.label;
    }
    if (pos && neg) out.push_back(item);
  }
  return out;
}

DatasetStats dataset_stats(const QASet& qaset) {
  DatasetStats stats;
  stats.question_count = qaset.size();
  for (const auto& item : qaset) stats.candidate_count += item.candidates.size();
  if (stats.question_count > 0) {
    stats.avg_candidates_per_question =
        static_cast<double>(stats.candidate_count) / static_cast<double>(stats.question_count);
  }
  return stats;
}

std::string to_json(const RankingReport& report) {
  nlohmann::ordered_json j;
  j["question_count"] = report.question_count;
  j["p_at_1"] = report.p_at_1;
  j["map"] = report.map;
  j["mrr"] = report.mrr;
  return j.dump();
}

}  // namespace sentpair::eval
