#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "sentpair/eval.hpp"

namespace sentpair::eval {
namespace {

// Ordered, so the dot product sums in a fixed order.
using Vector = std::map<std::string, double>;

Vector weigh(std::string_view text, const DocumentFrequency& df) {
  Vector v;
  for (auto& w : normalize_words(text)) v[std::move(w)] += 1.0;
  for (auto& [word, weight] : v) weight *= df.idf(word);
  return v;
}

double norm(const Vector& v) {
  double sum = 0.0;
  for (const auto& [word, weight] : v) sum += weight * weight;
  return std::sqrt(sum);
}

}  // namespace

void DocumentFrequency::add(std::string_view text) {
  ++document_count;
  std::unordered_set<std::string> seen;
  for (auto& w : normalize_words(text)) {
    if (seen.insert(w).second) ++df[w];
  }
}

double DocumentFrequency::idf(const std::string& word) const {
  const auto it = df.find(word);
  const double d = it == df.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((1.0 + static_cast<double>(document_count)) / (1.0 + d)) + 1.0;
}

DocumentFrequency build_document_frequency(const QASet& qaset) {
  DocumentFrequency df;
  for (const auto& item : qaset) {
    for (const auto& c : item.candidates) df.add(c.text);
  }
  return df;
}

void tfidf_score(const Question& question, std::span<Candidate> candidates, const DocumentFrequency& df) {
  const Vector q = weigh(question.text, df);
  const double q_norm = norm(q);
  for (auto& c : candidates) {
    const Vector v = weigh(c.text, df);
    const double v_norm = norm(v);
    if (q_norm == 0.0 || v_norm == 0.0) {
      c.score = 0.0;
      continue;
    }
    double dot = 0.0;
    for (const auto& [word, weight] : v) {
      const auto it = q.find(word);
      if (it != q.end()) dot += weight * it->second;
    }
    c.score = dot / (q_norm * v_norm);
  }
}

void tfidf_score(QASet& qaset, const DocumentFrequency& df) {
  for (auto& item : qaset) tfidf_score(item.question, item.candidates, df);
}

}  // namespace sentpair::eval
