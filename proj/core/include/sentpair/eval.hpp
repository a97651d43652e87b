#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sentpair/corpus.hpp"
#include "sentpair/error.hpp"

namespace sentpair::eval {

struct Question {
  std::string id;
  std::string text;

  bool operator==(const Question&) const = default;
};

struct Candidate {
  std::string text;
  std::optional<bool> label;
  std::optional<double> score;

  bool operator==(const Candidate&) const = default;
};

struct QAItem {
  Question question;
  std::vector<Candidate> candidates;

  bool operator==(const QAItem&) const = default;
};

using QASet = std::vector<QAItem>;

struct RankingReport {
  double p_at_1 = 0.0;
  double map = 0.0;
  double mrr = 0.0;
  std::size_t question_count = 0;

  bool operator==(const RankingReport&) const = default;
};

// Carries the id of the question that could not be evaluated, if any.
class EvalError : public Error {
 public:
  EvalError(std::string question_id, const std::string& what);
  const std::string& question_id() const noexcept { return question_id_; }

 private:
  std::string question_id_;
};

// Index of the highest score; ties go to the lowest index. Throws EvalError
// on an empty list, a missing score or a NaN score.
std::size_t select_best(std::span<const Candidate> candidates);

// Candidate indices ordered by score descending, then original index.
std::vector<std::size_t> rank_candidates(std::span<const Candidate> candidates);

// Mean over positive positions k of precision@k, i.e. normalized by the
// total number of positives. Throws EvalError when there is no positive.
double average_precision(std::span<const bool> ranked_labels);

// 1 / rank of the first positive. Throws EvalError when there is none.
double reciprocal_rank(std::span<const bool> ranked_labels);

// Fraction of questions whose best candidate is positive.
double precision_at_1(const QASet& qaset);

// Macro averages over questions. Every question needs scores, labels,
// and at least one positive; see clean_filter.
RankingReport evaluate(const QASet& qaset);

// Keeps only questions with at least one positive and one negative.
QASet clean_filter(const QASet& qaset);

struct DatasetStats {
  std::size_t question_count = 0;
  std::size_t candidate_count = 0;
  double avg_candidates_per_question = 0.0;

  bool operator==(const DatasetStats&) const = default;
};

DatasetStats dataset_stats(const QASet& qaset);

// Lowercased words with punctuation removed; empty results are dropped.
std::vector<std::string> normalize_words(std::string_view text);

class StopwordSet {
 public:
  // The list compiled in from data/stopwords_en.txt.
  static const StopwordSet& english();
  // One word per line; '#' starts a comment. Entries are normalized
  // with normalize_words.
  static StopwordSet parse(std::string_view data);
  static StopwordSet load(const std::string& path);

  bool contains(std::string_view normalized_word) const { return words_.count(std::string(normalized_word)) > 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Sentences sharing at least one non-stopword with the question, in
// source order, unlabeled and unscored.
std::vector<Candidate> extract_candidates(const Question& question,
                                          std::span<const corpus::Sentence> sentences,
                                          const StopwordSet& stopwords);

// Number of texts each normalized word appears in.
struct DocumentFrequency {
  std::size_t document_count = 0;
  std::unordered_map<std::string, std::size_t> df;

  void add(std::string_view text);
  // Smoothed: ln((1 + N) / (1 + df)) + 1.
  double idf(const std::string& word) const;
};

// df over the candidate texts of every question.
DocumentFrequency build_document_frequency(const QASet& qaset);

// Sets each score to the cosine between raw-count tf-idf vectors of the
// question and the candidate; empty vectors score 0.
void tfidf_score(const Question& question, std::span<Candidate> candidates, const DocumentFrequency& df);
void tfidf_score(QASet& qaset, const DocumentFrequency& df);

// Tab-separated rows: question_id, question_text, candidate_text, label
// and, when scored, score. Rows for a question need not be adjacent;
// questions keep first-appearance order. An optional header row starting
// with "question_id" is skipped. The WikiQA distribution layout
// (QuestionID, Question, DocumentID, DocumentTitle, SentenceID, Sentence,
// Label) is recognized by its header. An empty label field means unset.
QASet read_qa_tsv(const std::string& path);
QASet parse_qa_tsv(std::string_view data, const std::string& origin = "<memory>");
std::string format_qa_tsv(const QASet& qaset, bool with_scores);

// {"question_count", "p_at_1", "map", "mrr"}.
std::string to_json(const RankingReport& report);

}  // namespace sentpair::eval
