#include <gtest/gtest.h>

#include <cmath>

#include "sentpair/eval.hpp"
#include "support/oracles.hpp"
#include "support/random_data.hpp"

namespace sentpair::eval {
namespace {

std::vector<Candidate> scored(std::vector<double> scores) {
  std::vector<Candidate> out;
  for (double s : scores) out.push_back(Candidate{"t", false, s});
  return out;
}

double ap(std::vector<bool> labels) {
  std::unique_ptr<bool[]> flat(new bool[labels.size()]);
  std::copy(labels.begin(), labels.end(), flat.get());
  return average_precision(std::span<const bool>(flat.get(), labels.size()));
}

double rr(std::vector<bool> labels) {
  std::unique_ptr<bool[]> flat(new bool[labels.size()]);
  std::copy(labels.begin(), labels.end(), flat.get());
  return reciprocal_rank(std::span<const bool>(flat.get(), labels.size()));
}

QAItem item(const std::string& id, std::vector<std::pair<int, double>> cands) {
  QAItem q{{id, "question " + id}, {}};
  for (auto [l, s] : cands) q.candidates.push_back(Candidate{"c", l == 1, s});
  return q;
}

TEST(SelectBest, Basics) {
  EXPECT_EQ(select_best(scored({0.1, 0.9, 0.3})), 1u);
  EXPECT_EQ(select_best(scored({0.5, 0.5})), 0u);
  EXPECT_THROW(select_best(std::vector<Candidate>{}), EvalError);
  EXPECT_THROW(select_best(std::vector<Candidate>{Candidate{"x", true, std::nullopt}}), EvalError);
  EXPECT_THROW(select_best(scored({0.1, std::nan("")})), EvalError);
}

TEST(SelectBest, MatchesLinearScan) {
  testing::Gen gen(1);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    std::vector<double> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<double>(gen() % 5) - 2.0);
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (s[i] > s[best]) best = i;
    }
    EXPECT_EQ(select_best(scored(s)), best);
  }
}

TEST(RankCandidates, StableDescending) {
  EXPECT_EQ(rank_candidates(scored({0.2, 0.9, 0.2, 1.0})), (std::vector<std::size_t>{3, 1, 0, 2}));
  EXPECT_EQ(rank_candidates(scored({-1, -1, -1})), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(AveragePrecision, Examples) {
  EXPECT_DOUBLE_EQ(ap({1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(ap({0, 1}), 0.5);
  EXPECT_DOUBLE_EQ(ap({0, 1, 0, 1}), 0.5);
  EXPECT_THROW(ap({0, 0}), EvalError);
  EXPECT_THROW(ap({}), EvalError);
}

TEST(AveragePrecision, AllSequencesUpToSix) {
  for (std::size_t len = 1; len <= 6; ++len) {
    for (unsigned mask = 1; mask < (1u << len); ++mask) {
      std::vector<bool> labels;
      std::vector<int> ints;
      for (std::size_t k = 0; k < len; ++k) {
        labels.push_back((mask >> k) & 1u);
        ints.push_back((mask >> k) & 1u);
      }
      EXPECT_NEAR(ap(labels), testing::oracle_ap(ints), 1e-15);
      EXPECT_NEAR(rr(labels), testing::oracle_rr(ints), 1e-15);
    }
  }
}

TEST(ReciprocalRank, Examples) {
  EXPECT_DOUBLE_EQ(rr({1, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(rr({0, 0, 1}), 1.0 / 3.0);
  EXPECT_THROW(rr({0}), EvalError);
}

TEST(ReciprocalRank, RandomLengthEight) {
  testing::Gen gen(2);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    std::vector<bool> labels(n);
    std::vector<int> ints(n);
    for (std::size_t i = 0; i < n; ++i) ints[i] = labels[i] = gen() % 3 == 0;
    if (std::find(ints.begin(), ints.end(), 1) == ints.end()) continue;
    EXPECT_DOUBLE_EQ(rr(labels), testing::oracle_rr(ints));
  }
}

TEST(PrecisionAt1, Examples) {
  EXPECT_DOUBLE_EQ(precision_at_1({item("a", {{1, 0.9}, {0, 0.1}})}), 1.0);
  EXPECT_DOUBLE_EQ(precision_at_1({item("a", {{1, 0.9}, {0, 0.1}}), item("b", {{1, 0.1}, {0, 0.9}})}), 0.5);
  EXPECT_DOUBLE_EQ(precision_at_1({}), 0.0);
}

TEST(PrecisionAt1, MatchesOracle) {
  testing::Gen gen(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto set = testing::random_qaset(gen);
    EXPECT_DOUBLE_EQ(precision_at_1(set), testing::oracle_report(set).p_at_1);
  }
}

TEST(Evaluate, HandChecked) {
  const auto r = evaluate({item("q", {{0, 0.9}, {1, 0.7}, {0, 0.5}, {1, 0.3}})});
  EXPECT_DOUBLE_EQ(r.p_at_1, 0.0);
  EXPECT_DOUBLE_EQ(r.map, 0.5);
  EXPECT_DOUBLE_EQ(r.mrr, 0.5);
  EXPECT_EQ(r.question_count, 1u);
}

TEST(Evaluate, PerfectRanking) {
  const auto r = evaluate({item("a", {{1, 3}, {1, 2}, {0, 1}}), item("b", {{0, 0.1}, {1, 0.2}})});
  EXPECT_EQ(r.p_at_1, 1.0);
  EXPECT_EQ(r.map, 1.0);
  EXPECT_EQ(r.mrr, 1.0);
}

TEST(Evaluate, MatchesOracle) {
  testing::Gen gen(4);
  for (bool grid : {true, false}) {
    for (int trial = 0; trial < 2000; ++trial) {
      const auto set = testing::random_qaset(gen, {6, 8, grid});
      const auto got = evaluate(set);
      const auto want = testing::oracle_report(set);
      EXPECT_NEAR(got.p_at_1, want.p_at_1, 1e-12);
      EXPECT_NEAR(got.map, want.map, 1e-12);
      EXPECT_NEAR(got.mrr, want.mrr, 1e-12);
    }
  }
}

TEST(Evaluate, ErrorsNameTheQuestion) {
  try {
    evaluate({item("fine", {{1, 1}, {0, 0}}), item("bad", {{0, 1}, {0, 0}})});
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.question_id(), "bad");
    EXPECT_NE(std::string(e.what()).find("clean_filter"), std::string::npos);
  }
  QAItem unlabeled = item("u", {{1, 1}});
  unlabeled.candidates[0].label.reset();
  EXPECT_THROW(evaluate({unlabeled}), EvalError);
  EXPECT_EQ(evaluate({}).question_count, 0u);
}

TEST(ScoreTransforms, MonotoneMapsChangeNothing) {
  testing::Gen gen(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto set = testing::random_qaset(gen);
    auto affine = set;
    auto cubed = set;
    for (auto& q : affine) {
      for (auto& c : q.candidates) c.score = 2 * *c.score + 1;
    }
    for (auto& q : cubed) {
      for (auto& c : q.candidates) c.score = *c.score * *c.score * *c.score;
    }
    EXPECT_EQ(evaluate(affine), evaluate(set));
    EXPECT_EQ(evaluate(cubed), evaluate(set));
    for (std::size_t i = 0; i < set.size(); ++i) {
      EXPECT_EQ(select_best(affine[i].candidates), select_best(set[i].candidates));
      EXPECT_EQ(select_best(cubed[i].candidates), select_best(set[i].candidates));
    }
  }
}

TEST(CleanFilter, RemovesAllPositiveAndAllNegative) {
  const QASet set = {item("all+", {{1, 0}, {1, 0}}), item("all-", {{0, 0}, {0, 0}, {0, 0}}),
                     item("mixed", {{1, 0}, {0, 0}})};
  const auto kept = clean_filter(set);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].question.id, "mixed");
  EXPECT_TRUE(clean_filter({}).empty());
}

TEST(CleanFilter, Fixture) {
  const auto set = read_qa_tsv(testing::fixture_path("clean_filter.tsv").string());
  std::vector<std::string> ids;
  for (const auto& q : clean_filter(set)) ids.push_back(q.question.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"mixed-a", "mixed-b", "mixed-c"}));
}

TEST(DatasetStats, Counts) {
  const QASet set = {item("a", {{1, 0}, {0, 0}, {0, 0}}), item("b", {{1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}})};
  EXPECT_EQ(dataset_stats(set), (DatasetStats{2, 8, 4.0}));
  EXPECT_EQ(dataset_stats({}), (DatasetStats{0, 0, 0.0}));
}

TEST(Report, Json) {
  EXPECT_EQ(to_json(RankingReport{1.0, 0.5, 0.25, 3}), R"({"question_count":3,"p_at_1":1.0,"map":0.5,"mrr":0.25})");
}

}  // namespace
}  // namespace sentpair::eval
