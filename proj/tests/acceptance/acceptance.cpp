// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sentpair/cli.hpp"
#include "sentpair/corpus_io.hpp"
#include "sentpair/eval.hpp"
#include "sentpair/sampler.hpp"
#include "sentpair/shardio.hpp"
#include "support/invariants.hpp"
#include "support/oracles.hpp"
#include "support/random_data.hpp"
#include "support/temp_dir.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sentpair;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

Outcome metric_oracle() {
  const auto start = Clock::now();
  testing::Gen gen(20240601);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto set = testing::random_qaset(gen, {6, 8, i % 2 == 0});
    const auto got = eval::evaluate(set);
    const auto want = testing::oracle_report(set);
    worst = std::max({worst, std::abs(got.p_at_1 - want.p_at_1), std::abs(got.map - want.map),
                      std::abs(got.mrr - want.mrr)});
  }
  const double t = seconds_since(start);
  return {worst <= 1e-12 && t < 10.0, "10000 QASets, max |diff| " + fmt("%.3g", worst) + ", " + fmt("%.2f", t) + " s"};
}

eval::QAItem ranked(const std::string& id, const std::vector<int>& labels) {
  eval::QAItem q{{id, id}, {}};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    q.candidates.push_back({"c", labels[i] == 1, static_cast<double>(labels.size() - i)});
  }
  return q;
}

Outcome hand_checked() {
  const auto r = eval::evaluate({ranked("q", {0, 1, 0, 1})});
  const auto p = eval::evaluate({ranked("a", {1, 1, 0}), ranked("b", {1, 0, 0, 0})});
  const bool ok = r.p_at_1 == 0.0 && r.map == 0.5 && r.mrr == 0.5 && p.p_at_1 == 1.0 && p.map == 1.0 && p.mrr == 1.0;
  return {ok, "[0,1,0,1] -> P@1 " + fmt("%g", r.p_at_1) + " AP " + fmt("%g", r.map) + " RR " + fmt("%g", r.mrr) +
                  "; perfect -> (" + fmt("%g", p.p_at_1) + ", " + fmt("%g", p.map) + ", " + fmt("%g", p.mrr) + ")"};
}

Outcome sampling_invariants() {
  const auto start = Clock::now();
  const auto docs = testing::fixture_corpus();
  sampler::SamplingConfig cfg;
  cfg.global_seed = 42;
  Rng pool_rng(sampler::pool_seed(cfg.global_seed));
  const auto pool = sampler::build_negative_pool(docs, 100000, pool_rng);
  testing::InvariantReport report;
  std::size_t examples = 0;
  for (const auto objective : sampler::kAllObjectives) {
    const auto ex = sampler::generate_examples(objective, docs, pool, cfg, 1);
    examples += ex.size();
    testing::check_invariants(ex, docs, pool, cfg, report);
  }
  const double t = seconds_since(start);
  const bool shape = docs.size() == 100;
  std::string summary = report.summary();
  while (!summary.empty() && summary.back() == '\n') summary.pop_back();
  for (std::size_t pos; (pos = summary.find('\n')) != std::string::npos;) summary.replace(pos, 1, "; ");
  return {shape && report.ok() && t < 30.0,
          std::to_string(examples) + " examples, " + summary + "; " +
              fmt("%.2f", t) + " s"};
}

int run_cli(const std::vector<std::string>& args, std::string& err_text) {
  std::vector<std::string> full = {"sentpair"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = cli::run(full, out, err);
  err_text = err.str();
  return code;
}

Outcome determinism() {
  testing::TempDir dir;
  const std::string corpus = testing::fixture_path("synthetic_100x4x6.jsonl").string();
  std::string err;
  for (const char* workers : {"1", "8"}) {
    const int code = run_cli({"generate", "--input", corpus, "--output", (dir / workers).string(), "--objective", "all",
                              "--seed", "42", "--workers", workers, "--shard-size", "500"},
                             err);
    if (code != 0) return {false, "generate with " + std::string(workers) + " workers exited " + std::to_string(code) + ": " + err};
  }
  std::size_t files = 0;
  std::string detail;
  bool ok = true;
  for (const char* sub : {"ssp", "sp", "psd"}) {
    const auto m1 = testing::read_bytes(dir / "1" / sub / "manifest.json");
    const auto m8 = testing::read_bytes(dir / "8" / sub / "manifest.json");
    ok = ok && m1 == m8;
    ++files;
    const auto manifest = shardio::manifest_from_json(m1);
    for (const auto& shard : manifest.shards) {
      ok = ok && testing::read_bytes(dir / "1" / sub / shard.file) == testing::read_bytes(dir / "8" / sub / shard.file);
      ++files;
    }
    detail += std::string(sub) + " manifest " + shardio::sha256_hex(m1).substr(0, 12) + " (" +
              std::to_string(manifest.shards.size()) + " shards); ";
  }
  return {ok, detail + std::to_string(files) + " files compared"};
}

Outcome cleaning_thresholds() {
  std::size_t dropped = 0;
  const auto docs = corpus::load_documents({testing::fixture_path("thresholds.jsonl")}, corpus::LoadOptions{}, &dropped);
  std::map<std::string, std::vector<std::size_t>> lengths;
  for (const auto& d : docs) {
    for (const auto& p : d.paragraphs) lengths[d.id].push_back(p.char_count());
  }
  const std::map<std::string, std::vector<std::size_t>> expected = {
      {"paragraph-59-and-60", {60, 150}},
      {"document-200", {60, 140}},
      {"document-200-after-drop", {60, 140}},
  };
  const bool ok = lengths == expected && dropped == 3;
  return {ok, "59-char paragraph dropped, 60 kept; 199-char documents dropped, 200 kept; " + std::to_string(docs.size()) +
                  " kept, " + std::to_string(dropped) + " dropped"};
}

Outcome clean_filter() {
  const auto set = eval::read_qa_tsv(testing::fixture_path("clean_filter.tsv").string());
  std::vector<std::string> ids;
  for (const auto& q : eval::clean_filter(set)) ids.push_back(q.question.id);
  Outcome out;
  out.pass = ids == std::vector<std::string>{"mixed-a", "mixed-b", "mixed-c"};
  out.detail = "fixture keeps " + std::to_string(ids.size()) + " of " + std::to_string(set.size()) + " questions";

  const char* dir = std::getenv("SENTPAIR_WIKIQA_DIR");
  if (dir == nullptr || *dir == '\0') {
    out.detail += "; WikiQA check skipped (SENTPAIR_WIKIQA_DIR not set)";
    return out;
  }
  struct Split {
    const char* name;
    bool clean;
    std::size_t questions;
    double average;
  };
  for (const Split s : {Split{"train", false, 2118, 9.6}, Split{"dev", true, 122, 9.2}, Split{"test", true, 237, 9.9}}) {
    const fs::path path = fs::path(dir) / ("WikiQA-" + std::string(s.name) + ".tsv");
    if (!fs::exists(path)) {
      out.pass = false;
      out.detail += "; missing " + path.string();
      continue;
    }
    auto qa = eval::read_qa_tsv(path.string());
    if (s.clean) qa = eval::clean_filter(qa);
    const auto stats = eval::dataset_stats(qa);
    const bool ok = stats.question_count == s.questions && std::abs(stats.avg_candidates_per_question - s.average) < 0.05;
    out.pass = out.pass && ok;
    out.detail += "; " + std::string(s.name) + " " + std::to_string(stats.question_count) + " q, " +
                  fmt("%.1f", stats.avg_candidates_per_question) + " c/q";
  }
  return out;
}

Outcome score_scaling() {
  testing::Gen gen(77);
  std::size_t questions = 0;
  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    const auto set = testing::random_qaset(gen);
    auto affine = set;
    auto cubed = set;
    for (auto& q : affine) {
      for (auto& c : q.candidates) c.score = 2 * *c.score + 1;
    }
    for (auto& q : cubed) {
      for (auto& c : q.candidates) c.score = *c.score * *c.score * *c.score;
    }
    ok = ok && eval::evaluate(affine) == eval::evaluate(set) && eval::evaluate(cubed) == eval::evaluate(set);
    for (std::size_t k = 0; k < set.size(); ++k, ++questions) {
      const auto best = eval::select_best(set[k].candidates);
      ok = ok && eval::select_best(affine[k].candidates) == best && eval::select_best(cubed[k].candidates) == best;
    }
  }
  return {ok, "1000 QASets, " + std::to_string(questions) + " questions, reports and argmax unchanged"};
}

Outcome shard_round_trip() {
  testing::Gen gen(99);
  std::vector<sampler::PairExample> examples;
  for (int i = 0; i < 10000; ++i) examples.push_back(testing::random_example(gen));
  std::sort(examples.begin(), examples.end());
  testing::TempDir dir;
  shardio::WriteOptions options;
  options.shard_size = 999;
  options.compress = true;
  const auto manifest = shardio::write_shards(examples, options, dir.path(), {}, sampler::SamplingConfig{});
  std::vector<sampler::PairExample> back;
  for (auto& r : shardio::read_dataset(dir / std::string(shardio::kManifestName))) back.push_back(std::move(r.example));
  std::sort(back.begin(), back.end());
  return {back == examples && manifest.total_examples == 10000,
          std::to_string(back.size()) + " records over " + std::to_string(manifest.shards.size()) + " shards"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"metric-oracle-equivalence", metric_oracle},
      {"hand-checked-map-mrr", hand_checked},
      {"sampling-invariants", sampling_invariants},
      {"determinism-1-vs-8-workers", determinism},
      {"cleaning-thresholds", cleaning_thresholds},
      {"clean-filter", clean_filter},
      {"score-scaling-invariance", score_scaling},
      {"shard-round-trip", shard_round_trip},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
