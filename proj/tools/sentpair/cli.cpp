#include "sentpair/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <type_traits>

#include <CLI11.hpp>
#include <json.hpp>

#include "sentpair/corpus.hpp"
#include "sentpair/corpus_io.hpp"
#include "sentpair/error.hpp"
#include "sentpair/eval.hpp"
#include "sentpair/sampler.hpp"
#include "sentpair/shardio.hpp"
#include "sentpair/text.hpp"

namespace sentpair::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

// Config files are flat "key = value" lists whose keys are the long flag
// names of the chosen subcommand. CLI11 reads config at the top level, so
// unsectioned keys are rerouted to the active subcommand here.
class SubcommandConfig : public CLI::ConfigINI {
 public:
  explicit SubcommandConfig(const CLI::App* app) : app_(app) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    const auto subs = app_->get_subcommands();
    if (subs.empty()) return items;
    for (auto& item : items) {
      if (item.parents.empty()) item.parents.push_back(subs.front()->get_name());
    }
    return items;
  }

 private:
  const CLI::App* app_;
};

// Thrown for bad combinations of otherwise well-formed flags.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Resolved value of every flag of one subcommand, rendered as a config
// file that reproduces the run when passed back through --config.
class Snapshot {
 public:
  template <class T>
  CLI::Option* option(CLI::App* sub, const std::string& names, T& var, const std::string& desc) {
    bind(names, var);
    return sub->add_option(names, var, desc);
  }

  CLI::Option* flag(CLI::App* sub, const std::string& names, bool& var, const std::string& desc) {
    bind(names, var);
    return sub->add_flag(names, var, desc);
  }

  std::string str() const {
    std::string out;
    for (const auto& [key, value] : items_) out += key + " = " + value() + "\n";
    return out;
  }

 private:
  template <class T>
  void bind(const std::string& names, const T& var) {
    std::string key = names.substr(0, names.find(','));
    key.erase(0, key.find_first_not_of('-'));
    items_.emplace_back(std::move(key), [&var] { return render(var); });
  }

  static std::string render(bool v) { return v ? "true" : "false"; }
  static std::string render(const std::string& v) { return json(v).dump(); }
  static std::string render(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }
  template <class T>
    requires std::is_integral_v<T>
  static std::string render(T v) {
    return std::to_string(v);
  }
  static std::string render(const std::vector<std::string>& v) { return json(v).dump(); }

  std::vector<std::pair<std::string, std::function<std::string()>>> items_;
};

struct CleaningFlags {
  corpus::CleaningConfig cfg;
  std::vector<std::string> inputs;
  bool plain = false;
  std::string plain_source = "plain";

  void add_to(CLI::App* sub, Snapshot& snap, bool inputs_required = true) {
    auto* in = snap.option(sub, "--input", inputs, "Input files: JSONL records (raw or cleaned), or plain text with --plain");
    if (inputs_required) in->required();
    snap.flag(sub, "--plain", plain, "Treat each input file as one plain-text document named after the file");
    snap.option(sub, "--source", plain_source, "Source name for plain-text documents")->capture_default_str();
    snap.option(sub, "--min-paragraph-chars", cfg.min_paragraph_chars, "Drop paragraphs shorter than this")
        ->capture_default_str();
    snap.option(sub, "--min-document-chars", cfg.min_document_chars, "Drop documents shorter than this")
        ->capture_default_str();
    snap.flag(sub, "--strip-markup,!--no-strip-markup", cfg.strip_markup,
                "Remove HTML, header lines and table lines (on by default)");
    snap.flag(sub, "--drop-header-lines,!--keep-header-lines", cfg.drop_header_lines,
                "Drop short all-caps lines and wiki/markdown headings (on by default)");
    snap.option(sub, "--header-max-chars", cfg.header_max_chars, "All-caps lines shorter than this count as headers")
        ->capture_default_str();
    snap.flag(sub, "--drop-table-lines,!--keep-table-lines", cfg.drop_table_lines,
                "Drop lines with three or more tab/pipe separators (on by default)");
  }

  corpus::LoadOptions load_options() const { return corpus::LoadOptions{plain, plain_source, cfg}; }

  std::vector<fs::path> paths() const { return {inputs.begin(), inputs.end()}; }
};

json cleaning_json(const corpus::CleaningConfig& c) {
  json j;
  j["min_paragraph_chars"] = c.min_paragraph_chars;
  j["min_document_chars"] = c.min_document_chars;
  j["strip_markup"] = c.strip_markup;
  j["drop_header_lines"] = c.drop_header_lines;
  j["header_max_chars"] = c.header_max_chars;
  j["drop_table_lines"] = c.drop_table_lines;
  return j;
}

json counts_json(const corpus::SourceCounts& c) {
  json j;
  j["documents"] = c.documents;
  j["paragraphs"] = c.paragraphs;
  j["sentences"] = c.sentences;
  j["chars"] = c.chars;
  return j;
}

json stats_json(const corpus::CorpusStats& stats) {
  json j = counts_json(stats.total);
  json by_source = json::object();
  for (const auto& [source, counts] : stats.by_source) by_source[source] = counts_json(counts);
  j["by_source"] = std::move(by_source);
  return j;
}

json manifest_counts_json(const shardio::ShardManifest& m) {
  json counts = json::object();
  for (const auto& [objective, c] : m.counts) {
    json entry;
    entry["positive"] = c.positive;
    entry["hard"] = c.hard;
    entry["easy"] = c.easy;
    counts[std::string(sampler::to_string(objective))] = std::move(entry);
  }
  return counts;
}

void write_text_atomically(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignore;
      fs::remove(tmp, ignore);
      throw OutputError("write failed for " + path.string());
    }
  }
  fs::rename(tmp, path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Everything needed to rerun a command: the argument vector and a config
// file equivalent to the resolved flags.
struct RunLog {
  json body;

  RunLog(const std::vector<std::string>& args, const CLI::App& sub, const Snapshot& snap) {
    body["tool"] = "sentpair";
    body["version"] = kVersion;
    body["subcommand"] = sub.get_name();
    body["argv"] = args;
    body["config"] = snap.str();
  }

  void write(const std::string& path) const {
    if (!path.empty()) write_text_atomically(path, body.dump(2) + "\n");
  }
};

std::string fmt_metric(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// --- subcommands ----------------------------------------------------------

struct CleanCommand {
  CleaningFlags cleaning;
  std::string output;
  std::string run_log;

  void add_to(CLI::App* sub, Snapshot& snap) {
    cleaning.add_to(sub, snap);
    snap.option(sub, "--output", output, "Cleaned documents as JSONL")->required();
    snap.option(sub, "--run-log", run_log, "Run log path (default: <output>.run.json)");
  }

  int run(RunLog log, std::ostream& out) {
    std::size_t dropped = 0;
    const auto docs = corpus::load_documents(cleaning.paths(), cleaning.load_options(), &dropped);
    std::ostringstream buf;
    corpus::write_documents(buf, docs);
    write_text_atomically(output, buf.str());

    json stats = stats_json(corpus::corpus_stats(docs));
    stats["dropped_documents"] = dropped;
    out << stats.dump() << "\n";

    log.body["cleaning_config"] = cleaning_json(cleaning.cfg);
    log.body["inputs"] = cleaning.inputs;
    log.body["output"] = output;
    log.body["stats"] = stats;
    log.write(run_log.empty() ? output + ".run.json" : run_log);
    return kOk;
  }
};

struct GenerateCommand {
  CleaningFlags cleaning;
  sampler::SamplingConfig cfg;
  shardio::LossWeightsMeta weights;
  shardio::WriteOptions write;
  std::string ssp_a = "1:3";
  std::string ssp_b = "1:5";
  std::string sp_a = "1:3";
  std::string hard_source = "other_paragraphs";
  std::string objective = "all";
  std::string output;
  std::string run_log;
  std::size_t workers = 1;
  std::size_t pool_capacity = 100000;

  void add_to(CLI::App* sub, Snapshot& snap) {
    cleaning.add_to(sub, snap);
    snap.option(sub, "--output", output, "Output directory")->required();
    snap.option(sub, "--objective", objective, "ssp, sp, psd, or all (each objective in its own subdirectory)")
        ->check(CLI::IsMember({"ssp", "sp", "psd", "all"}, CLI::ignore_case))
        ->capture_default_str();
    snap.option(sub, "--seed", cfg.global_seed, "Global seed")->capture_default_str();
    snap.option(sub, "--workers", workers, "Worker threads; output does not depend on this")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1024}))
        ->capture_default_str();
    snap.option(sub, "--shard-size", write.shard_size, "Records per shard")->capture_default_str();
    snap.option(sub, "--shard-prefix", write.prefix, "Shard file name prefix")->capture_default_str();
    snap.flag(sub, "--compress", write.compress, "Write gzip-compressed shards (.jsonl.gz)");
    snap.option(sub, "--pool-capacity", pool_capacity, "Paragraphs kept for easy negatives")->capture_default_str();
    snap.option(sub, "--ssp-a-sentences", ssp_a, "SSP sentences in A, lo:hi")->capture_default_str();
    snap.option(sub, "--ssp-b-sentences", ssp_b, "SSP sentences in B, lo:hi")->capture_default_str();
    snap.option(sub, "--sp-a-sentences", sp_a, "SP sentences in A (and in removed spans), lo:hi")
        ->capture_default_str();
    snap.option(sub, "--max-hard-negatives", cfg.max_hard_negatives, "Hard negatives per positive, at most")
        ->capture_default_str();
    snap.option(sub, "--total-negatives", cfg.total_negatives, "Negatives per positive")->capture_default_str();
    snap.option(sub, "--positives-per-unit", cfg.positives_per_unit,
                    "Positives per paragraph (SSP, SP) or per document (PSD)")
        ->capture_default_str();
    snap.option(sub, "--token-budget-ssp", cfg.token_budget_ssp, "Whitespace tokens per SSP pair")
        ->capture_default_str();
    snap.option(sub, "--token-budget-sp-psd", cfg.token_budget_sp_psd, "Whitespace tokens per SP or PSD pair")
        ->capture_default_str();
    snap.option(sub, "--ssp-hard-negative-source", hard_source, "other_paragraphs or same_paragraph")
        ->check(CLI::IsMember({"other_paragraphs", "same_paragraph"}))
        ->capture_default_str();
    snap.option(sub, "--mlm-weight", weights.mlm_weight, "Recorded MLM loss weight")->capture_default_str();
    snap.option(sub, "--token-detection-weight", weights.token_detection_weight,
                    "Recorded token-detection loss weight")
        ->capture_default_str();
    snap.option(sub, "--objective-weight", weights.objective_weight, "Recorded pair-objective loss weight")
        ->capture_default_str();
    snap.option(sub, "--run-log", run_log, "Run log path (default: <output>/run.json)");
  }

  int run(RunLog log, std::ostream& out) {
    cfg.ssp_a_sentences = sampler::parse_interval(ssp_a);
    cfg.ssp_b_sentences = sampler::parse_interval(ssp_b);
    cfg.sp_a_sentences = sampler::parse_interval(sp_a);
    cfg.ssp_hard_negative_source = sampler::parse_hard_negative_source(hard_source);
    cfg.validate();
    weights.validate();
    if (write.shard_size < 1) throw ConfigError("shard-size must be at least 1");

    std::vector<sampler::Objective> objectives;
    if (text::ascii_lower(objective) == "all") {
      objectives.assign(std::begin(sampler::kAllObjectives), std::end(sampler::kAllObjectives));
    } else {
      objectives.push_back(sampler::parse_objective(objective));
    }

    std::size_t dropped = 0;
    const auto docs = corpus::load_documents(cleaning.paths(), cleaning.load_options(), &dropped);
    Rng pool_rng(sampler::pool_seed(cfg.global_seed));
    const auto pool = sampler::build_negative_pool(docs, pool_capacity, pool_rng);

    const fs::path root(output);
    std::vector<std::pair<fs::path, shardio::ShardManifest>> written;
    json results = json::array();
    try {
      for (const auto objective_kind : objectives) {
        const fs::path dir =
            objectives.size() > 1 ? root / text::ascii_lower(sampler::to_string(objective_kind)) : root;
        auto examples = sampler::generate_examples(objective_kind, docs, pool, cfg, workers);
        auto manifest = shardio::write_shards(std::move(examples), write, dir, weights, cfg);
        json r;
        r["objective"] = std::string(sampler::to_string(objective_kind));
        r["manifest"] = (dir / shardio::kManifestName).string();
        r["examples"] = manifest.total_examples;
        r["shards"] = manifest.shards.size();
        r["manifest_sha256"] = shardio::sha256_hex(shardio::to_json(manifest));
        results.push_back(std::move(r));
        written.emplace_back(dir, std::move(manifest));
      }
    } catch (...) {
      // An "all" run either completes or leaves no manifests behind.
      std::error_code ignore;
      for (const auto& [dir, manifest] : written) {
        fs::remove(dir / shardio::kManifestName, ignore);
        for (const auto& shard : manifest.shards) fs::remove(dir / shard.file, ignore);
      }
      throw;
    }

    for (const auto& r : results) out << r.dump() << "\n";

    log.body["global_seed"] = cfg.global_seed;
    log.body["workers"] = workers;
    log.body["sampling_config"] = json::parse(sampler::to_json(cfg));
    log.body["cleaning_config"] = cleaning_json(cleaning.cfg);
    log.body["pool"] = {{"capacity", pool_capacity}, {"size", pool.size()}, {"paragraphs_seen", pool.seen()}};
    log.body["inputs"] = cleaning.inputs;
    log.body["documents"] = docs.size();
    log.body["dropped_documents"] = dropped;
    log.body["results"] = results;
    log.write(run_log.empty() ? (root / "run.json").string() : run_log);
    return kOk;
  }
};

struct StatsCommand {
  CleaningFlags cleaning;
  std::string dataset;
  std::string manifest;
  bool clean = false;
  bool dump = false;
  std::string run_log;

  void add_to(CLI::App* sub, Snapshot& snap) {
    cleaning.add_to(sub, snap, false);
    snap.option(sub, "--dataset", dataset, "QA dataset (TSV) to summarize");
    snap.flag(sub, "--clean", clean, "Apply the clean filter to --dataset first");
    snap.option(sub, "--manifest", manifest, "Shard manifest to verify and summarize");
    snap.flag(sub, "--dump", dump, "With --manifest, print every record as JSONL in shard order");
    snap.option(sub, "--run-log", run_log, "Run log path");
  }

  int run(RunLog log, std::ostream& out) {
    const int modes = static_cast<int>(!cleaning.inputs.empty()) + static_cast<int>(!dataset.empty()) +
                      static_cast<int>(!manifest.empty());
    if (modes != 1) throw UsageError("stats needs exactly one of --input, --dataset or --manifest");

    json result;
    if (!dataset.empty()) {
      auto qaset = eval::read_qa_tsv(dataset);
      if (clean) qaset = eval::clean_filter(qaset);
      const auto s = eval::dataset_stats(qaset);
      result["questions"] = s.question_count;
      result["candidates"] = s.candidate_count;
      result["avg_candidates_per_question"] = s.avg_candidates_per_question;
      out << result.dump() << "\n";
    } else if (!manifest.empty()) {
      const auto m = shardio::read_manifest(manifest);
      const fs::path dir = fs::path(manifest).parent_path();
      shardio::verify_shards(m, dir);
      if (dump) {
        for (const auto& shard : m.shards) {
          shardio::for_each_record(dir / shard.file, shard, [&](shardio::ShardRecord&& r) {
            out << shardio::encode_record(r) << "\n";
          });
        }
      } else {
        result["total_examples"] = m.total_examples;
        result["shards"] = m.shards.size();
        result["counts"] = manifest_counts_json(m);
        result["loss_weights"] = {{"mlm_weight", m.loss_weights.mlm_weight},
                                  {"token_detection_weight", m.loss_weights.token_detection_weight},
                                  {"objective_weight", m.loss_weights.objective_weight}};
        out << result.dump() << "\n";
      }
    } else {
      std::size_t dropped = 0;
      const auto docs = corpus::load_documents(cleaning.paths(), cleaning.load_options(), &dropped);
      result = stats_json(corpus::corpus_stats(docs));
      result["dropped_documents"] = dropped;
      out << result.dump() << "\n";
    }
    if (!run_log.empty()) {
      log.body["result"] = result;
      log.write(run_log);
    }
    return kOk;
  }
};

struct EvalCommand {
  std::string scored;
  std::string dataset;
  std::string scorer = "tfidf";
  std::string output;
  std::string write_scored;
  bool no_clean = false;
  std::string run_log;

  void add_to(CLI::App* sub, Snapshot& snap) {
    auto* s = snap.option(sub, "--scored", scored, "TSV with a score column");
    auto* d = snap.option(sub, "--dataset", dataset, "Unscored TSV, scored with --scorer");
    s->excludes(d);
    snap.option(sub, "--scorer", scorer, "Baseline scorer for --dataset")
        ->check(CLI::IsMember({"tfidf"}))
        ->capture_default_str();
    snap.option(sub, "--write-scored", write_scored, "Write the scored TSV produced from --dataset");
    snap.flag(sub, "--no-clean", no_clean, "Do not drop all-positive / all-negative questions");
    snap.option(sub, "--output", output, "Write the report as JSON");
    snap.option(sub, "--run-log", run_log, "Run log path (default: <output>.run.json when --output is set)");
  }

  int run(RunLog log, std::ostream& out) {
    if (scored.empty() == dataset.empty()) throw UsageError("eval needs exactly one of --scored or --dataset");
    eval::QASet qaset = eval::read_qa_tsv(scored.empty() ? dataset : scored);
    const std::size_t before = qaset.size();
    if (!no_clean) qaset = eval::clean_filter(qaset);
    if (!dataset.empty()) {
      const auto df = eval::build_document_frequency(qaset);
      eval::tfidf_score(qaset, df);
      if (!write_scored.empty()) write_text_atomically(write_scored, eval::format_qa_tsv(qaset, true));
    }
    const auto report = eval::evaluate(qaset);
    out << "P@1=" << fmt_metric(report.p_at_1) << " MAP=" << fmt_metric(report.map)
        << " MRR=" << fmt_metric(report.mrr) << " questions=" << report.question_count;
    if (before != qaset.size()) out << " removed=" << (before - qaset.size());
    out << "\n";
    if (!output.empty()) write_text_atomically(output, eval::to_json(report) + "\n");
    const std::string log_path = !run_log.empty() ? run_log : output.empty() ? "" : output + ".run.json";
    if (!log_path.empty()) {
      log.body["report"] = json::parse(eval::to_json(report));
      log.write(log_path);
    }
    return kOk;
  }
};

struct ExtractCommand {
  std::string questions;
  std::string sentences;
  CleaningFlags documents;
  std::string stopwords;
  std::string output;
  std::string run_log;

  void add_to(CLI::App* sub, Snapshot& snap) {
    snap.option(sub, "--questions", questions, "TSV of question_id and question_text")
        ->required()
        ;
    snap.option(sub, "--sentences", sentences, "Candidate pool, one sentence per line");
    documents.add_to(sub, snap, false);
    snap.option(sub, "--stopwords", stopwords, "Stopword list, one word per line (default: built-in English)")
        ;
    snap.option(sub, "--output", output, "Candidate TSV (default: stdout)");
    snap.option(sub, "--run-log", run_log, "Run log path (default: <output>.run.json)");
  }

  int run(RunLog log, std::ostream& out) {
    if (sentences.empty() == documents.inputs.empty()) {
      throw UsageError("extract-candidates needs exactly one of --sentences or --input");
    }
    std::vector<corpus::Sentence> pool;
    if (!sentences.empty()) {
      const std::string data = read_file(sentences);
      text::require_utf8(data, sentences);
      std::istringstream in(data);
      std::string line;
      while (std::getline(in, line)) {
        std::string s = text::normalize_whitespace(line);
        if (!s.empty()) pool.push_back({std::move(s)});
      }
    } else {
      for (const auto& doc : corpus::load_documents(documents.paths(), documents.load_options())) {
        for (const auto& p : doc.paragraphs) pool.insert(pool.end(), p.sentences.begin(), p.sentences.end());
      }
    }

    const eval::StopwordSet stop = stopwords.empty() ? eval::StopwordSet::english() : eval::StopwordSet::load(stopwords);
    const std::string qdata = read_file(questions);
    text::require_utf8(qdata, questions);
    eval::QASet result;
    std::istringstream qin(qdata);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(qin, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::normalize_whitespace(line).empty()) continue;
      const std::size_t tab = line.find('\t');
      if (tab == std::string::npos) throw InputError(questions, line_no, "expected question_id<TAB>question_text");
      eval::Question q{line.substr(0, tab), line.substr(tab + 1)};
      if (const std::size_t extra = q.text.find('\t'); extra != std::string::npos) q.text.resize(extra);
      if (line_no == 1 && q.id == "question_id") continue;
      auto candidates = eval::extract_candidates(q, pool, stop);
      result.push_back(eval::QAItem{std::move(q), std::move(candidates)});
    }

    const std::string tsv = eval::format_qa_tsv(result, false);
    if (output.empty() || output == "-") {
      out << tsv;
    } else {
      write_text_atomically(output, tsv);
      const auto s = eval::dataset_stats(result);
      json summary;
      summary["questions"] = s.question_count;
      summary["candidates"] = s.candidate_count;
      out << summary.dump() << "\n";
      log.body["output"] = output;
      log.write(run_log.empty() ? output + ".run.json" : run_log);
    }
    return kOk;
  }
};

const char* kFooter =
    "Exit codes: 0 success, 1 internal error, 2 usage error, 3 unreadable or invalid input,\n"
    "4 invalid configuration, 5 output could not be written.\n"
    "Every subcommand accepts --config FILE with 'key = value' lines using the long flag names;\n"
    "flags given on the command line override the file.";

int report(std::ostream& err, int code, const std::string& what) {
  err << "sentpair: " << what << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sentence-pair pre-training data generation and answer sentence selection evaluation"};
  app.name(args.empty() ? "sentpair" : fs::path(args[0]).filename().string());
  app.fallthrough();
  app.require_subcommand(1);
  app.footer(kFooter);
  app.set_config("--config", "", "Read flags from a key = value file");
  app.config_formatter(std::make_shared<SubcommandConfig>(&app));
  app.set_version_flag("--version", kVersion);

  std::map<const CLI::App*, Snapshot> snaps;
  CleanCommand clean;
  GenerateCommand generate;
  StatsCommand stats;
  EvalCommand evaluate;
  ExtractCommand extract;
  auto* clean_cmd = app.add_subcommand("clean", "Clean raw documents and print corpus statistics");
  auto* generate_cmd = app.add_subcommand("generate", "Sample SSP/SP/PSD pairs and write shards with a manifest");
  auto* stats_cmd = app.add_subcommand("stats", "Statistics for a corpus, a QA dataset, or a shard manifest");
  auto* eval_cmd = app.add_subcommand("eval", "P@1, MAP and MRR for a scored QA dataset");
  auto* extract_cmd = app.add_subcommand("extract-candidates", "Select candidate sentences sharing a non-stopword with each question");
  clean.add_to(clean_cmd, snaps[clean_cmd]);
  generate.add_to(generate_cmd, snaps[generate_cmd]);
  stats.add_to(stats_cmd, snaps[stats_cmd]);
  evaluate.add_to(eval_cmd, snaps[eval_cmd]);
  extract.add_to(extract_cmd, snaps[extract_cmd]);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("sentpair");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    auto* sub = app.get_subcommands().front();
    RunLog log(args, *sub, snaps[sub]);
    if (sub == clean_cmd) return clean.run(std::move(log), out);
    if (sub == generate_cmd) return generate.run(std::move(log), out);
    if (sub == stats_cmd) return stats.run(std::move(log), out);
    if (sub == eval_cmd) return evaluate.run(std::move(log), out);
    if (sub == extract_cmd) return extract.run(std::move(log), out);
    return report(err, kUsageError, "unknown subcommand");
  } catch (const UsageError& e) {
    return report(err, kUsageError, e.what());
  } catch (const ConfigError& e) {
    return report(err, kConfigError, e.what());
  } catch (const OutputError& e) {
    return report(err, kOutputError, e.what());
  } catch (const fs::filesystem_error& e) {
    return report(err, kOutputError, e.what());
  } catch (const InputError& e) {
    return report(err, kInputError, e.what());
  } catch (const EncodingError& e) {
    return report(err, kInputError, e.what());
  } catch (const shardio::ShardError& e) {
    return report(err, kInputError, e.what());
  } catch (const eval::EvalError& e) {
    return report(err, kInputError, e.what());
  } catch (const std::exception& e) {
    return report(err, kInternalError, e.what());
  }
}

int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace sentpair::cli
