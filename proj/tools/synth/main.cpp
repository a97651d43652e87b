// Writes a synthetic raw corpus as JSONL records {id, source, text}.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sentpair/synthetic.hpp"

int main(int argc, char** argv) {
  sentpair::synthetic::CorpusShape shape;
  std::uint64_t seed = 0;
  std::string output = "-";

  CLI::App app{"Generate a synthetic raw corpus for tests and benchmarks"};
  app.add_option("--documents", shape.documents, "Number of documents")->capture_default_str();
  app.add_option("--min-paragraphs", shape.min_paragraphs)->capture_default_str();
  app.add_option("--max-paragraphs", shape.max_paragraphs)->capture_default_str();
  app.add_option("--min-sentences", shape.min_sentences, "Sentences per paragraph, lower bound")->capture_default_str();
  app.add_option("--max-sentences", shape.max_sentences)->capture_default_str();
  app.add_option("--min-words", shape.min_words, "Words per sentence, lower bound")->capture_default_str();
  app.add_option("--max-words", shape.max_words)->capture_default_str();
  app.add_option("--source", shape.source)->capture_default_str();
  app.add_option("--id-prefix", shape.id_prefix)->capture_default_str();
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--output", output, "Output path, - for stdout")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  if (shape.min_paragraphs > shape.max_paragraphs || shape.min_sentences > shape.max_sentences ||
      shape.min_words > shape.max_words || shape.min_paragraphs == 0 || shape.min_sentences == 0 ||
      shape.min_words == 0) {
    std::cerr << "sentpair-synth: each min must be positive and no larger than its max\n";
    return 4;
  }

  std::ofstream file;
  if (output != "-") {
    file.open(output, std::ios::binary | std::ios::trunc);
    if (!file) {
      std::cerr << "sentpair-synth: cannot open " << output << "\n";
      return 5;
    }
  }
  std::ostream& out = output == "-" ? std::cout : file;
  for (const auto& doc : sentpair::synthetic::make_documents(shape, seed)) {
    const auto raw = sentpair::synthetic::to_raw(doc);
    nlohmann::ordered_json j{{"id", raw.id}, {"source", raw.source}, {"text", raw.text}};
    out << j.dump() << "\n";
  }
  out.flush();
  if (!out) {
    std::cerr << "sentpair-synth: write failed\n";
    return 5;
  }
  return 0;
}
