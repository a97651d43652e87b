#include <fstream>
#include <sstream>
#include <unordered_set>

#include "embedded_data.hpp"
#include "sentpair/eval.hpp"
#include "sentpair/text.hpp"

namespace sentpair::eval {
namespace {

bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && ((u >= 0x21 && u <= 0x2F) || (u >= 0x3A && u <= 0x40) || (u >= 0x5B && u <= 0x60) ||
                      (u >= 0x7B && u <= 0x7E));
}

}  // namespace

std::vector<std::string> normalize_words(std::string_view input) {
  std::vector<std::string> words;
  for (std::string_view token : text::split_tokens(input)) {
    std::string w;
    w.reserve(token.size());
    for (char c : token) {
      if (is_ascii_punct(c)) continue;
      w.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
    }
    if (!w.empty()) words.push_back(std::move(w));
  }
  return words;
}

StopwordSet StopwordSet::parse(std::string_view data) {
  StopwordSet set;
  std::string_view rest = data;
  while (!rest.empty()) {
    const std::size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest.remove_prefix(nl == std::string_view::npos ? rest.size() : nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    for (auto& w : normalize_words(line)) set.words_.insert(std::move(w));
  }
  return set;
}

StopwordSet StopwordSet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "cannot open stopword list");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  if (auto bad = text::find_invalid_utf8(data)) {
    throw InputError(path, 0, "invalid UTF-8 at byte offset " + std::to_string(*bad));
  }
  return parse(data);
}

const StopwordSet& StopwordSet::english() {
  static const StopwordSet set = parse(detail::stopwords_data());
  return set;
}

std::vector<Candidate> extract_candidates(const Question& question, std::span<const corpus::Sentence> sentences,
                                          const StopwordSet& stopwords) {
  std::unordered_set<std::string> content;
  for (auto& w : normalize_words(question.text)) {
    if (!stopwords.contains(w)) content.insert(std::move(w));
  }
  std::vector<Candidate> out;
  if (content.empty()) return out;
  for (const auto& s : sentences) {
    for (const auto& w : normalize_words(s.text)) {
      if (content.count(w) > 0) {
        out.push_back(Candidate{s.text, std::nullopt, std::nullopt});
        break;
      }
    }
  }
  return out;
}

}  // namespace sentpair::eval
