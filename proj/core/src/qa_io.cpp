#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "sentpair/eval.hpp"
#include "sentpair/text.hpp"

namespace sentpair::eval {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const std::size_t tab = line.find('\t');
    fields.push_back(line.substr(0, tab));
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  return fields;
}

std::optional<bool> parse_label(std::string_view s, const std::string& origin, std::size_t line) {
  const std::string v = text::normalize_whitespace(s);
  if (v.empty()) return std::nullopt;
  if (v == "1") return true;
  if (v == "0") return false;
  throw InputError(origin, line, "label must be 0, 1 or empty, got '" + v + "'");
}

double parse_score(std::string_view s, const std::string& origin, std::size_t line) {
  const std::string v = text::normalize_whitespace(s);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw InputError(origin, line, "invalid score '" + v + "'");
  }
  return out;
}

std::string clean_field(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace

QASet parse_qa_tsv(std::string_view data, const std::string& origin) {
  QASet qaset;
  std::unordered_map<std::string, std::size_t> position;
  enum class Layout { unknown, native, wikiqa } layout = Layout::unknown;

  std::size_t line_no = 0;
  std::string_view rest = data;
  while (!rest.empty()) {
    const std::size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest.remove_prefix(nl == std::string_view::npos ? rest.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::normalize_whitespace(line).empty()) continue;
    if (auto bad = text::find_invalid_utf8(line)) {
      throw InputError(origin, line_no, "invalid UTF-8 at byte offset " + std::to_string(*bad));
    }
    const auto fields = split_tabs(line);
    if (layout == Layout::unknown) {
      if (fields[0] == "QuestionID") {
        layout = Layout::wikiqa;
        continue;
      }
      layout = Layout::native;
      if (fields[0] == "question_id") continue;
    }

    Question q;
    Candidate c;
    if (layout == Layout::wikiqa) {
      if (fields.size() != 7) throw InputError(origin, line_no, "expected 7 WikiQA columns");
      q = Question{std::string(fields[0]), std::string(fields[1])};
      c.text = std::string(fields[5]);
      c.label = parse_label(fields[6], origin, line_no);
    } else {
      if (fields.size() != 4 && fields.size() != 5) {
        throw InputError(origin, line_no, "expected 4 or 5 tab-separated columns, got " + std::to_string(fields.size()));
      }
      q = Question{std::string(fields[0]), std::string(fields[1])};
      c.text = std::string(fields[2]);
      c.label = parse_label(fields[3], origin, line_no);
      if (fields.size() == 5) c.score = parse_score(fields[4], origin, line_no);
    }
    if (q.id.empty()) throw InputError(origin, line_no, "empty question id");

    const auto [it, inserted] = position.emplace(q.id, qaset.size());
    if (inserted) qaset.push_back(QAItem{std::move(q), {}});
    qaset[it->second].candidates.push_back(std::move(c));
  }
  return qaset;
}

QASet read_qa_tsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_qa_tsv(buf.str(), path);
}

std::string format_qa_tsv(const QASet& qaset, bool with_scores) {
  std::string out = with_scores ? "question_id\tquestion_text\tcandidate_text\tlabel\tscore\n"
                                : "question_id\tquestion_text\tcandidate_text\tlabel\n";
  for (const auto& item : qaset) {
    for (const auto& c : item.candidates) {
      out += clean_field(item.question.id);
      out += '\t';
      out += clean_field(item.question.text);
      out += '\t';
      out += clean_field(c.text);
      out += '\t';
      if (c.label) out += *c.label ? '1' : '0';
      if (with_scores) {
        out += '\t';
        if (c.score) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.17g", *c.score);
          out += buf;
        }
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace sentpair::eval
