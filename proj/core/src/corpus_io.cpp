#include "sentpair/corpus_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "sentpair/error.hpp"
#include "sentpair/text.hpp"

namespace sentpair::corpus {
namespace {

using json = nlohmann::ordered_json;

std::string string_field(const json& obj, const char* key, const std::string& path, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw InputError(path, line, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), 0, "cannot open file");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::normalize_whitespace(line).empty()) continue;
    fn(line, line_no);
  }
  if (in.bad()) throw InputError(path.string(), line_no, "read failure");
}

json parse_line(const std::string& line, const std::string& path, std::size_t line_no) {
  if (auto bad = text::find_invalid_utf8(line)) {
    throw InputError(path, line_no, "invalid UTF-8 at byte offset " + std::to_string(*bad));
  }
  try {
    json obj = json::parse(line);
    if (!obj.is_object()) throw InputError(path, line_no, "record is not a JSON object");
    return obj;
  } catch (const json::exception& e) {
    throw InputError(path, line_no, std::string("malformed JSON: ") + e.what());
  }
}

Document document_from_json(const json& obj, const std::string& path, std::size_t line_no) {
  Document doc;
  doc.id = string_field(obj, "id", path, line_no);
  doc.source = obj.contains("source") ? string_field(obj, "source", path, line_no) : std::string();
  const auto found = obj.find("paragraphs");
  if (found == obj.end()) throw InputError(path, line_no, "missing field 'paragraphs'");
  const auto& paragraphs = *found;
  if (!paragraphs.is_array()) throw InputError(path, line_no, "'paragraphs' must be an array");
  for (const auto& para : paragraphs) {
    if (!para.is_array() || para.empty()) {
      throw InputError(path, line_no, "each paragraph must be a non-empty array of sentences");
    }
    Paragraph p{doc.paragraphs.size(), {}};
    for (const auto& sentence : para) {
      if (!sentence.is_string()) throw InputError(path, line_no, "sentences must be strings");
      std::string normalized = text::normalize_whitespace(sentence.get<std::string>());
      if (normalized.empty()) throw InputError(path, line_no, "empty sentence");
      p.sentences.push_back(Sentence{std::move(normalized)});
    }
    doc.paragraphs.push_back(std::move(p));
  }
  if (doc.id.empty()) throw InputError(path, line_no, "empty document id");
  if (doc.paragraphs.empty()) throw InputError(path, line_no, "document has no paragraphs");
  return doc;
}

}  // namespace

void for_each_raw_record(const std::filesystem::path& path,
                         const std::function<void(RawDocument&&)>& fn) {
  const std::string name = path.string();
  for_each_line(path, [&](const std::string& line, std::size_t line_no) {
    const json obj = parse_line(line, name, line_no);
    RawDocument raw;
    raw.id = string_field(obj, "id", name, line_no);
    raw.source = obj.contains("source") ? string_field(obj, "source", name, line_no) : std::string();
    raw.text = string_field(obj, "text", name, line_no);
    if (raw.id.empty()) throw InputError(name, line_no, "empty document id");
    fn(std::move(raw));
  });
}

RawDocument read_plain_document(const std::filesystem::path& path, std::string source) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return RawDocument{path.filename().string(), std::move(source), buf.str()};
}

std::string to_json_line(const Document& doc) {
  json obj;
  obj["id"] = doc.id;
  obj["source"] = doc.source;
  json paragraphs = json::array();
  for (const auto& p : doc.paragraphs) {
    json sentences = json::array();
    for (const auto& s : p.sentences) sentences.push_back(s.text);
    paragraphs.push_back(std::move(sentences));
  }
  obj["paragraphs"] = std::move(paragraphs);
  return obj.dump();
}

Document document_from_json_line(std::string_view line) {
  const std::string s(line);
  return document_from_json(parse_line(s, "<memory>", 1), "<memory>", 1);
}

void write_documents(std::ostream& out, const std::vector<Document>& docs) {
  for (const auto& doc : docs) out << to_json_line(doc) << '\n';
}

std::vector<Document> load_documents(const std::vector<std::filesystem::path>& inputs,
                                     const LoadOptions& options, std::size_t* dropped) {
  options.cleaning.validate();
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::size_t dropped_count = 0;

  auto accept_raw = [&](const RawDocument& raw, const std::string& path, std::size_t line_no) {
    if (!seen.insert(raw.id).second) throw InputError(path, line_no, "duplicate document id '" + raw.id + "'");
    try {
      if (auto doc = clean_document(raw, options.cleaning)) {
        docs.push_back(std::move(*doc));
      } else {
        ++dropped_count;
      }
    } catch (const EncodingError& e) {
      throw InputError(path, line_no, e.what());
    }
  };

  for (const auto& path : inputs) {
    const std::string name = path.string();
    if (options.plain_text) {
      accept_raw(read_plain_document(path, options.plain_source), name, 0);
      continue;
    }
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
      const json obj = parse_line(line, name, line_no);
      if (obj.contains("paragraphs")) {
        Document doc = document_from_json(obj, name, line_no);
        if (!seen.insert(doc.id).second) {
          throw InputError(name, line_no, "duplicate document id '" + doc.id + "'");
        }
        docs.push_back(std::move(doc));
        return;
      }
      RawDocument raw;
      raw.id = string_field(obj, "id", name, line_no);
      raw.source = obj.contains("source") ? string_field(obj, "source", name, line_no) : std::string();
      raw.text = string_field(obj, "text", name, line_no);
      if (raw.id.empty()) throw InputError(name, line_no, "empty document id");
      accept_raw(raw, name, line_no);
    });
  }
  if (dropped) *dropped = dropped_count;
  return docs;
}

}  // namespace sentpair::corpus
