#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sentpair/corpus.hpp"

namespace sentpair::corpus {

// Newline-delimited JSON, one {"id", "source", "text"} object per line.
// Blank lines are skipped. Throws InputError / EncodingError with the
// line number.
void for_each_raw_record(const std::filesystem::path& path,
                         const std::function<void(RawDocument&&)>& fn);

// One document per file; the file name is the id.
RawDocument read_plain_document(const std::filesystem::path& path, std::string source = "plain");

// Cleaned documents: {"id", "source", "paragraphs": [["sentence", ...], ...]}.
std::string to_json_line(const Document& doc);
Document document_from_json_line(std::string_view line);

void write_documents(std::ostream& out, const std::vector<Document>& docs);

struct LoadOptions {
  // Treat each input path as one plain-text document.
  bool plain_text = false;
  std::string plain_source = "plain";
  CleaningConfig cleaning;
};

// Loads documents from JSONL inputs holding either raw records (cleaned
// on load) or already-cleaned records, detected per line. Rejects
// duplicate ids across all inputs. Documents that do not survive cleaning
// are dropped; *dropped counts them when non-null.
std::vector<Document> load_documents(const std::vector<std::filesystem::path>& inputs,
                                     const LoadOptions& options,
                                     std::size_t* dropped = nullptr);

}  // namespace sentpair::corpus
