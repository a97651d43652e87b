#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "sentpair/corpus.hpp"
#include "sentpair/error.hpp"
#include "sentpair/text.hpp"

namespace sentpair::corpus {
namespace {

// Elements whose whole content is dropped.
constexpr std::array<std::string_view, 12> kDroppedElements = {
    "script", "style", "title", "head", "table", "noscript",
    "h1",     "h2",    "h3",    "h4",   "h5",    "h6"};

// Elements that start a new paragraph.
constexpr std::array<std::string_view, 26> kBlockElements = {
    "p",       "div",    "section", "article", "blockquote", "pre",    "hr",
    "header",  "footer", "body",    "html",    "ul",         "ol",     "li",
    "dl",      "dt",     "dd",      "figure",  "figcaption", "nav",    "aside",
    "main",    "tr",     "caption", "form",    "address"};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) { return is_alpha(c) || (c >= '0' && c <= '9'); }

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view name) {
  return std::find(set.begin(), set.end(), name) != set.end();
}

// Case-insensitive search for "</name" from pos; returns the index past the
// closing '>', or npos.
std::size_t find_closing_tag(std::string_view lower, std::size_t pos, std::string_view name) {
  const std::string needle = "</" + std::string(name);
  while (true) {
    const std::size_t at = lower.find(needle, pos);
    if (at == std::string_view::npos) return std::string_view::npos;
    const std::size_t after = at + needle.size();
    if (after < lower.size() && is_alnum(lower[after])) {
      pos = after;
      continue;
    }
    const std::size_t close = lower.find('>', after);
    return close == std::string_view::npos ? std::string::npos : close + 1;
  }
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Decodes the entity starting at s[pos] == '&'. Returns bytes consumed, or 0.
std::size_t decode_entity(std::string_view s, std::size_t pos, std::string& out) {
  struct Named {
    std::string_view name;
    std::string_view value;
  };
  static constexpr Named kNamed[] = {{"amp", "&"},   {"lt", "<"},   {"gt", ">"},
                                     {"quot", "\""}, {"apos", "'"}, {"nbsp", " "}};
  const std::size_t semi = s.find(';', pos + 1);
  if (semi == std::string_view::npos || semi - pos > 12) return 0;
  const std::string_view body = s.substr(pos + 1, semi - pos - 1);
  if (body.empty()) return 0;
  if (body[0] == '#') {
    std::uint32_t cp = 0;
    const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
    const std::string_view digits = body.substr(hex ? 2 : 1);
    if (digits.empty() || digits.size() > 7) return 0;
    for (char c : digits) {
      std::uint32_t d = 0;
      if (c >= '0' && c <= '9') {
        d = static_cast<std::uint32_t>(c - '0');
      } else if (hex && c >= 'a' && c <= 'f') {
        d = static_cast<std::uint32_t>(c - 'a' + 10);
      } else if (hex && c >= 'A' && c <= 'F') {
        d = static_cast<std::uint32_t>(c - 'A' + 10);
      } else {
        return 0;
      }
      cp = cp * (hex ? 16 : 10) + d;
    }
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
    append_utf8(out, cp);
    return semi - pos + 1;
  }
  for (const auto& named : kNamed) {
    if (body == named.name) {
      out.append(named.value);
      return semi - pos + 1;
    }
  }
  return 0;
}

std::string strip_html(std::string_view s) {
  const std::string lower = text::ascii_lower(s);
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '&') {
      if (const std::size_t used = decode_entity(s, i, out)) {
        i += used;
        continue;
      }
      out.push_back(c);
      ++i;
      continue;
    }
    if (c != '<') {
      out.push_back(c);
      ++i;
      continue;
    }
    if (s.substr(i, 4) == "<!--") {
      const std::size_t end = s.find("-->", i + 4);
      i = end == std::string_view::npos ? s.size() : end + 3;
      continue;
    }
    std::size_t j = i + 1;
    const bool closing = j < s.size() && s[j] == '/';
    if (closing) ++j;
    const bool declaration = j < s.size() && (s[j] == '!' || s[j] == '?');
    if (j >= s.size() || !(is_alpha(s[j]) || declaration)) {
      out.push_back(c);
      ++i;
      continue;
    }
    const std::size_t name_start = declaration ? j + 1 : j;
    std::size_t name_end = name_start;
    while (name_end < s.size() && is_alnum(s[name_end])) ++name_end;
    const std::size_t close = s.find_first_of("<>", name_end);
    if (close == std::string_view::npos || s[close] == '<') {
      out.push_back(c);
      ++i;
      continue;
    }
    const std::string name = text::ascii_lower(s.substr(name_start, name_end - name_start));
    const bool self_closing = close > i && s[close - 1] == '/';
    std::size_t next = close + 1;
    if (!declaration && !closing && !self_closing && contains(kDroppedElements, name)) {
      const std::size_t end = find_closing_tag(lower, next, name);
      if (end != std::string_view::npos) next = end;
      out.append("\n\n");
    } else if (!declaration && name == "br") {
      out.push_back('\n');
    } else if (!declaration && (contains(kBlockElements, name) || contains(kDroppedElements, name))) {
      out.append("\n\n");
    }
    i = next;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && text::is_space(s[b])) ++b;
  while (e > b && text::is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

bool is_header_line(std::string_view line, std::size_t max_chars) {
  if (line.size() >= 4 && line.starts_with("==") && line.ends_with("==")) return true;
  if (line.size() >= 2 && line[0] == '#' && (line[1] == ' ' || line[1] == '#')) return true;
  bool has_upper = false;
  for (char c : line) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') has_upper = true;
  }
  return has_upper && text::char_count(line) < max_chars;
}

bool is_table_line(std::string_view line) {
  return std::count_if(line.begin(), line.end(), [](char c) { return c == '\t' || c == '|'; }) >= 3;
}

}  // namespace

void CleaningConfig::validate() const {
  if (min_paragraph_chars < 1) throw ConfigError("min_paragraph_chars must be at least 1");
  if (min_document_chars < min_paragraph_chars) {
    throw ConfigError("min_document_chars must be at least min_paragraph_chars");
  }
}

std::string strip_markup(std::string_view input, const CleaningConfig& cfg) {
  if (!cfg.strip_markup) return std::string(input);
  const std::string html_free = strip_html(input);
  if (!cfg.drop_header_lines && !cfg.drop_table_lines) return html_free;

  std::string out;
  out.reserve(html_free.size());
  std::string_view rest = html_free;
  while (true) {
    const std::size_t nl = rest.find('\n');
    const std::string_view line = rest.substr(0, nl);
    const std::string_view trimmed = trim(line);
    const bool drop = !trimmed.empty() &&
                      ((cfg.drop_header_lines && is_header_line(trimmed, cfg.header_max_chars)) ||
                       (cfg.drop_table_lines && is_table_line(trimmed)));
    // A dropped line still separates the paragraphs around it.
    if (!drop) out.append(line);
    if (nl == std::string_view::npos) break;
    out.push_back('\n');
    if (drop) out.push_back('\n');
    rest.remove_prefix(nl + 1);
  }
  return out;
}

std::vector<std::string> split_paragraphs(std::string_view input) {
  std::vector<std::string> paragraphs;
  std::string current;
  auto flush = [&] {
    std::string normalized = text::normalize_whitespace(current);
    if (!normalized.empty()) paragraphs.push_back(std::move(normalized));
    current.clear();
  };
  std::string_view rest = input;
  while (true) {
    const std::size_t nl = rest.find('\n');
    const std::string_view line = rest.substr(0, nl);
    if (trim(line).empty()) {
      flush();
    } else {
      current.append(line);
      current.push_back(' ');
    }
    if (nl == std::string_view::npos) break;
    rest.remove_prefix(nl + 1);
  }
  flush();
  return paragraphs;
}

std::optional<Document> clean_document(const RawDocument& raw, const CleaningConfig& cfg) {
  text::require_utf8(raw.text, "document '" + raw.id + "'");
  const std::string stripped = strip_markup(raw.text, cfg);

  Document doc{raw.id, raw.source, {}};
  std::size_t total = 0;
  for (std::string& para : split_paragraphs(stripped)) {
    const std::size_t chars = text::char_count(para);
    if (chars < cfg.min_paragraph_chars) continue;
    auto sentences = segment_paragraph(para);
    if (sentences.empty()) continue;
    total += chars;
    doc.paragraphs.push_back(Paragraph{doc.paragraphs.size(), std::move(sentences)});
  }
  if (doc.paragraphs.empty() || total < cfg.min_document_chars) return std::nullopt;
  return doc;
}

std::string Paragraph::text() const { return text(0, sentences.size()); }

std::string Paragraph::text(std::size_t start, std::size_t count) const {
  std::string out;
  const std::size_t end = std::min(sentences.size(), start + count);
  for (std::size_t i = start; i < end; ++i) {
    if (i > start) out.push_back(' ');
    out.append(sentences[i].text);
  }
  return out;
}

std::string Paragraph::text_without(std::size_t start, std::size_t count) const {
  std::string out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i >= start && i < start + count) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(sentences[i].text);
  }
  return out;
}

std::size_t Paragraph::char_count() const { return text::char_count(text()); }

std::size_t Document::char_count() const {
  std::size_t total = 0;
  for (const auto& p : paragraphs) total += p.char_count();
  return total;
}

}  // namespace sentpair::corpus
