#include <charconv>
#include <string>

#include <json.hpp>

#include "sentpair/error.hpp"
#include "sentpair/sampler.hpp"
#include "sentpair/text.hpp"

namespace sentpair::sampler {
namespace {

using json = nlohmann::ordered_json;

std::size_t parse_count(std::string_view s, std::string_view what) {
  std::size_t value = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw ConfigError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return value;
}

void check_interval(const Interval& iv, const char* name) {
  if (iv.lo < 1 || iv.lo > iv.hi) {
    throw ConfigError(std::string(name) + " must satisfy 1 <= lo <= hi, got " + to_string(iv));
  }
}

json interval_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

Interval interval_from(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(std::string(name) + " must be [lo, hi]");
  return Interval{j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

}  // namespace

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::ssp:
      return "SSP";
    case Objective::sp:
      return "SP";
    case Objective::psd:
      return "PSD";
  }
  return "?";
}

Objective parse_objective(std::string_view name) {
  const std::string lower = text::ascii_lower(name);
  if (lower == "ssp") return Objective::ssp;
  if (lower == "sp") return Objective::sp;
  if (lower == "psd") return Objective::psd;
  throw ConfigError("unknown objective '" + std::string(name) + "'");
}

std::string_view to_string(Hardness hardness) {
  switch (hardness) {
    case Hardness::positive:
      return "positive";
    case Hardness::hard:
      return "hard";
    case Hardness::easy:
      return "easy";
  }
  return "?";
}

Hardness parse_hardness(std::string_view name) {
  if (name == "positive") return Hardness::positive;
  if (name == "hard") return Hardness::hard;
  if (name == "easy") return Hardness::easy;
  throw ConfigError("unknown hardness '" + std::string(name) + "'");
}

std::string_view to_string(HardNegativeSource source) {
  return source == HardNegativeSource::same_paragraph ? "same_paragraph" : "other_paragraphs";
}

HardNegativeSource parse_hard_negative_source(std::string_view name) {
  if (name == "other_paragraphs") return HardNegativeSource::other_paragraphs;
  if (name == "same_paragraph") return HardNegativeSource::same_paragraph;
  throw ConfigError("unknown hard negative source '" + std::string(name) +
                    "' (expected other_paragraphs or same_paragraph)");
}

std::string_view to_string(ProvenanceKind kind) {
  switch (kind) {
    case ProvenanceKind::span:
      return "span";
    case ProvenanceKind::complement:
      return "complement";
    case ProvenanceKind::paragraph:
      return "paragraph";
  }
  return "?";
}

ProvenanceKind parse_provenance_kind(std::string_view name) {
  if (name == "span") return ProvenanceKind::span;
  if (name == "complement") return ProvenanceKind::complement;
  if (name == "paragraph") return ProvenanceKind::paragraph;
  throw ConfigError("unknown provenance kind '" + std::string(name) + "'");
}

Interval parse_interval(std::string_view s) {
  const std::string trimmed = text::normalize_whitespace(s);
  const std::size_t colon = trimmed.find(':');
  if (colon == std::string::npos) {
    const std::size_t v = parse_count(trimmed, "interval");
    return Interval{v, v};
  }
  const std::string lo = text::normalize_whitespace(std::string_view(trimmed).substr(0, colon));
  const std::string hi = text::normalize_whitespace(std::string_view(trimmed).substr(colon + 1));
  return Interval{parse_count(lo, "interval"), parse_count(hi, "interval")};
}

std::string to_string(Interval interval) {
  return std::to_string(interval.lo) + ":" + std::to_string(interval.hi);
}

void SamplingConfig::validate() const {
  check_interval(ssp_a_sentences, "ssp_a_sentences");
  check_interval(ssp_b_sentences, "ssp_b_sentences");
  check_interval(sp_a_sentences, "sp_a_sentences");
  if (max_hard_negatives > total_negatives) {
    throw ConfigError("max_hard_negatives must not exceed total_negatives");
  }
  if (positives_per_unit < 1) throw ConfigError("positives_per_unit must be at least 1");
  if (token_budget_ssp < 2) throw ConfigError("token_budget_ssp must be at least 2");
  if (token_budget_sp_psd < 4) throw ConfigError("token_budget_sp_psd must be at least 4");
}

std::size_t SamplingConfig::token_budget(Objective objective) const {
  return objective == Objective::ssp ? token_budget_ssp : token_budget_sp_psd;
}

std::size_t SamplingConfig::a_token_cap(Objective objective) const {
  switch (objective) {
    case Objective::ssp:
      return token_budget_ssp / 2;
    case Objective::sp:
      // A is the short, question-like side.
      return token_budget_sp_psd / 4;
    case Objective::psd:
      return token_budget_sp_psd / 2;
  }
  return 0;
}

std::string to_json(const SamplingConfig& cfg) {
  json j;
  j["ssp_a_sentences"] = interval_json(cfg.ssp_a_sentences);
  j["ssp_b_sentences"] = interval_json(cfg.ssp_b_sentences);
  j["sp_a_sentences"] = interval_json(cfg.sp_a_sentences);
  j["max_hard_negatives"] = cfg.max_hard_negatives;
  j["total_negatives"] = cfg.total_negatives;
  j["positives_per_unit"] = cfg.positives_per_unit;
  j["token_budget_ssp"] = cfg.token_budget_ssp;
  j["token_budget_sp_psd"] = cfg.token_budget_sp_psd;
  j["global_seed"] = cfg.global_seed;
  j["ssp_hard_negative_source"] = std::string(to_string(cfg.ssp_hard_negative_source));
  return j.dump();
}

SamplingConfig sampling_config_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    SamplingConfig cfg;
    cfg.ssp_a_sentences = interval_from(j.at("ssp_a_sentences"), "ssp_a_sentences");
    cfg.ssp_b_sentences = interval_from(j.at("ssp_b_sentences"), "ssp_b_sentences");
    cfg.sp_a_sentences = interval_from(j.at("sp_a_sentences"), "sp_a_sentences");
    cfg.max_hard_negatives = j.at("max_hard_negatives").get<std::size_t>();
    cfg.total_negatives = j.at("total_negatives").get<std::size_t>();
    cfg.positives_per_unit = j.at("positives_per_unit").get<std::size_t>();
    cfg.token_budget_ssp = j.at("token_budget_ssp").get<std::size_t>();
    cfg.token_budget_sp_psd = j.at("token_budget_sp_psd").get<std::size_t>();
    cfg.global_seed = j.at("global_seed").get<std::uint64_t>();
    cfg.ssp_hard_negative_source =
        parse_hard_negative_source(j.at("ssp_hard_negative_source").get<std::string>());
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed sampling config: ") + e.what());
  }
}

}  // namespace sentpair::sampler
