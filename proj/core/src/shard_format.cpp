#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sentpair/shardio.hpp"

namespace sentpair::shardio {
namespace {

using json = nlohmann::ordered_json;

const char* kind_name(ShardError::Kind kind) {
  switch (kind) {
    case ShardError::Kind::io:
      return "I/O error";
    case ShardError::Kind::version_mismatch:
      return "format version mismatch";
    case ShardError::Kind::digest_mismatch:
      return "digest mismatch";
    case ShardError::Kind::count_mismatch:
      return "record count mismatch";
    case ShardError::Kind::malformed_record:
      return "malformed record";
    case ShardError::Kind::truncated:
      return "truncated shard";
  }
  return "shard error";
}

std::string error_message(ShardError::Kind kind, const std::string& path,
                          std::optional<std::uint64_t> record_index, const std::string& detail) {
  std::string msg = path + ": " + kind_name(kind);
  if (record_index) msg += " at record " + std::to_string(*record_index);
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

json provenance_json(const sampler::Provenance& p) {
  json j;
  j["doc_id"] = p.doc_id;
  j["paragraph_index"] = p.paragraph_index;
  j["sentence_start"] = p.sentence_start;
  j["sentence_count"] = p.sentence_count;
  j["kind"] = std::string(sampler::to_string(p.kind));
  return j;
}

const json& field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return *it;
}

std::string get_string(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw std::invalid_argument(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t get_uint(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw std::invalid_argument(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

sampler::Provenance provenance_from(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("provenance must be an object");
  sampler::Provenance p;
  p.doc_id = get_string(j, "doc_id");
  p.paragraph_index = get_uint(j, "paragraph_index");
  p.sentence_start = get_uint(j, "sentence_start");
  p.sentence_count = get_uint(j, "sentence_count");
  p.kind = sampler::parse_provenance_kind(get_string(j, "kind"));
  return p;
}

}  // namespace

ShardError::ShardError(Kind kind, std::string path, std::optional<std::uint64_t> record_index,
                       const std::string& detail)
    : Error(error_message(kind, path, record_index, detail)),
      kind_(kind),
      path_(std::move(path)),
      record_index_(record_index) {}

void LossWeightsMeta::validate() const {
  if (!(mlm_weight >= 0.0) || !(token_detection_weight >= 0.0) || !(objective_weight >= 0.0)) {
    throw ConfigError("loss weights must be non-negative");
  }
}

void ObjectiveCounts::add(Hardness hardness) {
  switch (hardness) {
    case Hardness::positive:
      ++positive;
      break;
    case Hardness::hard:
      ++hard;
      break;
    case Hardness::easy:
      ++easy;
      break;
  }
}

std::string encode_record(const ShardRecord& record) {
  const PairExample& ex = record.example;
  json j;
  j["record_index"] = record.record_index;
  j["objective"] = std::string(sampler::to_string(ex.objective));
  j["label"] = static_cast<unsigned>(ex.label);
  j["hardness"] = std::string(sampler::to_string(ex.hardness));
  j["group"] = ex.group;
  j["member"] = ex.member;
  j["truncated"] = ex.truncated;
  j["seq_a"] = ex.seq_a;
  j["seq_b"] = ex.seq_b;
  j["a_provenance"] = provenance_json(ex.a_provenance);
  j["b_provenance"] = provenance_json(ex.b_provenance);
  return j.dump();
}

ShardRecord decode_record(std::string_view line) {
  try {
    const json j = json::parse(line);
    if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
    ShardRecord r;
    r.record_index = get_uint(j, "record_index");
    PairExample& ex = r.example;
    ex.objective = sampler::parse_objective(get_string(j, "objective"));
    const std::uint64_t label = get_uint(j, "label");
    if (label > 1) throw std::invalid_argument("label must be 0 or 1");
    ex.label = static_cast<std::uint8_t>(label);
    ex.hardness = sampler::parse_hardness(get_string(j, "hardness"));
    const std::uint64_t group = get_uint(j, "group");
    const std::uint64_t member = get_uint(j, "member");
    if (group > UINT32_MAX || member > UINT32_MAX) throw std::invalid_argument("group/member out of range");
    ex.group = static_cast<std::uint32_t>(group);
    ex.member = static_cast<std::uint32_t>(member);
    const json& truncated = field(j, "truncated");
    if (!truncated.is_boolean()) throw std::invalid_argument("field 'truncated' must be a boolean");
    ex.truncated = truncated.get<bool>();
    ex.seq_a = get_string(j, "seq_a");
    ex.seq_b = get_string(j, "seq_b");
    ex.a_provenance = provenance_from(field(j, "a_provenance"));
    ex.b_provenance = provenance_from(field(j, "b_provenance"));
    if (j.size() != 11) throw std::invalid_argument("unexpected fields in record");
    return r;
  } catch (const ShardError&) {
    throw;
  } catch (const std::exception& e) {
    throw ShardError(ShardError::Kind::malformed_record, "<record>", std::nullopt, e.what());
  }
}

std::string shard_file_name(const WriteOptions& options, std::size_t index) {
  char digits[32];
  std::snprintf(digits, sizeof(digits), "%05zu", index);
  return options.prefix + "-" + digits + (options.compress ? ".jsonl.gz" : ".jsonl");
}

std::string to_json(const ShardManifest& m) {
  json j;
  j["format_version"] = m.format_version;
  j["global_seed"] = m.global_seed;
  j["token_unit"] = m.token_unit;
  j["sampling_config"] = json::parse(sampler::to_json(m.sampling_config));
  json weights;
  weights["mlm_weight"] = m.loss_weights.mlm_weight;
  weights["token_detection_weight"] = m.loss_weights.token_detection_weight;
  weights["objective_weight"] = m.loss_weights.objective_weight;
  j["loss_weights"] = std::move(weights);
  j["total_examples"] = m.total_examples;
  json counts = json::object();
  for (const auto& [objective, c] : m.counts) {
    json entry;
    entry["positive"] = c.positive;
    entry["hard"] = c.hard;
    entry["easy"] = c.easy;
    entry["label_1"] = c.positive;
    entry["label_0"] = c.hard + c.easy;
    counts[std::string(sampler::to_string(objective))] = std::move(entry);
  }
  j["counts"] = std::move(counts);
  j["shard_prefix"] = m.shard_prefix;
  j["compressed"] = m.compressed;
  json shards = json::array();
  for (const auto& s : m.shards) {
    json entry;
    entry["file"] = s.file;
    entry["records"] = s.records;
    entry["sha256"] = s.sha256;
    shards.push_back(std::move(entry));
  }
  j["shards"] = std::move(shards);
  return j.dump(2) + "\n";
}

ShardManifest manifest_from_json(std::string_view text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ShardError(ShardError::Kind::malformed_record, origin, std::nullopt, e.what());
  }
  try {
    ShardManifest m;
    m.format_version = static_cast<int>(get_uint(j, "format_version"));
    if (m.format_version != kFormatVersion) {
      throw ShardError(ShardError::Kind::version_mismatch, origin, std::nullopt,
                       "found " + std::to_string(m.format_version) + ", supported " +
                           std::to_string(kFormatVersion));
    }
    m.global_seed = get_uint(j, "global_seed");
    m.token_unit = get_string(j, "token_unit");
    m.sampling_config = sampler::sampling_config_from_json(field(j, "sampling_config").dump());
    const json& weights = field(j, "loss_weights");
    m.loss_weights.mlm_weight = field(weights, "mlm_weight").get<double>();
    m.loss_weights.token_detection_weight = field(weights, "token_detection_weight").get<double>();
    m.loss_weights.objective_weight = field(weights, "objective_weight").get<double>();
    m.total_examples = get_uint(j, "total_examples");
    for (const auto& [name, entry] : field(j, "counts").items()) {
      ObjectiveCounts c;
      c.positive = get_uint(entry, "positive");
      c.hard = get_uint(entry, "hard");
      c.easy = get_uint(entry, "easy");
      m.counts[sampler::parse_objective(name)] = c;
    }
    m.shard_prefix = get_string(j, "shard_prefix");
    m.compressed = field(j, "compressed").get<bool>();
    for (const auto& entry : field(j, "shards")) {
      m.shards.push_back(ShardInfo{get_string(entry, "file"), get_uint(entry, "records"),
                                   get_string(entry, "sha256")});
    }
    return m;
  } catch (const ShardError&) {
    throw;
  } catch (const std::exception& e) {
    throw ShardError(ShardError::Kind::malformed_record, origin, std::nullopt, e.what());
  }
}

ShardManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ShardError(ShardError::Kind::io, path.string(), std::nullopt, "cannot open manifest");
  std::ostringstream buf;
  buf << in.rdbuf();
  return manifest_from_json(buf.str(), path.string());
}

std::map<Objective, ObjectiveCounts> recount(const std::vector<ShardRecord>& records) {
  std::map<Objective, ObjectiveCounts> counts;
  for (const auto& r : records) counts[r.example.objective].add(r.example.hardness);
  return counts;
}

}  // namespace sentpair::shardio
