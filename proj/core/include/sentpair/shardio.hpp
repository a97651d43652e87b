#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sentpair/error.hpp"
#include "sentpair/sampler.hpp"

namespace sentpair::shardio {

using sampler::Hardness;
using sampler::Objective;
using sampler::PairExample;

inline constexpr int kFormatVersion = 1;
inline constexpr std::string_view kManifestName = "manifest.json";

struct ShardRecord {
  std::uint64_t record_index = 0;
  PairExample example;

  auto operator<=>(const ShardRecord&) const = default;
};

// Loss weights the trainer should use. Recorded, never applied here.
struct LossWeightsMeta {
  double mlm_weight = 1.0;
  double token_detection_weight = 50.0;
  double objective_weight = 1.0;

  void validate() const;
  bool operator==(const LossWeightsMeta&) const = default;
};

struct ObjectiveCounts {
  std::uint64_t positive = 0;
  std::uint64_t hard = 0;
  std::uint64_t easy = 0;

  std::uint64_t total() const { return positive + hard + easy; }
  void add(Hardness hardness);
  bool operator==(const ObjectiveCounts&) const = default;
};

struct ShardInfo {
  std::string file;
  std::uint64_t records = 0;
  std::string sha256;

  bool operator==(const ShardInfo&) const = default;
};

struct ShardManifest {
  int format_version = kFormatVersion;
  std::uint64_t global_seed = 0;
  sampler::SamplingConfig sampling_config;
  std::string token_unit = "whitespace";
  std::map<Objective, ObjectiveCounts> counts;
  std::uint64_t total_examples = 0;
  std::string shard_prefix = "shard";
  bool compressed = false;
  std::vector<ShardInfo> shards;
  LossWeightsMeta loss_weights;

  bool operator==(const ShardManifest&) const = default;
};

std::string to_json(const ShardManifest& manifest);
// Throws ShardError (version_mismatch, malformed_record) on bad input.
ShardManifest manifest_from_json(std::string_view json, const std::string& origin = "manifest");
ShardManifest read_manifest(const std::filesystem::path& path);

class ShardError : public Error {
 public:
  enum class Kind { io, version_mismatch, digest_mismatch, count_mismatch, malformed_record, truncated };

  ShardError(Kind kind, std::string path, std::optional<std::uint64_t> record_index,
             const std::string& detail);

  Kind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }
  // Index of the offending record, when there is one.
  std::optional<std::uint64_t> record_index() const noexcept { return record_index_; }

 private:
  Kind kind_;
  std::string path_;
  std::optional<std::uint64_t> record_index_;
};

// One JSON object without the trailing newline. Keys always appear in
// this order: record_index, objective, label, hardness, group, member,
// truncated, seq_a, seq_b, a_provenance, b_provenance. Provenance keys:
// doc_id, paragraph_index, sentence_start, sentence_count, kind.
std::string encode_record(const ShardRecord& record);
// Throws ShardError(malformed_record) with record_index unset.
ShardRecord decode_record(std::string_view line);

struct WriteOptions {
  std::size_t shard_size = 10000;
  std::string prefix = "shard";
  bool compress = false;
};

// Shard file name for an index: <prefix>-<index, 5 digits>.jsonl[.gz].
std::string shard_file_name(const WriteOptions& options, std::size_t index);

// Orders examples by (derive_doc_seed(global_seed, a doc id), doc id,
// objective, group, member), cuts the sequence into ceil(n / shard_size)
// consecutive shards, and sorts each shard by (doc id, objective, group,
// member). Shards are written under temporary names and renamed once all
// succeeded; the manifest is written last, the same way. Any existing
// manifest in out_dir is removed first, and on failure every file this
// call produced is removed. Throws ConfigError or OutputError.
ShardManifest write_shards(std::vector<PairExample> examples, const WriteOptions& options,
                           const std::filesystem::path& out_dir, const LossWeightsMeta& meta,
                           const sampler::SamplingConfig& cfg);

// Records in stored order. With expected set, also checks the record
// count and the SHA-256 of the file bytes.
std::vector<ShardRecord> read_shard(const std::filesystem::path& path,
                                    const std::optional<ShardInfo>& expected = std::nullopt);

void for_each_record(const std::filesystem::path& path, const std::optional<ShardInfo>& expected,
                     const std::function<void(ShardRecord&&)>& fn);

// Checks every listed shard against its digest and record count.
void verify_shards(const ShardManifest& manifest, const std::filesystem::path& dir);

// All records of the dataset rooted at manifest_path, in shard order.
std::vector<ShardRecord> read_dataset(const std::filesystem::path& manifest_path);

// Direct recount of records, for cross-checking the manifest.
std::map<Objective, ObjectiveCounts> recount(const std::vector<ShardRecord>& records);

std::string sha256_hex(std::string_view bytes);

}  // namespace sentpair::shardio
