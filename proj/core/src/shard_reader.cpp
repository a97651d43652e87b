#include <fstream>
#include <sstream>

#include "gzip.hpp"
#include "sentpair/shardio.hpp"

namespace sentpair::shardio {
namespace {

namespace fs = std::filesystem;

std::string last_valid(std::uint64_t index) {
  return index == 0 ? "no complete record precedes it" : "last valid record is " + std::to_string(index - 1);
}

}  // namespace

void for_each_record(const fs::path& path, const std::optional<ShardInfo>& expected,
                     const std::function<void(ShardRecord&&)>& fn) {
  const std::string name = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ShardError(ShardError::Kind::io, name, std::nullopt, "cannot open shard");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ShardError(ShardError::Kind::io, name, std::nullopt, "read failure");
  std::string bytes = buf.str();

  if (expected && sha256_hex(bytes) != expected->sha256) {
    throw ShardError(ShardError::Kind::digest_mismatch, name, std::nullopt,
                     "content does not match the manifest digest");
  }
  if (path.extension() == ".gz") {
    try {
      bytes = detail::gzip_decompress(bytes);
    } catch (const Error& e) {
      throw ShardError(ShardError::Kind::truncated, name, std::nullopt, e.what());
    }
  }

  std::uint64_t index = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t nl = bytes.find('\n', pos);
    if (nl == std::string::npos) {
      throw ShardError(ShardError::Kind::truncated, name, index, "record has no line terminator; " + last_valid(index));
    }
    ShardRecord record;
    try {
      record = decode_record(std::string_view(bytes).substr(pos, nl - pos));
    } catch (const ShardError& e) {
      throw ShardError(ShardError::Kind::malformed_record, name, index, e.what());
    }
    if (record.record_index != index) {
      throw ShardError(ShardError::Kind::malformed_record, name, index,
                       "stored record_index is " + std::to_string(record.record_index));
    }
    fn(std::move(record));
    ++index;
    pos = nl + 1;
  }
  if (expected && index != expected->records) {
    throw ShardError(ShardError::Kind::count_mismatch, name, index,
                     "manifest lists " + std::to_string(expected->records) + " records, found " +
                         std::to_string(index) + "; " + last_valid(index));
  }
}

std::vector<ShardRecord> read_shard(const fs::path& path, const std::optional<ShardInfo>& expected) {
  std::vector<ShardRecord> records;
  for_each_record(path, expected, [&](ShardRecord&& r) { records.push_back(std::move(r)); });
  return records;
}

void verify_shards(const ShardManifest& manifest, const fs::path& dir) {
  std::uint64_t total = 0;
  for (const auto& shard : manifest.shards) {
    for_each_record(dir / shard.file, shard, [](ShardRecord&&) {});
    total += shard.records;
  }
  if (total != manifest.total_examples) {
    throw ShardError(ShardError::Kind::count_mismatch, (dir / kManifestName).string(), std::nullopt,
                     "shard records sum to " + std::to_string(total) + ", manifest total is " +
                         std::to_string(manifest.total_examples));
  }
}

std::vector<ShardRecord> read_dataset(const fs::path& manifest_path) {
  const ShardManifest manifest = read_manifest(manifest_path);
  const fs::path dir = manifest_path.parent_path();
  std::vector<ShardRecord> records;
  for (const auto& shard : manifest.shards) {
    for_each_record(dir / shard.file, shard, [&](ShardRecord&& r) { records.push_back(std::move(r)); });
  }
  if (records.size() != manifest.total_examples) {
    throw ShardError(ShardError::Kind::count_mismatch, manifest_path.string(), std::nullopt,
                     "shards hold " + std::to_string(records.size()) + " records, manifest total is " +
                         std::to_string(manifest.total_examples));
  }
  return records;
}

}  // namespace sentpair::shardio
