#include <algorithm>
#include <fstream>
#include <numeric>
#include <regex>
#include <tuple>

#include "gzip.hpp"
#include "sentpair/shardio.hpp"

namespace sentpair::shardio {
namespace {

namespace fs = std::filesystem;

auto shard_key(const PairExample& ex) {
  return std::tie(ex.a_provenance.doc_id, ex.objective, ex.group, ex.member);
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw OutputError("write failed for " + path.string());
}

// Files from an earlier run with the same prefix.
void remove_stale_shards(const fs::path& dir, const WriteOptions& options) {
  const std::regex pattern(std::regex_replace(options.prefix, std::regex(R"([.^$|()\[\]{}*+?\\])"), R"(\$&)") +
                           R"(-\d{5}\.jsonl(\.gz)?(\.tmp)?)");
  std::vector<fs::path> stale;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && std::regex_match(entry.path().filename().string(), pattern)) {
      stale.push_back(entry.path());
    }
  }
  for (const auto& p : stale) fs::remove(p);
}

}  // namespace

ShardManifest write_shards(std::vector<PairExample> examples, const WriteOptions& options,
                           const fs::path& out_dir, const LossWeightsMeta& meta,
                           const sampler::SamplingConfig& cfg) {
  if (options.shard_size < 1) throw ConfigError("shard_size must be at least 1");
  if (options.prefix.empty()) throw ConfigError("shard prefix must not be empty");
  meta.validate();
  cfg.validate();

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw OutputError("cannot create output directory " + out_dir.string() +
                      (ec ? ": " + ec.message() : std::string()));
  }
  const fs::path manifest_path = out_dir / kManifestName;
  fs::remove(manifest_path, ec);
  if (ec) throw OutputError("cannot remove stale manifest " + manifest_path.string() + ": " + ec.message());
  remove_stale_shards(out_dir, options);

  // Stable placement: hash of the document id first, so each document's
  // examples stay together while documents spread across shards.
  std::vector<std::uint64_t> doc_hash(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    doc_hash[i] = derive_doc_seed(cfg.global_seed, examples[i].a_provenance.doc_id);
  }
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (doc_hash[a] != doc_hash[b]) return doc_hash[a] < doc_hash[b];
    if (shard_key(examples[a]) != shard_key(examples[b])) return shard_key(examples[a]) < shard_key(examples[b]);
    return examples[a] < examples[b];
  });

  ShardManifest manifest;
  manifest.global_seed = cfg.global_seed;
  manifest.sampling_config = cfg;
  manifest.loss_weights = meta;
  manifest.shard_prefix = options.prefix;
  manifest.compressed = options.compress;
  manifest.total_examples = examples.size();
  for (const auto& ex : examples) manifest.counts[ex.objective].add(ex.hardness);

  std::vector<fs::path> temporaries;
  std::vector<fs::path> finished;
  try {
    const std::size_t shard_count = (examples.size() + options.shard_size - 1) / options.shard_size;
    for (std::size_t s = 0; s < shard_count; ++s) {
      const std::size_t begin = s * options.shard_size;
      const std::size_t end = std::min(examples.size(), begin + options.shard_size);
      std::vector<std::size_t> members(order.begin() + static_cast<std::ptrdiff_t>(begin),
                                       order.begin() + static_cast<std::ptrdiff_t>(end));
      std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        if (shard_key(examples[a]) != shard_key(examples[b])) return shard_key(examples[a]) < shard_key(examples[b]);
        return examples[a] < examples[b];
      });

      std::string body;
      for (std::size_t r = 0; r < members.size(); ++r) {
        body += encode_record(ShardRecord{r, examples[members[r]]});
        body.push_back('\n');
      }
      const std::string bytes = options.compress ? detail::gzip_compress(body) : body;

      const std::string name = shard_file_name(options, s);
      const fs::path tmp = out_dir / (name + ".tmp");
      temporaries.push_back(tmp);
      write_file(tmp, bytes);
      manifest.shards.push_back(ShardInfo{name, members.size(), sha256_hex(bytes)});
    }
    for (std::size_t s = 0; s < manifest.shards.size(); ++s) {
      const fs::path target = out_dir / manifest.shards[s].file;
      fs::rename(temporaries[s], target);
      finished.push_back(target);
    }
    const fs::path tmp = out_dir / (std::string(kManifestName) + ".tmp");
    temporaries.push_back(tmp);
    write_file(tmp, to_json(manifest));
    fs::rename(tmp, manifest_path);
  } catch (...) {
    std::error_code ignore;
    for (const auto& p : temporaries) fs::remove(p, ignore);
    for (const auto& p : finished) fs::remove(p, ignore);
    fs::remove(manifest_path, ignore);
    try {
      throw;
    } catch (const fs::filesystem_error& e) {
      throw OutputError(e.what());
    }
  }
  return manifest;
}

}  // namespace sentpair::shardio
