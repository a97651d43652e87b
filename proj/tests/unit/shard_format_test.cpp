#include <gtest/gtest.h>

#include "sentpair/shardio.hpp"
#include "support/random_data.hpp"

namespace sentpair::shardio {
namespace {

TEST(RecordFormat, KeyOrderIsFixed) {
  PairExample ex;
  ex.objective = Objective::sp;
  ex.seq_a = "a";
  ex.seq_b = "b";
  ex.label = 1;
  ex.hardness = Hardness::positive;
  ex.a_provenance = {"d", 1, 2, 1, sampler::ProvenanceKind::span};
  ex.b_provenance = {"d", 1, 2, 1, sampler::ProvenanceKind::complement};
  EXPECT_EQ(encode_record(ShardRecord{7, ex}),
            R"({"record_index":7,"objective":"SP","label":1,"hardness":"positive","group":0,"member":0,)"
            R"("truncated":false,"seq_a":"a","seq_b":"b",)"
            R"("a_provenance":{"doc_id":"d","paragraph_index":1,"sentence_start":2,"sentence_count":1,"kind":"span"},)"
            R"("b_provenance":{"doc_id":"d","paragraph_index":1,"sentence_start":2,"sentence_count":1,"kind":"complement"}})");
}

TEST(RecordFormat, RandomRoundTrip) {
  testing::Gen gen(1);
  for (int i = 0; i < 2000; ++i) {
    const ShardRecord r{static_cast<std::uint64_t>(i), testing::random_example(gen)};
    const std::string line = encode_record(r);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    EXPECT_EQ(decode_record(line), r);
  }
}

TEST(RecordFormat, RejectsMalformed) {
  PairExample ex;
  ex.seq_a = "a";
  ex.seq_b = "b";
  const std::string good = encode_record({0, ex});
  EXPECT_NO_THROW(decode_record(good));
  for (const std::string bad : {std::string("not json"), std::string("[]"), std::string("{}"),
                                good.substr(0, good.size() - 1), good.substr(0, good.size() - 1) + ",\"extra\":1}"}) {
    EXPECT_THROW(decode_record(bad), ShardError) << bad;
  }
  std::string wrong_label = good;
  wrong_label.replace(wrong_label.find("\"label\":0"), 9, "\"label\":2");
  EXPECT_THROW(decode_record(wrong_label), ShardError);
  std::string wrong_kind = good;
  wrong_kind.replace(wrong_kind.find("\"span\""), 6, "\"word\"");
  EXPECT_THROW(decode_record(wrong_kind), ShardError);
  std::string negative = good;
  negative.replace(negative.find("\"group\":0"), 9, "\"group\":-1");
  EXPECT_THROW(decode_record(negative), ShardError);
}

TEST(ManifestFormat, RoundTripAndVersion) {
  ShardManifest m;
  m.global_seed = 42;
  m.counts[Objective::psd] = {10, 0, 40};
  m.total_examples = 50;
  m.shards = {{"shard-00000.jsonl", 50, std::string(64, 'a')}};
  const std::string text = to_json(m);
  EXPECT_EQ(manifest_from_json(text), m);
  EXPECT_NE(text.find("\"token_detection_weight\": 50.0"), std::string::npos);
  EXPECT_LT(text.find("\"format_version\""), text.find("\"global_seed\""));

  std::string v2 = text;
  v2.replace(v2.find("\"format_version\": 1"), 19, "\"format_version\": 2");
  try {
    manifest_from_json(v2);
    FAIL();
  } catch (const ShardError& e) {
    EXPECT_EQ(e.kind(), ShardError::Kind::version_mismatch);
  }
  EXPECT_THROW(manifest_from_json("{}"), ShardError);
}

TEST(ManifestFormat, LossWeightsAreRecorded) {
  const LossWeightsMeta w;
  EXPECT_EQ(w.mlm_weight, 1.0);
  EXPECT_EQ(w.token_detection_weight, 50.0);
  EXPECT_EQ(w.objective_weight, 1.0);
  LossWeightsMeta bad;
  bad.mlm_weight = -1;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(ShardFileName, Format) {
  WriteOptions o;
  EXPECT_EQ(shard_file_name(o, 3), "shard-00003.jsonl");
  o.compress = true;
  o.prefix = "ssp";
  EXPECT_EQ(shard_file_name(o, 12), "ssp-00012.jsonl.gz");
}

}  // namespace
}  // namespace sentpair::shardio
