#include <algorithm>
#include <tuple>

#include "sentpair/error.hpp"
#include "sentpair/sampler.hpp"

namespace sentpair::sampler {
namespace {

std::uint64_t paragraph_key(std::uint64_t salt, std::string_view doc_id, std::size_t index) {
  return mix64(salt ^ mix64(fnv1a64(doc_id) + static_cast<std::uint64_t>(index) * 0x9E3779B97F4A7C15ULL));
}

bool key_less(const PoolEntry& a, const PoolEntry& b) {
  return std::tie(a.key, a.doc_id, a.paragraph.index) < std::tie(b.key, b.doc_id, b.paragraph.index);
}

}  // namespace

NegativePool::NegativePool(std::size_t capacity, std::uint64_t salt) : capacity_(capacity), salt_(salt) {
  if (capacity == 0) throw ConfigError("negative pool capacity must be at least 1");
}

void NegativePool::insert(PoolEntry entry) {
  if (sorted_) {
    std::make_heap(entries_.begin(), entries_.end(), key_less);
    sorted_ = false;
  }
  if (entries_.size() < capacity_) {
    entries_.push_back(std::move(entry));
    std::push_heap(entries_.begin(), entries_.end(), key_less);
    return;
  }
  if (!key_less(entry, entries_.front())) return;
  std::pop_heap(entries_.begin(), entries_.end(), key_less);
  entries_.back() = std::move(entry);
  std::push_heap(entries_.begin(), entries_.end(), key_less);
}

std::span<const PoolEntry> NegativePool::entries() const {
  std::lock_guard lock(guard_.mutex);
  if (!sorted_) {
    std::sort_heap(entries_.begin(), entries_.end(), key_less);
    sorted_ = true;
  }
  return entries_;
}

void NegativePool::offer(std::string_view doc_id, const Paragraph& paragraph) {
  ++seen_;
  const std::uint64_t key = paragraph_key(salt_, doc_id, paragraph.index);
  if (entries_.size() == capacity_) {
    const std::uint64_t bound = sorted_ ? entries_.back().key : entries_.front().key;
    if (key > bound) return;
  }
  insert(PoolEntry{key, std::string(doc_id), paragraph});
}

void NegativePool::offer(const Document& doc) {
  for (const auto& p : doc.paragraphs) offer(doc.id, p);
}

void NegativePool::merge(const NegativePool& other) {
  if (other.salt_ != salt_) throw ConfigError("cannot merge negative pools built with different salts");
  const std::vector<PoolEntry> incoming(other.entries().begin(), other.entries().end());
  for (const auto& entry : incoming) insert(entry);
  seen_ += other.seen_;
}

NegativePool build_negative_pool(std::span<const Document> docs, std::size_t capacity, Rng& rng) {
  NegativePool pool(capacity, rng.next());
  for (const auto& doc : docs) pool.offer(doc);
  pool.entries();
  return pool;
}

}  // namespace sentpair::sampler
