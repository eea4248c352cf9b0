#include "matchcover/edge_dict.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace matchcover {

namespace {

unsigned ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : 64 - std::countl_zero(x - 1); }

std::uint64_t inverse_mod_pow2(std::uint64_t a) {
  std::uint64_t x = a;  // correct to 3 bits for odd a
  for (int i = 0; i < 5; ++i) x *= 2 - a * x;
  return x;
}

class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint64_t>& out) : out_(out) { out_.clear(); }
  void put(std::uint64_t value, unsigned bits) {
    for (unsigned i = 0; i < bits; ++i) put_bit((value >> i) & 1U);
  }
  void put_bit(bool bit) {
    if (pos_ % 64 == 0) out_.push_back(0);
    if (bit) out_.back() |= std::uint64_t{1} << (pos_ % 64);
    ++pos_;
  }

 private:
  std::vector<std::uint64_t>& out_;
  std::size_t pos_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const std::vector<std::uint64_t>& in) : in_(in) {}
  bool get_bit() {
    const bool bit = (in_[pos_ / 64] >> (pos_ % 64)) & 1U;
    ++pos_;
    return bit;
  }
  std::uint64_t get(unsigned bits) {
    if (bits == 0) return 0;
    const std::size_t word = pos_ / 64, off = pos_ % 64;
    std::uint64_t v = in_[word] >> off;
    if (off + bits > 64) v |= in_[word + 1] << (64 - off);
    pos_ += bits;
    return bits == 64 ? v : v & ((std::uint64_t{1} << bits) - 1);
  }
  void skip(std::size_t bits) { pos_ += bits; }

 private:
  const std::vector<std::uint64_t>& in_;
  std::size_t pos_ = 0;
};

constexpr std::size_t kBucketsPerBlock = 64;

}  // namespace

CompactEdgeDict::CompactEdgeDict(std::size_t n_vertices, std::size_t capacity)
    : n_(n_vertices), capacity_(capacity), universe_(pair_universe(n_vertices)) {
  w_ = std::max(1u, ceil_log2(std::max<std::uint64_t>(universe_, 2)));
  b_ = std::min(w_, ceil_log2(std::max<std::size_t>(capacity_, 1)));
  q_ = w_ - b_;
  shift_ = (w_ + 1) / 2;
  mask_ = w_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w_) - 1;
  mul1_ = 0x9e3779b97f4a7c15ULL | 1;
  mul2_ = 0xc2b2ae3d27d4eb4fULL | 1;
  inv1_ = inverse_mod_pow2(mul1_);
  inv2_ = inverse_mod_pow2(mul2_);
  const std::size_t buckets = std::size_t{1} << b_;
  blocks_.resize((buckets + kBucketsPerBlock - 1) / kBucketsPerBlock);
  for (Block& b : blocks_) encode_block(b, std::vector<std::vector<std::uint64_t>>(kBucketsPerBlock));
}

std::uint64_t CompactEdgeDict::scramble(std::uint64_t x) const {
  x = (x * mul1_) & mask_;
  x ^= x >> shift_;
  return (x * mul2_) & mask_;
}

std::uint64_t CompactEdgeDict::unscramble(std::uint64_t x) const {
  x = (x * inv2_) & mask_;
  x ^= x >> shift_;
  return (x * inv1_) & mask_;
}

void CompactEdgeDict::decode_block(const Block& b,
                                   std::vector<std::vector<std::uint64_t>>& buckets) const {
  buckets.assign(kBucketsPerBlock, {});
  BitReader r(b.words);
  std::vector<std::uint32_t> counts(kBucketsPerBlock, 0);
  for (std::size_t i = 0; i < kBucketsPerBlock; ++i)
    while (r.get_bit()) ++counts[i];
  for (std::size_t i = 0; i < kBucketsPerBlock; ++i)
    for (std::uint32_t c = 0; c < counts[i]; ++c) buckets[i].push_back(r.get(q_));
}

void CompactEdgeDict::encode_block(Block& b,
                                   const std::vector<std::vector<std::uint64_t>>& buckets) const {
  BitWriter w(b.words);
  b.count = 0;
  for (const auto& bucket : buckets) {
    for (std::size_t c = 0; c < bucket.size(); ++c) w.put_bit(true);
    w.put_bit(false);
    b.count += static_cast<std::uint32_t>(bucket.size());
  }
  for (const auto& bucket : buckets)
    for (std::uint64_t quotient : bucket) w.put(quotient, q_);
}

bool CompactEdgeDict::insert(Edge e) {
  if (contains(e)) return false;
  if (size_ >= capacity_) throw std::length_error("compact dictionary at capacity");
  const std::uint64_t key = scramble(encode_edge(e, n_));
  const std::uint64_t bucket = key >> q_;
  const std::uint64_t quotient = key & ((std::uint64_t{1} << q_) - 1);
  Block& blk = blocks_[bucket / kBucketsPerBlock];
  std::vector<std::vector<std::uint64_t>> buckets;
  decode_block(blk, buckets);
  auto& slot = buckets[bucket % kBucketsPerBlock];
  slot.insert(std::lower_bound(slot.begin(), slot.end(), quotient), quotient);
  encode_block(blk, buckets);
  ++size_;
  return true;
}

bool CompactEdgeDict::contains(Edge e) const {
  if (e.u >= e.v || e.v >= n_) return false;
  const std::uint64_t key = scramble(encode_edge(e, n_));
  const std::uint64_t bucket = key >> q_;
  const std::uint64_t quotient = key & ((std::uint64_t{1} << q_) - 1);
  const Block& blk = blocks_[bucket / kBucketsPerBlock];
  BitReader r(blk.words);
  const std::size_t target = bucket % kBucketsPerBlock;
  std::size_t before = 0, mine = 0;
  for (std::size_t i = 0; i <= target; ++i) {
    std::size_t c = 0;
    while (r.get_bit()) ++c;
    if (i < target)
      before += c;
    else
      mine = c;
  }
  // Skip the rest of the header.
  for (std::size_t i = target + 1; i < kBucketsPerBlock; ++i)
    while (r.get_bit()) {
    }
  r.skip(before * q_);
  for (std::size_t i = 0; i < mine; ++i)
    if (r.get(q_) == quotient) return true;
  return false;
}

void CompactEdgeDict::clear() {
  for (Block& b : blocks_) encode_block(b, std::vector<std::vector<std::uint64_t>>(kBucketsPerBlock));
  size_ = 0;
}

std::uint64_t CompactEdgeDict::bits_used() const {
  return 128 * static_cast<std::uint64_t>(blocks_.size()) + size_ * (std::uint64_t{q_} + 1);
}

double CompactEdgeDict::bits_bound() const {
  const double s = static_cast<double>(std::max<std::size_t>(capacity_, 1));
  const double u = static_cast<double>(std::max<std::uint64_t>(universe_, 1));
  return s * std::max(0.0, std::log2(u / s)) + 7.0 * s + 128.0;
}

std::vector<Edge> CompactEdgeDict::items() const {
  std::vector<std::uint64_t> codes;
  codes.reserve(size_);
  std::vector<std::vector<std::uint64_t>> buckets;
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    decode_block(blocks_[bi], buckets);
    for (std::size_t i = 0; i < kBucketsPerBlock; ++i) {
      const std::uint64_t bucket = bi * kBucketsPerBlock + i;
      for (std::uint64_t quotient : buckets[i]) codes.push_back(unscramble((bucket << q_) | quotient));
    }
  }
  std::sort(codes.begin(), codes.end());
  std::vector<Edge> out;
  out.reserve(codes.size());
  for (std::uint64_t c : codes) out.push_back(decode_edge(c, n_));
  return out;
}

}  // namespace matchcover
