#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "matchcover/graph.hpp"

namespace matchcover {

/// Fixed-capacity set of vertex pairs stored by quotienting.
///
/// Pair codes are passed through an invertible scramble of the w-bit key
/// space (w = ceil(log2 u)). The top b bits select one of 2^b buckets
/// (b = ceil(log2 s)) and only the remaining w-b quotient bits are stored.
/// Buckets are grouped 64 to a block; a block is one packed bit string
/// holding a unary occupancy header followed by the sorted quotients.
///
/// bits_used() = 128 * blocks + size * (q + 1) where q = w - b, which is at
/// most s*log2(u/s) + 7s + 128 at full capacity (constant c = 1).
class CompactEdgeDict {
 public:
  CompactEdgeDict(std::size_t n_vertices, std::size_t capacity);

  /// Returns false when the pair was already present. Throws
  /// std::length_error when a new pair would exceed capacity.
  bool insert(Edge e);
  bool contains(Edge e) const;
  void clear();

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t universe_size() const { return universe_; }
  std::uint64_t bits_used() const;
  /// Bound documented above, evaluated for the configured capacity.
  double bits_bound() const;

  /// Stored pairs in code order.
  std::vector<Edge> items() const;

 private:
  struct Block {
    std::vector<std::uint64_t> words;
    std::uint32_t count = 0;
  };

  std::uint64_t scramble(std::uint64_t x) const;
  std::uint64_t unscramble(std::uint64_t x) const;
  void decode_block(const Block& b, std::vector<std::vector<std::uint64_t>>& buckets) const;
  void encode_block(Block& b, const std::vector<std::vector<std::uint64_t>>& buckets) const;

  std::size_t n_;
  std::size_t capacity_;
  std::uint64_t universe_;
  unsigned w_;
  unsigned b_;
  unsigned q_;
  unsigned shift_;
  std::uint64_t mask_;
  std::uint64_t mul1_, mul2_, inv1_, inv2_;
  std::size_t size_ = 0;
  std::vector<Block> blocks_;
};

}  // namespace matchcover
