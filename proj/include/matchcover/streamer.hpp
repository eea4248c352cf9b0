#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "matchcover/cover.hpp"
#include "matchcover/edge_dict.hpp"
#include "matchcover/errors.hpp"
#include "matchcover/graph.hpp"
#include "matchcover/matching.hpp"

namespace matchcover {

/// Edge sequence that may be traversed exactly once.
class EdgeStream {
 public:
  EdgeStream(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {}

  std::size_t n() const { return n_; }
  std::size_t length() const { return edges_.size(); }

  template <class F>
  void for_each(F&& f) {
    if (consumed_) throw SinglePassViolation();
    consumed_ = true;
    for (const Edge& e : edges_) f(e);
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  bool consumed_ = false;
};

/// A matching-cover subroutine plus an a-priori bound on its output size.
struct CoverOracle {
  std::string name;
  std::function<std::vector<Edge>(const Graph&, double alpha_prime)> fn;
  /// Bound on |fn(...)| for buffers of the given first-level capacity.
  std::function<std::size_t(std::size_t n, std::size_t b1, double alpha_prime)> mc_bound;
};

CoverOracle identity_cover();
/// Exact optimal cover while the buffer is small enough to enumerate,
/// otherwise the whole buffer. The size bound is the largest enumerated
/// optimum over `calibration_runs` random graphs with b1 edges.
CoverOracle brute_cover(std::size_t calibration_runs = 32, std::uint64_t seed = 7);
/// Wraps build_cover; the size bound is 1.5 times |F| on a random graph of
/// the first-level buffer density.
CoverOracle regularity_cover(const CoverParams& params);

struct CascadeConfig {
  std::size_t n = 0;
  std::size_t k = 2;
  double alpha = 0.5;
  /// Stream length bound m; 0 selects n(n-1)/2.
  std::size_t m_bound = 0;
  /// Cover size bound MC; 0 asks the oracle.
  std::size_t mc_bound = 0;
};

struct CascadeStats {
  std::vector<std::size_t> flush_counts;
  std::vector<std::size_t> sizes;
  std::uint64_t peak_bits = 0;
  std::uint64_t current_bits = 0;
};

/// Hierarchy B_1..B_t with t = ceil(log2 k) + 2. B_1 flushes after m/k
/// arrivals, B_i (i > 1) once it holds 2*MC pairs; a flush replaces the
/// buffer by an alpha/(2k) cover of it, appended to the next buffer.
class BufferCascade {
 public:
  BufferCascade(const CascadeConfig& cfg, CoverOracle oracle);

  /// Throws InvariantViolation when a flush count exceeds k/2^(i-1) and
  /// CascadeOverflow when the top buffer would flush.
  void feed(Edge e);
  /// Union of all buffers, sorted.
  std::vector<Edge> finalize() const;

  std::size_t levels() const { return buffers_.size(); }
  std::size_t k() const { return k_; }
  double alpha() const { return alpha_; }
  double alpha_prime() const { return alpha_ / (2.0 * static_cast<double>(k_)); }
  std::size_t b1_capacity() const { return b1_; }
  std::size_t bi_capacity() const { return 2 * mc_; }
  std::size_t mc_bound() const { return mc_; }
  std::size_t arrivals() const { return arrivals_; }
  const std::vector<std::size_t>& flush_counts() const { return flushes_; }
  std::vector<Edge> buffer(std::size_t level) const { return buffers_.at(level).items(); }
  std::uint64_t peak_bits() const { return peak_bits_; }
  std::uint64_t current_bits() const;
  /// Sum over buffers of capacity * log2(e*u/capacity).
  double space_formula_bits() const;
  /// k_i <= k/2^(i-1) for every level.
  bool invariant_holds() const;
  CascadeStats stats() const;

 private:
  void add_to(std::size_t level, Edge e);
  void flush(std::size_t level);
  void update_peak();

  std::size_t n_, k_;
  double alpha_;
  std::size_t b1_, mc_;
  CoverOracle oracle_;
  std::vector<CompactEdgeDict> buffers_;
  std::vector<std::size_t> flushes_;
  std::size_t arrivals_ = 0;
  std::size_t b1_arrivals_ = 0;
  std::uint64_t peak_bits_ = 0;
};

struct Sparsified {
  Graph graph;               // multigraph on the hash range
  std::vector<Vertex> h;     // vertex -> bucket
};

std::size_t sparsify_range(std::size_t opt, double theta);
/// Random table h: V -> [ceil(8 opt/theta)], edges mapped to (h(u),h(v)),
/// collisions inside one bucket dropped.
Sparsified vertex_sparsify(const std::vector<Edge>& stream, std::size_t n, std::size_t opt, double theta,
                           std::uint64_t seed);

struct StreamParams {
  CoverParams cover;
  /// Target additive parameter of the cascade; negative selects the default
  /// alpha of cover.gamma.
  double alpha = -1.0;
  std::size_t m_bound = 0;
  std::uint64_t seed = 1;
};

struct StreamResult {
  Matching matching;
  bool stored_everything = false;
  std::size_t stored_edges = 0;
  std::uint64_t store_bits = 0;
  CascadeStats cascade;
  std::size_t cascade_output = 0;
  /// Set when the cascade overflowed but the store held the whole stream.
  bool cascade_failed = false;
  std::string cascade_error;
};

/// Stores the first 2n^2/k edges while running the cascade with the
/// regularity cover; returns an exact matching of the stored edges when
/// they are the whole stream, otherwise a maximum matching of the cascade
/// output. A cascade overflow is rethrown only if the store is incomplete.
StreamResult stream_match_regularity(EdgeStream& stream, std::size_t k, const StreamParams& params);

struct OptGuessResult {
  Matching matching;
  std::size_t branches = 0;
  std::size_t stored_edges = 0;
  bool stored_everything = false;
  std::vector<std::size_t> branch_matching_sizes;
};

/// Branch i (1..log2 k) guesses opt_i = n/2^(i+1), sparsifies into
/// 32*opt_i/eps buckets and runs a cascade with alpha = eps^2/64; the first
/// n^2/k edges are kept raw. Super-edges of each branch's maximum matching
/// are projected to the earliest original edge with both endpoints unused,
/// and the answer is a maximum matching of the raw edges plus projections.
OptGuessResult stream_match_optguess(EdgeStream& stream, std::size_t k, double epsilon, const CoverOracle& oracle,
                                     std::uint64_t seed = 1);

}  // namespace matchcover
