#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "netinf/dataset.hpp"
#include "netinf/rng.hpp"

namespace netinf {

/// Ground-truth tree over p variables. Vertex 0 is the root; vertices are in
/// breadth-first order, so parent[v] < v. parent[0] and coeff[0] are unused.
struct TreeNetwork {
  std::size_t p = 0;
  std::vector<std::size_t> parent;  // length p
  std::vector<double> coeff;        // length p; coeff[v] weights parent[v] -> v

  bool has_edge(std::size_t i, std::size_t j) const;
  std::vector<std::vector<bool>> adjacency() const;
  std::size_t edge_count() const { return p > 0 ? p - 1 : 0; }

  /// Depth of each vertex, root at 0.
  std::vector<std::size_t> depths() const;

  void validate() const;

  /// JSON {p, parents, coeffs}; parents/coeffs listed for vertices 1..p-1.
  void write_json(const std::filesystem::path& path) const;
  static TreeNetwork read_json(const std::filesystem::path& path);
};

struct SimConfig {
  std::size_t p = 100;
  std::size_t n = 50;
  double offspring_log_mean = 1.0;
  double offspring_log_sd = 1.0;
  double coeff_low = 0.7;
  double coeff_high = 2.0;
  double positive_sign_prob = 2.0 / 3.0;
  double noise_sd = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Branching-process topology: each vertex of the current generation draws a
/// ceiling-rounded Lognormal offspring count; the final generation is
/// truncated so the tree has exactly p vertices. Edge coefficients are drawn
/// here, once per tree (magnitude Uniform(coeff_low, coeff_high), sign
/// positive with probability positive_sign_prob).
/// drawn_offspring, when given, receives the raw ceiling-rounded counts as
/// drawn, before any truncation caps the assignment.
TreeNetwork generate_topology(const SimConfig& config, RngStream& rng,
                              std::vector<std::size_t>* drawn_offspring = nullptr);

/// Root column ~ N(0,1); every other column = coeff * parent column + N(0, noise_sd^2).
Dataset generate_data(const TreeNetwork& tree, const SimConfig& config, RngStream& rng);

struct SimPair {
  TreeNetwork tree;
  Dataset pilot;
  Dataset study;
};

/// One topology and coefficient set, two independent datasets from it.
SimPair generate_pair(const SimConfig& config, RngStream& rng);

}  // namespace netinf
