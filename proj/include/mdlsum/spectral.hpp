#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mdlsum/graph.hpp"
#include "mdlsum/rng.hpp"

namespace mdlsum {

/// y = (2I - L_sym) x = x + D^-1/2 A D^-1/2 x. Its largest eigenpairs are the
/// normalized Laplacian's smallest. Isolated nodes contribute x unchanged.
class ShiftedLaplacian {
 public:
  explicit ShiftedLaplacian(const Graph& g);
  void apply(std::span<const double> x, std::span<double> y) const;         // OpenMP rows
  void apply_serial(std::span<const double> x, std::span<double> y) const;  // reference

 private:
  const Graph* graph_;
  std::vector<double> inv_sqrt_degree_;
};

struct EigenResult {
  std::vector<std::vector<double>> vectors;  // k unit columns of length n
  std::vector<double> eigenvalues;           // of L_sym, ascending
  std::size_t sweeps = 0;
};

/// k smallest eigenpairs of the symmetric normalized Laplacian by block
/// orthogonal iteration with Rayleigh-Ritz projection; converged leading
/// pairs are locked and deflated from the active block. Throws
/// ConvergenceError with the worst open residual after `max_sweeps`.
EigenResult smallest_laplacian_eigenvectors(const Graph& g, std::size_t k, double tolerance,
                                            std::size_t max_sweeps, std::uint64_t seed);

/// Lloyd's k-means with k-means++ seeding; the restart with the lowest
/// within-cluster sum of squares wins (earliest on ties). `points` is
/// row-major count x dim.
std::vector<std::uint32_t> kmeans(std::span<const double> points, std::size_t count, std::size_t dim,
                                  std::size_t k, std::size_t restarts, Rng& rng, double* best_inertia);

}  // namespace mdlsum
