#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mdlsum/decomposition.hpp"
#include "mdlsum/errors.hpp"
#include "mdlsum/rng.hpp"
#include "mdlsum/spectral.hpp"

namespace mdlsum {

namespace {

using Column = std::vector<double>;

double dot(const Column& a, const Column& b) {
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  double s = 0;
#pragma omp parallel for reduction(+ : s) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const Column& x, Column& y) {
  const std::int64_t n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

// Orthonormalizes `block` against `locked` and itself (modified Gram-Schmidt,
// applied twice). Columns that collapse are replaced by fresh random ones.
void orthonormalize(std::vector<Column>& block, const std::vector<Column>& locked, Rng& rng) {
  for (std::size_t c = 0; c < block.size(); ++c) {
    for (int attempt = 0;; ++attempt) {
      const double before = std::sqrt(dot(block[c], block[c]));
      for (int twice = 0; twice < 2; ++twice) {
        for (const Column& q : locked) axpy(-dot(q, block[c]), q, block[c]);
        for (std::size_t p = 0; p < c; ++p) axpy(-dot(block[p], block[c]), block[p], block[c]);
      }
      const double norm = std::sqrt(dot(block[c], block[c]));
      if (norm > 1e-10 * std::max(before, 1e-300) && norm > 1e-300) {
        for (double& x : block[c]) x /= norm;
        break;
      }
      if (attempt > 8) throw ConvergenceError("cannot complete an orthonormal basis", norm);
      for (double& x : block[c]) x = rng.uniform() - 0.5;
    }
  }
}

// Cyclic Jacobi on a dense symmetric matrix (row-major, size s x s).
// Returns eigenvalues descending; `vectors` receives matching columns.
std::vector<double> symmetric_eigen(std::vector<double> a, std::size_t s, std::vector<double>& vectors) {
  vectors.assign(s * s, 0);
  for (std::size_t i = 0; i < s; ++i) vectors[i * s + i] = 1;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0, scale = 0;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) (i == j ? scale : off) += a[i * s + j] * a[i * s + j];
    if (off <= 1e-30 * std::max(scale, 1e-300)) break;
    for (std::size_t p = 0; p < s; ++p) {
      for (std::size_t q = p + 1; q < s; ++q) {
        const double apq = a[p * s + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * s + q] - a[p * s + p]) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double sn = t * c;
        for (std::size_t k = 0; k < s; ++k) {
          const double akp = a[k * s + p], akq = a[k * s + q];
          a[k * s + p] = c * akp - sn * akq;
          a[k * s + q] = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < s; ++k) {
          const double apk = a[p * s + k], aqk = a[q * s + k];
          a[p * s + k] = c * apk - sn * aqk;
          a[q * s + k] = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < s; ++k) {
          const double vkp = vectors[k * s + p], vkq = vectors[k * s + q];
          vectors[k * s + p] = c * vkp - sn * vkq;
          vectors[k * s + q] = sn * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(s);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x * s + x] > a[y * s + y]; });
  std::vector<double> values(s);
  std::vector<double> sorted(s * s);
  for (std::size_t c = 0; c < s; ++c) {
    values[c] = a[order[c] * s + order[c]];
    for (std::size_t r = 0; r < s; ++r) sorted[r * s + c] = vectors[r * s + order[c]];
  }
  vectors = std::move(sorted);
  return values;
}

}  // namespace

ShiftedLaplacian::ShiftedLaplacian(const Graph& g) : graph_(&g), inv_sqrt_degree_(g.node_count(), 0) {
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.degree(v) > 0) inv_sqrt_degree_[v] = 1 / std::sqrt(static_cast<double>(g.degree(v)));
}

void ShiftedLaplacian::apply(std::span<const double> x, std::span<double> y) const {
  const std::int64_t n = static_cast<std::int64_t>(graph_->node_count());
#pragma omp parallel for schedule(dynamic, 512)
  for (std::int64_t v = 0; v < n; ++v) {
    double s = 0;
    for (NodeId u : graph_->neighbors(static_cast<NodeId>(v))) s += inv_sqrt_degree_[u] * x[u];
    y[v] = x[v] + inv_sqrt_degree_[v] * s;
  }
}

void ShiftedLaplacian::apply_serial(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = graph_->node_count();
  for (std::size_t v = 0; v < n; ++v) {
    double s = 0;
    for (NodeId u : graph_->neighbors(static_cast<NodeId>(v))) s += inv_sqrt_degree_[u] * x[u];
    y[v] = x[v] + inv_sqrt_degree_[v] * s;
  }
}

EigenResult smallest_laplacian_eigenvectors(const Graph& g, std::size_t k, double tolerance, std::size_t max_sweeps,
                                            std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (k == 0 || k > n) throw DomainError("eigenvector count must lie in [1, n]");
  ShiftedLaplacian op(g);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);

  const std::size_t block = std::min(n, k + std::max<std::size_t>(4, k / 2));
  std::vector<Column> locked;
  std::vector<double> locked_values;
  std::vector<Column> active(block, Column(n));
  for (auto& col : active)
    for (double& x : col) x = rng.uniform() - 0.5;
  orthonormalize(active, locked, rng);

  std::vector<Column> image(block, Column(n));
  double worst_residual = std::numeric_limits<double>::infinity();
  const std::size_t check_every = 5;
  // Spectrum of B lies in [0, 2]. Once a Rayleigh-Ritz step has located the
  // bottom of the block, sweeps apply a Chebyshev polynomial that damps
  // [0, cut] instead of a single product.
  constexpr int kFilterDegree = 8;
  double cut = -1;
  Column prev(n), next(n);

  auto filter = [&](Column& x) {
    const double e = cut / 2, c = cut / 2;
    Column& y = image[0];
    op.apply(x, y);
    for (std::size_t i = 0; i < n; ++i) y[i] = (y[i] - c * x[i]) / e;
    prev = x;
    Column cur = y;
    for (int d = 1; d < kFilterDegree; ++d) {
      op.apply(cur, next);
      for (std::size_t i = 0; i < n; ++i) next[i] = 2 * (next[i] - c * cur[i]) / e - prev[i];
      prev.swap(cur);
      cur.swap(next);
    }
    x.swap(cur);
  };

  for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
    if (sweep % check_every != 0 && sweep != max_sweeps) {
      if (cut > 0) {
        for (auto& col : active) filter(col);
      } else {
        for (std::size_t c = 0; c < active.size(); ++c) op.apply(active[c], image[c]);
        active.swap(image);
      }
      orthonormalize(active, locked, rng);
      continue;
    }
    for (std::size_t c = 0; c < active.size(); ++c) op.apply(active[c], image[c]);

    // Rayleigh-Ritz on the active block, then residuals of the leading
    // unconverged Ritz pairs.
    const std::size_t s = active.size();
    std::vector<double> h(s * s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i; j < s; ++j) h[i * s + j] = h[j * s + i] = dot(active[i], image[j]);
    std::vector<double> rotation;
    std::vector<double> theta = symmetric_eigen(h, s, rotation);
    cut = theta.back() > 1e-3 ? theta.back() : -1;

    std::vector<Column> ritz(s, Column(n, 0)), ritz_image(s, Column(n, 0));
    for (std::size_t c = 0; c < s; ++c) {
      for (std::size_t r = 0; r < s; ++r) {
        const double coef = rotation[r * s + c];
        if (coef == 0) continue;
        axpy(coef, active[r], ritz[c]);
        axpy(coef, image[r], ritz_image[c]);
      }
    }

    const std::size_t wanted = k - locked.size();
    std::size_t newly_locked = 0;
    worst_residual = 0;
    for (std::size_t c = 0; c < wanted; ++c) {
      Column residual = ritz_image[c];
      axpy(-theta[c], ritz[c], residual);
      const double r = std::sqrt(dot(residual, residual));
      worst_residual = std::max(worst_residual, r);
      if (r <= tolerance && c == newly_locked) ++newly_locked;
    }
    for (std::size_t c = 0; c < newly_locked; ++c) {
      locked.push_back(std::move(ritz[c]));
      locked_values.push_back(theta[c]);
    }
    if (locked.size() >= k) {
      EigenResult result;
      result.vectors.assign(locked.begin(), locked.begin() + static_cast<std::ptrdiff_t>(k));
      for (std::size_t c = 0; c < k; ++c) result.eigenvalues.push_back(2.0 - locked_values[c]);
      result.sweeps = sweep;
      return result;
    }

    // Continue iterating on the Ritz images of what is still open.
    active.assign(std::make_move_iterator(ritz_image.begin() + static_cast<std::ptrdiff_t>(newly_locked)),
                  std::make_move_iterator(ritz_image.end()));
    image.resize(active.size());
    orthonormalize(active, locked, rng);
  }
  throw ConvergenceError("spectral eigensolver did not converge in " + std::to_string(max_sweeps) + " sweeps",
                         worst_residual);
}

std::vector<std::uint32_t> kmeans(std::span<const double> points, std::size_t count, std::size_t dim,
                                  std::size_t k, std::size_t restarts, Rng& rng, double* best_inertia) {
  auto distance2 = [&](std::size_t i, const double* center) {
    double s = 0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = points[i * dim + d] - center[d];
      s += diff * diff;
    }
    return s;
  };

  std::vector<std::uint32_t> best_labels(count, 0);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t restart = 0; restart < restarts; ++restart) {
    // k-means++ seeding.
    std::vector<double> centers(k * dim, 0);
    std::vector<double> nearest(count, std::numeric_limits<double>::infinity());
    std::size_t first = rng.below(count);
    std::copy_n(points.begin() + static_cast<std::ptrdiff_t>(first * dim), dim, centers.begin());
    for (std::size_t c = 1; c < k; ++c) {
      double total = 0;
      for (std::size_t i = 0; i < count; ++i) {
        nearest[i] = std::min(nearest[i], distance2(i, &centers[(c - 1) * dim]));
        total += nearest[i];
      }
      std::size_t pick = count - 1;
      if (total > 0) {
        double target = rng.uniform() * total;
        for (std::size_t i = 0; i < count; ++i) {
          target -= nearest[i];
          if (target < 0) {
            pick = i;
            break;
          }
        }
      } else {
        pick = rng.below(count);
      }
      std::copy_n(points.begin() + static_cast<std::ptrdiff_t>(pick * dim), dim, centers.begin() + static_cast<std::ptrdiff_t>(c * dim));
    }

    // Lloyd iterations.
    std::vector<std::uint32_t> labels(count, 0);
    double inertia = 0;
    for (int iter = 0; iter < 300; ++iter) {
      bool changed = iter == 0;
      inertia = 0;
      for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t arg = 0;
        double dmin = distance2(i, &centers[0]);
        for (std::size_t c = 1; c < k; ++c) {
          const double d = distance2(i, &centers[c * dim]);
          if (d < dmin) {
            dmin = d;
            arg = static_cast<std::uint32_t>(c);
          }
        }
        if (labels[i] != arg) changed = true;
        labels[i] = arg;
        inertia += dmin;
      }
      if (!changed) break;
      std::vector<double> sums(k * dim, 0);
      std::vector<std::size_t> sizes(k, 0);
      for (std::size_t i = 0; i < count; ++i) {
        ++sizes[labels[i]];
        for (std::size_t d = 0; d < dim; ++d) sums[labels[i] * dim + d] += points[i * dim + d];
      }
      for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] == 0) continue;  // empty cluster keeps its old center
        for (std::size_t d = 0; d < dim; ++d) centers[c * dim + d] = sums[c * dim + d] / static_cast<double>(sizes[c]);
      }
    }
    if (inertia < best) {
      best = inertia;
      best_labels = labels;
    }
  }
  if (best_inertia) *best_inertia = best;
  return best_labels;
}

Partition spectral_cluster(const Graph& g, const DecomposerConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.node_count();
  if (n == 0) throw DomainError("spectral clustering needs a nonempty graph");
  const std::size_t k = resolved_cluster_count(cfg, n);
  if (k < 2) throw DomainError("cluster count must be at least 2");
  if (k > n) throw DomainError("cluster count exceeds node count");

  EigenResult eig = smallest_laplacian_eigenvectors(g, k, cfg.eigen_tolerance, cfg.eigen_max_sweeps, cfg.seed);

  // Row-normalized spectral embedding.
  std::vector<double> embedding(n * k);
  for (std::size_t v = 0; v < n; ++v) {
    double norm = 0;
    for (std::size_t c = 0; c < k; ++c) norm += eig.vectors[c][v] * eig.vectors[c][v];
    norm = std::sqrt(norm);
    for (std::size_t c = 0; c < k; ++c) embedding[v * k + c] = norm > 0 ? eig.vectors[c][v] / norm : 0.0;
  }
  Rng rng(cfg.seed);
  return densify(kmeans(embedding, n, k, k, cfg.kmeans_restarts, rng, nullptr));
}

}  // namespace mdlsum
