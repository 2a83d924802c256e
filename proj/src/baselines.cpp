// Copyright 2026 The scenemap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scenemap/baselines.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "scenemap/errors.hpp"
#include "scenemap/eval.hpp"

namespace scenemap {
namespace baselines {

namespace {

constexpr double kRankThreshold = 1e-8;  // relative pseudo-inverse cutoff

Eigen::MatrixXd pairwise_sq_distances(const Eigen::MatrixXd& x) {
  const Eigen::VectorXd norms = x.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = norms.replicate(1, x.rows()) +
                       norms.transpose().replicate(x.rows(), 1);
  d2.noalias() -= 2.0 * x * x.transpose();
  // Clamp the tiny negatives roundoff produces and zero the diagonal.
  d2 = d2.cwiseMax(0.0);
  d2.diagonal().setZero();
  return Eigen::MatrixXd((d2 + d2.transpose()) / 2.0);
}

void apply_sign_convention(Eigen::MatrixXd* vectors) {
  for (Eigen::Index j = 0; j < vectors->cols(); ++j) {
    Eigen::Index max_row = 0;
    double max_abs = -1.0;
    for (Eigen::Index i = 0; i < vectors->rows(); ++i) {
      const double v = std::abs((*vectors)(i, j));
      if (v > max_abs) {
        max_abs = v;
        max_row = i;
      }
    }
    if ((*vectors)(max_row, j) < 0.0) vectors->col(j) *= -1.0;
  }
}

}  // namespace

void KernelSpec::validate() const {
  if (!(epsilon > 0.0)) throw ArgumentError("KernelSpec: epsilon must be > 0");
  if (alpha < 0.0 || alpha > 1.0)
    throw ArgumentError("KernelSpec: alpha must be in [0, 1]");
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> sym_eig(const Eigen::MatrixXd& a,
                                                    int k) {
  if (a.rows() != a.cols()) throw ArgumentError("sym_eig: matrix not square");
  const Eigen::Index n = a.rows();
  if (k < 1 || k > n) throw ArgumentError("sym_eig: k out of range");

  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw ArgumentError("sym_eig: matrix asymmetric beyond tolerance");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      (a + a.transpose()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw NumericError("sym_eig: eigendecomposition failed");

  // Eigen returns ascending order; take the top k, descending.
  Eigen::VectorXd values(k);
  Eigen::MatrixXd vectors(n, k);
  for (int j = 0; j < k; ++j) {
    values(j) = solver.eigenvalues()(n - 1 - j);
    vectors.col(j) = solver.eigenvectors().col(n - 1 - j);
  }
  apply_sign_convention(&vectors);
  return {values, vectors};
}

Embedding2D pca_embed(const Eigen::MatrixXd& x, int d) {
  if (x.rows() <= d)
    throw ArgumentError("pca_embed: need more than d observations");
  Embedding2D emb;
  emb.method_tag = "pca";

  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  const Eigen::MatrixXd cov = centered.transpose() * centered /
                              static_cast<double>(x.rows() - 1);
  auto [values, vectors] = sym_eig(cov, d);

  const double top = std::max(values(0), 0.0);
  for (int j = 0; j < d; ++j) {
    emb.hyperparameters["eigenvalue_" + std::to_string(j)] = values(j);
    if (values(j) <= 1e-12 * std::max(top, 1e-300))
      emb.warnings.push_back("rank-deficient: component " + std::to_string(j) +
                             " has no variance");
  }
  emb.coordinates = centered * vectors;
  return emb;
}

Embedding2D mmds_embed(const Eigen::MatrixXd& x, int d) {
  if (x.rows() <= d)
    throw ArgumentError("mmds_embed: need more than d observations");
  Embedding2D emb;
  emb.method_tag = "mmds";

  const Eigen::Index n = x.rows();
  const Eigen::MatrixXd d2 = pairwise_sq_distances(x);
  // Double centering: B = -1/2 J D2 J.
  const Eigen::VectorXd row_mean = d2.rowwise().mean();
  const double grand_mean = d2.mean();
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      b(i, j) = -0.5 * (d2(i, j) - row_mean(i) - row_mean(j) + grand_mean);
  b = (b + b.transpose()) / 2.0;

  auto [values, vectors] = sym_eig(b, d);
  emb.coordinates.resize(n, d);
  for (int j = 0; j < d; ++j) {
    emb.hyperparameters["eigenvalue_" + std::to_string(j)] = values(j);
    if (values(j) > 0.0) {
      emb.coordinates.col(j) = vectors.col(j) * std::sqrt(values(j));
    } else {
      emb.coordinates.col(j).setZero();
      emb.warnings.push_back("non-positive eigenvalue for component " +
                             std::to_string(j));
    }
  }
  return emb;
}

namespace {

// Gaussian affinities with alpha density normalization; shared by the
// embedding path and the exposed Markov operator.
Eigen::MatrixXd dm_normalized_affinity(const Eigen::MatrixXd& sq_distances,
                                       const KernelSpec& kernel) {
  kernel.validate();
  const Eigen::Index n = sq_distances.rows();
  if (n != sq_distances.cols())
    throw ArgumentError("dm_embed: distance matrix not square");

  Eigen::MatrixXd w = (-sq_distances / kernel.epsilon).array().exp();
  w = (w + w.transpose()) / 2.0;

  // Numerically zero off-diagonal rows mean a disconnected kernel graph.
  for (Eigen::Index i = 0; i < n; ++i) {
    const double off_diag = w.row(i).sum() - w(i, i);
    if (!(off_diag > 1e-15))
      throw NumericError("dm_embed: kernel graph disconnected "
                         "(numerically zero row " + std::to_string(i) + ")");
  }

  // Density normalization W / (q q^T)^alpha; alpha = 1 removes the sampling
  // density and approximates the Laplace-Beltrami operator.
  if (kernel.alpha != 0.0) {
    const Eigen::VectorXd q = w.rowwise().sum();
    Eigen::VectorXd q_pow(n);
    for (Eigen::Index i = 0; i < n; ++i)
      q_pow(i) = std::pow(q(i), kernel.alpha);
    w = w.cwiseQuotient(q_pow * q_pow.transpose());
  }
  return w;
}

}  // namespace

Eigen::MatrixXd dm_markov_matrix(const Eigen::MatrixXd& sq_distances,
                                 const KernelSpec& kernel) {
  const Eigen::MatrixXd w = dm_normalized_affinity(sq_distances, kernel);
  const Eigen::VectorXd degree = w.rowwise().sum();
  return degree.cwiseInverse().asDiagonal() * w;
}

Embedding2D dm_embed_from_sq_distances(const Eigen::MatrixXd& sq_distances,
                                       int d, const KernelSpec& kernel,
                                       const std::string& method_tag) {
  const Eigen::Index n = sq_distances.rows();
  if (n <= d + 1)
    throw ArgumentError("dm_embed: need more than d + 1 observations");

  const Eigen::MatrixXd w = dm_normalized_affinity(sq_distances, kernel);

  // Markov conjugation: S = D^-1/2 W D^-1/2 shares eigenvalues with the row
  // normalized kernel; right eigenvectors are D^-1/2 times S's.
  const Eigen::VectorXd degree = w.rowwise().sum();
  const Eigen::VectorXd inv_sqrt_degree = degree.array().rsqrt();
  Eigen::MatrixXd s =
      inv_sqrt_degree.asDiagonal() * w * inv_sqrt_degree.asDiagonal();
  s = (s + s.transpose()) / 2.0;

  auto [values, vectors] = sym_eig(s, d + 1);

  Embedding2D emb;
  emb.method_tag = method_tag;
  emb.hyperparameters["epsilon"] = kernel.epsilon;
  emb.hyperparameters["alpha"] = kernel.alpha;
  if (std::abs(values(0) - 1.0) > 1e-6)
    emb.warnings.push_back("leading eigenvalue deviates from 1");

  emb.coordinates.resize(n, d);
  for (int j = 0; j < d; ++j) {
    emb.hyperparameters["eigenvalue_" + std::to_string(j + 1)] = values(j + 1);
    Eigen::VectorXd psi = inv_sqrt_degree.cwiseProduct(vectors.col(j + 1));
    emb.coordinates.col(j) = values(j + 1) * psi;
  }
  return emb;
}

Embedding2D dm_embed(const Eigen::MatrixXd& x, int d, const KernelSpec& kernel) {
  return dm_embed_from_sq_distances(pairwise_sq_distances(x), d, kernel, "dm");
}

Eigen::MatrixXd adm_sq_distances(const Eigen::MatrixXd& bursts,
                                 int samples_per_burst, int d,
                                 std::vector<std::string>* warnings) {
  const int m = samples_per_burst;
  if (m < d + 1)
    throw ArgumentError("adm_sq_distances: need at least d + 1 samples per burst");
  if (bursts.rows() == 0 || bursts.rows() % m != 0)
    throw ArgumentError("adm_sq_distances: rows not a multiple of burst size");
  const Eigen::Index n = bursts.rows() / m;
  const Eigen::Index dim = bursts.cols();

  // Per burst: mean and the rank-d whitening map P with P^T P = C^+ (top-d
  // truncated). The covariance spectrum comes from the M x M Gram matrix, so
  // the ambient dimension never enters the eigenproblem.
  Eigen::MatrixXd means(n, dim);
  Eigen::MatrixXd whiteners(n * d, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto block = bursts.middleRows(i * m, m);
    const Eigen::RowVectorXd mean = block.colwise().mean();
    means.row(i) = mean;
    const Eigen::MatrixXd centered = block.rowwise() - mean;
    const Eigen::MatrixXd gram =
        centered * centered.transpose() / static_cast<double>(m - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        (gram + gram.transpose()) / 2.0);
    if (solver.info() != Eigen::Success)
      throw NumericError("adm_sq_distances: Gram eigendecomposition failed");

    const double lambda_max = std::max(solver.eigenvalues()(m - 1), 0.0);
    if (!(lambda_max > 0.0))
      throw NumericError("adm_sq_distances: burst " + std::to_string(i) +
                         " has zero sample covariance");
    const double floor = kRankThreshold * lambda_max;
    for (int j = 0; j < d; ++j) {
      double lambda = solver.eigenvalues()(m - 1 - j);
      if (lambda < floor) {
        lambda = floor;
        if (warnings)
          warnings->push_back("burst " + std::to_string(i) +
                              ": covariance rank below d, regularized");
      }
      // Covariance eigenvector v = centered^T g / sqrt((m-1) * lambda);
      // the whitening row is v / sqrt(lambda).
      const Eigen::VectorXd g = solver.eigenvectors().col(m - 1 - j);
      whiteners.row(i * d + j) =
          (centered.transpose() * g).transpose() /
          (std::sqrt(static_cast<double>(m - 1) * lambda) * std::sqrt(lambda));
    }
  }

  // projections(i*d + j, l) = [P_i y_l]_j for every burst mean y_l.
  const Eigen::MatrixXd projections = whiteners * means.transpose();
  Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto pi = projections.middleRows(i * d, d);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto pj = projections.middleRows(j * d, d);
      const double with_i = (pi.col(i) - pi.col(j)).squaredNorm();
      const double with_j = (pj.col(i) - pj.col(j)).squaredNorm();
      const double dist = 0.5 * (with_i + with_j);
      d2(i, j) = dist;
      d2(j, i) = dist;
    }
  }
  return d2;
}

Embedding2D adm_embed(const Eigen::MatrixXd& bursts, int samples_per_burst,
                      int d, const KernelSpec& kernel) {
  std::vector<std::string> warnings;
  const Eigen::MatrixXd d2 =
      adm_sq_distances(bursts, samples_per_burst, d, &warnings);
  Embedding2D emb = dm_embed_from_sq_distances(d2, d, kernel, "adm");
  emb.warnings.insert(emb.warnings.end(), warnings.begin(), warnings.end());
  return emb;
}

std::string method_name(Method method) {
  switch (method) {
    case Method::kPca: return "pca";
    case Method::kMmds: return "mmds";
    case Method::kDm: return "dm";
    case Method::kAdm: return "adm";
  }
  return "unknown";
}

Eigen::MatrixXd average_per_burst(const Eigen::MatrixXd& rows,
                                  int samples_per_burst) {
  if (samples_per_burst < 1 || rows.rows() % samples_per_burst != 0)
    throw ArgumentError("average_per_burst: rows not a multiple of burst size");
  const Eigen::Index n = rows.rows() / samples_per_burst;
  Eigen::MatrixXd out(n, rows.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    out.row(i) =
        rows.middleRows(i * samples_per_burst, samples_per_burst).colwise().mean();
  return out;
}

Eigen::MatrixXd burst_means(const BurstDataset& dataset) {
  return average_per_burst(dataset.features, dataset.samples_per_burst);
}

Embedding2D run_baseline(Method method, const BurstDataset& dataset, int d,
                         const KernelSpec& kernel,
                         const BaselineOptions& options) {
  dataset.validate();
  if (method == Method::kAdm)
    return adm_embed(dataset.features, dataset.samples_per_burst, d, kernel);

  const Eigen::MatrixXd& input =
      options.fit_on_flattened ? dataset.features : burst_means(dataset);
  Embedding2D emb;
  switch (method) {
    case Method::kPca: emb = pca_embed(input, d); break;
    case Method::kMmds: emb = mmds_embed(input, d); break;
    case Method::kDm: emb = dm_embed(input, d, kernel); break;
    case Method::kAdm: break;  // handled above
  }
  if (options.fit_on_flattened)
    emb.coordinates =
        average_per_burst(emb.coordinates, dataset.samples_per_burst);
  return emb;
}

std::vector<int> corner_anchor_indices(const SamplingGrid& grid) {
  const int p = grid.points_per_axis;
  return {0, p - 1, p * (p - 1), p * p - 1};
}

std::vector<double> default_epsilon_grid(Method method,
                                         const BurstDataset& dataset,
                                         const BaselineOptions& options) {
  Eigen::MatrixXd d2;
  if (method == Method::kAdm) {
    d2 = adm_sq_distances(dataset.features, dataset.samples_per_burst, 2);
  } else {
    Eigen::MatrixXd input =
        options.fit_on_flattened ? dataset.features : burst_means(dataset);
    // The median is stable under subsampling; cap the pair count so the
    // grid stays cheap on large datasets.
    constexpr Eigen::Index kMaxPoints = 2048;
    if (input.rows() > kMaxPoints) {
      const Eigen::Index stride = (input.rows() + kMaxPoints - 1) / kMaxPoints;
      Eigen::MatrixXd sub((input.rows() + stride - 1) / stride, input.cols());
      for (Eigen::Index i = 0, r = 0; i < input.rows(); i += stride, ++r)
        sub.row(r) = input.row(i);
      input = std::move(sub);
    }
    d2 = pairwise_sq_distances(input);
  }

  std::vector<double> off_diag;
  off_diag.reserve(static_cast<std::size_t>(d2.rows()) * (d2.rows() - 1) / 2);
  for (Eigen::Index i = 0; i < d2.rows(); ++i)
    for (Eigen::Index j = i + 1; j < d2.cols(); ++j)
      off_diag.push_back(d2(i, j));
  if (off_diag.empty())
    throw ArgumentError("default_epsilon_grid: not enough points");
  std::nth_element(off_diag.begin(), off_diag.begin() + off_diag.size() / 2,
                   off_diag.end());
  const double median = off_diag[off_diag.size() / 2];
  if (!(median > 0.0))
    throw NumericError("default_epsilon_grid: zero median pairwise distance");

  constexpr int kGridSize = 20;
  std::vector<double> grid(kGridSize);
  const double lo = std::log(median / 100.0);
  const double hi = std::log(median * 100.0);
  for (int i = 0; i < kGridSize; ++i)
    grid[i] = std::exp(lo + (hi - lo) * i / (kGridSize - 1));
  return grid;
}

KernelSpec tune_epsilon(Method method, const BurstDataset& dataset,
                        const std::vector<int>& anchor_indices,
                        const Eigen::MatrixXd& anchor_positions,
                        const std::vector<double>& epsilon_grid,
                        const BaselineOptions& options,
                        std::vector<EpsilonTrace>* trace) {
  if (method != Method::kDm && method != Method::kAdm)
    throw ArgumentError("tune_epsilon: only DM and A-DM take a bandwidth");
  if (anchor_indices.size() < 2 ||
      anchor_positions.rows() != static_cast<Eigen::Index>(anchor_indices.size()))
    throw ArgumentError("tune_epsilon: need at least two matched anchors");
  if (epsilon_grid.empty())
    throw ArgumentError("tune_epsilon: empty candidate grid");

  std::vector<double> grid = epsilon_grid;
  std::sort(grid.begin(), grid.end());

  double best_mae = std::numeric_limits<double>::infinity();
  double best_epsilon = -1.0;
  for (double epsilon : grid) {
    EpsilonTrace row;
    row.epsilon = epsilon;
    try {
      KernelSpec kernel{epsilon, 1.0};
      const Embedding2D emb = run_baseline(method, dataset, 2, kernel, options);
      Eigen::MatrixXd anchor_est(anchor_indices.size(), emb.coordinates.cols());
      for (std::size_t a = 0; a < anchor_indices.size(); ++a)
        anchor_est.row(static_cast<Eigen::Index>(a)) =
            emb.coordinates.row(anchor_indices[a]);
      auto [aligned, cal] = eval::procrustes_align(anchor_est, anchor_positions);
      row.anchor_mae_cm = eval::mae(aligned, anchor_positions);
      row.valid = true;
      if (row.anchor_mae_cm < best_mae) {
        best_mae = row.anchor_mae_cm;
        best_epsilon = epsilon;
      }
    } catch (const Error& e) {
      row.valid = false;
      row.note = e.what();
    }
    if (trace) trace->push_back(row);
  }
  if (best_epsilon < 0.0)
    throw NumericError("tune_epsilon: no candidate produced a valid embedding");
  return KernelSpec{best_epsilon, 1.0};
}

}  // namespace baselines
}  // namespace scenemap
