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

#ifndef SCENEMAP_BASELINES_HPP_
#define SCENEMAP_BASELINES_HPP_

#include <Eigen/Core>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "scenemap/features.hpp"

namespace scenemap {
namespace baselines {

struct Embedding2D {
  Eigen::MatrixXd coordinates;  // N x d
  std::string method_tag;
  std::map<std::string, double> hyperparameters;
  std::vector<std::string> warnings;
};

// Gaussian kernel bandwidth and density-normalization exponent. (The kernel
// bandwidth is called epsilon to keep it apart from the burst scale sigma.)
struct KernelSpec {
  double epsilon = 1.0;
  double alpha = 1.0;

  void validate() const;
};

// Top-k eigenpairs of a symmetric matrix, descending by algebraic
// eigenvalue, orthonormal eigenvectors, deterministic sign (the
// largest-magnitude coordinate of each eigenvector is positive). Asymmetry
// beyond tolerance is an error.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> sym_eig(const Eigen::MatrixXd& a,
                                                    int k);

// Projection of mean-centered rows onto the top-d principal axes.
Embedding2D pca_embed(const Eigen::MatrixXd& x, int d);

// Classical (Torgerson) scaling: double-centered squared-distance matrix,
// top-d eigenpairs scaled by sqrt(eigenvalue).
Embedding2D mmds_embed(const Eigen::MatrixXd& x, int d);

// Diffusion maps with Laplace-Beltrami (alpha = 1) density normalization:
// Gaussian affinities, Markov normalization, top d non-trivial right
// eigenvectors scaled by their eigenvalues.
Embedding2D dm_embed(const Eigen::MatrixXd& x, int d, const KernelSpec& kernel);

// Diffusion maps on a precomputed squared-distance matrix.
Embedding2D dm_embed_from_sq_distances(const Eigen::MatrixXd& sq_distances,
                                       int d, const KernelSpec& kernel,
                                       const std::string& method_tag = "dm");

// The row-stochastic diffusion operator dm_embed diagonalizes (exposed so
// its Markov and spectral properties can be checked directly).
Eigen::MatrixXd dm_markov_matrix(const Eigen::MatrixXd& sq_distances,
                                 const KernelSpec& kernel);

// Anisotropic diffusion maps over bursts: nodes are burst means, squared
// distances are symmetrized Mahalanobis forms built from rank-d truncated
// pseudo-inverses of the per-burst sample covariances.
Embedding2D adm_embed(const Eigen::MatrixXd& bursts, int samples_per_burst,
                      int d, const KernelSpec& kernel);

// Squared anisotropic distances used by adm_embed (exposed for tests).
Eigen::MatrixXd adm_sq_distances(const Eigen::MatrixXd& bursts,
                                 int samples_per_burst, int d,
                                 std::vector<std::string>* warnings = nullptr);

enum class Method { kPca, kMmds, kDm, kAdm };

std::string method_name(Method method);

struct BaselineOptions {
  // PCA/MMDS/DM consume the flattened (N*M) x D samples and burst positions
  // are the means of each burst's embedded samples; with false they consume
  // the N burst-mean features directly. A-DM always uses burst structure.
  bool fit_on_flattened = true;
};

// Burst-level embedding (N x d) for any method.
Embedding2D run_baseline(Method method, const BurstDataset& dataset, int d,
                         const KernelSpec& kernel,
                         const BaselineOptions& options);

// Mean feature vector per burst, N x D.
Eigen::MatrixXd burst_means(const BurstDataset& dataset);

// Row-block average: collapses a burst-major (N*M) x k matrix to N x k.
Eigen::MatrixXd average_per_burst(const Eigen::MatrixXd& rows,
                                  int samples_per_burst);

// Burst indices of the four RoI corners (default anchor choice).
std::vector<int> corner_anchor_indices(const SamplingGrid& grid);

// 20 log-spaced candidates around the median pairwise squared distance
// (median/100 .. median*100) of the data the method consumes.
std::vector<double> default_epsilon_grid(Method method,
                                         const BurstDataset& dataset,
                                         const BaselineOptions& options);

struct EpsilonTrace {
  double epsilon = 0.0;
  double anchor_mae_cm = 0.0;
  bool valid = false;
  std::string note;
};

// Picks the kernel bandwidth that minimizes the anchor MAE after a
// Procrustes fit on the anchors only; ties go to the smaller epsilon.
KernelSpec tune_epsilon(Method method, const BurstDataset& dataset,
                        const std::vector<int>& anchor_indices,
                        const Eigen::MatrixXd& anchor_positions,
                        const std::vector<double>& epsilon_grid,
                        const BaselineOptions& options,
                        std::vector<EpsilonTrace>* trace = nullptr);

}  // namespace baselines
}  // namespace scenemap

#endif  // SCENEMAP_BASELINES_HPP_
