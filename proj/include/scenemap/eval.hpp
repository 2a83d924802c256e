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

#ifndef SCENEMAP_EVAL_HPP_
#define SCENEMAP_EVAL_HPP_

#include <Eigen/Core>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace scenemap {
namespace eval {

// Orthogonal calibration fitted by procrustes_align. The rotation may be a
// reflection (determinant -1); scale stays 1 unless similarity mode was
// requested.
struct RigidCalibration {
  Eigen::MatrixXd rotation;   // d x d, R^T R = I
  Eigen::RowVectorXd shift;   // 1 x d
  double scale = 1.0;

  Eigen::MatrixXd apply(const Eigen::MatrixXd& points) const;
};

// Least-squares orthogonal transform + shift mapping estimate onto
// reference (rows correspond). Reflections are allowed: the fit is over the
// full orthogonal group. with_scaling additionally fits a global scale
// (similarity mode, off everywhere by default).
std::pair<Eigen::MatrixXd, RigidCalibration> procrustes_align(
    const Eigen::MatrixXd& estimate, const Eigen::MatrixXd& reference,
    bool with_scaling = false);

// Mean Euclidean row distance in the input units.
double mean_distance(const Eigen::MatrixXd& aligned,
                     const Eigen::MatrixXd& reference);

// Mean absolute position error in centimeters; reference is in meters.
double mae(const Eigen::MatrixXd& aligned, const Eigen::MatrixXd& reference);

// Pearson correlation per matched coordinate axis.
Eigen::VectorXd axis_correlation(const Eigen::MatrixXd& aligned,
                                 const Eigen::MatrixXd& reference);

struct EvalRow {
  std::string method;
  std::string rt60_tag;
  double mae_cm = 0.0;
  Eigen::VectorXd per_axis_pearson;
  RigidCalibration calibration;
  int n_points = 0;
};

// Calibrates and scores every method against the same reference; rows come
// back sorted by ascending MAE (method name breaks ties).
std::vector<EvalRow> comparison_report(
    const std::map<std::string, Eigen::MatrixXd>& embeddings,
    const Eigen::MatrixXd& reference, const std::string& rt60_tag,
    bool with_scaling = false);

}  // namespace eval
}  // namespace scenemap

#endif  // SCENEMAP_EVAL_HPP_
