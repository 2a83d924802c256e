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

#include "scenemap/eval.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "scenemap/errors.hpp"

namespace scenemap {
namespace eval {

Eigen::MatrixXd RigidCalibration::apply(const Eigen::MatrixXd& points) const {
  return ((scale * points) * rotation.transpose()).rowwise() + shift;
}

std::pair<Eigen::MatrixXd, RigidCalibration> procrustes_align(
    const Eigen::MatrixXd& estimate, const Eigen::MatrixXd& reference,
    bool with_scaling) {
  if (estimate.rows() != reference.rows() ||
      estimate.cols() != reference.cols())
    throw ArgumentError("procrustes_align: shape mismatch");
  const Eigen::Index n = estimate.rows();
  const Eigen::Index d = estimate.cols();
  if (n < d + 1)
    throw ArgumentError("procrustes_align: need at least d + 1 points");

  const Eigen::RowVectorXd est_mean = estimate.colwise().mean();
  const Eigen::RowVectorXd ref_mean = reference.colwise().mean();
  const Eigen::MatrixXd est_c = estimate.rowwise() - est_mean;
  const Eigen::MatrixXd ref_c = reference.rowwise() - ref_mean;

  const double est_var = est_c.squaredNorm();
  if (!(est_var > 0.0))
    throw NumericError("procrustes_align: degenerate configuration "
                       "(all estimate points identical)");

  // Cross-covariance SVD; no determinant correction, reflections allowed.
  const Eigen::MatrixXd cross = ref_c.transpose() * est_c;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd rotation = svd.matrixU() * svd.matrixV().transpose();

  RigidCalibration cal;
  cal.rotation = rotation;
  cal.scale = 1.0;
  if (with_scaling) {
    cal.scale = svd.singularValues().sum() / est_var;
    if (!(cal.scale > 0.0))
      throw NumericError("procrustes_align: non-positive similarity scale");
  }
  cal.shift = ref_mean - cal.scale * (est_mean * rotation.transpose());
  return {cal.apply(estimate), cal};
}

double mean_distance(const Eigen::MatrixXd& aligned,
                     const Eigen::MatrixXd& reference) {
  if (aligned.rows() != reference.rows() || aligned.cols() != reference.cols())
    throw ArgumentError("mean_distance: shape mismatch");
  if (aligned.rows() == 0) throw ArgumentError("mean_distance: empty input");
  return (aligned - reference).rowwise().norm().mean();
}

double mae(const Eigen::MatrixXd& aligned, const Eigen::MatrixXd& reference) {
  return 100.0 * mean_distance(aligned, reference);
}

Eigen::VectorXd axis_correlation(const Eigen::MatrixXd& aligned,
                                 const Eigen::MatrixXd& reference) {
  if (aligned.rows() != reference.rows() || aligned.cols() != reference.cols())
    throw ArgumentError("axis_correlation: shape mismatch");
  if (aligned.rows() < 2)
    throw ArgumentError("axis_correlation: need at least two points");

  const Eigen::Index d = aligned.cols();
  Eigen::VectorXd out(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const Eigen::VectorXd a = aligned.col(j).array() - aligned.col(j).mean();
    const Eigen::VectorXd r = reference.col(j).array() - reference.col(j).mean();
    const double denom = a.norm() * r.norm();
    if (!(denom > 0.0))
      throw NumericError("axis_correlation: zero-variance column");
    out(j) = a.dot(r) / denom;
  }
  return out;
}

std::vector<EvalRow> comparison_report(
    const std::map<std::string, Eigen::MatrixXd>& embeddings,
    const Eigen::MatrixXd& reference, const std::string& rt60_tag,
    bool with_scaling) {
  if (embeddings.empty())
    throw ArgumentError("comparison_report: no embeddings");
  std::vector<EvalRow> rows;
  rows.reserve(embeddings.size());
  for (const auto& [method, coords] : embeddings) {
    if (coords.rows() != reference.rows())
      throw ArgumentError("comparison_report: embedding '" + method +
                          "' row count differs from reference");
    auto [aligned, cal] = procrustes_align(coords, reference, with_scaling);
    EvalRow row;
    row.method = method;
    row.rt60_tag = rt60_tag;
    row.mae_cm = mae(aligned, reference);
    row.per_axis_pearson = axis_correlation(aligned, reference);
    row.calibration = cal;
    row.n_points = static_cast<int>(reference.rows());
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const EvalRow& a, const EvalRow& b) {
    return a.mae_cm != b.mae_cm ? a.mae_cm < b.mae_cm : a.method < b.method;
  });
  return rows;
}

}  // namespace eval
}  // namespace scenemap
