// Copyright 2026 the bmcgc authors
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

#include "bmcgc/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "bmcgc/kernels.hpp"

namespace bmcgc {

DistanceMatrix edm_from_points(const PointSet& p) {
  const auto n = p.n();
  const int d = static_cast<int>(p.d());
  Matrix out(n, n);
  // Row i against all points. (a-b)^2 == (b-a)^2 bit for bit, so the result
  // is exactly symmetric and exactly hollow without a fixup pass.
  RowMajorMatrix rows(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::RowVectorXd q = p.coords.row(i);
    kernels::active().sqdist_row(p.coords.data(), n, p.coords.rows(), d,
                                 q.data(), rows.data() + i * n);
  }
  out = rows;
  return DistanceMatrix(std::move(out));
}

GramMatrix gram_from_points(const PointSet& p) {
  Matrix g = p.coords * p.coords.transpose();
  g = 0.5 * (g + g.transpose()).eval();
  return GramMatrix(std::move(g));
}

DistanceMatrix edm_from_gram(const GramMatrix& g) {
  const auto n = g.n();
  const Vector diag = g.entries.diagonal();
  Matrix d = diag.replicate(1, n) + diag.transpose().replicate(n, 1) -
             2.0 * g.entries;
  d.diagonal().setZero();
  d = 0.5 * (d + d.transpose()).eval();
  return DistanceMatrix(std::move(d));
}

CenteredGram gram_from_edm_centered(const DistanceMatrix& dm) {
  const auto n = dm.n();
  if (n == 0) throw std::invalid_argument("gram_from_edm_centered: empty matrix");
  // -1/2 J D J expanded with row/column means; avoids forming J.
  const Vector row_mean = dm.entries.rowwise().mean();
  const double total_mean = dm.entries.mean();
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = -0.5 * (dm.entries(i, j) - row_mean(i) - row_mean(j) + total_mean);
  g = 0.5 * (g + g.transpose()).eval();

  CenteredGram result;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
  const double max_abs = eig.eigenvalues().cwiseAbs().maxCoeff();
  result.min_eigenvalue = eig.eigenvalues().minCoeff();
  result.psd_ok = result.min_eigenvalue >= -kPsdTolerance * std::max(max_abs, 1e-300);
  result.gram = GramMatrix(std::move(g));
  return result;
}

double relative_error(const DistanceMatrix& estimate, const DistanceMatrix& truth) {
  if (estimate.entries.rows() != truth.entries.rows() ||
      estimate.entries.cols() != truth.entries.cols())
    throw std::invalid_argument("relative_error: shape mismatch");
  const double denom_sq = truth.entries.squaredNorm();
  if (denom_sq == 0.0)
    throw std::invalid_argument("relative_error: truth matrix is all-zero");
  const double num_sq = kernels::active().sum_sq_diff(
      estimate.entries.data(), truth.entries.data(), truth.entries.size());
  return std::sqrt(num_sq / denom_sq);
}

int numerical_rank(const Matrix& m, double tolerance) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = tolerance * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

EdmValidationReport validate_edm(const Matrix& candidate, int d) {
  EdmValidationReport report;
  report.square = candidate.rows() == candidate.cols() && candidate.rows() > 0;
  if (!report.square) return report;
  const auto n = candidate.rows();

  report.symmetric = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double gap = std::abs(candidate(i, j) - candidate(j, i));
      if (gap > report.worst_asymmetry) {
        report.worst_asymmetry = gap;
        report.worst_asymmetry_i = i;
        report.worst_asymmetry_j = j;
      }
    }
  }
  if (report.worst_asymmetry > 0.0) report.symmetric = false;

  report.worst_diagonal = candidate.diagonal().cwiseAbs().maxCoeff();
  report.hollow = report.worst_diagonal == 0.0;

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (candidate(i, j) < 0.0) {
        ++report.negative_entries;
        report.most_negative_entry =
            std::min(report.most_negative_entry, candidate(i, j));
      }
    }
  }

  report.edm_rank = numerical_rank(candidate);
  const Matrix symmetrized = 0.5 * (candidate + candidate.transpose());
  const CenteredGram centered = gram_from_edm_centered(DistanceMatrix(symmetrized));
  report.gram_rank = numerical_rank(centered.gram.entries);
  report.min_gram_eigenvalue = centered.min_eigenvalue;
  report.psd_ok = centered.psd_ok;
  report.edm_rank_ok = report.edm_rank <= d + 2;
  report.gram_rank_ok = report.gram_rank <= d;
  return report;
}

std::vector<std::string> EdmValidationReport::describe() const {
  std::vector<std::string> lines;
  if (!square) {
    lines.push_back("matrix is not square");
    return lines;
  }
  if (symmetric) {
    lines.push_back("symmetry: ok");
  } else {
    lines.push_back("symmetry: VIOLATED, worst |D(i,j)-D(j,i)| = " +
                    std::to_string(worst_asymmetry) + " at (" +
                    std::to_string(worst_asymmetry_i) + "," +
                    std::to_string(worst_asymmetry_j) + ")");
  }
  lines.push_back(hollow ? "hollowness: ok"
                         : "hollowness: VIOLATED, max |diagonal| = " +
                               std::to_string(worst_diagonal));
  lines.push_back(negative_entries == 0
                      ? "nonnegativity: ok"
                      : "nonnegativity: VIOLATED, " +
                            std::to_string(negative_entries) +
                            " negative entries, most negative = " +
                            std::to_string(most_negative_entry));
  lines.push_back("numerical rank of matrix: " + std::to_string(edm_rank) +
                  (edm_rank_ok ? " (<= d+2, ok)" : " (exceeds d+2)"));
  lines.push_back("numerical rank of centered Gram: " + std::to_string(gram_rank) +
                  (gram_rank_ok ? " (<= d, ok)" : " (exceeds d)"));
  lines.push_back("most negative Gram eigenvalue: " +
                  std::to_string(min_gram_eigenvalue) +
                  (psd_ok ? " (PSD ok)" : " (PSD VIOLATED)"));
  return lines;
}

}  // namespace bmcgc
