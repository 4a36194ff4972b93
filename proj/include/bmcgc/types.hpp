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

#pragma once

#include <Eigen/Core>

namespace bmcgc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n points in R^d, one per row. Column-major storage, so coordinate k of all
/// points is contiguous -- the layout the kernels operate on.
struct PointSet {
  Matrix coords;

  PointSet() = default;
  explicit PointSet(Matrix c) : coords(std::move(c)) {}

  Eigen::Index n() const { return coords.rows(); }
  Eigen::Index d() const { return coords.cols(); }
};

/// Symmetric hollow matrix of squared pairwise distances. Entries stay
/// squared throughout; nothing in the model ever needs the root.
struct DistanceMatrix {
  Matrix entries;

  DistanceMatrix() = default;
  explicit DistanceMatrix(Matrix e) : entries(std::move(e)) {}

  Eigen::Index n() const { return entries.rows(); }
};

/// G = P P^T. Symmetric PSD, rank at most d.
struct GramMatrix {
  Matrix entries;

  GramMatrix() = default;
  explicit GramMatrix(Matrix e) : entries(std::move(e)) {}

  Eigen::Index n() const { return entries.rows(); }
};

}  // namespace bmcgc
