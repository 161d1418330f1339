#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace standby {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;        // column vector
using RowVector = Eigen::RowVectorXd;
// Event matrices are mostly zero (a few percent dense for the example model),
// so they live in row-major sparse storage.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using SparseColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

}  // namespace standby
