#pragma once

#include <complex>

#include <Eigen/Dense>

namespace sourcecount {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Sensor-major storage: row i holds the N samples of sensor i contiguously.
using SnapshotMatrix =
    Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

} // namespace sourcecount
