#pragma once

#include <Eigen/Dense>

namespace noncollide::linalg {

struct LogDet {
    double log_abs;  // -inf for a singular matrix
    int sign;        // -1, 0, +1

    double value() const;
};

// LU with partial pivoting.
LogDet log_det(const Eigen::MatrixXd& a);

// Determinant of the matrix with entries exp(log_entries(i,j)) (and signs
// `signs(i,j)` if given).  Row maxima then column maxima are pulled out before
// the LU so entries spanning hundreds of orders of magnitude stay representable.
LogDet log_det_from_logs(const Eigen::MatrixXd& log_entries);
LogDet log_det_from_logs(const Eigen::MatrixXd& log_entries, const Eigen::MatrixXd& signs);

double det(const Eigen::MatrixXd& a);

}  // namespace noncollide::linalg
