#include "noncollide/linalg.hpp"

#include <cmath>
#include <limits>

namespace noncollide::linalg {

double LogDet::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

LogDet log_det(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    if (n == 0) return {0.0, 1};
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const Eigen::MatrixXd& u = lu.matrixLU();
    double log_abs = 0.0;
    int sign = int(lu.permutationP().determinant());
    for (Eigen::Index i = 0; i < n; ++i) {
        double d = u(i, i);
        if (d == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
        if (d < 0.0) sign = -sign;
        log_abs += std::log(std::abs(d));
    }
    return {log_abs, sign};
}

LogDet log_det_from_logs(const Eigen::MatrixXd& l, const Eigen::MatrixXd& signs) {
    const Eigen::Index n = l.rows();
    Eigen::MatrixXd m = l;
    double shift = 0.0;
    const double ninf = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        double r = m.row(i).maxCoeff();
        if (r == ninf) return {ninf, 0};
        m.row(i).array() -= r;
        shift += r;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        double c = m.col(j).maxCoeff();
        if (c == ninf) return {ninf, 0};
        m.col(j).array() -= c;
        shift += c;
    }
    Eigen::MatrixXd e = m.array().exp().matrix();
    if (signs.size() > 0) e = e.cwiseProduct(signs);
    LogDet d = log_det(e);
    d.log_abs += shift;
    return d;
}

LogDet log_det_from_logs(const Eigen::MatrixXd& l) { return log_det_from_logs(l, Eigen::MatrixXd()); }

double det(const Eigen::MatrixXd& a) { return log_det(a).value(); }

}  // namespace noncollide::linalg
