#include "banditlab/linalg.hpp"

#include <cmath>
#include <string>

#include "banditlab/errors.hpp"

namespace banditlab::linalg {

namespace {
void check_dims(Eigen::Index rows, Eigen::Index vec, const char* where) {
    if (rows != vec) {
        throw ConfigError(std::string(where) + ": dimension mismatch (" +
                          std::to_string(rows) + " vs " + std::to_string(vec) +
                          ")");
    }
}
}  // namespace

Matrix rank_one_update(const Matrix& B, const Vector& x) {
    check_dims(B.rows(), x.size(), "rank_one_update");
    Matrix out = B + x * x.transpose();
    // enforce exact symmetry so drift cannot accumulate over long runs
    out = ((out + out.transpose()) * 0.5).eval();
    return out;
}

Matrix sherman_morrison_inverse(const Matrix& B_inv, const Vector& x) {
    check_dims(B_inv.rows(), x.size(), "sherman_morrison_inverse");
    Vector u = B_inv * x;
    double denom = 1.0 + x.dot(u);
    Matrix out = B_inv - (u * u.transpose()) / denom;
    out = ((out + out.transpose()) * 0.5).eval();
    return out;
}

Matrix cholesky_lower(const Matrix& B) {
    Eigen::LLT<Matrix> llt(B);
    if (llt.info() != Eigen::Success) {
        throw DegeneracyError("cholesky_lower: matrix is not positive definite");
    }
    return llt.matrixL();
}

void cholesky_rank_one_update(Matrix& L, Vector x) {
    const Eigen::Index d = L.rows();
    check_dims(d, x.size(), "cholesky_rank_one_update");
    for (Eigen::Index k = 0; k < d; ++k) {
        double lkk = L(k, k);
        double r = std::hypot(lkk, x(k));
        double c = r / lkk;
        double s = x(k) / lkk;
        L(k, k) = r;
        if (k + 1 < d) {
            L.col(k).tail(d - k - 1) =
                (L.col(k).tail(d - k - 1) + s * x.tail(d - k - 1)) / c;
            x.tail(d - k - 1) =
                c * x.tail(d - k - 1) - s * L.col(k).tail(d - k - 1);
        }
    }
}

Vector sample_mvn(const Vector& mean, double scale, const Matrix& chol_B,
                  Rng& rng) {
    check_dims(chol_B.rows(), mean.size(), "sample_mvn");
    if (scale == 0.0) return mean;
    Vector z(mean.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.next_gaussian();
    Vector w = chol_B.transpose()
                   .triangularView<Eigen::Upper>()
                   .solve(z);
    return mean + scale * w;
}

double mahalanobis_width(const Vector& b, const Matrix& B_inv) {
    check_dims(B_inv.rows(), b.size(), "mahalanobis_width");
    double q = b.dot(B_inv * b);
    return std::sqrt(std::max(q, 0.0));
}

Vector eigen_spectrum(const Matrix& B) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(B);
    if (solver.info() != Eigen::Success) {
        throw DegeneracyError("eigen_spectrum: eigensolver failed to converge");
    }
    return solver.eigenvalues().reverse();
}

}  // namespace banditlab::linalg
