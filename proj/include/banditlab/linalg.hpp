#pragma once

#include <Eigen/Dense>

#include "banditlab/rng.hpp"

namespace banditlab::linalg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// B + x x^T. Dimension mismatch -> ConfigError.
Matrix rank_one_update(const Matrix& B, const Vector& x);

// (B + x x^T)^{-1} from B^{-1} via the Sherman-Morrison identity.
// The denominator 1 + x^T B^{-1} x is >= 1 for PD B^{-1}.
Matrix sherman_morrison_inverse(const Matrix& B_inv, const Vector& x);

// Lower Cholesky factor L with L L^T = B. Non-PD input -> DegeneracyError.
Matrix cholesky_lower(const Matrix& B);

// In-place rank-one update of a lower Cholesky factor:
// L L^T + x x^T = L' L'^T. Classic Givens-based cholupdate, O(d^2).
void cholesky_rank_one_update(Matrix& L, Vector x);

// Draw from N(mean, scale^2 B^{-1}) given the lower Cholesky factor L of B.
// Uses the triangular solve L^T w = z, so cov(w) = (L L^T)^{-1} = B^{-1};
// B^{-1} itself is never formed. scale = 0 returns mean exactly.
Vector sample_mvn(const Vector& mean, double scale, const Matrix& chol_B,
                  Rng& rng);

// sqrt(b^T B^{-1} b). <= ||b|| whenever lambda_min(B) >= 1.
double mahalanobis_width(const Vector& b, const Matrix& B_inv);

// Eigenvalues of a symmetric PD matrix, descending.
Vector eigen_spectrum(const Matrix& B);

}  // namespace banditlab::linalg
