#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qrc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Spectral factorization H = U diag(eigenvalues) U^dagger, eigenvalues ascending.
struct EigenDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

// max_ij |A_ij - conj(A_ji)| <= rel_tol * max_ij |A_ij|.
bool is_hermitian(const ComplexMatrix &a, double rel_tol = 1e-12);

// Throws NotSquare / NotHermitian.
EigenDecomposition hermitian_eig(const ComplexMatrix &h);

// exp(-i H dt) psi via the spectral route. Throws DimensionMismatch /
// NotHermitian, and ParameterInvalid for dt < 0.
StateVector evolve(const ComplexMatrix &h, double dt, const StateVector &psi);

// Same propagation with a precomputed factorization.
StateVector evolve(const EigenDecomposition &eig, double dt, const StateVector &psi);

// argmin ||R w - y||^2 + ridge ||w||^2. With ridge == 0 the minimum-norm
// least-squares solution is returned (pseudoinverse semantics), computed by a
// complete orthogonal decomposition rather than by forming R^T R.
RealVector solve_readout(const RealMatrix &r, const RealVector &y, double ridge = 0.0);

// Column-wise variant: one factorization, many targets.
RealMatrix solve_readout(const RealMatrix &r, const RealMatrix &y, double ridge = 0.0);

} // namespace qrc
