#include "qrc/linalg.hpp"

#include <cmath>
#include <string>

#include "qrc/error.hpp"

namespace qrc {

bool is_hermitian(const ComplexMatrix &a, double rel_tol) {
    if (a.rows() != a.cols()) {
        return false;
    }
    const double scale = a.cwiseAbs().maxCoeff();
    const double defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
    return defect <= rel_tol * scale;
}

EigenDecomposition hermitian_eig(const ComplexMatrix &h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw Error(ErrorKind::NotSquare, "matrix is " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
    }
    if (!h.allFinite()) {
        throw Error(ErrorKind::NonFinite, "Hamiltonian has non-finite entries");
    }
    if (!is_hermitian(h)) {
        throw Error(ErrorKind::NotHermitian, "input fails the Hermiticity check");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NonFinite, "eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

StateVector evolve(const EigenDecomposition &eig, double dt, const StateVector &psi) {
    if (eig.eigenvectors.rows() != psi.size()) {
        throw Error(ErrorKind::DimensionMismatch, "state has dim " + std::to_string(psi.size()) +
                                                      ", propagator has dim " +
                                                      std::to_string(eig.eigenvectors.rows()));
    }
    if (!(dt >= 0.0)) {
        throw Error(ErrorKind::ParameterInvalid, "evolution time must be >= 0");
    }
    StateVector coeffs = eig.eigenvectors.adjoint() * psi;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        const double phase = -eig.eigenvalues[i] * dt;
        coeffs[i] *= Complex(std::cos(phase), std::sin(phase));
    }
    return eig.eigenvectors * coeffs;
}

StateVector evolve(const ComplexMatrix &h, double dt, const StateVector &psi) {
    if (h.rows() != psi.size()) {
        throw Error(ErrorKind::DimensionMismatch, "Hamiltonian has dim " + std::to_string(h.rows()) +
                                                      ", state has dim " + std::to_string(psi.size()));
    }
    return evolve(hermitian_eig(h), dt, psi);
}

RealMatrix solve_readout(const RealMatrix &r, const RealMatrix &y, double ridge) {
    if (r.rows() < 1 || r.cols() < 1) {
        throw Error(ErrorKind::DimensionMismatch, "design matrix is empty");
    }
    if (y.rows() != r.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "design matrix has " + std::to_string(r.rows()) +
                                                      " rows, target has " + std::to_string(y.rows()));
    }
    if (!r.allFinite() || !y.allFinite() || !std::isfinite(ridge)) {
        throw Error(ErrorKind::NonFinite, "readout inputs contain non-finite values");
    }
    if (ridge < 0.0) {
        throw Error(ErrorKind::ParameterInvalid, "ridge must be >= 0");
    }
    if (ridge == 0.0) {
        Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(r);
        return cod.solve(y);
    }
    // Ridge as an augmented least-squares problem [R; sqrt(ridge) I] w = [y; 0].
    const Eigen::Index n = r.rows();
    const Eigen::Index p = r.cols();
    RealMatrix aug(n + p, p);
    aug.topRows(n) = r;
    aug.bottomRows(p) = std::sqrt(ridge) * RealMatrix::Identity(p, p);
    RealMatrix rhs = RealMatrix::Zero(n + p, y.cols());
    rhs.topRows(n) = y;
    return aug.colPivHouseholderQr().solve(rhs);
}

RealVector solve_readout(const RealMatrix &r, const RealVector &y, double ridge) {
    RealMatrix w = solve_readout(r, RealMatrix(y), ridge);
    return w.col(0);
}

} // namespace qrc
