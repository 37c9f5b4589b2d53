#pragma once

#include <vector>

#include "svdkit/matrix.hpp"
#include "svdkit/svd.hpp"

namespace svdkit::entangle {

/// Coefficient matrix of a bipartite pure state, trace-normalized:
/// |tr(C C^H) - 1| <= 1e-10. Construct through validate_state.
struct StateMatrix {
    Matrix<Complex> c;
};

/// Schmidt coefficients (descending, sum of squares = 1) together with the
/// single-particle bases from the SVD of the coefficient matrix.
struct SchmidtSpectrum {
    std::vector<double> coefficients;
    Matrix<Complex> left_basis;   // m x p
    Matrix<Complex> right_basis;  // n x p
};

constexpr double kTraceTolerance = 1e-10;

/// Measured value tr(C C^H) = squared Frobenius norm.
double state_trace(const Matrix<Complex>& c);

/// Wraps c if the trace condition holds; throws NotNormalized (with the
/// measured trace in the message) otherwise.
StateMatrix validate_state(const Matrix<Complex>& c);

/// Divides by sqrt(tr(C C^H)); throws DegenerateMatrix on the zero matrix.
StateMatrix normalize_state(const Matrix<Complex>& c);

SchmidtSpectrum schmidt(const StateMatrix& state);

/// Von Neumann entanglement entropy -sum s_k^2 ln s_k^2 in nats,
/// with the continuity convention 0 ln 0 = 0.
double entropy(const SchmidtSpectrum& spectrum);

/// True iff at least two Schmidt coefficients exceed tol.
bool is_entangled(const SchmidtSpectrum& spectrum, double tol = 1e-12);

/// ln(min(m, n)), the entropy of a maximally entangled m x n state.
double max_entropy(std::size_t m, std::size_t n);

} // namespace svdkit::entangle
