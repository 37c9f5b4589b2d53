#include "svdkit/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace svdkit::entangle {

double state_trace(const Matrix<Complex>& c) {
    double tr = 0.0;
    for (const Complex& x : c.data()) tr += std::norm(x);
    return tr;
}

StateMatrix validate_state(const Matrix<Complex>& c) {
    if (c.rows() < 1 || c.cols() < 1)
        throw ShapeError("validate_state: empty coefficient matrix");
    if (!all_finite(c))
        throw NonFiniteInput("validate_state: input contains NaN or Inf");
    const double tr = state_trace(c);
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        std::ostringstream msg;
        msg << "state is not trace-normalized: tr(CC^H) = " << tr;
        throw NotNormalized(msg.str());
    }
    return StateMatrix{c};
}

StateMatrix normalize_state(const Matrix<Complex>& c) {
    if (!all_finite(c))
        throw NonFiniteInput("normalize_state: input contains NaN or Inf");
    const double tr = state_trace(c);
    if (tr <= 0.0)
        throw DegenerateMatrix("normalize_state: zero coefficient matrix");
    Matrix<Complex> scaled = c;
    const double inv = 1.0 / std::sqrt(tr);
    for (Complex& x : scaled.data()) x *= inv;
    return StateMatrix{std::move(scaled)};
}

SchmidtSpectrum schmidt(const StateMatrix& state) {
    SvdFactors<Complex> f = svd(state.c);
    return SchmidtSpectrum{std::move(f.sigma), std::move(f.u), std::move(f.v)};
}

double entropy(const SchmidtSpectrum& spectrum) {
    double h = 0.0;
    for (double s : spectrum.coefficients) {
        const double p = s * s;
        if (p < 1e-300) continue;  // 0 ln 0 = 0; also avoids log underflow
        h -= p * std::log(p);
    }
    return h;
}

bool is_entangled(const SchmidtSpectrum& spectrum, double tol) {
    std::size_t above = 0;
    for (double s : spectrum.coefficients)
        if (s > tol) ++above;
    return above >= 2;
}

double max_entropy(std::size_t m, std::size_t n) {
    return std::log(static_cast<double>(std::min(m, n)));
}

} // namespace svdkit::entangle
