#pragma once

#include <optional>
#include <vector>

#include "svdkit/matrix.hpp"

namespace svdkit {

/// Thin SVD A = U diag(sigma) V^H with p = min(m, n) columns.
/// Columns of U and V are orthonormal (unitary over the complex field)
/// and sigma is nonnegative and nonincreasing.
template <typename T>
struct SvdFactors {
    Matrix<T> u;                // m x p
    std::vector<double> sigma;  // length p, descending
    Matrix<T> v;                // n x p
};

template <typename T>
struct LowRankApprox {
    std::size_t k = 0;
    Matrix<T> approx;                     // m x n, rank <= k
    std::vector<double> discarded_sigma;  // sigma[k..p)
};

/// One-sided Jacobi SVD (cyclic-by-rows sweeps on the taller orientation).
/// Deterministic: fixed sweep order and a fixed sign convention (the
/// largest-magnitude entry of each left singular vector is real and
/// positive, ties broken by lowest row index).
template <typename T>
SvdFactors<T> svd(const Matrix<T>& a);

/// Sum of rank-1 terms sigma_i * u_i v_i^H; inverse of svd up to roundoff.
template <typename T>
Matrix<T> reconstruct(const SvdFactors<T>& f);

/// First k terms of the rank-1 expansion. k = 0 gives the zero matrix.
template <typename T>
LowRankApprox<T> truncate(const SvdFactors<T>& f, long k);

/// Count of singular values above tol. The default tolerance is
/// max(m, n) * machine epsilon * sigma[0].
template <typename T>
std::size_t numerical_rank(const SvdFactors<T>& f,
                           std::optional<double> tol = std::nullopt);

/// Largest singular value.
template <typename T>
double spectral_norm(const Matrix<T>& a);

} // namespace svdkit
