#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "svdkit/matrix.hpp"
#include "svdkit/svd.hpp"

namespace svdkit::tensor3 {

/// Dense order-3 tensor. Entries are stored in (i, j, k) lexicographic
/// order with k fastest, matching the on-disk format.
class Tensor3 {
public:
    Tensor3() : dims_{0, 0, 0} {}

    Tensor3(std::size_t n1, std::size_t n2, std::size_t n3)
        : dims_{n1, n2, n3}, entries_(n1 * n2 * n3, 0.0) {}

    const std::array<std::size_t, 3>& dims() const noexcept { return dims_; }
    std::size_t dim(std::size_t d) const { return dims_[d]; }
    std::size_t size() const noexcept { return entries_.size(); }

    double& at(std::size_t i, std::size_t j, std::size_t k) {
        return entries_[(i * dims_[1] + j) * dims_[2] + k];
    }
    double at(std::size_t i, std::size_t j, std::size_t k) const {
        return entries_[(i * dims_[1] + j) * dims_[2] + k];
    }

    std::vector<double>& entries() noexcept { return entries_; }
    const std::vector<double>& entries() const noexcept { return entries_; }

    bool operator==(const Tensor3& other) const = default;

private:
    std::array<std::size_t, 3> dims_;
    std::vector<double> entries_;
};

/// Weighted sum of r rank-1 terms: sum_i weights[i] * u_i o v_i o w_i.
/// Factor columns have unit 2-norm; weights are nonnegative and descending.
struct CpModel {
    std::size_t r = 0;
    std::vector<double> weights;
    Matrix<double> u;  // n1 x r
    Matrix<double> v;  // n2 x r
    Matrix<double> w;  // n3 x r
    bool converged = false;
    std::size_t iterations = 0;
    std::vector<double> fit_history;  // relative fit error after each sweep
};

/// Core tensor contracted with per-mode orthonormal factors.
struct TuckerModel {
    std::array<std::size_t, 3> multirank{0, 0, 0};
    Matrix<double> u;  // n1 x m1
    Matrix<double> v;  // n2 x m2
    Matrix<double> w;  // n3 x m3
    Tensor3 core;      // m1 x m2 x m3
};

/// Mode-d unfolding (d in {1,2,3}, 1-based): rows index mode d and the
/// remaining indices are flattened with the smaller mode varying fastest.
Matrix<double> unfold(const Tensor3& t, int mode);

/// Exact inverse of unfold.
Tensor3 fold(const Matrix<double>& m, int mode, const std::array<std::size_t, 3>& dims);

/// Rank-1 tensor with entries x_i y_j z_k.
Tensor3 outer3(const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<double>& z);

/// CP decomposition by alternating least squares. Deterministic: factors are
/// seeded from the leading left singular vectors of each unfolding (extra
/// columns, when r exceeds a mode dimension, come from a fixed-seed stream).
/// Returns best-so-far with converged = false instead of failing when the
/// fit change never drops below tol.
CpModel cp_als(const Tensor3& t, std::size_t r, std::size_t max_iter = 500,
               double tol = 1e-10);

/// Tucker factors from the SVDs of the three unfoldings, core by contraction.
TuckerModel hosvd(const Tensor3& t, const std::array<std::size_t, 3>& multirank);

Tensor3 reconstruct_cp(const CpModel& model);
Tensor3 reconstruct_tucker(const TuckerModel& model);

/// Upper bound on tensor rank: floor(3n/2) for n x n x 2 in any axis order,
/// otherwise min(n1 n2, n1 n3, n2 n3).
std::size_t rank_bound(std::size_t n1, std::size_t n2, std::size_t n3);

/// Relative Frobenius error ||T - T_hat|| / max(||T||, 1e-300).
double fit(const Tensor3& t, const Tensor3& t_hat);

double frobenius_norm(const Tensor3& t);

} // namespace svdkit::tensor3
