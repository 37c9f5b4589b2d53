#include "svdkit/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace svdkit {

namespace {

constexpr double kGramTolerance = 1e-15;  // relative off-diagonal Gram threshold
constexpr int kMaxSweeps = 60;
constexpr double kZeroColumn = 1e-200;    // below this a column is treated as exactly zero

template <typename T>
struct ColumnPair {
    double gii;
    double gjj;
    T gij;  // conj(col_i) . col_j
};

template <typename T>
ColumnPair<T> gram_entries(const Matrix<T>& a, std::size_t i, std::size_t j) {
    ColumnPair<T> g{0.0, 0.0, T{}};
    const std::size_t m = a.rows();
    for (std::size_t k = 0; k < m; ++k) {
        const T& ai = a(k, i);
        const T& aj = a(k, j);
        g.gii += detail::abs_sq(ai);
        g.gjj += detail::abs_sq(aj);
        g.gij += detail::conj_value(ai) * aj;
    }
    return g;
}

// Rotation (c real, s same field as T) zeroing the (i, j) Gram entry:
//   [a_i', a_j'] = [a_i, a_j] * [[c, s], [-conj(s), c]]
template <typename T>
void rotation_for(const ColumnPair<T>& g, double& c, T& s) {
    const double off = detail::abs_value(g.gij);
    const double zeta = (g.gjj - g.gii) / (2.0 * off);
    double t;
    if (std::abs(zeta) > 1e150) {
        t = 1.0 / (2.0 * zeta);  // asymptotic branch, avoids zeta^2 overflow
    } else {
        t = ((zeta >= 0.0) ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
    }
    c = 1.0 / std::sqrt(1.0 + t * t);
    s = (g.gij / off) * (c * t);
}

template <typename T>
void apply_rotation(Matrix<T>& a, std::size_t i, std::size_t j, double c, const T& s) {
    const T s_conj = detail::conj_value(s);
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const T ai = a(k, i);
        const T aj = a(k, j);
        a(k, i) = c * ai - s_conj * aj;
        a(k, j) = s * ai + c * aj;
    }
}

// Replace near-zero columns of u (null-space slots of a rank-deficient input)
// with unit vectors orthogonal to all other columns. Deterministic: picks the
// standard basis vector with the largest residual, lowest index on ties.
template <typename T>
void complete_basis(Matrix<T>& u, const std::vector<bool>& is_zero) {
    const std::size_t m = u.rows();
    const std::size_t p = u.cols();
    for (std::size_t col = 0; col < p; ++col) {
        if (!is_zero[col]) continue;
        std::size_t best_k = 0;
        double best_norm = -1.0;
        std::vector<T> best(m);
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<T> r(m, T{});
            r[k] = T{1};
            for (std::size_t c2 = 0; c2 < p; ++c2) {
                if (is_zero[c2] && c2 >= col) continue;  // skip unfilled slots
                T proj{};
                for (std::size_t row = 0; row < m; ++row)
                    proj += detail::conj_value(u(row, c2)) * r[row];
                for (std::size_t row = 0; row < m; ++row)
                    r[row] -= proj * u(row, c2);
            }
            double norm_sq = 0.0;
            for (const T& x : r) norm_sq += detail::abs_sq(x);
            if (norm_sq > best_norm) {
                best_norm = norm_sq;
                best_k = k;
                best = std::move(r);
            }
        }
        (void)best_k;
        const double norm = std::sqrt(best_norm);
        for (std::size_t row = 0; row < m; ++row) u(row, col) = best[row] / norm;
    }
}

// Scale column i of u and v by the unit phase that makes the
// largest-magnitude entry of u's column real and positive.
template <typename T>
void apply_sign_convention(Matrix<T>& u, Matrix<T>& v, std::size_t col) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t row = 0; row < u.rows(); ++row) {
        const double mag = detail::abs_sq(u(row, col));
        if (mag > best) {
            best = mag;
            arg = row;
        }
    }
    const T z = u(arg, col);
    const double mag = std::sqrt(detail::abs_sq(z));
    if (mag == 0.0) return;
    T phase;
    if constexpr (detail::is_complex_v<T>) {
        phase = detail::conj_value(z) / mag;
    } else {
        phase = z < 0.0 ? T{-1} : T{1};
    }
    if (phase == T{1}) return;
    for (std::size_t row = 0; row < u.rows(); ++row) u(row, col) *= phase;
    for (std::size_t row = 0; row < v.rows(); ++row) v(row, col) *= phase;
}

// Core kernel; requires m >= n. Returns thin factors with p = n.
template <typename T>
SvdFactors<T> jacobi_tall(const Matrix<T>& input) {
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    Matrix<T> work = input;
    Matrix<T> v = Matrix<T>::identity(n);

    bool converged = (n == 1);
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const ColumnPair<T> g = gram_entries(work, i, j);
                if (g.gii == 0.0 || g.gjj == 0.0) {
                    // a column whose squared norm underflows is numerically
                    // zero; flush it so its cross terms cannot stall the sweep
                    if (g.gii == 0.0)
                        for (std::size_t k = 0; k < m; ++k) work(k, i) = T{};
                    if (g.gjj == 0.0)
                        for (std::size_t k = 0; k < m; ++k) work(k, j) = T{};
                    continue;
                }
                const double off = detail::abs_value(g.gij);
                // factored product: g.gii * g.gjj can underflow for tiny columns
                if (off <= kGramTolerance * (std::sqrt(g.gii) * std::sqrt(g.gjj))) continue;
                converged = false;
                double c;
                T s;
                rotation_for(g, c, s);
                apply_rotation(work, i, j, c, s);
                apply_rotation(v, i, j, c, s);
            }
        }
    }
    if (!converged)
        throw ConvergenceFailure("svd: Jacobi sweeps did not converge within " +
                                 std::to_string(kMaxSweeps) + " sweeps");

    std::vector<double> sigma(n);
    std::vector<bool> is_zero(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm_sq += detail::abs_sq(work(i, j));
        sigma[j] = std::sqrt(norm_sq);
        if (sigma[j] < kZeroColumn) {
            sigma[j] = 0.0;
            is_zero[j] = true;
        } else {
            for (std::size_t i = 0; i < m; ++i) work(i, j) /= sigma[j];
        }
    }

    // Descending order; stable so tied values keep the Jacobi output order.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

    SvdFactors<T> f;
    f.u = Matrix<T>(m, n);
    f.v = Matrix<T>(n, n);
    f.sigma.resize(n);
    std::vector<bool> zero_sorted(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = perm[j];
        f.sigma[j] = sigma[src];
        zero_sorted[j] = is_zero[src];
        for (std::size_t i = 0; i < m; ++i) f.u(i, j) = work(i, src);
        for (std::size_t i = 0; i < n; ++i) f.v(i, j) = v(i, src);
    }

    complete_basis(f.u, zero_sorted);
    for (std::size_t j = 0; j < n; ++j) apply_sign_convention(f.u, f.v, j);
    return f;
}

} // namespace

template <typename T>
SvdFactors<T> svd(const Matrix<T>& a) {
    if (a.rows() < 1 || a.cols() < 1)
        throw ShapeError("svd: matrix must have at least one row and one column");
    if (!all_finite(a))
        throw NonFiniteInput("svd: input contains NaN or Inf");
    if (a.rows() >= a.cols()) return jacobi_tall(a);
    // Run on the taller conjugate transpose and swap factors:
    // A^H = U' S V'^H  =>  A = V' S U'^H.
    SvdFactors<T> t = jacobi_tall(conj_transpose(a));
    return SvdFactors<T>{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

template <typename T>
Matrix<T> reconstruct(const SvdFactors<T>& f) {
    const std::size_t p = f.sigma.size();
    if (f.u.cols() != p || f.v.cols() != p)
        throw ShapeError("reconstruct: factor column counts disagree with sigma length");
    Matrix<T> scaled = f.u;
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t i = 0; i < scaled.rows(); ++i) scaled(i, j) *= f.sigma[j];
    return matmul(scaled, conj_transpose(f.v));
}

template <typename T>
LowRankApprox<T> truncate(const SvdFactors<T>& f, long k) {
    const long p = static_cast<long>(f.sigma.size());
    if (k < 0 || k > p)
        throw RankOutOfRange("truncate: k = " + std::to_string(k) +
                             " outside [0, " + std::to_string(p) + "]");
    LowRankApprox<T> lr;
    lr.k = static_cast<std::size_t>(k);
    lr.approx = Matrix<T>(f.u.rows(), f.v.rows());
    for (long t = 0; t < k; ++t) {
        const double s = f.sigma[static_cast<std::size_t>(t)];
        for (std::size_t i = 0; i < f.u.rows(); ++i) {
            const T ui = f.u(i, static_cast<std::size_t>(t));
            for (std::size_t j = 0; j < f.v.rows(); ++j)
                lr.approx(i, j) += s * ui * detail::conj_value(f.v(j, static_cast<std::size_t>(t)));
        }
    }
    lr.discarded_sigma.assign(f.sigma.begin() + k, f.sigma.end());
    return lr;
}

template <typename T>
std::size_t numerical_rank(const SvdFactors<T>& f, std::optional<double> tol) {
    double threshold;
    if (tol.has_value()) {
        threshold = *tol;
    } else {
        const double dim = static_cast<double>(std::max(f.u.rows(), f.v.rows()));
        threshold = dim * std::numeric_limits<double>::epsilon() *
                    (f.sigma.empty() ? 0.0 : f.sigma.front());
    }
    std::size_t r = 0;
    for (double s : f.sigma)
        if (s > threshold) ++r;
    return r;
}

template <typename T>
double spectral_norm(const Matrix<T>& a) {
    return svd(a).sigma.front();
}

template SvdFactors<double> svd(const Matrix<double>&);
template SvdFactors<Complex> svd(const Matrix<Complex>&);
template Matrix<double> reconstruct(const SvdFactors<double>&);
template Matrix<Complex> reconstruct(const SvdFactors<Complex>&);
template LowRankApprox<double> truncate(const SvdFactors<double>&, long);
template LowRankApprox<Complex> truncate(const SvdFactors<Complex>&, long);
template std::size_t numerical_rank(const SvdFactors<double>&, std::optional<double>);
template std::size_t numerical_rank(const SvdFactors<Complex>&, std::optional<double>);
template double spectral_norm(const Matrix<double>&);
template double spectral_norm(const Matrix<Complex>&);

} // namespace svdkit
