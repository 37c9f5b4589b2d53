#include "svdkit/tensor3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "svdkit/rng.hpp"

namespace svdkit::tensor3 {

namespace {

void check_mode(int mode) {
    if (mode < 1 || mode > 3)
        throw InvalidMode("tensor mode must be 1, 2, or 3; got " + std::to_string(mode));
}

// Khatri-Rao (columnwise Kronecker) product; row (a, b) = a * B.rows() + b.
Matrix<double> khatri_rao(const Matrix<double>& a, const Matrix<double>& b) {
    Matrix<double> z(a.rows() * b.rows(), a.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ib = 0; ib < b.rows(); ++ib)
            for (std::size_t c = 0; c < a.cols(); ++c)
                z(ia * b.rows() + ib, c) = a(ia, c) * b(ib, c);
    return z;
}

Matrix<double> gram(const Matrix<double>& a) {
    return matmul(conj_transpose(a), a);
}

Matrix<double> hadamard(const Matrix<double>& a, const Matrix<double>& b) {
    Matrix<double> c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] *= b.data()[i];
    return c;
}

// Moore-Penrose pseudoinverse of a small square matrix via the SVD.
Matrix<double> pinv(const Matrix<double>& a) {
    const SvdFactors<double> f = svd(a);
    const double cutoff = static_cast<double>(std::max(a.rows(), a.cols())) *
                          std::numeric_limits<double>::epsilon() * f.sigma.front();
    Matrix<double> vs = f.v;
    for (std::size_t j = 0; j < f.sigma.size(); ++j) {
        const double inv = f.sigma[j] > cutoff ? 1.0 / f.sigma[j] : 0.0;
        for (std::size_t i = 0; i < vs.rows(); ++i) vs(i, j) *= inv;
    }
    return matmul(vs, conj_transpose(f.u));
}

// Leading r left singular vectors of the mode-d unfolding, padded with
// fixed-seed pseudorandom unit columns when r exceeds what the SVD offers.
Matrix<double> init_factor(const Tensor3& t, int mode, std::size_t r) {
    const Matrix<double> x = unfold(t, mode);
    const SvdFactors<double> f = svd(x);
    const std::size_t avail = std::min(r, f.u.cols());
    Matrix<double> factor(x.rows(), r);
    for (std::size_t j = 0; j < avail; ++j)
        for (std::size_t i = 0; i < x.rows(); ++i) factor(i, j) = f.u(i, j);
    if (avail < r) {
        Rng rng(0x5eed0000u + static_cast<std::uint64_t>(mode));
        for (std::size_t j = avail; j < r; ++j) {
            double norm_sq = 0.0;
            for (std::size_t i = 0; i < x.rows(); ++i) {
                factor(i, j) = rng.symmetric();
                norm_sq += factor(i, j) * factor(i, j);
            }
            const double norm = std::sqrt(norm_sq);
            for (std::size_t i = 0; i < x.rows(); ++i) factor(i, j) /= norm;
        }
    }
    return factor;
}

// Normalize columns to unit 2-norm, returning the norms. Zero columns are
// replaced by a deterministic basis vector and report norm 0.
std::vector<double> normalize_columns(Matrix<double>& a) {
    std::vector<double> norms(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) norm_sq += a(i, j) * a(i, j);
        const double norm = std::sqrt(norm_sq);
        norms[j] = norm;
        if (norm < 1e-300) {
            for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) = 0.0;
            a(j % a.rows(), j) = 1.0;
            norms[j] = 0.0;
        } else {
            for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) /= norm;
        }
    }
    return norms;
}

// Flip the dominant entry of each column of `primary` positive, absorbing
// the sign into the matching column of `carrier`.
void canonicalize_signs(Matrix<double>& primary, Matrix<double>& carrier) {
    for (std::size_t j = 0; j < primary.cols(); ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < primary.rows(); ++i) {
            const double mag = std::abs(primary(i, j));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (primary(arg, j) < 0.0) {
            for (std::size_t i = 0; i < primary.rows(); ++i) primary(i, j) = -primary(i, j);
            for (std::size_t i = 0; i < carrier.rows(); ++i) carrier(i, j) = -carrier(i, j);
        }
    }
}

Tensor3 mode_multiply(const Tensor3& t, const Matrix<double>& m, int mode) {
    const Matrix<double> unfolded = unfold(t, mode);
    const Matrix<double> product = matmul(m, unfolded);
    std::array<std::size_t, 3> dims = t.dims();
    dims[static_cast<std::size_t>(mode - 1)] = m.rows();
    return fold(product, mode, dims);
}

} // namespace

Matrix<double> unfold(const Tensor3& t, int mode) {
    check_mode(mode);
    const auto& d = t.dims();
    const std::size_t n1 = d[0], n2 = d[1], n3 = d[2];
    Matrix<double> m;
    switch (mode) {
        case 1: m = Matrix<double>(n1, n2 * n3); break;
        case 2: m = Matrix<double>(n2, n1 * n3); break;
        default: m = Matrix<double>(n3, n1 * n2); break;
    }
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t k = 0; k < n3; ++k) {
                const double x = t.at(i, j, k);
                switch (mode) {
                    case 1: m(i, j + k * n2) = x; break;
                    case 2: m(j, i + k * n1) = x; break;
                    default: m(k, i + j * n1) = x; break;
                }
            }
    return m;
}

Tensor3 fold(const Matrix<double>& m, int mode, const std::array<std::size_t, 3>& dims) {
    check_mode(mode);
    const std::size_t n1 = dims[0], n2 = dims[1], n3 = dims[2];
    const std::size_t d = static_cast<std::size_t>(mode - 1);
    const std::size_t rest = n1 * n2 * n3 / std::max<std::size_t>(dims[d], 1);
    if (dims[d] == 0 || m.rows() != dims[d] || m.cols() != rest)
        throw ShapeError("fold: matrix shape does not match mode/dims");
    Tensor3 t(n1, n2, n3);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t k = 0; k < n3; ++k) {
                switch (mode) {
                    case 1: t.at(i, j, k) = m(i, j + k * n2); break;
                    case 2: t.at(i, j, k) = m(j, i + k * n1); break;
                    default: t.at(i, j, k) = m(k, i + j * n1); break;
                }
            }
    return t;
}

Tensor3 outer3(const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<double>& z) {
    if (x.empty() || y.empty() || z.empty())
        throw ShapeError("outer3: vectors must be nonempty");
    Tensor3 t(x.size(), y.size(), z.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            for (std::size_t k = 0; k < z.size(); ++k) t.at(i, j, k) = x[i] * y[j] * z[k];
    return t;
}

double frobenius_norm(const Tensor3& t) {
    double s = 0.0;
    for (double x : t.entries()) s += x * x;
    return std::sqrt(s);
}

double fit(const Tensor3& t, const Tensor3& t_hat) {
    if (t.dims() != t_hat.dims())
        throw ShapeError("fit: tensor dimensions disagree");
    double diff_sq = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double d = t.entries()[i] - t_hat.entries()[i];
        diff_sq += d * d;
    }
    return std::sqrt(diff_sq) / std::max(frobenius_norm(t), 1e-300);
}

std::size_t rank_bound(std::size_t n1, std::size_t n2, std::size_t n3) {
    std::array<std::size_t, 3> d{n1, n2, n3};
    std::sort(d.begin(), d.end(), std::greater<>());
    if (d[0] == d[1] && d[2] == 2) return 3 * d[0] / 2;
    return d[1] * d[2];
}

Tensor3 reconstruct_cp(const CpModel& model) {
    if (model.u.cols() != model.r || model.v.cols() != model.r ||
        model.w.cols() != model.r || model.weights.size() != model.r)
        throw ShapeError("reconstruct_cp: factor column counts disagree with r");
    Tensor3 t(model.u.rows(), model.v.rows(), model.w.rows());
    for (std::size_t c = 0; c < model.r; ++c) {
        const double weight = model.weights[c];
        if (weight == 0.0) continue;
        for (std::size_t i = 0; i < model.u.rows(); ++i) {
            const double ui = weight * model.u(i, c);
            for (std::size_t j = 0; j < model.v.rows(); ++j) {
                const double uv = ui * model.v(j, c);
                for (std::size_t k = 0; k < model.w.rows(); ++k)
                    t.at(i, j, k) += uv * model.w(k, c);
            }
        }
    }
    return t;
}

Tensor3 reconstruct_tucker(const TuckerModel& model) {
    const auto& mr = model.multirank;
    if (model.core.dims() != mr || model.u.cols() != mr[0] || model.v.cols() != mr[1] ||
        model.w.cols() != mr[2])
        throw ShapeError("reconstruct_tucker: core/factor shapes disagree");
    Tensor3 t = mode_multiply(model.core, model.u, 1);
    t = mode_multiply(t, model.v, 2);
    return mode_multiply(t, model.w, 3);
}

TuckerModel hosvd(const Tensor3& t, const std::array<std::size_t, 3>& multirank) {
    const auto& d = t.dims();
    if (d[0] == 0 || d[1] == 0 || d[2] == 0)
        throw ShapeError("hosvd: empty tensor");
    for (std::size_t i = 0; i < 3; ++i)
        if (multirank[i] < 1 || multirank[i] > d[i])
            throw ShapeError("hosvd: multirank component " + std::to_string(i + 1) +
                             " outside [1, " + std::to_string(d[i]) + "]");

    TuckerModel model;
    model.multirank = multirank;
    Matrix<double>* factors[3] = {&model.u, &model.v, &model.w};
    for (int mode = 1; mode <= 3; ++mode) {
        const SvdFactors<double> f = svd(unfold(t, mode));
        const std::size_t keep = multirank[static_cast<std::size_t>(mode - 1)];
        Matrix<double> lead(f.u.rows(), keep);
        for (std::size_t j = 0; j < keep; ++j)
            for (std::size_t i = 0; i < f.u.rows(); ++i) lead(i, j) = f.u(i, j);
        *factors[mode - 1] = std::move(lead);
    }
    Tensor3 core = mode_multiply(t, conj_transpose(model.u), 1);
    core = mode_multiply(core, conj_transpose(model.v), 2);
    model.core = mode_multiply(core, conj_transpose(model.w), 3);
    return model;
}

CpModel cp_als(const Tensor3& t, std::size_t r, std::size_t max_iter, double tol) {
    const auto& d = t.dims();
    if (d[0] == 0 || d[1] == 0 || d[2] == 0)
        throw ShapeError("cp_als: empty tensor");
    const std::size_t bound = std::min({d[0] * d[1], d[0] * d[2], d[1] * d[2]});
    if (r < 1 || r > bound)
        throw RankOutOfRange("cp_als: r = " + std::to_string(r) + " outside [1, " +
                             std::to_string(bound) + "]");
    if (!std::all_of(t.entries().begin(), t.entries().end(),
                     [](double x) { return std::isfinite(x); }))
        throw NonFiniteInput("cp_als: tensor contains NaN or Inf");

    CpModel model;
    model.r = r;
    model.u = init_factor(t, 1, r);
    model.v = init_factor(t, 2, r);
    model.w = init_factor(t, 3, r);
    model.weights.assign(r, 0.0);

    const Matrix<double> x1 = unfold(t, 1);
    const Matrix<double> x2 = unfold(t, 2);
    const Matrix<double> x3 = unfold(t, 3);

    double prev_err = std::numeric_limits<double>::infinity();
    model.converged = false;
    std::size_t iter = 0;
    for (; iter < max_iter; ++iter) {
        // column ordering of each unfolding puts the smaller mode fastest,
        // so the Khatri-Rao partner order is (later factor, earlier factor)
        model.u = matmul(matmul(x1, khatri_rao(model.w, model.v)),
                         pinv(hadamard(gram(model.w), gram(model.v))));
        normalize_columns(model.u);
        model.v = matmul(matmul(x2, khatri_rao(model.w, model.u)),
                         pinv(hadamard(gram(model.w), gram(model.u))));
        normalize_columns(model.v);
        model.w = matmul(matmul(x3, khatri_rao(model.v, model.u)),
                         pinv(hadamard(gram(model.v), gram(model.u))));
        model.weights = normalize_columns(model.w);

        const double err = fit(t, reconstruct_cp(model));
        model.fit_history.push_back(err);
        if (std::abs(prev_err - err) < tol) {
            model.converged = true;
            ++iter;
            break;
        }
        prev_err = err;
    }
    model.iterations = iter;

    canonicalize_signs(model.u, model.w);
    canonicalize_signs(model.v, model.w);

    // sort components by weight descending; ties by factor entries
    std::vector<std::size_t> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (model.weights[a] != model.weights[b]) return model.weights[a] > model.weights[b];
        for (const Matrix<double>* f : {&model.u, &model.v, &model.w})
            for (std::size_t i = 0; i < f->rows(); ++i)
                if ((*f)(i, a) != (*f)(i, b)) return (*f)(i, a) < (*f)(i, b);
        return false;
    });
    CpModel sorted = model;
    for (std::size_t c = 0; c < r; ++c) {
        const std::size_t src = order[c];
        sorted.weights[c] = model.weights[src];
        for (std::size_t i = 0; i < model.u.rows(); ++i) sorted.u(i, c) = model.u(i, src);
        for (std::size_t i = 0; i < model.v.rows(); ++i) sorted.v(i, c) = model.v(i, src);
        for (std::size_t i = 0; i < model.w.rows(); ++i) sorted.w(i, c) = model.w(i, src);
    }
    return sorted;
}

} // namespace svdkit::tensor3
