#include "svdkit/grains.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "svdkit/rng.hpp"
#include "svdkit/svd.hpp"

namespace svdkit::grains {

namespace {

constexpr std::size_t kMaxGrains = 1000000;
constexpr std::size_t kInnerIterations = 50000;
constexpr std::size_t kOuterRounds = 60;

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 point_at(const Matrix<double>& points, std::size_t i) {
    return {points(i, 0), points(i, 1), points(i, 2)};
}

double det3(const Matrix<double>& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Matrix<double> inverse3(const Matrix<double>& m) {
    const double det = det3(m);
    if (det == 0.0 || !std::isfinite(det))
        throw DegenerateInput("mvee: singular scatter matrix");
    Matrix<double> inv(3, 3);
    inv(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / det;
    inv(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / det;
    inv(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / det;
    inv(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / det;
    inv(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / det;
    inv(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / det;
    inv(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / det;
    inv(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / det;
    inv(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / det;
    return inv;
}

// Gauss-Jordan with partial pivoting; returns false on a (near-)singular input.
bool invert4(const double a[4][4], double inv[4][4]) {
    double aug[4][8];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            aug[i][j] = a[i][j];
            aug[i][j + 4] = (i == j) ? 1.0 : 0.0;
        }
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
        if (std::abs(aug[pivot][col]) < 1e-300) return false;
        if (pivot != col)
            for (int j = 0; j < 8; ++j) std::swap(aug[pivot][j], aug[col][j]);
        const double inv_pivot = 1.0 / aug[col][col];
        for (int j = 0; j < 8; ++j) aug[col][j] *= inv_pivot;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double factor = aug[r][col];
            if (factor == 0.0) continue;
            for (int j = 0; j < 8; ++j) aug[r][j] -= factor * aug[col][j];
        }
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[i][j] = aug[i][j + 4];
    return true;
}

struct DualSolution {
    std::vector<double> u;
    bool converged = false;
};

// Khachiyan dual ascent with Wolfe-Atwood away steps on lifted coordinates
// q_i = (p_i, 1). Add step size (M - 4)/(4(M - 1)); away steps use the same
// formula clamped so no weight goes negative.
DualSolution wa_solve(const std::vector<Vec4>& q, double eps, std::size_t max_iter) {
    const std::size_t n = q.size();
    DualSolution sol;
    sol.u.assign(n, 1.0 / static_cast<double>(n));

    double x[4][4] = {};
    auto accumulate_x = [&] {
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += sol.u[i] * q[i][r] * q[i][c];
                x[r][c] = s;
            }
    };
    accumulate_x();

    std::vector<double> mahal(n);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        if (iter % 1000 == 999) accumulate_x();  // refresh against rank-1 drift
        double xinv[4][4];
        if (!invert4(x, xinv)) return sol;  // degenerate subset; caller expands it

        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (int r = 0; r < 4; ++r) {
                double row = 0.0;
                for (int c = 0; c < 4; ++c) row += xinv[r][c] * q[i][c];
                s += q[i][r] * row;
            }
            mahal[i] = s;
        }

        std::size_t jp = 0, jm = n;
        double worst_up = -1.0, worst_down = 5.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mahal[i] > worst_up) {
                worst_up = mahal[i];
                jp = i;
            }
            if (sol.u[i] > 0.0 && mahal[i] < worst_down) {
                worst_down = mahal[i];
                jm = i;
            }
        }
        const double ep = worst_up - 4.0;
        const double em = jm < n ? 4.0 - worst_down : 0.0;
        if (ep <= 3.0 * eps && em <= 3.0 * eps) {
            sol.converged = true;
            return sol;
        }

        std::size_t j;
        double gamma;
        if (ep >= em) {
            j = jp;
            gamma = (mahal[j] - 4.0) / (4.0 * (mahal[j] - 1.0));
        } else {
            j = jm;
            if (sol.u[j] >= 1.0 - 1e-15) return sol;  // lone support point; let caller decide
            gamma = std::max((mahal[j] - 4.0) / (4.0 * (mahal[j] - 1.0)),
                             -sol.u[j] / (1.0 - sol.u[j]));
        }
        for (double& w : sol.u) w *= (1.0 - gamma);
        sol.u[j] += gamma;
        if (sol.u[j] < 0.0) sol.u[j] = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                x[r][c] = (1.0 - gamma) * x[r][c] + gamma * q[j][r] * q[j][c];
    }
    return sol;
}

// Extreme points along a fixed fan of directions seed the working set.
std::set<std::size_t> seed_working_set(const Matrix<double>& points) {
    static const Vec3 dirs[] = {
        {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
        {1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1},
        {1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1},
    };
    std::set<std::size_t> w;
    const std::size_t n = points.rows();
    for (const Vec3& d : dirs) {
        std::size_t lo = 0, hi = 0;
        double lo_val = dot3(point_at(points, 0), d);
        double hi_val = lo_val;
        for (std::size_t i = 1; i < n; ++i) {
            const double v = dot3(point_at(points, i), d);
            if (v > hi_val) {
                hi_val = v;
                hi = i;
            }
            if (v < lo_val) {
                lo_val = v;
                lo = i;
            }
        }
        w.insert(lo);
        w.insert(hi);
    }
    for (std::size_t frac = 0; frac < 4; ++frac) w.insert(frac * n / 4);
    return w;
}

struct FittedEllipsoid {
    Matrix<double> shape;
    Vec3 center;
};

FittedEllipsoid ellipsoid_from_weights(const Matrix<double>& points,
                                       const std::vector<std::size_t>& idx,
                                       const std::vector<double>& u) {
    Vec3 c{0, 0, 0};
    for (std::size_t t = 0; t < idx.size(); ++t) {
        const Vec3 p = point_at(points, idx[t]);
        for (int d = 0; d < 3; ++d) c[d] += u[t] * p[d];
    }
    Matrix<double> scatter(3, 3);
    for (std::size_t t = 0; t < idx.size(); ++t) {
        const Vec3 p = point_at(points, idx[t]);
        for (int r = 0; r < 3; ++r)
            for (int col = 0; col < 3; ++col) scatter(r, col) += u[t] * p[r] * p[col];
    }
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col) scatter(r, col) -= c[r] * c[col];
    Matrix<double> a = inverse3(scatter);
    for (auto& x : a.data()) x /= 3.0;
    // exact symmetry, so downstream SVD sees a clean symmetric matrix
    for (int r = 0; r < 3; ++r)
        for (int col = r + 1; col < 3; ++col) {
            const double s = 0.5 * (a(r, col) + a(col, r));
            a(r, col) = s;
            a(col, r) = s;
        }
    return {std::move(a), c};
}

double residual(const FittedEllipsoid& e, const Vec3& p) {
    const Vec3 d{p[0] - e.center[0], p[1] - e.center[1], p[2] - e.center[2]};
    double s = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) s += d[r] * e.shape(r, c) * d[c];
    return s;
}

void check_sym_shape(const Matrix<double>& shape, const char* where) {
    if (shape.rows() != 3 || shape.cols() != 3)
        throw ShapeError(std::string(where) + ": shape matrix must be 3x3");
    double asym = 0.0, scale = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            asym += (shape(r, c) - shape(c, r)) * (shape(r, c) - shape(c, r));
            scale += shape(r, c) * shape(r, c);
        }
    if (std::sqrt(asym) > 1e-10 * std::max(1.0, std::sqrt(scale)))
        throw ShapeError(std::string(where) + ": shape matrix is not symmetric");
}

} // namespace

std::array<double, 3> shape_ratios(CrystalShape shape) {
    switch (shape) {
        case CrystalShape::Prism: return {1.0, 1.0, 5.0};
        case CrystalShape::Plate: return {1.0, 5.0, 5.0};
        case CrystalShape::Cuboid: return {1.0, 3.0, 5.0};
    }
    throw ParameterError("unknown crystal shape");
}

std::vector<Grain> generate_population(const GrowthParams& params) {
    if (params.steps < 1)
        throw ParameterError("generate_population: steps must be >= 1");
    for (double g : params.growth_rate)
        if (!(g > 0.0) || !std::isfinite(g))
            throw ParameterError("generate_population: growth_rate components must be positive");
    if (!std::isfinite(params.alpha))
        throw ParameterError("generate_population: alpha must be finite");
    if (!(params.noise >= 0.0 && params.noise <= 0.5))
        throw ParameterError("generate_population: noise must lie in [0, 0.5]");
    if (params.points_per_grain < 1)
        throw ParameterError("generate_population: points_per_grain must be >= 1");

    const std::array<double, 3> ratios = shape_ratios(params.shape);
    Rng rng(params.seed);
    std::vector<Grain> grains;

    std::size_t total = 0;
    for (std::size_t t = 1; t <= params.steps; ++t) {
        const double expected = std::exp(params.alpha * static_cast<double>(t));
        const long long born = std::llround(expected);
        if (born < 0 || total + static_cast<std::size_t>(std::max(0LL, born)) > kMaxGrains)
            throw ParameterError("generate_population: population exceeds " +
                                 std::to_string(kMaxGrains) + " grains");
        total += static_cast<std::size_t>(std::max(0LL, born));

        for (long long b = 0; b < born; ++b) {
            const Vec3 center{rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0),
                              rng.uniform(0.0, 100.0)};
            const double age = static_cast<double>(params.steps - t + 1);
            Vec3 half;
            for (int d = 0; d < 3; ++d) half[d] = age * params.growth_rate[d] * ratios[d];

            // vertex-aligned boundary lattice with roughly square cells
            const double l1 = 2 * half[0], l2 = 2 * half[1], l3 = 2 * half[2];
            const double area = 2.0 * (l1 * l2 + l1 * l3 + l2 * l3);
            const double cell =
                std::sqrt(area / static_cast<double>(params.points_per_grain));
            std::array<std::size_t, 3> g;
            for (int d = 0; d < 3; ++d)
                g[d] = std::max<std::size_t>(
                    1, static_cast<std::size_t>(std::llround(2 * half[d] / cell)));

            std::vector<double> coords;
            for (std::size_t i = 0; i <= g[0]; ++i)
                for (std::size_t j = 0; j <= g[1]; ++j)
                    for (std::size_t k = 0; k <= g[2]; ++k) {
                        const bool on_boundary = i == 0 || i == g[0] || j == 0 || j == g[1] ||
                                                 k == 0 || k == g[2];
                        if (!on_boundary) continue;
                        Vec3 offset{
                            half[0] * (2.0 * static_cast<double>(i) / static_cast<double>(g[0]) - 1.0),
                            half[1] * (2.0 * static_cast<double>(j) / static_cast<double>(g[1]) - 1.0),
                            half[2] * (2.0 * static_cast<double>(k) / static_cast<double>(g[2]) - 1.0)};
                        double scale = 1.0;
                        if (params.noise > 0.0) scale += params.noise * rng.symmetric();
                        for (int d = 0; d < 3; ++d)
                            coords.push_back(center[d] + scale * offset[d]);
                    }

            Grain grain;
            grain.birth_step = t;
            grain.points = Matrix<double>(coords.size() / 3, 3);
            std::copy(coords.begin(), coords.end(), grain.points.data().begin());
            grains.push_back(std::move(grain));
        }
    }
    return grains;
}

Ellipsoid mvee(const Matrix<double>& points, double tol) {
    if (points.cols() != 3)
        throw ShapeError("mvee: points must be n x 3");
    if (!(tol > 0.0))
        throw ParameterError("mvee: tol must be positive");
    if (!all_finite(points))
        throw NonFiniteInput("mvee: points contain NaN or Inf");
    const std::size_t n = points.rows();
    if (n < 4)
        throw DegenerateInput("mvee: need at least 4 points");

    // affine-span check on the centered scatter
    Vec3 mean{0, 0, 0};
    for (std::size_t i = 0; i < n; ++i)
        for (int d = 0; d < 3; ++d) mean[d] += points(i, d);
    for (int d = 0; d < 3; ++d) mean[d] /= static_cast<double>(n);
    Matrix<double> scatter(3, 3);
    for (std::size_t i = 0; i < n; ++i)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                scatter(r, c) += (points(i, r) - mean[r]) * (points(i, c) - mean[c]);
    const auto spectrum = svd(scatter).sigma;
    if (spectrum[0] == 0.0 || spectrum[2] <= 1e-12 * spectrum[0])
        throw DegenerateInput("mvee: points do not span 3 dimensions");

    std::set<std::size_t> working = seed_working_set(points);
    std::vector<double> resid(n);
    for (std::size_t round = 0; round < kOuterRounds; ++round) {
        const std::vector<std::size_t> idx(working.begin(), working.end());
        std::vector<Vec4> q(idx.size());
        for (std::size_t t = 0; t < idx.size(); ++t) {
            const Vec3 p = point_at(points, idx[t]);
            q[t] = {p[0], p[1], p[2], 1.0};
        }
        const DualSolution sol = wa_solve(q, tol / 2.0, kInnerIterations);
        const FittedEllipsoid fitted = ellipsoid_from_weights(points, idx, sol.u);

        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            resid[i] = residual(fitted, point_at(points, i));
            worst = std::max(worst, resid[i]);
        }
        if (worst <= 1.0 + tol)
            return Ellipsoid{fitted.shape, fitted.center, EllipsoidKind::Enclosing};

        // admit the strongest violators and resolve
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return resid[a] > resid[b]; });
        std::size_t added = 0;
        for (std::size_t i = 0; i < n && added < 3; ++i) {
            if (resid[order[i]] <= 1.0 + tol) break;
            if (working.insert(order[i]).second) ++added;
        }
        if (added == 0) break;  // violators already inside; dual solve is stuck
    }
    throw ConvergenceFailure("mvee: active-set iteration did not converge");
}

EllipsoidGeometry geometry(const Ellipsoid& e) {
    check_sym_shape(e.shape, "geometry");
    const SvdFactors<double> f = svd(e.shape);
    if (f.sigma[2] <= 1e-12 * std::max(f.sigma[0], 1e-300))
        throw SingularShape("geometry: shape matrix is singular");
    // SVD of a symmetric matrix hides eigenvalue signs; probe the quadratic form
    for (std::size_t j = 0; j < 3; ++j) {
        double quad = 0.0;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) quad += f.v(r, j) * e.shape(r, c) * f.v(c, j);
        if (quad <= 0.0)
            throw SingularShape("geometry: shape matrix is not positive definite");
    }

    EllipsoidGeometry geo;
    geo.orientation = Matrix<double>(3, 3);
    for (int axis = 0; axis < 3; ++axis) {
        const std::size_t src = static_cast<std::size_t>(2 - axis);  // reversed: radii descending
        geo.radii[static_cast<std::size_t>(axis)] = 1.0 / std::sqrt(f.sigma[src]);
        for (int r = 0; r < 3; ++r) geo.orientation(r, axis) = f.v(r, src);
    }
    if (det3(geo.orientation) < 0.0)
        for (int r = 0; r < 3; ++r) geo.orientation(r, 2) = -geo.orientation(r, 2);
    return geo;
}

Ellipsoid inscribed(const Ellipsoid& e) {
    if (e.kind != EllipsoidKind::Enclosing)
        throw InvalidKind("inscribed: expects an enclosing ellipsoid");
    Ellipsoid inner = e;
    inner.kind = EllipsoidKind::Inscribed;
    for (auto& x : inner.shape.data()) x *= 9.0;  // radii shrink by the John factor 1/3
    return inner;
}

Ellipsoid mean_ellipsoid(const Ellipsoid& enclosing, const Ellipsoid& inner) {
    if (enclosing.kind != EllipsoidKind::Enclosing || inner.kind != EllipsoidKind::Inscribed)
        throw InvalidKind("mean_ellipsoid: expects an (enclosing, inscribed) pair");
    check_sym_shape(enclosing.shape, "mean_ellipsoid");
    check_sym_shape(inner.shape, "mean_ellipsoid");

    double center_gap = 0.0, center_scale = 0.0;
    for (int d = 0; d < 3; ++d) {
        center_gap += (enclosing.center[d] - inner.center[d]) *
                      (enclosing.center[d] - inner.center[d]);
        center_scale += enclosing.center[d] * enclosing.center[d];
    }
    if (std::sqrt(center_gap) > 1e-8 * std::max(1.0, std::sqrt(center_scale)))
        throw MismatchedFrames("mean_ellipsoid: centers differ");

    // shared principal frame <=> commuting shape matrices
    const Matrix<double> ab = matmul(enclosing.shape, inner.shape);
    const Matrix<double> ba = matmul(inner.shape, enclosing.shape);
    const double comm = frobenius_norm(ab - ba);
    if (comm > 1e-8 * std::max(1.0, frobenius_norm(enclosing.shape) *
                                        frobenius_norm(inner.shape)))
        throw MismatchedFrames("mean_ellipsoid: principal frames differ");

    const EllipsoidGeometry ge = geometry(enclosing);
    const EllipsoidGeometry gi = geometry(inner);
    Vec3 radii;
    for (int d = 0; d < 3; ++d) radii[static_cast<std::size_t>(d)] =
        0.5 * (ge.radii[static_cast<std::size_t>(d)] + gi.radii[static_cast<std::size_t>(d)]);

    Matrix<double> shape(3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double s = 0.0;
            for (int d = 0; d < 3; ++d)
                s += ge.orientation(r, d) * ge.orientation(c, d) /
                     (radii[static_cast<std::size_t>(d)] * radii[static_cast<std::size_t>(d)]);
            shape(r, c) = s;
        }
    for (int r = 0; r < 3; ++r)
        for (int c = r + 1; c < 3; ++c) {
            const double s = 0.5 * (shape(r, c) + shape(c, r));
            shape(r, c) = s;
            shape(c, r) = s;
        }
    return Ellipsoid{std::move(shape), enclosing.center, EllipsoidKind::Mean};
}

CsdReport csd(const std::vector<Grain>& grains, DiameterSelector selector,
              EllipsoidKind kind, double mvee_tol) {
    if (grains.size() < 5)
        throw InsufficientData("csd: need at least 5 grains, got " +
                               std::to_string(grains.size()));

    CsdReport report;
    report.selector = selector;
    report.kind = kind;
    report.diameters.reserve(grains.size());
    for (const Grain& grain : grains) {
        const Ellipsoid enclosing = mvee(grain.points, mvee_tol);
        EllipsoidGeometry geo;
        switch (kind) {
            case EllipsoidKind::Enclosing: geo = geometry(enclosing); break;
            case EllipsoidKind::Inscribed: geo = geometry(inscribed(enclosing)); break;
            case EllipsoidKind::Mean:
                geo = geometry(mean_ellipsoid(enclosing, inscribed(enclosing)));
                break;
        }
        std::size_t axis = 0;
        switch (selector) {
            case DiameterSelector::Long: axis = 0; break;
            case DiameterSelector::Intermediate: axis = 1; break;
            case DiameterSelector::Short: axis = 2; break;
        }
        report.diameters.push_back(2.0 * geo.radii[axis]);
    }

    const std::size_t bins = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(grains.size()))));
    double lo = report.diameters[0], hi = report.diameters[0];
    for (double d : report.diameters) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    report.bin_edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b)
        report.bin_edges[b] = lo + width * static_cast<double>(b);
    report.counts.assign(bins, 0);
    for (double d : report.diameters) {
        std::size_t b = static_cast<std::size_t>((d - lo) / width);
        if (b >= bins) b = bins - 1;
        ++report.counts[b];
    }

    // ln population density against bin centers, over nonempty bins
    std::vector<double> xs, ys;
    for (std::size_t b = 0; b < bins; ++b) {
        if (report.counts[b] == 0) continue;
        xs.push_back(lo + width * (static_cast<double>(b) + 0.5));
        ys.push_back(std::log(static_cast<double>(report.counts[b]) / width));
    }
    if (xs.size() < 2) {
        report.degenerate_fit = true;
        return report;
    }
    const double count = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = count * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) {
        report.degenerate_fit = true;
        return report;
    }
    report.slope = (count * sxy - sx * sy) / denom;
    report.intercept = (sy - report.slope * sx) / count;
    double ss_res = 0, ss_tot = 0;
    const double y_mean = sy / count;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit = report.intercept + report.slope * xs[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - y_mean) * (ys[i] - y_mean);
    }
    report.r_squared = ss_tot < 1e-30 ? (ss_res < 1e-30 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
    return report;
}

} // namespace svdkit::grains
