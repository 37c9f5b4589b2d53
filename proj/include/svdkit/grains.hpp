#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "svdkit/matrix.hpp"

namespace svdkit::grains {

/// Ideal crystal habits with fixed diameter ratios.
enum class CrystalShape { Prism, Plate, Cuboid };

/// (1:1:5), (1:5:5), (1:3:5) for prism, plate, cuboid.
std::array<double, 3> shape_ratios(CrystalShape shape);

struct GrowthParams {
    double alpha = 0.5;                         // nucleation constant per step
    std::size_t steps = 1;
    std::array<double, 3> growth_rate{1, 1, 1}; // half-diameter increment per axis per step
    CrystalShape shape = CrystalShape::Prism;
    double noise = 0.0;                         // relative surface irregularity, [0, 0.5]
    std::uint64_t seed = 0;
    std::size_t points_per_grain = 5000;        // boundary discretization target
};

struct Grain {
    Matrix<double> points;       // n x 3 boundary cloud
    std::size_t birth_step = 1;  // 1-based nucleation step
};

enum class EllipsoidKind { Enclosing, Inscribed, Mean };

/// {x : (x - c)^T A (x - c) <= 1} with symmetric positive-definite A.
struct Ellipsoid {
    Matrix<double> shape;           // 3x3
    std::array<double, 3> center{};
    EllipsoidKind kind = EllipsoidKind::Enclosing;
};

/// Radii r_i = 1/sqrt(sigma_i) (descending) and the principal-axis rotation.
struct EllipsoidGeometry {
    std::array<double, 3> radii{};
    Matrix<double> orientation;  // columns are axes matching radii, det +1
};

enum class DiameterSelector { Short, Intermediate, Long };

struct CsdReport {
    DiameterSelector selector = DiameterSelector::Long;
    EllipsoidKind kind = EllipsoidKind::Enclosing;
    std::vector<double> bin_edges;       // bins + 1 edges
    std::vector<std::size_t> counts;
    std::vector<double> diameters;       // per grain, input order
    double slope = 0.0;                  // ln(population density) per unit size
    double intercept = 0.0;
    double r_squared = 0.0;
    bool degenerate_fit = false;         // fewer than two nonempty bins
};

/// Grows a population under the exponential nucleation law (round(e^{alpha t})
/// new grains at step t) and constant per-axis growth, then discretizes each
/// grain to a boundary cloud. Deterministic given the seed.
std::vector<Grain> generate_population(const GrowthParams& params);

/// Minimum-volume enclosing ellipsoid of a 3D point cloud by Khachiyan
/// dual ascent with away steps over an active working set. On return every
/// point satisfies (p - c)^T A (p - c) <= 1 + tol.
Ellipsoid mvee(const Matrix<double>& points, double tol);

/// Radii and orientation from the SVD of the shape matrix.
EllipsoidGeometry geometry(const Ellipsoid& e);

/// Enclosing ellipsoid shrunk about its center by 1/3 (the John factor for
/// 3D), guaranteed inside the convex hull of the enclosed points.
Ellipsoid inscribed(const Ellipsoid& e);

/// Axis-wise arithmetic mean of the radii of an enclosing/inscribed pair
/// sharing a center and principal frame.
Ellipsoid mean_ellipsoid(const Ellipsoid& enclosing, const Ellipsoid& inscribed);

/// Crystal size distribution: per-grain ellipsoid fit, one diameter per
/// grain, sqrt-rule histogram, and a least-squares line through
/// ln(population density) over the nonempty bins.
CsdReport csd(const std::vector<Grain>& grains, DiameterSelector selector,
              EllipsoidKind kind, double mvee_tol = 1e-7);

} // namespace svdkit::grains
