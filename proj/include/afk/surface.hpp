#pragma once

#include <array>
#include <optional>
#include <vector>

#include "afk/gauss_equation.hpp"
#include "afk/grid.hpp"
#include "afk/moebius.hpp"
#include "afk/quad_diff.hpp"

// Reconstruction of the minimal immersion into H^3 from (u, alpha) data by
// moving-frame integration (hyperboloid model internally, upper half-space
// for I/O), hyperbolic Gauss maps, Beltrami/Jacobian estimation of boundary
// maps, and the equidistant-foliation metric.

namespace afk {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;   // Minkowski coordinates (X0, X1, X2, X3)
using Mat4 = std::array<Vec4, 4>;     // columns (position, E1, E2, N)

struct FramePoint {
    HalfSpacePoint position;
    Vec3 normal{0, 0, -1};    // Euclidean components, hyperbolic-unit (norm = t)
    Vec3 tangent1{1, 0, 0};
    Vec3 tangent2{0, 1, 0};
};

// Minkowski <.,.> with signature (+,+,+,-) in the order (X1,X2,X3 | X0).
double minkowski_dot(const Vec4& a, const Vec4& b);

Vec4 halfspace_to_hyperboloid(const HalfSpacePoint& p);
HalfSpacePoint hyperboloid_to_halfspace(const Vec4& X);
Vec4 push_vector_to_hyperboloid(const HalfSpacePoint& p, const Vec3& v);
Vec3 pull_vector_to_halfspace(const Vec4& X, const Vec4& W);

struct ImmersedPatch {
    DiskGrid grid{5, 0.5};
    std::vector<std::optional<FramePoint>> frames;  // per node, row-major
    std::vector<std::optional<Mat4>> raw_frames;    // hyperboloid frames
    double loop_error = 0.0;       // max frame discrepancy around plaquettes
    double gram_defect = 0.0;      // max deviation of M^T eta M from eta
    bool valid = false;

    const std::optional<FramePoint>& at(int i, int j) const {
        return frames[grid.index(i, j)];
    }
};

struct ImmersionConfig {
    double loop_tolerance = 1e-4;
    int substeps = 2;  // RK4 substeps per grid edge
};

// Integrates the frame field of the minimal surface with first fundamental
// form e^{2u} * 4|dz|^2/(1-|z|^2)^2 and second fundamental form Re(alpha)
// outward from the center anchor along grid axes.  The anchor frame is the
// normalized one: position (0, 1), normal (0,0,-1), tangents along x and y.
ImmersedPatch integrate_immersion(const ConformalFactorField& u, const QuadDifferential& alpha,
                                  const ImmersionConfig& config = ImmersionConfig{});

// Endpoint at infinity of the geodesic ray from p in direction sign * v;
// v must be hyperbolic-unit (Euclidean norm = t).
BoundaryPoint gauss_map_point(const HalfSpacePoint& p, const Vec3& v, int sign);

struct BoundaryField {
    DiskGrid grid{5, 0.5};
    std::vector<std::optional<BoundaryPoint>> values;

    const std::optional<BoundaryPoint>& at(int i, int j) const {
        return values[grid.index(i, j)];
    }
};

BoundaryField gauss_map_patch(const ImmersedPatch& patch, int sign);

struct BeltramiEstimate {
    std::vector<std::optional<cplx>> mu;  // per node
    double max_abs_mu = 0.0;
    double dilatation = 1.0;  // K = (1 + max|mu|) / (1 - max|mu|)
    int excluded_nodes = 0;   // near infinity or degenerate derivative
};

// Central finite differences of the boundary map; nodes mapping within
// spherical distance 0.1 of infinity are excluded, as are nodes with
// |f_z| < 1e-12.  An optional mask restricts the sup to chosen nodes.
BeltramiEstimate beltrami_estimate(const BoundaryField& map,
                                   const std::vector<char>* mask = nullptr);

struct JacobianEstimate {
    std::vector<std::optional<double>> jacobian;  // |f_z|^2 - |f_zbar|^2
    int excluded_nodes = 0;
};

JacobianEstimate jacobian_estimate(const BoundaryField& map);

using Mat2 = std::array<std::array<double, 2>, 2>;

struct MetricTensorField {
    DiskGrid grid{5, 0.5};
    std::vector<std::optional<Mat2>> tensors;
};

// First fundamental form g = e^{2u} * 4/(1-|z|^2)^2 * I at every disk node.
MetricTensorField induced_metric_field(const ConformalFactorField& u);

// Second fundamental form Re(alpha) in (dx, dy) coordinates.
MetricTensorField second_fundamental_field(const DiskGrid& grid, const QuadDifferential& alpha);

struct EquidistantMetric {
    MetricTensorField metric;
    double min_eigenvalue = 0.0;
};

// g((cosh t I + sinh t S)X, (cosh t I + sinh t S)Y) with S = g^{-1} B.
EquidistantMetric equidistant_metric(const MetricTensorField& g, const MetricTensorField& B,
                                     double t);

// Patch dump: JSON metadata plus raw 64-bit float columns (z re, z im, t,
// normal x/y/t) for every node carrying a frame, in row-major node order.
std::string patch_header_json(const ImmersedPatch& patch);
std::vector<double> patch_values_packed(const ImmersedPatch& patch);

// Oracle-grade reference: integrates the geodesic ODE gamma'' = gamma in the
// hyperboloid model with RK4 and reads off the endpoint.  Used by tests to
// validate the closed-form Gauss map.
BoundaryPoint gauss_map_point_ode(const HalfSpacePoint& p, const Vec3& v, int sign,
                                  double length = 16.0, int steps = 16000);

}  // namespace afk
