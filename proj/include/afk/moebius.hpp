#pragma once

#include <array>
#include <complex>
#include <vector>

// Moebius transformations acting on the upper half-space model of H^3 and
// its conformal boundary C u {inf}, together with the spherical metric
// |dz|^2/(1+|z|^2)^2 on the boundary sphere.  All boundary radii and
// distances in this project use that normalization (sphere diameter pi/2).

namespace afk {

using cplx = std::complex<double>;

constexpr double kInfinityCutoff = 1e12;

// A point of C u {inf}.  Finite values above the cutoff are canonicalized
// to the point at infinity so chained compositions never produce NaNs.
struct BoundaryPoint {
    cplx z{0.0, 0.0};
    bool infinite = false;

    static BoundaryPoint finite(cplx value, double cutoff = kInfinityCutoff);
    static BoundaryPoint inf() { return BoundaryPoint{cplx{0, 0}, true}; }
};

// (z, t) in the upper half-space, t > 0 strictly.
struct HalfSpacePoint {
    cplx z{0.0, 0.0};
    double t = 1.0;

    HalfSpacePoint() = default;
    HalfSpacePoint(cplx z_, double t_);
};

// Normalized 2x2 complex matrix with det = 1; the PSL(2,C) sign ambiguity
// is retained (all actions and the classification are sign-invariant).
struct MoebiusTransform {
    cplx a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};

    MoebiusTransform() = default;
    MoebiusTransform(cplx a_, cplx b_, cplx c_, cplx d_);

    static MoebiusTransform identity() { return MoebiusTransform{}; }

    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }
    MoebiusTransform inverse() const;
};

MoebiusTransform compose(const MoebiusTransform& A, const MoebiusTransform& B);
inline MoebiusTransform operator*(const MoebiusTransform& A, const MoebiusTransform& B) {
    return compose(A, B);
}

BoundaryPoint apply_boundary(const MoebiusTransform& T, const BoundaryPoint& p);
HalfSpacePoint apply_halfspace(const MoebiusTransform& T, const HalfSpacePoint& x);

enum class ElementKind { Identity, Elliptic, Parabolic, Loxodromic };

struct ElementClass {
    ElementKind kind = ElementKind::Identity;
    double translation_length = 0.0;  // 0 for non-loxodromic
};

ElementClass classify(const MoebiusTransform& T, double tol = 1e-9);

// Geodesic distance in the metric |dz|/(1+|z|^2); d(0,inf) = pi/2.
double spherical_distance(const BoundaryPoint& p, const BoundaryPoint& q);

// Unit sphere embedding of the boundary (stereographic from the north pole,
// 0 -> south pole, inf -> north pole).  The spherical distance above equals
// half the great-circle angle between the embedded points.
std::array<double, 3> sphere_embed(const BoundaryPoint& p);
BoundaryPoint sphere_unembed(const std::array<double, 3>& v);
double spherical_distance_vec(const std::array<double, 3>& u, const std::array<double, 3>& v);

// Fixed points on the boundary; throws std::invalid_argument for the identity.
std::vector<BoundaryPoint> fixed_points(const MoebiusTransform& T);

// Attracting fixed point (eigenvector of the larger-modulus eigenvalue);
// only meaningful for loxodromic elements.
BoundaryPoint attracting_fixed_point(const MoebiusTransform& T);

// Hyperbolic distance in the upper half-space model,
// cosh d = 1 + (|z1-z2|^2 + (t1-t2)^2) / (2 t1 t2).
double halfspace_distance(const HalfSpacePoint& x, const HalfSpacePoint& y);

}  // namespace afk
