#include "afk/moebius.hpp"

#include <cmath>
#include <stdexcept>

namespace afk {

BoundaryPoint BoundaryPoint::finite(cplx value, double cutoff) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) ||
        std::abs(value) > cutoff) {
        return inf();
    }
    return BoundaryPoint{value, false};
}

HalfSpacePoint::HalfSpacePoint(cplx z_, double t_) : z(z_), t(t_) {
    if (!(t > 0.0)) throw std::invalid_argument("half-space height must be positive");
}

MoebiusTransform::MoebiusTransform(cplx a_, cplx b_, cplx c_, cplx d_)
    : a(a_), b(b_), c(c_), d(d_) {
    const cplx det = a * d - b * c;
    if (std::abs(det) < 1e-300) throw std::invalid_argument("singular Moebius matrix");
    const cplx s = std::sqrt(det);
    a /= s;
    b /= s;
    c /= s;
    d /= s;
}

MoebiusTransform MoebiusTransform::inverse() const {
    MoebiusTransform R;
    R.a = d;
    R.b = -b;
    R.c = -c;
    R.d = a;
    return R;
}

MoebiusTransform compose(const MoebiusTransform& A, const MoebiusTransform& B) {
    return MoebiusTransform{A.a * B.a + A.b * B.c, A.a * B.b + A.b * B.d,
                            A.c * B.a + A.d * B.c, A.c * B.b + A.d * B.d};
}

BoundaryPoint apply_boundary(const MoebiusTransform& T, const BoundaryPoint& p) {
    if (p.infinite) {
        if (std::abs(T.c) == 0.0) return BoundaryPoint::inf();
        return BoundaryPoint::finite(T.a / T.c);
    }
    const cplx den = T.c * p.z + T.d;
    if (std::abs(den) == 0.0) return BoundaryPoint::inf();
    return BoundaryPoint::finite((T.a * p.z + T.b) / den);
}

HalfSpacePoint apply_halfspace(const MoebiusTransform& T, const HalfSpacePoint& x) {
    const cplx w = T.c * x.z + T.d;
    const double den = std::norm(w) + std::norm(T.c) * x.t * x.t;
    const cplx zn = (T.a * x.z + T.b) * std::conj(w) + T.a * std::conj(T.c) * x.t * x.t;
    return HalfSpacePoint{zn / den, x.t / den};
}

ElementClass classify(const MoebiusTransform& T, double tol) {
    // Identity up to PSL sign: off-diagonals ~ 0 and a ~ d.
    if (std::abs(T.b) <= tol && std::abs(T.c) <= tol && std::abs(T.a - T.d) <= tol) {
        return ElementClass{ElementKind::Identity, 0.0};
    }
    const cplx tr2 = T.trace() * T.trace();
    if (std::abs(tr2 - 4.0) <= tol) return ElementClass{ElementKind::Parabolic, 0.0};
    if (std::abs(tr2.imag()) <= tol && tr2.real() >= 0.0 && tr2.real() < 4.0) {
        return ElementClass{ElementKind::Elliptic, 0.0};
    }
    const cplx tr = T.trace();
    const cplx s = std::sqrt(tr2 - 4.0);
    const cplx l1 = (tr + s) / 2.0;
    const cplx l2 = (tr - s) / 2.0;
    const double lambda = std::max(std::abs(l1), std::abs(l2));
    return ElementClass{ElementKind::Loxodromic, 2.0 * std::log(lambda)};
}

std::array<double, 3> sphere_embed(const BoundaryPoint& p) {
    if (p.infinite) return {0.0, 0.0, 1.0};
    const double n2 = std::norm(p.z);
    const double den = 1.0 + n2;
    return {2.0 * p.z.real() / den, 2.0 * p.z.imag() / den, (n2 - 1.0) / den};
}

BoundaryPoint sphere_unembed(const std::array<double, 3>& v) {
    const double den = 1.0 - v[2];
    if (den < 1e-13) return BoundaryPoint::inf();
    return BoundaryPoint::finite(cplx{v[0] / den, v[1] / den});
}

double spherical_distance_vec(const std::array<double, 3>& u, const std::array<double, 3>& v) {
    double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    dot = std::max(-1.0, std::min(1.0, dot));
    return 0.5 * std::acos(dot);
}

double spherical_distance(const BoundaryPoint& p, const BoundaryPoint& q) {
    if (p.infinite && q.infinite) return 0.0;
    double chord;
    if (p.infinite) {
        chord = 1.0 / std::sqrt(1.0 + std::norm(q.z));
    } else if (q.infinite) {
        chord = 1.0 / std::sqrt(1.0 + std::norm(p.z));
    } else {
        chord = std::abs(p.z - q.z) /
                std::sqrt((1.0 + std::norm(p.z)) * (1.0 + std::norm(q.z)));
    }
    chord = std::min(1.0, chord);
    return std::asin(chord);
}

std::vector<BoundaryPoint> fixed_points(const MoebiusTransform& T) {
    const double tol = 1e-12;
    if (classify(T, tol).kind == ElementKind::Identity) {
        throw std::invalid_argument("no isolated fixed points: identity element");
    }
    std::vector<BoundaryPoint> out;
    if (std::abs(T.c) <= tol) {
        out.push_back(BoundaryPoint::inf());
        if (std::abs(T.d - T.a) > tol) {
            out.push_back(BoundaryPoint::finite(T.b / (T.d - T.a)));
        }
        return out;
    }
    // c z^2 + (d - a) z - b = 0
    const cplx disc = std::sqrt((T.d - T.a) * (T.d - T.a) + 4.0 * T.c * T.b);
    const cplx r1 = (T.a - T.d + disc) / (2.0 * T.c);
    const cplx r2 = (T.a - T.d - disc) / (2.0 * T.c);
    out.push_back(BoundaryPoint::finite(r1));
    if (std::abs(r1 - r2) > tol) out.push_back(BoundaryPoint::finite(r2));
    return out;
}

BoundaryPoint attracting_fixed_point(const MoebiusTransform& T) {
    const cplx tr = T.trace();
    const cplx s = std::sqrt(tr * tr - 4.0);
    cplx lambda = (tr + s) / 2.0;
    if (std::abs(tr - s) > std::abs(tr + s)) lambda = (tr - s) / 2.0;
    // Eigenvector for lambda as a point of CP^1, picking the better
    // conditioned of the two rows of (A - lambda I).
    const cplx v1a = T.b, v2a = lambda - T.a;
    const cplx v1b = lambda - T.d, v2b = T.c;
    cplx num, den;
    if (std::max(std::abs(v1b), std::abs(v2b)) > std::max(std::abs(v1a), std::abs(v2a))) {
        num = v1b;
        den = v2b;
    } else {
        num = v1a;
        den = v2a;
    }
    BoundaryPoint p;
    if (std::abs(den) < 1e-14 * std::abs(num) || std::abs(den) == 0.0) {
        p = BoundaryPoint::inf();
    } else {
        p = BoundaryPoint::finite(num / den);
    }
    // A couple of forward iterations sharpen the eigenvector solve; for a
    // strongly attracting word this contracts the linear-algebra error by
    // the squared multiplier.
    p = apply_boundary(T, apply_boundary(T, p));
    return p;
}

double halfspace_distance(const HalfSpacePoint& x, const HalfSpacePoint& y) {
    const double arg = 1.0 + (std::norm(x.z - y.z) + (x.t - y.t) * (x.t - y.t)) /
                                 (2.0 * x.t * y.t);
    return std::acosh(std::max(1.0, arg));
}

}  // namespace afk
