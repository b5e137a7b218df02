#include "afk/surface.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace afk {

namespace {

using Mat = std::array<std::array<double, 4>, 4>;  // row-major, columns F,E1,E2,N

Mat mat_mul(const Mat& M, const Mat& A) {
    Mat R{};
    for (int i = 0; i < 4; ++i)
        for (int c = 0; c < 4; ++c) {
            double acc = 0;
            for (int k = 0; k < 4; ++k) acc += M[i][k] * A[k][c];
            R[i][c] = acc;
        }
    return R;
}

Mat mat_add_scaled(const Mat& M, const Mat& D, double s) {
    Mat R;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) R[i][j] = M[i][j] + s * D[i][j];
    return R;
}

double mat_max_diff(const Mat& A, const Mat& B) {
    double m = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(A[i][j] - B[i][j]));
    return m;
}

Vec4 column(const Mat& M, int c) { return {M[0][c], M[1][c], M[2][c], M[3][c]}; }

// Contiguous span of disk nodes along each row and column.
struct Span {
    int lo = 1, hi = 0;
    bool contains(int k) const { return k >= lo && k <= hi; }
};

// Lagrange interpolation at fractional index xi from per-line samples.
double interp_line(const std::vector<double>& vals, const Span& span, double xi) {
    int k0 = static_cast<int>(std::floor(xi)) - 1;
    k0 = std::max(span.lo, std::min(k0, span.hi - 3));
    const int m = std::min(4, span.hi - span.lo + 1);
    if (m <= 1) return vals[span.lo];
    if (m < 4) k0 = span.lo;
    double acc = 0;
    for (int a = 0; a < m; ++a) {
        double w = 1;
        for (int b = 0; b < m; ++b) {
            if (a == b) continue;
            w *= (xi - (k0 + b)) / double(a - b);
        }
        acc += w * vals[k0 + a];
    }
    return acc;
}

// Precomputed u, u_x, u_y with row/column spans for line interpolation.
struct FieldData {
    const DiskGrid* grid;
    std::vector<double> u, ux, uy;
    std::vector<Span> row_span, col_span;

    explicit FieldData(const ConformalFactorField& field) : grid(&field.grid) {
        const int n = grid->n();
        const double h = grid->spacing();
        u = field.values;
        ux.assign(n * n, 0.0);
        uy.assign(n * n, 0.0);
        row_span.assign(n, Span{});
        col_span.assign(n, Span{});
        for (int j = 0; j < n; ++j) {
            int lo = n, hi = -1;
            for (int i = 0; i < n; ++i)
                if (grid->inside(i, j)) {
                    lo = std::min(lo, i);
                    hi = std::max(hi, i);
                }
            row_span[j] = Span{lo, hi};
        }
        for (int i = 0; i < n; ++i) {
            int lo = n, hi = -1;
            for (int j = 0; j < n; ++j)
                if (grid->inside(i, j)) {
                    lo = std::min(lo, j);
                    hi = std::max(hi, j);
                }
            col_span[i] = Span{lo, hi};
        }
        // Derivative at node k from the m <= 5 contiguous span nodes nearest
        // to k (Lagrange differentiation), 4th order wherever five fit.
        auto deriv = [&](auto value, int k, const Span& span) {
            const int avail = span.hi - span.lo + 1;
            const int m = std::min(5, avail);
            if (m <= 1) return 0.0;
            int k0 = std::max(span.lo, std::min(k - m / 2, span.hi - m + 1));
            double acc = 0;
            for (int a = 0; a < m; ++a) {
                // d/dx of the a-th Lagrange basis at x = k.
                double w = 0;
                for (int b = 0; b < m; ++b) {
                    if (b == a) continue;
                    double term = 1.0 / double(a - b);
                    for (int c = 0; c < m; ++c) {
                        if (c == a || c == b) continue;
                        term *= double(k - (k0 + c)) / double(a - c);
                    }
                    w += term;
                }
                acc += w * value(k0 + a);
            }
            return acc / h;
        };
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (grid->inside(i, j)) {
                    ux[grid->index(i, j)] =
                        deriv([&](int k) { return u[grid->index(k, j)]; }, i, row_span[j]);
                    uy[grid->index(i, j)] =
                        deriv([&](int k) { return u[grid->index(i, k)]; }, j, col_span[i]);
                }
    }

    // u, u_x, u_y at fractional index xi along row j (axis=0) or column i (axis=1).
    void sample(int axis, int line, double xi, double& su, double& sux, double& suy) const {
        const int n = grid->n();
        std::vector<double> lu(n), lux(n), luy(n);
        const Span& span = axis == 0 ? row_span[line] : col_span[line];
        for (int k = span.lo; k <= span.hi; ++k) {
            const int idx = axis == 0 ? grid->index(k, line) : grid->index(line, k);
            lu[k] = u[idx];
            lux[k] = ux[idx];
            luy[k] = uy[idx];
        }
        su = interp_line(lu, span, xi);
        sux = interp_line(lux, span, xi);
        suy = interp_line(luy, span, xi);
    }
};

struct Connection {
    const FieldData* data;
    const QuadDifferential* alpha;

    // Maurer-Cartan matrix in the given axis direction at the point with
    // fractional index xi along the line, scaled by the grid spacing so that
    // M' = M * A with respect to the fractional index.
    Mat evaluate(int axis, int line, double xi) const {
        const DiskGrid& g = *data->grid;
        double x, y;
        if (axis == 0) {
            x = -g.rho() + xi * g.spacing();
            y = g.y_at(line);
        } else {
            x = g.x_at(line);
            y = -g.rho() + xi * g.spacing();
        }
        double uu, uux, uuy;
        data->sample(axis, line, xi, uu, uux, uuy);
        const double r2 = x * x + y * y;
        const double conf = 1.0 - r2;  // > 0 inside the unit disk
        const double v = uu + std::log(2.0 / conf);
        const double vx = uux + 2.0 * x / conf;
        const double vy = uuy + 2.0 * y / conf;
        const double ev = std::exp(v);
        const double evi = std::exp(-v);
        const cplx f = alpha->evaluate({x, y});
        const double b11 = f.real();
        const double b12 = -f.imag();
        Mat A{};
        if (axis == 0) {
            const double w = -vy;  // omega_12(d/dx)
            A[1][0] = ev;
            A[0][1] = ev;
            A[2][1] = w;
            A[3][1] = -evi * b11;
            A[1][2] = -w;
            A[3][2] = -evi * b12;
            A[1][3] = evi * b11;
            A[2][3] = evi * b12;
        } else {
            const double w = vx;  // omega_12(d/dy)
            A[2][0] = ev;
            A[0][2] = ev;
            A[2][1] = w;
            A[3][1] = -evi * b12;
            A[1][2] = -w;
            A[3][2] = evi * b11;
            A[1][3] = evi * b12;
            A[2][3] = -evi * b11;
        }
        const double h = g.spacing();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) A[i][j] *= h;
        return A;
    }
};

// RK4 transport of M' = M * A along one grid edge (fractional index from
// xi0 to xi0 + dir), with substeps.
Mat transport_edge(const Connection& conn, const Mat& start, int axis, int line, double xi0,
                   double dir, int substeps) {
    Mat M = start;
    const double ds = dir / substeps;
    double xi = xi0;
    for (int s = 0; s < substeps; ++s) {
        const Mat A1 = conn.evaluate(axis, line, xi);
        const Mat k1 = mat_mul(M, A1);
        const Mat A2 = conn.evaluate(axis, line, xi + 0.5 * ds);
        const Mat k2 = mat_mul(mat_add_scaled(M, k1, 0.5 * ds), A2);
        const Mat k3 = mat_mul(mat_add_scaled(M, k2, 0.5 * ds), A2);
        const Mat A4 = conn.evaluate(axis, line, xi + ds);
        const Mat k4 = mat_mul(mat_add_scaled(M, k3, ds), A4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                M[i][j] += ds / 6.0 * (k1[i][j] + 2 * k2[i][j] + 2 * k3[i][j] + k4[i][j]);
            }
        xi += ds;
    }
    return M;
}

double gram_defect_of(const Mat& M) {
    // M^T eta M should equal eta = diag(-1, 1, 1, 1) in column order F,E1,E2,N.
    double defect = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            const double dot = minkowski_dot(column(M, a), column(M, b));
            const double expect = (a == b) ? (a == 0 ? -1.0 : 1.0) : 0.0;
            defect = std::max(defect, std::abs(dot - expect));
        }
    return defect;
}

}  // namespace

double minkowski_dot(const Vec4& a, const Vec4& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Vec4 halfspace_to_hyperboloid(const HalfSpacePoint& p) {
    const double x = p.z.real(), y = p.z.imag(), t = p.t;
    const double s = x * x + y * y + t * t;
    return {(s + 1.0) / (2.0 * t), x / t, y / t, (s - 1.0) / (2.0 * t)};
}

HalfSpacePoint hyperboloid_to_halfspace(const Vec4& X) {
    const double den = X[0] - X[3];
    if (!(den > 0.0)) throw std::domain_error("point not on the upper hyperboloid sheet");
    const double t = 1.0 / den;
    return HalfSpacePoint{cplx{X[1] * t, X[2] * t}, t};
}

Vec4 push_vector_to_hyperboloid(const HalfSpacePoint& p, const Vec3& v) {
    const double x = p.z.real(), y = p.z.imag(), t = p.t;
    const double vx = v[0], vy = v[1], vt = v[2];
    const double s = x * x + y * y + t * t;
    const double radial = (x * vx + y * vy + t * vt) / t;
    return {radial - (s + 1.0) * vt / (2.0 * t * t), vx / t - x * vt / (t * t),
            vy / t - y * vt / (t * t), radial - (s - 1.0) * vt / (2.0 * t * t)};
}

Vec3 pull_vector_to_halfspace(const Vec4& X, const Vec4& W) {
    const double den = X[0] - X[3];
    const double t = 1.0 / den;
    const double vt = -t * t * (W[0] - W[3]);
    const double vx = W[1] * t + X[1] * vt;
    const double vy = W[2] * t + X[2] * vt;
    return {vx, vy, vt};
}

ImmersedPatch integrate_immersion(const ConformalFactorField& u, const QuadDifferential& alpha,
                                  const ImmersionConfig& config) {
    if (!u.converged) throw std::invalid_argument("conformal factor field not converged");
    const DiskGrid& grid = u.grid;
    const int n = grid.n();
    const int ic = (n - 1) / 2, jc = (n - 1) / 2;
    if (!grid.inside(ic, jc)) throw std::invalid_argument("grid center not inside the disk");

    FieldData data(u);
    Connection conn{&data, &alpha};

    std::vector<std::optional<Mat>> frames(grid.size());
    // Normalized anchor: position (0,0,1), tangents along x, y, downward normal.
    Mat anchor{};
    anchor[0][0] = 1.0;
    anchor[1][1] = 1.0;
    anchor[2][2] = 1.0;
    anchor[3][3] = -1.0;
    frames[grid.index(ic, jc)] = anchor;

    // Center row first.
    for (int dir : {1, -1}) {
        int i = ic;
        while (grid.inside(i + dir, jc)) {
            const Mat& cur = *frames[grid.index(i, jc)];
            frames[grid.index(i + dir, jc)] =
                transport_edge(conn, cur, 0, jc, i, dir, config.substeps);
            i += dir;
        }
    }
    // Then every column from its center-row node.
    for (int i = 0; i < n; ++i) {
        if (!frames[grid.index(i, jc)]) continue;
        for (int dir : {1, -1}) {
            int j = jc;
            while (grid.inside(i, j + dir)) {
                const Mat& cur = *frames[grid.index(i, j)];
                frames[grid.index(i, j + dir)] =
                    transport_edge(conn, cur, 1, i, j, dir, config.substeps);
                j += dir;
            }
        }
    }

    ImmersedPatch patch;
    patch.grid = grid;
    patch.frames.assign(grid.size(), std::nullopt);
    patch.raw_frames.assign(grid.size(), std::nullopt);

    // Loop error: frame at (i+1, j+1) via right-then-up vs up-then-right.
    double loop_error = 0;
    for (int j = 0; j + 1 < n; ++j)
        for (int i = 0; i + 1 < n; ++i) {
            if (!(grid.inside(i, j) && grid.inside(i + 1, j) && grid.inside(i, j + 1) &&
                  grid.inside(i + 1, j + 1) && frames[grid.index(i, j)])) {
                continue;
            }
            const Mat& base = *frames[grid.index(i, j)];
            const Mat right = transport_edge(conn, base, 0, j, i, 1.0, config.substeps);
            const Mat ru = transport_edge(conn, right, 1, i + 1, j, 1.0, config.substeps);
            const Mat up = transport_edge(conn, base, 1, i, j, 1.0, config.substeps);
            const Mat ur = transport_edge(conn, up, 0, j + 1, i, 1.0, config.substeps);
            loop_error = std::max(loop_error, mat_max_diff(ru, ur));
        }
    patch.loop_error = loop_error;

    double gram = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const auto& m = frames[grid.index(i, j)];
            if (!m) continue;
            gram = std::max(gram, gram_defect_of(*m));
            FramePoint fp;
            const Vec4 F = column(*m, 0);
            fp.position = hyperboloid_to_halfspace(F);
            fp.tangent1 = pull_vector_to_halfspace(F, column(*m, 1));
            fp.tangent2 = pull_vector_to_halfspace(F, column(*m, 2));
            fp.normal = pull_vector_to_halfspace(F, column(*m, 3));
            patch.raw_frames[grid.index(i, j)] = Mat4{F, column(*m, 1), column(*m, 2),
                                                      column(*m, 3)};
            patch.frames[grid.index(i, j)] = fp;
        }
    patch.gram_defect = gram;
    patch.valid = loop_error <= config.loop_tolerance;
    return patch;
}

BoundaryPoint gauss_map_point(const HalfSpacePoint& p, const Vec3& v, int sign) {
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::abs(norm - p.t) > 1e-8 * std::max(1.0, p.t)) {
        throw std::invalid_argument("direction is not hyperbolic-unit");
    }
    double vx = v[0] / norm, vy = v[1] / norm, vt = v[2] / norm;
    if (sign < 0) {
        vx = -vx;
        vy = -vy;
        vt = -vt;
    }
    const double uz = std::hypot(vx, vy);
    if (uz < 1e-15) {
        return vt > 0 ? BoundaryPoint::inf() : BoundaryPoint::finite(p.z);
    }
    const cplx dir{vx / uz, vy / uz};
    return BoundaryPoint::finite(p.z + p.t * (vt + 1.0) / uz * dir);
}

BoundaryField gauss_map_patch(const ImmersedPatch& patch, int sign) {
    BoundaryField field;
    field.grid = patch.grid;
    field.values.assign(patch.grid.size(), std::nullopt);
    for (int k = 0; k < patch.grid.size(); ++k) {
        if (!patch.frames[k]) continue;
        const FramePoint& fp = *patch.frames[k];
        field.values[k] = gauss_map_point(fp.position, fp.normal, sign);
    }
    return field;
}

namespace {

// Complex derivative pair (f_z, f_zbar) of a boundary field at a node via
// 2nd-order differences; nullopt if the stencil is incomplete or the map is
// not finite nearby.
std::optional<std::pair<cplx, cplx>> wirtinger(const BoundaryField& map, int i, int j) {
    const DiskGrid& g = map.grid;
    const double h = g.spacing();
    auto value = [&](int a, int b) -> std::optional<cplx> {
        if (!g.in_range(a, b) || !map.at(a, b) || map.at(a, b)->infinite) return std::nullopt;
        return map.at(a, b)->z;
    };
    auto diff = [&](auto get) -> std::optional<cplx> {
        auto p1 = get(1), m1 = get(-1);
        if (p1 && m1) return (*p1 - *m1) / (2.0 * h);
        auto p2 = get(2), c = get(0);
        if (p1 && p2 && c) return (-3.0 * *c + 4.0 * *p1 - *p2) / (2.0 * h);
        auto m2 = get(-2);
        if (m1 && m2 && c) return (3.0 * *c - 4.0 * *m1 + *m2) / (2.0 * h);
        return std::nullopt;
    };
    auto wx = diff([&](int d) { return value(i + d, j); });
    auto wy = diff([&](int d) { return value(i, j + d); });
    if (!wx || !wy) return std::nullopt;
    const cplx iunit{0.0, 1.0};
    return std::make_pair((*wx - iunit * *wy) / 2.0, (*wx + iunit * *wy) / 2.0);
}

bool near_infinity(const BoundaryPoint& p) {
    return spherical_distance(p, BoundaryPoint::inf()) < 0.1;
}

}  // namespace

BeltramiEstimate beltrami_estimate(const BoundaryField& map, const std::vector<char>* mask) {
    BeltramiEstimate est;
    const DiskGrid& g = map.grid;
    est.mu.assign(g.size(), std::nullopt);
    for (int j = 0; j < g.n(); ++j)
        for (int i = 0; i < g.n(); ++i) {
            const int idx = g.index(i, j);
            if (!map.values[idx]) continue;
            if (map.values[idx]->infinite || near_infinity(*map.values[idx])) {
                ++est.excluded_nodes;
                continue;
            }
            auto d = wirtinger(map, i, j);
            if (!d) {
                ++est.excluded_nodes;
                continue;
            }
            if (std::abs(d->first) < 1e-12) {
                ++est.excluded_nodes;
                continue;
            }
            const cplx mu = d->second / d->first;
            est.mu[idx] = mu;
            if (mask && !(*mask)[idx]) continue;
            est.max_abs_mu = std::max(est.max_abs_mu, std::abs(mu));
        }
    est.dilatation = (1.0 + est.max_abs_mu) / std::max(1e-15, 1.0 - est.max_abs_mu);
    return est;
}

JacobianEstimate jacobian_estimate(const BoundaryField& map) {
    JacobianEstimate est;
    const DiskGrid& g = map.grid;
    est.jacobian.assign(g.size(), std::nullopt);
    for (int j = 0; j < g.n(); ++j)
        for (int i = 0; i < g.n(); ++i) {
            const int idx = g.index(i, j);
            if (!map.values[idx]) continue;
            if (map.values[idx]->infinite || near_infinity(*map.values[idx])) {
                ++est.excluded_nodes;
                continue;
            }
            auto d = wirtinger(map, i, j);
            if (!d) {
                ++est.excluded_nodes;
                continue;
            }
            est.jacobian[idx] = std::norm(d->first) - std::norm(d->second);
        }
    return est;
}

MetricTensorField induced_metric_field(const ConformalFactorField& u) {
    MetricTensorField field;
    field.grid = u.grid;
    field.tensors.assign(u.grid.size(), std::nullopt);
    for (int j = 0; j < u.grid.n(); ++j)
        for (int i = 0; i < u.grid.n(); ++i)
            if (u.grid.inside(i, j)) {
                const double r2 = std::norm(u.grid.z_at(i, j));
                const double factor =
                    std::exp(2.0 * u.at(i, j)) * 4.0 / ((1.0 - r2) * (1.0 - r2));
                field.tensors[u.grid.index(i, j)] = Mat2{{{factor, 0.0}, {0.0, factor}}};
            }
    return field;
}

MetricTensorField second_fundamental_field(const DiskGrid& grid, const QuadDifferential& alpha) {
    MetricTensorField field;
    field.grid = grid;
    field.tensors.assign(grid.size(), std::nullopt);
    for (int j = 0; j < grid.n(); ++j)
        for (int i = 0; i < grid.n(); ++i)
            if (grid.inside(i, j)) {
                const cplx f = alpha.evaluate(grid.z_at(i, j));
                // Re(f dz^2) = Re(f)(dx^2 - dy^2) - 2 Im(f) dx dy
                field.tensors[grid.index(i, j)] =
                    Mat2{{{f.real(), -f.imag()}, {-f.imag(), -f.real()}}};
            }
    return field;
}

EquidistantMetric equidistant_metric(const MetricTensorField& g, const MetricTensorField& B,
                                     double t) {
    if (!g.grid.compatible(B.grid)) throw std::invalid_argument("metric grids differ");
    EquidistantMetric out;
    out.metric.grid = g.grid;
    out.metric.tensors.assign(g.grid.size(), std::nullopt);
    out.min_eigenvalue = 1e300;
    const double ch = std::cosh(t), sh = std::sinh(t);
    for (int k = 0; k < g.grid.size(); ++k) {
        if (!g.tensors[k] || !B.tensors[k]) continue;
        const Mat2& gm = *g.tensors[k];
        const Mat2& bm = *B.tensors[k];
        const double det = gm[0][0] * gm[1][1] - gm[0][1] * gm[1][0];
        const Mat2 ginv{{{gm[1][1] / det, -gm[0][1] / det}, {-gm[1][0] / det, gm[0][0] / det}}};
        Mat2 S{};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) S[a][b] = ginv[a][0] * bm[0][b] + ginv[a][1] * bm[1][b];
        Mat2 C{{{ch + sh * S[0][0], sh * S[0][1]}, {sh * S[1][0], ch + sh * S[1][1]}}};
        Mat2 gc{};  // g * C
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) gc[a][b] = gm[a][0] * C[0][b] + gm[a][1] * C[1][b];
        Mat2 G{};  // C^T * g * C
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) G[a][b] = C[0][a] * gc[0][b] + C[1][a] * gc[1][b];
        out.metric.tensors[k] = G;
        const double tr = G[0][0] + G[1][1];
        const double dd = G[0][0] * G[1][1] - G[0][1] * G[1][0];
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - dd));
        out.min_eigenvalue = std::min(out.min_eigenvalue, tr / 2.0 - disc);
    }
    if (out.min_eigenvalue > 1e299) out.min_eigenvalue = 0.0;
    return out;
}

std::string patch_header_json(const ImmersedPatch& patch) {
    nlohmann::ordered_json j;
    j["n"] = patch.grid.n();
    j["rho"] = patch.grid.rho();
    j["columns"] = {"z_re", "z_im", "t", "normal_x", "normal_y", "normal_t"};
    int count = 0;
    for (const auto& f : patch.frames) count += f.has_value();
    j["nodes"] = count;
    j["loop_error"] = patch.loop_error;
    j["gram_defect"] = patch.gram_defect;
    j["valid"] = patch.valid;
    return j.dump(2);
}

std::vector<double> patch_values_packed(const ImmersedPatch& patch) {
    std::vector<double> out;
    for (const auto& f : patch.frames) {
        if (!f) continue;
        out.push_back(f->position.z.real());
        out.push_back(f->position.z.imag());
        out.push_back(f->position.t);
        out.push_back(f->normal[0]);
        out.push_back(f->normal[1]);
        out.push_back(f->normal[2]);
    }
    return out;
}

BoundaryPoint gauss_map_point_ode(const HalfSpacePoint& p, const Vec3& v, int sign,
                                  double length, int steps) {
    Vec3 dir = v;
    if (sign < 0) {
        dir = {-v[0], -v[1], -v[2]};
    }
    Vec4 gamma = halfspace_to_hyperboloid(p);
    Vec4 vel = push_vector_to_hyperboloid(p, dir);
    // gamma'' = gamma, integrated with classical RK4 on the first-order system.
    const double h = length / steps;
    for (int s = 0; s < steps; ++s) {
        Vec4 k1p = vel, k1v = gamma;
        Vec4 k2p, k2v, k3p, k3v, k4p, k4v;
        for (int i = 0; i < 4; ++i) {
            k2p[i] = vel[i] + 0.5 * h * k1v[i];
            k2v[i] = gamma[i] + 0.5 * h * k1p[i];
        }
        for (int i = 0; i < 4; ++i) {
            k3p[i] = vel[i] + 0.5 * h * k2v[i];
            k3v[i] = gamma[i] + 0.5 * h * k2p[i];
        }
        for (int i = 0; i < 4; ++i) {
            k4p[i] = vel[i] + h * k3v[i];
            k4v[i] = gamma[i] + h * k3p[i];
        }
        for (int i = 0; i < 4; ++i) {
            gamma[i] += h / 6.0 * (k1p[i] + 2 * k2p[i] + 2 * k3p[i] + k4p[i]);
            vel[i] += h / 6.0 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
        }
    }
    const double den = gamma[0] - gamma[3];
    if (std::abs(den) < 1e-12 * std::abs(gamma[0])) return BoundaryPoint::inf();
    return BoundaryPoint::finite(cplx{gamma[1] / den, gamma[2] / den});
}

}  // namespace afk
