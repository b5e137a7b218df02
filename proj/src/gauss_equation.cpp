#include "afk/gauss_equation.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace afk {

namespace {

constexpr double kThetaMin = 0.05;

// Per-node Shortley-Weller stencil.  Arms that would leave the disk are
// shortened to the circle |z| = rho, where the Dirichlet value is 0.
struct Stencil {
    int i = 0, j = 0;
    double cE = 0, cW = 0, cN = 0, cS = 0, cC = 0;  // Euclidean Laplacian weights
    int nE = -1, nW = -1, nN = -1, nS = -1;         // unknown indices, -1 = boundary
    double weight = 0;                              // (1-|z|^2)^2 / 4
    double s = 0;                                   // ||alpha||_h^2 at the node
};

// Fraction of the grid step from (x, y) to the circle |z| = rho along (dx, dy).
double arm_fraction(double x, double y, double dx, double dy, double h, double rho) {
    const double a = dx * dx + dy * dy;
    const double b = 2.0 * (x * dx + y * dy);
    const double c = x * x + y * y - rho * rho;
    const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * a * c));
    const double t = (-b + disc) / (2.0 * a);
    return std::max(kThetaMin, std::min(1.0, t / h));
}

struct Problem {
    std::vector<Stencil> nodes;
    std::vector<int> unknown_index;  // grid index -> unknown index or -1
    const DiskGrid* grid = nullptr;

    Problem(const DiskGrid& g, const QuadDifferential& alpha) : grid(&g) {
        unknown_index.assign(g.size(), -1);
        for (int j = 0; j < g.n(); ++j)
            for (int i = 0; i < g.n(); ++i)
                if (g.inside(i, j)) {
                    unknown_index[g.index(i, j)] = static_cast<int>(nodes.size());
                    nodes.push_back(Stencil{i, j});
                }
        const double h = g.spacing();
        for (auto& st : nodes) {
            const double x = g.x_at(st.i), y = g.y_at(st.j);
            auto arm = [&](int di, int dj, int& neighbor) {
                if (g.inside(st.i + di, st.j + dj)) {
                    neighbor = unknown_index[g.index(st.i + di, st.j + dj)];
                    return 1.0;
                }
                neighbor = -1;
                return arm_fraction(x, y, di, dj, h, g.rho());
            };
            const double tE = arm(1, 0, st.nE), tW = arm(-1, 0, st.nW);
            const double tN = arm(0, 1, st.nN), tS = arm(0, -1, st.nS);
            const double h2 = h * h;
            st.cE = 2.0 / (h2 * tE * (tE + tW));
            st.cW = 2.0 / (h2 * tW * (tE + tW));
            st.cN = 2.0 / (h2 * tN * (tN + tS));
            st.cS = 2.0 / (h2 * tS * (tN + tS));
            st.cC = -2.0 / (h2 * tE * tW) - 2.0 / (h2 * tN * tS);
            const double w = 1.0 - (x * x + y * y);
            st.weight = w * w / 4.0;
            const double nh = norm_hyperbolic(alpha, {x, y});
            st.s = nh * nh;
        }
    }

    int size() const { return static_cast<int>(nodes.size()); }

    double laplace_at(const Stencil& st, const std::vector<double>& v) const {
        double acc = st.cC * v[unknown_index[grid->index(st.i, st.j)]];
        if (st.nE >= 0) acc += st.cE * v[st.nE];
        if (st.nW >= 0) acc += st.cW * v[st.nW];
        if (st.nN >= 0) acc += st.cN * v[st.nN];
        if (st.nS >= 0) acc += st.cS * v[st.nS];
        return acc;
    }

    void nonlinear_residual(const std::vector<double>& u, std::vector<double>& F) const {
        F.resize(size());
        for (int k = 0; k < size(); ++k) {
            const Stencil& st = nodes[k];
            const double uk = u[k];
            F[k] = st.weight * laplace_at(st, u) + 1.0 - std::exp(2.0 * uk) -
                   st.s * std::exp(-2.0 * uk);
        }
    }

    // Jacobian-vector product at the current iterate.
    void jacobian_apply(const std::vector<double>& u, const std::vector<double>& v,
                        std::vector<double>& out) const {
        out.resize(size());
        for (int k = 0; k < size(); ++k) {
            const Stencil& st = nodes[k];
            const double d = -2.0 * std::exp(2.0 * u[k]) + 2.0 * st.s * std::exp(-2.0 * u[k]);
            out[k] = st.weight * laplace_at(st, v) + d * v[k];
        }
    }
};

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double norm_inf(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

// BiCGStab for J x = rhs; stops at relative 2-norm residual <= rel_tol.
bool bicgstab(const Problem& prob, const std::vector<double>& u, const std::vector<double>& rhs,
              std::vector<double>& x, double rel_tol, int max_iter) {
    const int n = prob.size();
    x.assign(n, 0.0);
    std::vector<double> r = rhs, r0 = rhs, p = rhs, v(n), s(n), t(n);
    const double target = rel_tol * norm2(rhs);
    double rho_prev = dot(r0, r);
    if (norm2(r) <= target) return true;
    for (int it = 0; it < max_iter; ++it) {
        prob.jacobian_apply(u, p, v);
        const double alpha = rho_prev / dot(r0, v);
        for (int k = 0; k < n; ++k) s[k] = r[k] - alpha * v[k];
        if (norm2(s) <= target) {
            for (int k = 0; k < n; ++k) x[k] += alpha * p[k];
            return true;
        }
        prob.jacobian_apply(u, s, t);
        const double omega = dot(t, s) / dot(t, t);
        for (int k = 0; k < n; ++k) {
            x[k] += alpha * p[k] + omega * s[k];
            r[k] = s[k] - omega * t[k];
        }
        if (norm2(r) <= target) return true;
        const double rho = dot(r0, r);
        const double beta = (rho / rho_prev) * (alpha / omega);
        for (int k = 0; k < n; ++k) p[k] = r[k] + beta * (p[k] - omega * v[k]);
        rho_prev = rho;
        if (std::abs(rho_prev) < 1e-300) break;
    }
    return false;
}

ConformalFactorField make_field(const DiskGrid& grid, const Problem& prob,
                                const std::vector<double>& u) {
    ConformalFactorField field;
    field.grid = grid;
    field.values.assign(grid.size(), 0.0);
    for (int k = 0; k < prob.size(); ++k) {
        field.values[grid.index(prob.nodes[k].i, prob.nodes[k].j)] = u[k];
    }
    return field;
}

}  // namespace

double ConformalFactorField::interpolate(std::complex<double> z) const {
    const double rho = grid.rho();
    if (std::abs(z) > rho + 1e-12) throw std::domain_error("point outside the solved disk");
    const double h = grid.spacing();
    double fx = (z.real() + rho) / h;
    double fy = (z.imag() + rho) / h;
    int i = std::clamp(static_cast<int>(std::floor(fx)), 0, grid.n() - 2);
    int j = std::clamp(static_cast<int>(std::floor(fy)), 0, grid.n() - 2);
    const double ax = fx - i, ay = fy - j;
    return (1 - ax) * (1 - ay) * at(i, j) + ax * (1 - ay) * at(i + 1, j) +
           (1 - ax) * ay * at(i, j + 1) + ax * ay * at(i + 1, j + 1);
}

ConformalFactorField solve_gauss_equation(const QuadDifferential& alpha, const DiskGrid& grid,
                                          const SolveConfig& config) {
    if (!(config.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    Problem prob(grid, alpha);
    for (const auto& st : prob.nodes) {
        if (st.s >= 1.0) {
            throw std::invalid_argument("not in almost-Fuchsian regime: sup ||alpha||_h >= 1");
        }
    }

    std::vector<double> u(prob.size(), 0.0), F, delta, trial, Ftrial;
    prob.nonlinear_residual(u, F);
    double fnorm = norm_inf(F);
    int bad_steps = 0;
    for (int iter = 0; iter < config.max_iter && fnorm > config.tol; ++iter) {
        std::vector<double> rhs(F.size());
        for (std::size_t k = 0; k < F.size(); ++k) rhs[k] = -F[k];
        bicgstab(prob, u, rhs, delta, 0.1, 4000);

        double step = 1.0;
        bool improved = false;
        for (int halvings = 0; halvings < 20; ++halvings) {
            trial = u;
            for (std::size_t k = 0; k < u.size(); ++k) trial[k] += step * delta[k];
            prob.nonlinear_residual(trial, Ftrial);
            if (norm_inf(Ftrial) < fnorm) {
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            if (++bad_steps >= 5) {
                ConformalFactorField last = make_field(grid, prob, u);
                last.residual_norm = fnorm;
                throw SolverFailure("Newton iteration diverged", std::move(last));
            }
            continue;
        }
        bad_steps = 0;
        u.swap(trial);
        F.swap(Ftrial);
        fnorm = norm_inf(F);
    }

    ConformalFactorField field = make_field(grid, prob, u);
    field.residual_norm = fnorm;
    field.converged = fnorm <= config.tol;
    return field;
}

std::vector<double> gauss_residual(const ConformalFactorField& u, const QuadDifferential& alpha) {
    Problem prob(u.grid, alpha);
    std::vector<double> uu(prob.size());
    for (int k = 0; k < prob.size(); ++k) {
        uu[k] = u.at(prob.nodes[k].i, prob.nodes[k].j);
    }
    std::vector<double> F;
    prob.nonlinear_residual(uu, F);
    std::vector<double> out(u.grid.size(), 0.0);
    for (int k = 0; k < prob.size(); ++k) {
        out[u.grid.index(prob.nodes[k].i, prob.nodes[k].j)] = F[k];
    }
    return out;
}

BoundsReport check_bounds(const ConformalFactorField& u) {
    BoundsReport report;
    report.u_min = 0.0;
    report.u_max = -1e300;
    bool any = false;
    for (int j = 0; j < u.grid.n(); ++j)
        for (int i = 0; i < u.grid.n(); ++i)
            if (u.grid.inside(i, j)) {
                const double v = u.at(i, j);
                report.u_min = std::min(report.u_min, v);
                report.u_max = any ? std::max(report.u_max, v) : v;
                any = true;
            }
    if (!any) report.u_max = 0.0;
    report.pass = report.u_min > -std::log(2.0) / 2.0 && report.u_max <= 1e-10;
    return report;
}

AlmostFuchsianReport almost_fuchsian_check(const ConformalFactorField& u,
                                           const QuadDifferential& alpha) {
    AlmostFuchsianReport report;
    for (int j = 0; j < u.grid.n(); ++j)
        for (int i = 0; i < u.grid.n(); ++i)
            if (u.grid.inside(i, j)) {
                const double v = std::exp(-2.0 * u.at(i, j)) *
                                 norm_hyperbolic(alpha, u.grid.z_at(i, j));
                if (v > report.sup_norm) {
                    report.sup_norm = v;
                    report.argmax_i = i;
                    report.argmax_j = j;
                }
            }
    report.pass = report.sup_norm < 1.0;
    return report;
}

std::string field_header_json(const ConformalFactorField& u) {
    nlohmann::json j;
    j["grid_n"] = u.grid.n();
    j["rho"] = u.grid.rho();
    j["residual_norm"] = u.residual_norm;
    j["converged"] = u.converged;
    j["boundary_condition"] = "dirichlet-zero-on-circle";
    int count = 0;
    for (int jj = 0; jj < u.grid.n(); ++jj)
        for (int ii = 0; ii < u.grid.n(); ++ii)
            if (u.grid.inside(ii, jj)) ++count;
    j["node_count"] = count;
    return j.dump(2);
}

std::string field_values_csv(const ConformalFactorField& u) {
    std::string out;
    char buf[48];
    for (int j = 0; j < u.grid.n(); ++j)
        for (int i = 0; i < u.grid.n(); ++i)
            if (u.grid.inside(i, j)) {
                std::snprintf(buf, sizeof(buf), "%.17g\n", u.at(i, j));
                out += buf;
            }
    return out;
}

std::vector<double> field_values_packed(const ConformalFactorField& u) {
    std::vector<double> out;
    for (int j = 0; j < u.grid.n(); ++j)
        for (int i = 0; i < u.grid.n(); ++i)
            if (u.grid.inside(i, j)) out.push_back(u.at(i, j));
    return out;
}

ConformalFactorField field_from_parts(const std::string& header_json,
                                      const std::vector<double>& packed) {
    nlohmann::json j = nlohmann::json::parse(header_json);
    ConformalFactorField field;
    field.grid = DiskGrid(j.at("grid_n").get<int>(), j.at("rho").get<double>());
    field.residual_norm = j.value("residual_norm", 0.0);
    field.converged = j.value("converged", false);
    field.values.assign(field.grid.size(), 0.0);
    std::size_t k = 0;
    for (int jj = 0; jj < field.grid.n(); ++jj)
        for (int ii = 0; ii < field.grid.n(); ++ii)
            if (field.grid.inside(ii, jj)) {
                if (k >= packed.size()) throw std::invalid_argument("field data truncated");
                field.values[field.grid.index(ii, jj)] = packed[k++];
            }
    if (k != packed.size()) throw std::invalid_argument("field data size mismatch");
    return field;
}

}  // namespace afk
