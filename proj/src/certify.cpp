#include "afk/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace afk {

namespace {

// Gauss-Legendre nodes/weights on [0, 1] by Newton iteration on the
// Legendre polynomial.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int k = 0; k < n; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1, p1 = x;
            for (int m = 2; m <= n; ++m) {
                double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[k] = 0.5 * (1.0 + x);
        weights[k] = 1.0 / ((1 - x * x) * dp * dp);  // already halved for [0,1]
    }
}

int center_node(const DiskGrid& grid) { return (grid.n() - 1) / 2; }

double min_distance_to_sample(const BoundaryPoint& p, const LimitSetSample& sample) {
    double best = std::numbers::pi;  // larger than the sphere diameter pi/2
    for (const BoundaryPoint& q : sample.points) {
        best = std::min(best, spherical_distance(p, q));
    }
    return best;
}

}  // namespace

double astala_gehring_a(const JacobianEstimate& J, int i, int j, const DiskGrid& grid) {
    const cplx z0 = grid.z_at(i, j);
    const double d = grid.rho() - std::abs(z0);
    if (!(d > 0)) throw std::invalid_argument("ball center must be inside the domain disk");
    double sum = 0;
    int count = 0;
    for (int b = 0; b < grid.n(); ++b)
        for (int a = 0; a < grid.n(); ++a) {
            if (std::abs(grid.z_at(a, b) - z0) > d) continue;
            const auto& val = J.jacobian[grid.index(a, b)];
            if (!val) continue;
            if (!(*val > 0)) {
                throw std::runtime_error("nonpositive Jacobian at node (" + std::to_string(a) +
                                         ", " + std::to_string(b) + ")");
            }
            sum += std::log(*val);
            ++count;
        }
    if (count == 0) throw std::runtime_error("no Jacobian samples inside the ball");
    return std::exp(0.5 * sum / count);
}

double astala_gehring_a_analytic(const std::function<double(cplx)>& jacobian, cplx center,
                                 double radius, int radial, int angular) {
    std::vector<double> xs, ws;
    gauss_legendre_01(radial, xs, ws);
    double avg = 0;
    for (int k = 0; k < radial; ++k) {
        double ring = 0;
        for (int m = 0; m < angular; ++m) {
            const double th = 2.0 * std::numbers::pi * m / angular;
            const cplx z = center + radius * xs[k] * cplx{std::cos(th), std::sin(th)};
            const double J = jacobian(z);
            if (!(J > 0)) throw std::runtime_error("nonpositive Jacobian in quadrature");
            ring += std::log(J);
        }
        avg += ws[k] * 2.0 * xs[k] * ring / angular;
    }
    return std::exp(0.5 * avg);
}

KoebeReport koebe_bounds_check(const BoundaryField& map, double C_K) {
    const DiskGrid& grid = map.grid;
    const int c = center_node(grid);
    const auto& fc = map.at(c, c);
    if (!fc || fc->infinite) throw std::invalid_argument("map undefined or infinite at center");

    // Injectivity spot check on a subsample.
    std::vector<std::pair<int, BoundaryPoint>> sampled;
    const int stride = std::max(1, grid.n() / 16);
    for (int j = 0; j < grid.n(); j += stride)
        for (int i = 0; i < grid.n(); i += stride) {
            const auto& v = map.at(i, j);
            if (v) sampled.emplace_back(grid.index(i, j), *v);
        }
    for (std::size_t a = 0; a < sampled.size(); ++a)
        for (std::size_t b = a + 1; b < sampled.size(); ++b) {
            if (spherical_distance(sampled[a].second, sampled[b].second) < 1e-9) {
                throw std::runtime_error(
                    "map is not injective at resolution 1e-9 (node collision)");
            }
        }

    KoebeReport report;
    report.a_value = astala_gehring_a(jacobian_estimate(map), c, c, grid);

    // Image boundary approximated by images of the outermost domain nodes
    // (inside nodes with a non-inside 4-neighbour).
    double dv = 1e300;
    for (int j = 0; j < grid.n(); ++j)
        for (int i = 0; i < grid.n(); ++i) {
            if (!grid.inside(i, j)) continue;
            const bool rim = !grid.inside(i + 1, j) || !grid.inside(i - 1, j) ||
                             !grid.inside(i, j + 1) || !grid.inside(i, j - 1);
            if (!rim) continue;
            const auto& v = map.at(i, j);
            if (!v || v->infinite) continue;
            dv = std::min(dv, std::abs(v->z - fc->z));
        }
    if (dv > 1e299) throw std::runtime_error("no finite boundary images");
    report.ratio = dv / grid.rho();
    report.K = beltrami_estimate(map).dilatation;
    report.empirical_C = std::max(report.a_value / report.ratio, report.ratio / report.a_value);
    (void)C_K;  // the report records the constant actually needed
    return report;
}

KoebeReport koebe_bounds_analytic(const std::function<cplx(cplx)>& f,
                                  const std::function<cplx(cplx)>& fprime, double radius,
                                  double C_K, int boundary_samples, int radial, int angular) {
    KoebeReport report;
    report.a_value = astala_gehring_a_analytic(
        [&](cplx z) { return std::norm(fprime(z)); }, cplx{0, 0}, radius, radial, angular);
    const cplx f0 = f(cplx{0, 0});
    double dv = 1e300;
    for (int m = 0; m < boundary_samples; ++m) {
        const double th = 2.0 * std::numbers::pi * m / boundary_samples;
        dv = std::min(dv, std::abs(f(radius * cplx{std::cos(th), std::sin(th)}) - f0));
    }
    report.ratio = dv / radius;
    report.K = 1.0;  // holomorphic input
    report.empirical_C = std::max(report.a_value / report.ratio, report.ratio / report.a_value);
    (void)C_K;
    return report;
}

double certified_radius(double r1, double eps, double C_epstein, double C_K) {
    if (!(r1 > 0) || !(C_epstein > 0) || !(C_K > 0) || !(eps >= 0)) {
        throw std::invalid_argument("certified_radius arguments must be positive");
    }
    if (eps >= 1.0) throw std::invalid_argument("curvature bound must be < 1");
    const double beta = 2.0 * C_epstein * (1.0 - eps * eps);
    return r1 * std::sqrt(beta) / C_K;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "CONSISTENT";
        case Verdict::Violated: return "VIOLATED";
        default: return "INCONCLUSIVE";
    }
}

Certificate assemble_certificate(const ConformalFactorField& u, const QuadDifferential& alpha,
                                 const ImmersedPatch& patch, const LimitSetSample* sample,
                                 const CertifyConfig& config) {
    const DiskGrid& grid = patch.grid;
    const int c = center_node(grid);
    const auto& frame = patch.at(c, c);
    if (!frame) throw std::invalid_argument("patch has no frame at the grid center");
    const double pos_off = std::abs(frame->position.z) + std::abs(frame->position.t - 1.0);
    const double nrm_off = std::abs(frame->normal[0]) + std::abs(frame->normal[1]) +
                           std::abs(frame->normal[2] + 1.0);
    const double alpha0 = std::abs(alpha.evaluate(cplx{0, 0}));
    if (pos_off > 1e-8 || nrm_off > 1e-8 || alpha0 > 1e-8) {
        throw std::invalid_argument("patch not normalized: center offset " +
                                    std::to_string(pos_off) + ", normal offset " +
                                    std::to_string(nrm_off) + ", alpha(0) " +
                                    std::to_string(alpha0));
    }

    Certificate cert;
    cert.C_epstein = config.C_epstein;
    cert.C_K = config.C_K;

    // Radius chain: a hyperbolic ball where the hyperbolic norm stays below
    // eps_target/2 (so the induced norm stays below eps_target, since
    // e^{-2u} < 2), shrunk by sqrt(2) into the induced metric, then to the
    // largest Euclidean parameter disk inside it.
    const double C = std::max(1.0, sup_norm_hyperbolic(alpha));
    const double r_h = harnack_radius(config.eps_target / 2.0, C).value;
    cert.r = r_h;
    const double r_g = induced_ball_radius(r_h);
    cert.r1 = std::tanh(r_g / 2.0);

    // Measured curvature bound over the covering hyperbolic ball (clipped to
    // the solved grid disk).
    const double euclid = std::min(std::tanh(r_h / 2.0), grid.rho() * (1.0 - 1e-12));
    double eps = norm_hyperbolic(alpha, cplx{0, 0});  // u(0) <= 0, center exact
    for (int j = 0; j < grid.n(); ++j)
        for (int i = 0; i < grid.n(); ++i) {
            if (!grid.inside(i, j)) continue;
            const cplx z = grid.z_at(i, j);
            if (std::abs(z) > euclid) continue;
            eps = std::max(eps, std::exp(-2.0 * u.at(i, j)) * norm_hyperbolic(alpha, z));
        }
    cert.eps = eps;
    if (eps >= 1.0) throw std::invalid_argument("measured curvature bound >= 1");
    cert.K = std::sqrt((1.0 + eps) / (1.0 - eps));
    cert.beta = 2.0 * config.C_epstein * (1.0 - eps * eps);
    cert.R = certified_radius(cert.r1, eps, config.C_epstein, config.C_K);

    if (sample && !sample->points.empty()) {
        cert.empirical_empty_radius =
            min_distance_to_sample(BoundaryPoint::finite(cplx{0, 0}), *sample);
        cert.verdict = cert.empirical_empty_radius >= cert.R * (1.0 - config.slack)
                           ? Verdict::Consistent
                           : Verdict::Violated;
    } else {
        cert.verdict = Verdict::Inconclusive;
    }
    return cert;
}

NecessaryConditionResult necessary_condition_check(const LimitSetSample& sample,
                                                   double R_threshold, int resolution) {
    NecessaryConditionResult res;
    res.empty_radius = largest_empty_ball(sample, resolution).radius;
    res.passes = res.empty_radius >= R_threshold;
    res.text = res.passes
                   ? "PASSES (necessary condition only; passing does not certify the group)"
                   : "FAILS_NECESSARY_CONDITION";
    return res;
}

FlatsCertificate flats_certificate(const ImmersedPatch& patch, const ConformalFactorField& u,
                                   const QuadDifferential& alpha,
                                   const std::vector<std::pair<int, int>>& zeros, double R_prime,
                                   const LimitSetSample& sample) {
    FlatsCertificate cert;
    cert.R_prime = R_prime;
    cert.all_empty = true;
    for (auto [i, j] : zeros) {
        const auto& frame = patch.at(i, j);
        if (!frame) {
            throw std::invalid_argument("node (" + std::to_string(i) + ", " + std::to_string(j) +
                                        ") carries no frame");
        }
        const cplx z = patch.grid.z_at(i, j);
        const double norm_g = std::exp(-2.0 * u.at(i, j)) * norm_hyperbolic(alpha, z);
        if (norm_g >= 1e-6) {
            throw std::invalid_argument("node (" + std::to_string(i) + ", " + std::to_string(j) +
                                        ") is not a curvature zero: norm " +
                                        std::to_string(norm_g));
        }
        for (int sign : {1, -1}) {
            FlatsBall ball;
            ball.i = i;
            ball.j = j;
            ball.sign = sign;
            ball.image = gauss_map_point(frame->position, frame->normal, sign);
            ball.clearance = min_distance_to_sample(ball.image, sample);
            ball.empty = ball.clearance >= R_prime;
            cert.all_empty = cert.all_empty && ball.empty;
            cert.balls.push_back(ball);
        }
    }
    return cert;
}

std::vector<BarrierRow> barrier_experiment(const std::vector<GroupPresentation>& groups,
                                           const BarrierConfig& config) {
    if (groups.size() < 2) throw std::invalid_argument("barrier experiment needs >= 2 groups");
    std::vector<BarrierRow> rows;
    LimitSetSample prev;
    for (std::size_t k = 0; k < groups.size(); ++k) {
        LimitSetSample sample = limit_set_sample(groups[k], config.depth,
                                                 HalfSpacePoint{cplx{0, 0}, 1.0}, config.sample);
        BarrierRow row;
        row.label = groups[k].label.empty() ? "group" + std::to_string(k) : groups[k].label;
        row.points = sample.points.size();
        row.empty_radius = largest_empty_ball(sample, config.resolution).radius;
        row.hausdorff_prev = k == 0 ? 0.0 : hausdorff_distance(prev, sample);
        row.warning_jorgensen = sample.warning_jorgensen;
        row.warning_few_points = sample.warning_few_points;
        rows.push_back(row);
        prev = std::move(sample);
    }
    return rows;
}

std::string certificate_to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["eps"] = c.eps;
    j["r"] = c.r;
    j["r1"] = c.r1;
    j["K"] = c.K;
    j["beta"] = c.beta;
    j["C_epstein"] = c.C_epstein;
    j["C_K"] = c.C_K;
    j["R"] = c.R;
    j["note"] = "R is relative to the configured constants C_epstein and C_K";
    if (c.empirical_empty_radius >= 0) j["empirical_empty_radius"] = c.empirical_empty_radius;
    j["verdict"] = verdict_name(c.verdict);
    return j.dump(2);
}

std::string flats_to_json(const FlatsCertificate& c) {
    nlohmann::ordered_json j;
    j["R_prime"] = c.R_prime;
    j["all_empty"] = c.all_empty;
    auto arr = nlohmann::ordered_json::array();
    for (const FlatsBall& b : c.balls) {
        nlohmann::ordered_json e;
        e["i"] = b.i;
        e["j"] = b.j;
        e["sign"] = b.sign;
        if (b.image.infinite) {
            e["image"] = "inf";
        } else {
            e["image"] = {b.image.z.real(), b.image.z.imag()};
        }
        e["clearance"] = b.clearance;
        e["empty"] = b.empty;
        arr.push_back(e);
    }
    j["balls"] = arr;
    return j.dump(2);
}

std::string barrier_to_csv(const std::vector<BarrierRow>& rows) {
    std::ostringstream out;
    out << "label,points,empty_radius,hausdorff_prev,warning_jorgensen,warning_few_points\n";
    char buf[128];
    for (const BarrierRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g", r.empty_radius, r.hausdorff_prev);
        out << r.label << ',' << r.points << ',' << buf << ',' << (r.warning_jorgensen ? 1 : 0)
            << ',' << (r.warning_few_points ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace afk
