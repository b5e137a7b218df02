#include "afk/quad_diff.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "afk/gauss_equation.hpp"

namespace afk {

using cplxd = std::complex<double>;

QuadDifferential::QuadDifferential(std::vector<cplxd> coefficients)
    : coeffs_(std::move(coefficients)) {
    if (static_cast<int>(coeffs_.size()) > kMaxTaylorDegree + 1) {
        throw std::invalid_argument("Taylor series exceeds the degree cap");
    }
}

bool QuadDifferential::is_zero() const {
    for (const auto& c : coeffs_) {
        if (std::abs(c) != 0.0) return false;
    }
    return true;
}

cplxd QuadDifferential::evaluate(cplxd z) const {
    cplxd acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplxd QuadDifferential::derivative(cplxd z) const {
    cplxd acc{0.0, 0.0};
    const int n = static_cast<int>(coeffs_.size());
    for (int k = n - 1; k >= 1; --k) acc = acc * z + double(k) * coeffs_[k];
    return acc;
}

QuadDifferential QuadDifferential::scaled(double factor) const {
    auto c = coeffs_;
    for (auto& v : c) v *= factor;
    return QuadDifferential{std::move(c)};
}

double norm_hyperbolic(const QuadDifferential& alpha, cplxd z) {
    const double r2 = std::norm(z);
    if (r2 >= 1.0) throw std::domain_error("point outside the unit disk");
    const double w = 1.0 - r2;
    return w * w * std::abs(alpha.evaluate(z)) / 4.0;
}

double norm_induced(const QuadDifferential& alpha, const ConformalFactorField& u, cplxd z) {
    return std::exp(-2.0 * u.interpolate(z)) * norm_hyperbolic(alpha, z);
}

HarnackRadius harnack_radius(double eps, double C) {
    if (!(eps > 0.0) || !(C > 0.0)) throw std::invalid_argument("eps and C must be positive");
    const double cprime = 9.0 / (64.0 * C);
    double x = 2.0 * cprime * eps;
    HarnackRadius out;
    if (x >= 1.0) {
        x = 1.0 - 1e-9;
        out.saturated = true;
    }
    out.value = std::log((1.0 + x) / (1.0 - x));
    return out;
}

double induced_ball_radius(double r_h) {
    if (r_h < 0.0) throw std::invalid_argument("radius must be nonnegative");
    return r_h / std::sqrt(2.0);
}

double sup_norm_hyperbolic(const QuadDifferential& alpha, int radii, int angles) {
    double sup = 0.0;
    for (int i = 0; i <= radii; ++i) {
        const double r = (1.0 - 1e-3) * i / radii;
        for (int k = 0; k < angles; ++k) {
            const double theta = 2.0 * M_PI * k / angles;
            sup = std::max(sup, norm_hyperbolic(alpha, std::polar(r, theta)));
        }
    }
    return sup;
}

HarnackReport verify_harnack(const QuadDifferential& alpha, double C, double eps, int samples) {
    if (std::abs(alpha.evaluate(cplxd{0, 0})) > 1e-12) {
        throw std::invalid_argument("differential must vanish at the origin");
    }
    const double observed_sup = sup_norm_hyperbolic(alpha);
    if (observed_sup > C * (1.0 + 1e-12)) {
        throw std::invalid_argument("observed sup norm " + std::to_string(observed_sup) +
                                    " exceeds the bound C");
    }
    HarnackReport report;
    report.radius = harnack_radius(eps, C).value;
    // Euclidean radius of the hyperbolic ball B_h(0, r): tanh(r/2).
    const double rho = std::tanh(report.radius / 2.0);
    const int rings = std::max(4, static_cast<int>(std::sqrt(double(samples) / 8.0)));
    const int angles = std::max(8, samples / rings);
    for (int i = 0; i <= rings; ++i) {
        const double r = rho * i / rings;
        for (int k = 0; k < angles; ++k) {
            const double theta = 2.0 * M_PI * k / angles;
            report.max_norm = std::max(report.max_norm,
                                       norm_hyperbolic(alpha, std::polar(r, theta)));
        }
    }
    report.pass = report.max_norm <= eps * (1.0 + 1e-9);
    return report;
}

QuadDifferential parse_differential_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<cplxd> coeffs;
    for (const auto& e : j) {
        coeffs.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    }
    return QuadDifferential{std::move(coeffs)};
}

std::string differential_to_json(const QuadDifferential& alpha) {
    auto arr = nlohmann::json::array();
    for (const auto& c : alpha.coefficients()) arr.push_back({c.real(), c.imag()});
    return arr.dump();
}

}  // namespace afk
