#pragma once

#include <complex>
#include <string>
#include <vector>

// Holomorphic quadratic differentials alpha = f dz^2 on the unit disk,
// represented by finite Taylor series of f, with the norm in the Poincare
// metric 4|dz|^2/(1-|z|^2)^2 and the Schwarz-lemma Harnack radius.

namespace afk {

struct ConformalFactorField;  // gauss_equation.hpp

constexpr int kMaxTaylorDegree = 64;

class QuadDifferential {
public:
    QuadDifferential() = default;
    explicit QuadDifferential(std::vector<std::complex<double>> coefficients);

    const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }
    bool is_zero() const;

    std::complex<double> evaluate(std::complex<double> z) const;  // f(z)
    std::complex<double> derivative(std::complex<double> z) const;

    QuadDifferential scaled(double factor) const;

private:
    std::vector<std::complex<double>> coeffs_;
};

// (1-|z|^2)^2 |f(z)| / 4; throws std::domain_error for |z| >= 1.
double norm_hyperbolic(const QuadDifferential& alpha, std::complex<double> z);

// e^{-2u(z)} * norm_hyperbolic(alpha, z), u interpolated bilinearly;
// throws std::domain_error outside the solved grid disk.
double norm_induced(const QuadDifferential& alpha, const ConformalFactorField& u,
                    std::complex<double> z);

struct HarnackRadius {
    double value = 0.0;
    bool saturated = false;  // formula argument capped at 1 - 1e-9
};

// r = log((1 + 2C'eps)/(1 - 2C'eps)) with C' = 9/(64 C).
HarnackRadius harnack_radius(double eps, double C);

// Hyperbolic-ball radius r_h certified for the hyperbolic norm transfers to
// an induced-metric ball of radius r_h / sqrt(2).
double induced_ball_radius(double r_h);

// Max of the hyperbolic norm over concentric circles (radii up to 1 - 1e-3).
double sup_norm_hyperbolic(const QuadDifferential& alpha, int radii = 48, int angles = 512);

struct HarnackReport {
    double radius = 0.0;
    double max_norm = 0.0;
    bool pass = false;
};

// Samples the hyperbolic ball B_h(0, harnack_radius(eps, C)) and reports the
// max observed norm against eps.  Preconditions: alpha(0) = 0 and the sampled
// sup norm is <= C.
HarnackReport verify_harnack(const QuadDifferential& alpha, double C, double eps,
                             int samples = 4096);

QuadDifferential parse_differential_json(const std::string& text);
std::string differential_to_json(const QuadDifferential& alpha);

}  // namespace afk
