#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "afk/grid.hpp"
#include "afk/quad_diff.hpp"

// Damped-Newton finite-difference solver for the Gauss equation
//   Delta_h u + 1 - e^{2u} - e^{-2u} ||alpha||_h^2 = 0
// on a disk of Euclidean radius rho with Dirichlet u = 0 on |z| = rho.
// The hyperbolic Laplacian is ((1-|z|^2)^2/4) times the Euclidean one,
// discretized by a 5-point stencil with Shortley-Weller arm shortening at
// the circular boundary.

namespace afk {

struct ConformalFactorField {
    DiskGrid grid{5, 0.5};
    std::vector<double> values;  // n*n, row-major; 0 outside the disk
    double residual_norm = 0.0;
    bool converged = false;

    double at(int i, int j) const { return values[grid.index(i, j)]; }

    // Bilinear interpolation; throws std::domain_error for |z| > rho.
    double interpolate(std::complex<double> z) const;
};

struct SolverFailure : std::runtime_error {
    explicit SolverFailure(std::string msg, ConformalFactorField last)
        : std::runtime_error(std::move(msg)), last_iterate(std::move(last)) {}
    ConformalFactorField last_iterate;
};

struct SolveConfig {
    double tol = 1e-10;  // max-norm of the discrete residual
    int max_iter = 50;
};

ConformalFactorField solve_gauss_equation(const QuadDifferential& alpha, const DiskGrid& grid,
                                          const SolveConfig& config = SolveConfig{});

// Pointwise residual via the same stencil; zero at non-interior nodes.
std::vector<double> gauss_residual(const ConformalFactorField& u, const QuadDifferential& alpha);

struct BoundsReport {
    double u_min = 0.0;
    double u_max = 0.0;
    bool pass = false;  // -ln(2)/2 < u <= 0 (upper bound with 1e-10 slack)
};

BoundsReport check_bounds(const ConformalFactorField& u);

struct AlmostFuchsianReport {
    double sup_norm = 0.0;
    int argmax_i = 0;
    int argmax_j = 0;
    bool pass = false;  // sup ||alpha||_g < 1
};

AlmostFuchsianReport almost_fuchsian_check(const ConformalFactorField& u,
                                           const QuadDifferential& alpha);

// Serialization: JSON metadata header, CSV of node values (nodes with
// |z| < rho in row-major order) and the same values as raw 64-bit floats.
std::string field_header_json(const ConformalFactorField& u);
std::string field_values_csv(const ConformalFactorField& u);
std::vector<double> field_values_packed(const ConformalFactorField& u);
ConformalFactorField field_from_parts(const std::string& header_json,
                                      const std::vector<double>& packed);

}  // namespace afk
