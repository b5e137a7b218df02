#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "afk/kleinian.hpp"
#include "afk/surface.hpp"

// Distortion quantities for quasiconformal boundary maps (the exponential
// mean of log-Jacobian, Koebe-type distance comparisons), and the certified
// empty-ball radius assembled from the measured curvature bound, with
// verdicts against sampled limit sets.

namespace afk {

// exp(0.5 * average of log J) over the largest ball around node (i, j)
// inside the grid disk, by node quadrature with equal area weights.
// Throws if J is nonpositive at a covered node.
double astala_gehring_a(const JacobianEstimate& J, int i, int j, const DiskGrid& grid);

// Same quantity for an analytic Jacobian, by Gauss-Legendre (radial) x
// trapezoid (angular) quadrature over the disk |z - center| < radius.
double astala_gehring_a_analytic(const std::function<double(cplx)>& jacobian, cplx center,
                                 double radius, int radial = 32, int angular = 2048);

struct KoebeReport {
    double a_value = 0.0;
    double ratio = 0.0;  // d(f(x), boundary of image) / d(x, boundary of domain)
    double K = 0.0;
    double empirical_C = 0.0;  // smallest C with 1/C * ratio <= a <= C * ratio
};

// Center-point Koebe comparison for a sampled boundary map; the image
// boundary is approximated by the images of the outermost domain nodes
// (an under-estimate of the distance for expanding maps, so conservative).
// Throws if the map fails a pairwise injectivity spot check at 1e-9.
KoebeReport koebe_bounds_check(const BoundaryField& map, double C_K);

// Analytic version over the disk |z| < radius for a map with a known
// derivative; the image boundary is sampled on |z| = radius.
KoebeReport koebe_bounds_analytic(const std::function<cplx(cplx)>& f,
                                  const std::function<cplx(cplx)>& fprime, double radius,
                                  double C_K, int boundary_samples = 4096, int radial = 32,
                                  int angular = 8192);

// R = r1 * sqrt(beta) / C_K with beta = 2 * C_epstein * (1 - eps^2).
// Throws for eps >= 1.
double certified_radius(double r1, double eps, double C_epstein, double C_K);

enum class Verdict { Consistent, Violated, Inconclusive };
std::string verdict_name(Verdict v);

struct CertifyConfig {
    double eps_target = 0.1;  // curvature budget the radius chain is sized for
    double C_epstein = 1.0;
    double C_K = 4.0;
    double slack = 0.05;  // relative slack absorbed by the CONSISTENT verdict
};

struct Certificate {
    double eps = 0.0;      // measured max curvature norm over the certified ball
    double r = 0.0;        // hyperbolic-metric radius of the curvature ball
    double r1 = 0.0;       // Euclidean-parameter sub-disk radius
    double K = 0.0;        // dilatation bound sqrt((1+eps)/(1-eps))
    double beta = 0.0;
    double C_epstein = 0.0;
    double C_K = 0.0;
    double R = 0.0;        // certified empty-ball radius
    double empirical_empty_radius = -1.0;  // -1 when no sample supplied
    Verdict verdict = Verdict::Inconclusive;
};

// Builds the constant chain eps_target -> r -> r1 -> (measured eps) -> K,
// beta, R for a normalized patch (center at (0,1), downward normal,
// alpha(0) = 0 within 1e-8; throws with measured offsets otherwise).  With a
// limit-set sample, the verdict compares the sample's distance to 0 with R.
Certificate assemble_certificate(const ConformalFactorField& u, const QuadDifferential& alpha,
                                 const ImmersedPatch& patch, const LimitSetSample* sample,
                                 const CertifyConfig& config = CertifyConfig{});

struct NecessaryConditionResult {
    bool passes = false;
    double empty_radius = 0.0;
    std::string text;  // records that passing is necessary, not sufficient
};

NecessaryConditionResult necessary_condition_check(const LimitSetSample& sample,
                                                   double R_threshold, int resolution);

struct FlatsBall {
    int i = 0, j = 0;
    BoundaryPoint image;
    int sign = 1;
    double clearance = 0.0;  // min spherical distance to the sample
    bool empty = false;      // clearance >= R'
};

struct FlatsCertificate {
    double R_prime = 0.0;
    std::vector<FlatsBall> balls;
    bool all_empty = false;
};

// Checks the spherical R'-balls around both Gauss images of each listed
// curvature zero against one limit-set sample.  Throws if a listed node has
// curvature norm >= 1e-6 or carries no frame.
FlatsCertificate flats_certificate(const ImmersedPatch& patch, const ConformalFactorField& u,
                                   const QuadDifferential& alpha,
                                   const std::vector<std::pair<int, int>>& zeros, double R_prime,
                                   const LimitSetSample& sample);

struct BarrierRow {
    std::string label;
    std::size_t points = 0;
    double empty_radius = 0.0;
    double hausdorff_prev = 0.0;  // 0 for the first row
    bool warning_jorgensen = false;
    bool warning_few_points = false;
};

struct BarrierConfig {
    int depth = 6;
    int resolution = 100;  // empty-ball search lattice
    SampleConfig sample;
};

// Observational table along a family of groups: per-group empty-ball radius
// and Hausdorff step distance.  Requires at least two groups.
std::vector<BarrierRow> barrier_experiment(const std::vector<GroupPresentation>& groups,
                                           const BarrierConfig& config = BarrierConfig{});

std::string certificate_to_json(const Certificate& c);
std::string flats_to_json(const FlatsCertificate& c);
std::string barrier_to_csv(const std::vector<BarrierRow>& rows);

}  // namespace afk
