#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "afk/gauss_equation.hpp"
#include "afk/quad_diff.hpp"

using namespace afk;
using cplxd = std::complex<double>;

TEST_CASE("evaluation and derivative") {
    QuadDifferential alpha({cplxd{1, 0}, cplxd{0, 2}, cplxd{-3, 0}});
    const cplxd z{0.3, -0.2};
    CHECK(std::abs(alpha.evaluate(z) - (1.0 + cplxd{0, 2} * z - 3.0 * z * z)) < 1e-15);
    CHECK(std::abs(alpha.derivative(z) - (cplxd{0, 2} - 6.0 * z)) < 1e-15);
    CHECK(QuadDifferential{}.is_zero());
    CHECK(!alpha.is_zero());
    std::vector<cplxd> too_long(70, cplxd{1, 0});
    CHECK_THROWS(QuadDifferential{too_long});
}

TEST_CASE("hyperbolic norm closed-form values") {
    // f(z) = z at z = 1/2: (1 - 1/4)^2 * (1/2) / 4 = 9/128.
    QuadDifferential alpha({cplxd{0, 0}, cplxd{1, 0}});
    CHECK(norm_hyperbolic(alpha, cplxd{0.5, 0}) == doctest::Approx(9.0 / 128).epsilon(1e-14));
    CHECK(norm_hyperbolic(alpha, cplxd{0, 0}) == 0.0);
    CHECK_THROWS(norm_hyperbolic(alpha, cplxd{1.0, 0}));
}

TEST_CASE("hyperbolic norm is invariant under disk automorphisms") {
    // For phi(z) = (z + a) / (1 + conj(a) z), the pulled-back coefficient
    // f(phi(z)) phi'(z)^2 has the same norm at z as f at phi(z).
    QuadDifferential alpha({cplxd{0.2, 0.1}, cplxd{0, 1}, cplxd{0.5, -0.3}});
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-0.6, 0.6);
    for (int trial = 0; trial < 200; ++trial) {
        const cplxd a{dist(rng), dist(rng)};
        const cplxd z{dist(rng), dist(rng)};
        const cplxd phi = (z + a) / (1.0 + std::conj(a) * z);
        const cplxd dphi = (1.0 - std::norm(a)) / std::pow(1.0 + std::conj(a) * z, 2);
        const double pulled =
            std::pow(1.0 - std::norm(z), 2) * std::abs(alpha.evaluate(phi) * dphi * dphi) / 4.0;
        CHECK(pulled == doctest::Approx(norm_hyperbolic(alpha, phi)).epsilon(1e-12));
    }
}

TEST_CASE("harnack radius closed forms") {
    // eps = C = 1: x = 2 * 9/64 = 9/32, r = log((1 + 9/32)/(1 - 9/32)) = log(41/23).
    HarnackRadius r = harnack_radius(1.0, 1.0);
    CHECK(r.value == doctest::Approx(std::log(41.0 / 23.0)).epsilon(1e-14));
    CHECK(!r.saturated);
    CHECK(harnack_radius(0.1, 1.0).value <
          harnack_radius(0.5, 1.0).value);  // monotone in eps
    CHECK(harnack_radius(0.5, 2.0).value <
          harnack_radius(0.5, 1.0).value);  // monotone in C
    // Huge eps/C ratio saturates the formula argument.
    CHECK(harnack_radius(1e12, 1e-9).saturated);
    CHECK_THROWS(harnack_radius(-1.0, 1.0));
    CHECK_THROWS(harnack_radius(0.5, 0.0));
}

TEST_CASE("induced ball radius") {
    CHECK(induced_ball_radius(1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(induced_ball_radius(0.0) == 0.0);
}

TEST_CASE("sup norm over the disk") {
    // Constant f = c: norm (1-r^2)^2 |c| / 4 is maximal at the origin.
    QuadDifferential alpha({cplxd{2, 0}});
    CHECK(sup_norm_hyperbolic(alpha) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sup_norm_hyperbolic(QuadDifferential{}) == 0.0);
}

TEST_CASE("harnack verification") {
    QuadDifferential alpha({cplxd{0, 0}, cplxd{0.8, 0}});
    HarnackReport rep = verify_harnack(alpha, 1.0, 0.5);
    CHECK(rep.pass);
    CHECK(rep.max_norm <= 0.5 * (1 + 1e-9));

    // Nonvanishing differential rejected.
    CHECK_THROWS(verify_harnack(QuadDifferential{{cplxd{1, 0}}}, 1.0, 0.5));
    // Sup bound violation rejected.
    CHECK_THROWS(verify_harnack(QuadDifferential{{cplxd{0, 0}, cplxd{50, 0}}}, 1.0, 0.5));
}

TEST_CASE("induced norm reduces to hyperbolic norm for u = 0") {
    DiskGrid grid(65, 0.7);
    ConformalFactorField u;
    u.grid = grid;
    u.values.assign(grid.size(), 0.0);
    u.converged = true;
    QuadDifferential alpha({cplxd{0.3, 0.1}, cplxd{0, 0.4}});
    const cplxd z{0.25, -0.3};
    CHECK(norm_induced(alpha, u, z) == doctest::Approx(norm_hyperbolic(alpha, z)).epsilon(1e-12));
    // u = -0.1 everywhere scales by e^{0.2}.
    for (double& v : u.values) v = -0.1;
    CHECK(norm_induced(alpha, u, z) ==
          doctest::Approx(std::exp(0.2) * norm_hyperbolic(alpha, z)).epsilon(1e-12));
    CHECK_THROWS(norm_induced(alpha, u, cplxd{0.95, 0}));
}

TEST_CASE("differential JSON round trip") {
    QuadDifferential alpha({cplxd{0, 0}, cplxd{1.5, -2.25}, cplxd{0, 3}});
    QuadDifferential back = parse_differential_json(differential_to_json(alpha));
    REQUIRE(back.coefficients().size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(back.coefficients()[k] - alpha.coefficients()[k]) == 0.0);
    }
    CHECK_THROWS(parse_differential_json("nope"));
}
