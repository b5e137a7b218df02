#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "afk/moebius.hpp"

using namespace afk;

namespace {

MoebiusTransform random_transform(std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (;;) {
        cplx a{dist(rng), dist(rng)}, b{dist(rng), dist(rng)};
        cplx c{dist(rng), dist(rng)}, d{dist(rng), dist(rng)};
        if (std::abs(a * d - b * c) > 0.1) return MoebiusTransform{a, b, c, d};
    }
}

double entry_distance(const MoebiusTransform& A, const MoebiusTransform& B) {
    // PSL sign ambiguity: compare up to overall sign.
    double plus = 0, minus = 0;
    plus = std::max({std::abs(A.a - B.a), std::abs(A.b - B.b), std::abs(A.c - B.c),
                     std::abs(A.d - B.d)});
    minus = std::max({std::abs(A.a + B.a), std::abs(A.b + B.b), std::abs(A.c + B.c),
                      std::abs(A.d + B.d)});
    return std::min(plus, minus);
}

}  // namespace

TEST_CASE("construction normalizes the determinant") {
    MoebiusTransform T{cplx{3, 0}, cplx{0, 0}, cplx{0, 0}, cplx{3, 0}};
    CHECK(std::abs(T.det() - 1.0) < 1e-12);
    CHECK_THROWS_AS((MoebiusTransform{cplx{1, 0}, cplx{1, 0}, cplx{1, 0}, cplx{1, 0}}),
                    std::invalid_argument);
}

TEST_CASE("compose: identity and translations") {
    MoebiusTransform shift{cplx{1, 0}, cplx{1, 0}, cplx{0, 0}, cplx{1, 0}};
    MoebiusTransform id = MoebiusTransform::identity();
    CHECK(entry_distance(compose(id, shift), shift) < 1e-15);
    MoebiusTransform twice = compose(shift, shift);
    auto p = apply_boundary(twice, BoundaryPoint::finite(cplx{0, 0}));
    CHECK(std::abs(p.z - cplx{2, 0}) < 1e-15);
}

TEST_CASE("compose: inverse round trip on random pairs") {
    std::mt19937 rng(7);
    for (int k = 0; k < 200; ++k) {
        MoebiusTransform A = random_transform(rng), B = random_transform(rng);
        MoebiusTransform R = compose(compose(A, B), B.inverse());
        CHECK(entry_distance(R, A) < 1e-12);
    }
}

TEST_CASE("apply_boundary conventions at infinity") {
    MoebiusTransform shift{cplx{1, 0}, cplx{1, 0}, cplx{0, 0}, cplx{1, 0}};
    CHECK(apply_boundary(shift, BoundaryPoint::inf()).infinite);

    MoebiusTransform invmap{cplx{0, 0}, cplx{0, 1}, cplx{0, 1}, cplx{0, 0}};
    CHECK(apply_boundary(invmap, BoundaryPoint::finite(cplx{0, 0})).infinite);

    MoebiusTransform dil{cplx{2, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0.5, 0}};
    auto p = apply_boundary(dil, BoundaryPoint::finite(cplx{1, 0}));
    CHECK(std::abs(p.z - cplx{4, 0}) < 1e-14);
}

TEST_CASE("apply_halfspace closed form") {
    MoebiusTransform id = MoebiusTransform::identity();
    HalfSpacePoint x{cplx{0, 0}, 1.0};
    auto y = apply_halfspace(id, x);
    CHECK(std::abs(y.z) < 1e-15);
    CHECK(y.t == doctest::Approx(1.0));

    MoebiusTransform dil{cplx{2, 0}, {}, {}, cplx{0.5, 0}};  // z -> 4z
    y = apply_halfspace(dil, x);
    CHECK(y.t == doctest::Approx(4.0).epsilon(1e-12));

    MoebiusTransform shift{cplx{1, 0}, cplx{1, 0}, cplx{0, 0}, cplx{1, 0}};
    y = apply_halfspace(shift, x);
    CHECK(std::abs(y.z - cplx{1, 0}) < 1e-14);
    CHECK(y.t == doctest::Approx(1.0));
}

TEST_CASE("apply_halfspace is an isometry") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dz(-2.0, 2.0);
    std::uniform_real_distribution<double> dt(0.2, 3.0);
    for (int k = 0; k < 200; ++k) {
        MoebiusTransform T = random_transform(rng);
        HalfSpacePoint x{cplx{dz(rng), dz(rng)}, dt(rng)};
        HalfSpacePoint y{cplx{dz(rng), dz(rng)}, dt(rng)};
        const double before = halfspace_distance(x, y);
        const double after = halfspace_distance(apply_halfspace(T, x), apply_halfspace(T, y));
        CHECK(after == doctest::Approx(before).epsilon(1e-10));
    }
}

TEST_CASE("classify") {
    CHECK(classify(MoebiusTransform::identity()).kind == ElementKind::Identity);
    MoebiusTransform par{cplx{1, 0}, cplx{1, 0}, cplx{0, 0}, cplx{1, 0}};
    CHECK(classify(par).kind == ElementKind::Parabolic);
    MoebiusTransform dil{cplx{2, 0}, {}, {}, cplx{0.5, 0}};
    auto cls = classify(dil);
    CHECK(cls.kind == ElementKind::Loxodromic);
    CHECK(cls.translation_length == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    MoebiusTransform rot{std::polar(1.0, 0.4), {}, {}, std::polar(1.0, -0.4)};
    CHECK(classify(rot).kind == ElementKind::Elliptic);
}

TEST_CASE("classify is conjugation invariant") {
    std::mt19937 rng(3);
    MoebiusTransform dil{cplx{2, 0}, {}, {}, cplx{0.5, 0}};
    MoebiusTransform par{cplx{1, 0}, cplx{1, 0}, cplx{0, 0}, cplx{1, 0}};
    for (int k = 0; k < 100; ++k) {
        MoebiusTransform g = random_transform(rng);
        auto conj = [&](const MoebiusTransform& T) { return g * T * g.inverse(); };
        CHECK(classify(conj(dil), 1e-8).kind == ElementKind::Loxodromic);
        CHECK(classify(conj(dil), 1e-8).translation_length ==
              doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-8));
        CHECK(classify(conj(par), 1e-6).kind == ElementKind::Parabolic);
    }
}

TEST_CASE("spherical distance values") {
    auto zero = BoundaryPoint::finite(cplx{0, 0});
    auto one = BoundaryPoint::finite(cplx{1, 0});
    CHECK(spherical_distance(zero, zero) == 0.0);
    CHECK(spherical_distance(zero, BoundaryPoint::inf()) == doctest::Approx(M_PI / 2));

    // Oracle: numerical line integral of |dz|/(1+|z|^2) along the straight
    // segment from 0 to 1 (a geodesic through the origin).
    double integral = 0.0;
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
        const double r = (k + 0.5) / n;
        integral += (1.0 / n) / (1.0 + r * r);
    }
    CHECK(spherical_distance(zero, one) == doctest::Approx(integral).epsilon(1e-9));
    CHECK(spherical_distance(zero, one) == doctest::Approx(M_PI / 4).epsilon(1e-12));
}

TEST_CASE("spherical distance: symmetry, triangle inequality, rotation invariance") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    auto rand_pt = [&]() {
        if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.05) return BoundaryPoint::inf();
        return BoundaryPoint::finite(cplx{dist(rng), dist(rng)});
    };
    for (int k = 0; k < 300; ++k) {
        auto p = rand_pt(), q = rand_pt(), r = rand_pt();
        CHECK(spherical_distance(p, q) == doctest::Approx(spherical_distance(q, p)));
        CHECK(spherical_distance(p, r) <=
              spherical_distance(p, q) + spherical_distance(q, r) + 1e-12);
        // Elliptic rotation about the t-axis.
        const double phi = dist(rng);
        MoebiusTransform rot{std::polar(1.0, phi / 2), {}, {}, std::polar(1.0, -phi / 2)};
        CHECK(spherical_distance(apply_boundary(rot, p), apply_boundary(rot, q)) ==
              doctest::Approx(spherical_distance(p, q)).epsilon(1e-10));
    }
}

TEST_CASE("fixed points") {
    MoebiusTransform par{cplx{1, 0}, cplx{1, 0}, cplx{0, 0}, cplx{1, 0}};
    auto fp = fixed_points(par);
    REQUIRE(fp.size() == 1);
    CHECK(fp[0].infinite);

    MoebiusTransform dil{cplx{2, 0}, {}, {}, cplx{0.5, 0}};
    fp = fixed_points(dil);
    REQUIRE(fp.size() == 2);
    CHECK(fp[0].infinite);
    CHECK(std::abs(fp[1].z) < 1e-14);

    MoebiusTransform invmap{cplx{0, 0}, cplx{0, 1}, cplx{0, 1}, cplx{0, 0}};
    fp = fixed_points(invmap);
    REQUIRE(fp.size() == 2);
    for (const auto& p : fp) CHECK(std::abs(std::abs(p.z) - 1.0) < 1e-12);

    CHECK_THROWS_AS(fixed_points(MoebiusTransform::identity()), std::invalid_argument);
}

TEST_CASE("fixed points satisfy T(p) = p on random elements") {
    std::mt19937 rng(23);
    for (int k = 0; k < 200; ++k) {
        MoebiusTransform T = random_transform(rng);
        if (classify(T).kind == ElementKind::Identity) continue;
        for (const auto& p : fixed_points(T)) {
            auto q = apply_boundary(T, p);
            CHECK(spherical_distance(p, q) < 1e-9);
        }
    }
}

TEST_CASE("boundary points canonicalize huge values to infinity") {
    CHECK(BoundaryPoint::finite(cplx{1e13, 0}).infinite);
    CHECK(BoundaryPoint::finite(cplx{std::nan(""), 0}).infinite);
    CHECK(!BoundaryPoint::finite(cplx{1e11, 0}).infinite);
}
