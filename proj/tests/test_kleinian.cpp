#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "afk/kleinian.hpp"

using namespace afk;

namespace {

LimitSetSample make_sample(std::vector<BoundaryPoint> pts) {
    LimitSetSample s;
    s.points = std::move(pts);
    return s;
}

LimitSetSample random_sample(std::mt19937& rng, int count) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<BoundaryPoint> pts;
    for (int k = 0; k < count; ++k) {
        pts.push_back(BoundaryPoint::finite(cplx{dist(rng), dist(rng)}));
    }
    return make_sample(std::move(pts));
}

// Independent sup-min evaluation used as the oracle for hausdorff_distance.
double hausdorff_oracle(const LimitSetSample& a, const LimitSetSample& b) {
    auto one_sided = [](const LimitSetSample& from, const LimitSetSample& to) {
        double sup = 0;
        for (const BoundaryPoint& p : from.points) {
            double best = 1e300;
            for (const BoundaryPoint& q : to.points) {
                best = std::min(best, spherical_distance(p, q));
            }
            sup = std::max(sup, best);
        }
        return sup;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace

TEST_CASE("group JSON round trip and validation") {
    GroupPresentation g;
    g.label = "pair";
    g.generators.push_back(MoebiusTransform{cplx{2, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0.5, 0}});
    g.generators.push_back(MoebiusTransform{cplx{1, 0}, cplx{1, 1}, cplx{0, 0}, cplx{1, 0}});
    GroupPresentation back = parse_group_json(group_to_json(g));
    CHECK(back.label == "pair");
    REQUIRE(back.generators.size() == 2);
    CHECK(std::abs(back.generators[0].a - g.generators[0].a) < 1e-15);
    CHECK(std::abs(back.generators[1].b - g.generators[1].b) < 1e-15);

    CHECK_THROWS(parse_group_json("{\"generators\": []}"));
    CHECK_THROWS(parse_group_json("not json"));
    // Identity generator rejected.
    CHECK_THROWS(parse_group_json(
        "{\"generators\": [[[[1,0],[0,0]],[[0,0],[1,0]]]]}"));
}

TEST_CASE("reduced word counts") {
    // n generators: sum over k of 2n (2n-1)^(k-1).
    CHECK(reduced_word_count(1, 1) == 2);
    CHECK(reduced_word_count(1, 4) == 8);
    CHECK(reduced_word_count(2, 1) == 4);
    CHECK(reduced_word_count(2, 2) == 4 + 12);
    CHECK(reduced_word_count(2, 3) == 4 + 12 + 36);
    CHECK(reduced_word_count(4, 8) == 7686400);

    GroupPresentation g;
    g.generators.push_back(MoebiusTransform{cplx{2, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0.5, 0}});
    g.generators.push_back(MoebiusTransform{cplx{1, 0}, cplx{2, 0}, cplx{0, 0}, cplx{1, 0}});
    std::uint64_t seen = 0;
    enumerate_reduced_words(g, 3, [&](const MoebiusTransform&, int len) {
        CHECK(len >= 1);
        CHECK(len <= 3);
        ++seen;
    });
    CHECK(seen == reduced_word_count(2, 3));
}

TEST_CASE("elementary loxodromic group gives its two fixed points") {
    GroupPresentation g;
    g.generators.push_back(MoebiusTransform{cplx{2, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0.5, 0}});
    LimitSetSample s = limit_set_sample(g, 6);
    CHECK(s.warning_few_points);
    bool has_zero = false, has_inf = false;
    for (const BoundaryPoint& p : s.points) {
        if (p.infinite) has_inf = true;
        else if (std::abs(p.z) < 1e-9) has_zero = true;
    }
    CHECK(has_zero);
    CHECK(has_inf);
    CHECK(s.points.size() <= 3);
}

TEST_CASE("octagon group satisfies the relator and is loxodromic") {
    GroupPresentation g = build_octagon_group();
    REQUIRE(g.generators.size() == 4);
    MoebiusTransform w = g.generators[0];
    w = w * g.generators[1] * g.generators[2] * g.generators[3];
    for (int k = 0; k < 4; ++k) w = w * g.generators[k].inverse();
    const double id_dev = std::min(
        std::max({std::abs(w.a - 1.0), std::abs(w.b), std::abs(w.c), std::abs(w.d - 1.0)}),
        std::max({std::abs(w.a + 1.0), std::abs(w.b), std::abs(w.c), std::abs(w.d + 1.0)}));
    CHECK(id_dev < 1e-10);
    for (const MoebiusTransform& t : g.generators) {
        CHECK(classify(t).kind == ElementKind::Loxodromic);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(jorgensen_check(g.generators[i], g.generators[j]));
}

TEST_CASE("octagon limit points lie on the unit circle") {
    LimitSetSample s = limit_set_sample(build_octagon_group(), 5);
    CHECK(s.points.size() > 100);
    double dev = 0;
    for (const BoundaryPoint& p : s.points) {
        REQUIRE(!p.infinite);
        dev = std::max(dev, std::abs(std::abs(p.z) - 1.0));
    }
    CHECK(dev < 1e-9);
}

TEST_CASE("conjugated octagon limit set moves off the circle") {
    GroupPresentation g = build_octagon_group();
    // Conjugate by a Moebius map that does not preserve |z| = 1.
    const MoebiusTransform h{cplx{1, 0}, cplx{0.4, 0.1}, cplx{0.1, 0}, cplx{1, 0}};
    for (MoebiusTransform& t : g.generators) t = h * t * h.inverse();
    LimitSetSample s = limit_set_sample(g, 5);
    double dev = 0;
    for (const BoundaryPoint& p : s.points) {
        if (!p.infinite) dev = std::max(dev, std::abs(std::abs(p.z) - 1.0));
    }
    CHECK(dev > 0.01);
}

TEST_CASE("limit set is equivariant under conjugation") {
    GroupPresentation g = build_octagon_group();
    const MoebiusTransform h{cplx{1.1, 0.2}, cplx{0.3, 0}, cplx{0, 0.1}, cplx{1, 0}};
    GroupPresentation conj = g;
    for (MoebiusTransform& t : conj.generators) t = h * t * h.inverse();
    LimitSetSample base = limit_set_sample(g, 4);
    LimitSetSample moved = limit_set_sample(conj, 4);
    LimitSetSample mapped = base;
    for (BoundaryPoint& p : mapped.points) p = apply_boundary(h, p);
    CHECK(hausdorff_distance(moved, mapped) < 1e-3);
}

TEST_CASE("deeper enumeration only adds points") {
    GroupPresentation g = build_octagon_group();
    LimitSetSample shallow = limit_set_sample(g, 3);
    LimitSetSample deep = limit_set_sample(g, 5);
    CHECK(deep.points.size() >= shallow.points.size());
    // Every shallow point has a nearby deep point.
    double sup = 0;
    for (const BoundaryPoint& p : shallow.points) {
        double best = 1e300;
        for (const BoundaryPoint& q : deep.points) {
            best = std::min(best, spherical_distance(p, q));
        }
        sup = std::max(sup, best);
    }
    CHECK(sup < 2e-6);
}

TEST_CASE("multithreaded sampling is deterministic") {
    GroupPresentation g = build_octagon_group();
    SampleConfig one, four;
    one.threads = 1;
    four.threads = 4;
    LimitSetSample a = limit_set_sample(g, 5, HalfSpacePoint{cplx{0, 0}, 1.0}, one);
    LimitSetSample b = limit_set_sample(g, 5, HalfSpacePoint{cplx{0, 0}, 1.0}, four);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t k = 0; k < a.points.size(); ++k) {
        CHECK(a.points[k].infinite == b.points[k].infinite);
        if (!a.points[k].infinite) CHECK(std::abs(a.points[k].z - b.points[k].z) == 0.0);
    }
}

TEST_CASE("hausdorff distance matches the brute-force oracle") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        LimitSetSample a = random_sample(rng, 100);
        LimitSetSample b = random_sample(rng, 100);
        CHECK(hausdorff_distance(a, b) == hausdorff_oracle(a, b));
    }
}

TEST_CASE("hausdorff distance is a metric on samples") {
    std::mt19937 rng(7);
    LimitSetSample a = random_sample(rng, 40);
    LimitSetSample b = random_sample(rng, 40);
    LimitSetSample c = random_sample(rng, 40);
    CHECK(hausdorff_distance(a, a) == 0.0);
    CHECK(hausdorff_distance(a, b) == hausdorff_distance(b, a));
    CHECK(hausdorff_distance(a, c) <=
          hausdorff_distance(a, b) + hausdorff_distance(b, c) + 1e-15);
    CHECK_THROWS(hausdorff_distance(a, make_sample({})));
}

TEST_CASE("largest empty ball for an equatorial sample") {
    // Sample along R + infinity: the farthest points are +-i at distance pi/4.
    std::vector<BoundaryPoint> pts;
    for (int k = -400; k <= 400; ++k) {
        pts.push_back(BoundaryPoint::finite(cplx{std::tan(k * std::numbers::pi / 802.0), 0.0}));
    }
    pts.push_back(BoundaryPoint::inf());
    EmptyBall ball = largest_empty_ball(make_sample(std::move(pts)), 140);
    CHECK(ball.radius == doctest::Approx(std::numbers::pi / 4).epsilon(0.05));
    CHECK_THROWS(largest_empty_ball(make_sample({BoundaryPoint::inf()}), 5));
}

TEST_CASE("largest empty ball for the two-point sample") {
    LimitSetSample s =
        make_sample({BoundaryPoint::finite(cplx{0, 0}), BoundaryPoint::inf()});
    EmptyBall ball = largest_empty_ball(s, 200);
    // Equidistant locus |z| = 1 sits at distance pi/4 from both points.
    CHECK(ball.radius == doctest::Approx(std::numbers::pi / 4).epsilon(0.02));
}

TEST_CASE("jorgensen check flags a violating pair") {
    // A near-identity pair violating |tr^2 - 4| + |tr[A,B] - 2| >= 1.
    const MoebiusTransform A{cplx{1.01, 0}, cplx{0.01, 0}, cplx{0, 0}, cplx{1.0 / 1.01, 0}};
    const MoebiusTransform B{cplx{1, 0}, cplx{0.01, 0}, cplx{0.01, 0}, cplx{1.0001, 0}};
    CHECK(!jorgensen_check(A, B));
    GroupPresentation g;
    g.generators.push_back(A);
    g.generators.push_back(B);
    LimitSetSample s = limit_set_sample(g, 3);
    CHECK(s.warning_jorgensen);
}

TEST_CASE("csv output format") {
    LimitSetSample s =
        make_sample({BoundaryPoint::finite(cplx{0.5, -1.0}), BoundaryPoint::inf()});
    const std::string csv = limit_set_to_csv(s);
    CHECK(csv == "0.5,-1\ninf,inf\n");
}
