#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "afk/moebius.hpp"

// Group presentations by generator matrices, reduced-word orbit enumeration,
// limit-set sampling and boundary-sample geometry (Hausdorff distance,
// largest empty spherical ball).

namespace afk {

struct GroupPresentation {
    std::vector<MoebiusTransform> generators;
    std::string label;
};

GroupPresentation parse_group_json(const std::string& text);
std::string group_to_json(const GroupPresentation& g);

struct LimitSetSample {
    std::vector<BoundaryPoint> points;
    int max_word_length = 0;
    std::string method;
    // No more than 2n distinct points were found for n generators; suggests
    // an elementary or non-discrete input.
    bool warning_few_points = false;
    // Some generator pair fails the Jorgensen inequality spot check.
    bool warning_jorgensen = false;
};

// Yields all reduced words (no adjacent g g^-1 cancellation) of length <= L
// in deterministic depth-first, generator-index order.  The visitor receives
// the product matrix and the word length.  Letters 0..n-1 are the generators,
// n..2n-1 their inverses.
void enumerate_reduced_words(const GroupPresentation& g, int max_length,
                             const std::function<void(const MoebiusTransform&, int)>& visit);

// Number of reduced words of length <= L for n generators.
std::uint64_t reduced_word_count(int n_generators, int max_length);

struct SampleConfig {
    double dedup_tolerance = 1e-6;  // spherical resolution
    // Orbit points below this height become boundary shadows.  A shadow at
    // height t sits within O(t^2) of the invariant circle for a Fuchsian
    // group, so 1e-5 keeps shadow noise under 1e-9.
    double shadow_height = 1e-5;
    int threads = 1;
};

LimitSetSample limit_set_sample(const GroupPresentation& g, int max_length,
                                const HalfSpacePoint& base = HalfSpacePoint{cplx{0, 0}, 1.0},
                                const SampleConfig& config = SampleConfig{});

double hausdorff_distance(const LimitSetSample& a, const LimitSetSample& b);

struct EmptyBall {
    BoundaryPoint center;
    double radius = 0.0;
};

// Fibonacci-lattice search over ~resolution^2 candidate centers for the
// largest spherical ball disjoint from the sample.  Lower bound for the true
// largest empty ball, within O(1/resolution).
EmptyBall largest_empty_ball(const LimitSetSample& sample, int resolution);

// Side-pairing generators of a regular hyperbolic octagon (angle sum 2*pi),
// genus-2 Fuchsian group.  Matrices are given in the unit-disk model, so the
// invariant circle is |z| = 1; the relator g0 g1 g2 g3 g0^-1 g1^-1 g2^-1 g3^-1
// is the identity.
GroupPresentation build_octagon_group();

// True if the pair passes the Jorgensen inequality
// |tr^2(A) - 4| + |tr(ABA^-1B^-1) - 2| >= 1 (necessary for a discrete
// non-elementary group generated by A, B).
bool jorgensen_check(const MoebiusTransform& A, const MoebiusTransform& B);

std::string limit_set_to_csv(const LimitSetSample& sample);

}  // namespace afk
