#include "afk/kleinian.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <json.hpp>

namespace afk {

namespace {

int inverse_letter(int letter, int n) { return letter < n ? letter + n : letter - n; }

const MoebiusTransform& letter_matrix(const std::vector<MoebiusTransform>& gens,
                                      const std::vector<MoebiusTransform>& invs, int letter) {
    const int n = static_cast<int>(gens.size());
    return letter < n ? gens[letter] : invs[letter - n];
}

// Spatial hash for deduplication at fixed spherical resolution.  Points are
// embedded on the unit sphere; two points within spherical distance delta are
// within Euclidean chord 2*sin(delta).
class SphereDedup {
public:
    explicit SphereDedup(double delta)
        : chord_(2.0 * std::sin(delta)), cell_(std::max(chord_, 1e-12)) {}

    bool insert(const std::array<double, 3>& v) {
        const std::int64_t ix = static_cast<std::int64_t>(std::floor(v[0] / cell_));
        const std::int64_t iy = static_cast<std::int64_t>(std::floor(v[1] / cell_));
        const std::int64_t iz = static_cast<std::int64_t>(std::floor(v[2] / cell_));
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dz = -1; dz <= 1; ++dz) {
                    auto it = cells_.find(key(ix + dx, iy + dy, iz + dz));
                    if (it == cells_.end()) continue;
                    for (int idx : it->second) {
                        const auto& w = accepted_[idx];
                        const double d0 = v[0] - w[0], d1 = v[1] - w[1], d2 = v[2] - w[2];
                        if (d0 * d0 + d1 * d1 + d2 * d2 <= chord_ * chord_) return false;
                    }
                }
        cells_[key(ix, iy, iz)].push_back(static_cast<int>(accepted_.size()));
        accepted_.push_back(v);
        return true;
    }

private:
    static std::uint64_t key(std::int64_t x, std::int64_t y, std::int64_t z) {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t v : {x, y, z}) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }

    double chord_;
    double cell_;
    std::vector<std::array<double, 3>> accepted_;
    std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

struct BranchResult {
    std::vector<BoundaryPoint> points;
};

// Depth-first walk of all reduced words with the given first letter.
template <typename Visit>
void walk_branch(const std::vector<MoebiusTransform>& gens,
                 const std::vector<MoebiusTransform>& invs, int n, int first_letter,
                 int max_length, Visit&& visit) {
    struct Node {
        MoebiusTransform m;
        int last_letter;
        int next_child;
    };
    std::vector<Node> stack;
    stack.push_back(Node{letter_matrix(gens, invs, first_letter), first_letter, 0});
    visit(stack.back().m, 1);
    while (!stack.empty()) {
        Node& top = stack.back();
        if (static_cast<int>(stack.size()) >= max_length || top.next_child >= 2 * n) {
            stack.pop_back();
            continue;
        }
        const int letter = top.next_child++;
        if (letter == inverse_letter(top.last_letter, n)) continue;
        MoebiusTransform m = compose(top.m, letter_matrix(gens, invs, letter));
        stack.push_back(Node{m, letter, 0});
        visit(stack.back().m, static_cast<int>(stack.size()));
    }
}

}  // namespace

void enumerate_reduced_words(const GroupPresentation& g, int max_length,
                             const std::function<void(const MoebiusTransform&, int)>& visit) {
    if (max_length < 1) throw std::invalid_argument("max_length must be >= 1");
    if (g.generators.empty()) throw std::invalid_argument("empty generator list");
    const int n = static_cast<int>(g.generators.size());
    std::vector<MoebiusTransform> invs;
    invs.reserve(n);
    for (const auto& m : g.generators) invs.push_back(m.inverse());
    for (int first = 0; first < 2 * n; ++first) {
        walk_branch(g.generators, invs, n, first, max_length, visit);
    }
}

std::uint64_t reduced_word_count(int n_generators, int max_length) {
    std::uint64_t total = 0;
    std::uint64_t layer = 2ull * n_generators;
    for (int k = 1; k <= max_length; ++k) {
        total += layer;
        layer *= 2ull * n_generators - 1;
    }
    return total;
}

LimitSetSample limit_set_sample(const GroupPresentation& g, int max_length,
                                const HalfSpacePoint& base, const SampleConfig& config) {
    if (max_length < 2) throw std::invalid_argument("word length must be >= 2");
    if (g.generators.empty()) throw std::invalid_argument("empty generator list");
    const int n = static_cast<int>(g.generators.size());
    std::vector<MoebiusTransform> invs;
    invs.reserve(n);
    for (const auto& m : g.generators) invs.push_back(m.inverse());

    const double class_tol = 1e-9;
    auto collect = [&](const MoebiusTransform& m, std::vector<BoundaryPoint>& out) {
        const ElementClass cls = classify(m, class_tol);
        if (cls.kind == ElementKind::Loxodromic) {
            out.push_back(attracting_fixed_point(m));
        }
        const HalfSpacePoint orbit = apply_halfspace(m, base);
        if (orbit.t < config.shadow_height) {
            out.push_back(BoundaryPoint::finite(orbit.z));
        }
    };

    // One branch per first letter; workers take disjoint branch sets and the
    // merge below runs in branch order, so the result is deterministic.
    std::vector<BranchResult> branches(2 * n);
    const int threads = std::max(1, config.threads);
    if (threads == 1) {
        for (int first = 0; first < 2 * n; ++first) {
            walk_branch(g.generators, invs, n, first, max_length,
                        [&](const MoebiusTransform& m, int) { collect(m, branches[first].points); });
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic_int next{0};
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&]() {
                for (int first = next.fetch_add(1); first < 2 * n; first = next.fetch_add(1)) {
                    walk_branch(g.generators, invs, n, first, max_length,
                                [&](const MoebiusTransform& m, int) {
                                    collect(m, branches[first].points);
                                });
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    LimitSetSample sample;
    sample.max_word_length = max_length;
    sample.method = "loxodromic-fixed-points+orbit-shadows";
    SphereDedup dedup(config.dedup_tolerance);
    for (const auto& branch : branches) {
        for (const auto& p : branch.points) {
            if (dedup.insert(sphere_embed(p))) sample.points.push_back(p);
        }
    }
    sample.warning_few_points = static_cast<int>(sample.points.size()) <= 2 * n;
    for (int i = 0; i < n && !sample.warning_jorgensen; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!jorgensen_check(g.generators[i], g.generators[j])) {
                sample.warning_jorgensen = true;
                break;
            }
        }
    }
    return sample;
}

double hausdorff_distance(const LimitSetSample& a, const LimitSetSample& b) {
    if (a.points.empty() || b.points.empty()) {
        throw std::invalid_argument("Hausdorff distance undefined for empty set");
    }
    auto directed = [](const std::vector<BoundaryPoint>& from,
                       const std::vector<BoundaryPoint>& to) {
        double sup = 0.0;
        for (const auto& p : from) {
            double best = 1e300;
            for (const auto& q : to) best = std::min(best, spherical_distance(p, q));
            sup = std::max(sup, best);
        }
        return sup;
    };
    return std::max(directed(a.points, b.points), directed(b.points, a.points));
}

EmptyBall largest_empty_ball(const LimitSetSample& sample, int resolution) {
    if (sample.points.empty()) throw std::invalid_argument("empty sample");
    if (resolution < 10) throw std::invalid_argument("resolution must be >= 10");
    std::vector<std::array<double, 3>> pts;
    pts.reserve(sample.points.size());
    for (const auto& p : sample.points) pts.push_back(sphere_embed(p));

    const std::size_t count = static_cast<std::size_t>(resolution) * resolution;
    const double golden = M_PI * (std::sqrt(5.0) + 1.0);
    EmptyBall best;
    best.radius = -1.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double z = -1.0 + (2.0 * i + 1.0) / count;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double theta = golden * i;
        const std::array<double, 3> c{r * std::cos(theta), r * std::sin(theta), z};
        double max_dot = -1.0;
        for (const auto& p : pts) {
            max_dot = std::max(max_dot, c[0] * p[0] + c[1] * p[1] + c[2] * p[2]);
        }
        const double radius = 0.5 * std::acos(std::max(-1.0, std::min(1.0, max_dot)));
        if (radius > best.radius) {
            best.radius = radius;
            best.center = sphere_unembed(c);
        }
    }
    return best;
}

GroupPresentation build_octagon_group() {
    // Translation length L of the opposite-side pairings satisfies
    // cosh(L/2) = cot(pi/8) = 1 + sqrt(2); the four translation axes pass
    // through the origin of the disk at angles k*pi/4.
    const double ca = 1.0 + std::sqrt(2.0);
    const double sa = std::sqrt(ca * ca - 1.0);
    GroupPresentation g;
    g.label = "octagon";
    // Axis directions picked so that g0 g1 g2 g3 g0^-1 g1^-1 g2^-1 g3^-1 = 1.
    const double angles[4] = {0.0, 5.0 * M_PI / 4.0, M_PI / 2.0, 7.0 * M_PI / 4.0};
    for (int k = 0; k < 4; ++k) {
        const cplx phase = std::polar(1.0, angles[k]);
        // SU(1,1) form [[alpha, beta], [conj(beta), conj(alpha)]].
        const cplx alpha{ca, 0.0};
        const cplx beta = phase * sa;
        g.generators.emplace_back(alpha, beta, std::conj(beta), std::conj(alpha));
    }
    return g;
}

bool jorgensen_check(const MoebiusTransform& A, const MoebiusTransform& B) {
    const MoebiusTransform comm = A * B * A.inverse() * B.inverse();
    const cplx trA = A.trace();
    const double lhs = std::abs(trA * trA - 4.0) + std::abs(comm.trace() - 2.0);
    return lhs >= 1.0 - 1e-12;
}

GroupPresentation parse_group_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    GroupPresentation g;
    g.label = j.value("label", "");
    for (const auto& mat : j.at("generators")) {
        if (mat.size() != 2 || mat[0].size() != 2 || mat[1].size() != 2) {
            throw std::invalid_argument("generator is not a 2x2 matrix");
        }
        auto entry = [&](int r, int c) {
            const auto& e = mat[r][c];
            return cplx{e.at(0).get<double>(), e.at(1).get<double>()};
        };
        g.generators.emplace_back(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1));
    }
    if (g.generators.empty()) throw std::invalid_argument("empty generator list");
    for (const auto& m : g.generators) {
        if (classify(m).kind == ElementKind::Identity) {
            throw std::invalid_argument("identity generator");
        }
    }
    return g;
}

std::string group_to_json(const GroupPresentation& g) {
    nlohmann::json j;
    j["label"] = g.label;
    auto arr = nlohmann::json::array();
    for (const auto& m : g.generators) {
        arr.push_back({{{m.a.real(), m.a.imag()}, {m.b.real(), m.b.imag()}},
                       {{m.c.real(), m.c.imag()}, {m.d.real(), m.d.imag()}}});
    }
    j["generators"] = arr;
    return j.dump(2);
}

std::string limit_set_to_csv(const LimitSetSample& sample) {
    std::ostringstream out;
    char buf[80];
    for (const auto& p : sample.points) {
        if (p.infinite) {
            out << "inf,inf\n";
        } else {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.z.real(), p.z.imag());
            out << buf;
        }
    }
    return out.str();
}

}  // namespace afk
