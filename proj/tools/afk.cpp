#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "afk/certify.hpp"
#include "afk/gauss_equation.hpp"
#include "afk/kleinian.hpp"
#include "afk/render.hpp"
#include "afk/surface.hpp"

// Exit codes: 0 ok, 2 input error, 3 resource limit, 4 regime violation,
// 5 solver failure.

namespace {

constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitRegime = 4;
constexpr int kExitSolver = 5;

constexpr std::uint64_t kWordBudget = 500000000ULL;

struct Options {
    std::vector<std::string> group_files;
    std::string alpha_file;
    int depth = 6;
    int grid = 129;
    double tol = 1e-10;
    double c_epstein = 1.0;
    double c_koebe = 4.0;
    std::string out_dir = ".";
    int threads = 0;
    int image_size = 800;
    int seed = 0;
};

int thread_count(const Options& opt) {
    if (opt.threads > 0) return opt.threads;
    if (const char* env = std::getenv("AFK_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

// FNV-1a of the canonical config string; embedded in every output file.
std::string config_hash(const Options& opt, const std::string& subcommand) {
    std::ostringstream canon;
    canon << subcommand;
    for (const auto& g : opt.group_files) canon << "|group=" << g;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "|alpha=%s|depth=%d|grid=%d|tol=%.17g|ce=%.17g|ck=%.17g|img=%d|seed=%d",
                  opt.alpha_file.c_str(), opt.depth, opt.grid, opt.tol, opt.c_epstein,
                  opt.c_koebe, opt.image_size, opt.seed);
    canon << buf;
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canon.str()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string with_hash_comment_csv(const std::string& csv, const std::string& hash) {
    return "# config_hash=" + hash + "\n" + csv;
}

std::string with_hash_json(std::string json, const std::string& hash) {
    // Insert as the first field of the top-level object.
    const auto brace = json.find('{');
    if (brace != std::string::npos) {
        json.insert(brace + 1, "\n  \"config_hash\": \"" + hash + "\",");
    }
    return json;
}

std::string with_hash_ppm(std::string ppm, const std::string& hash) {
    const auto nl = ppm.find('\n');
    if (nl != std::string::npos) {
        ppm.insert(nl + 1, "# config_hash=" + hash + "\n");
    }
    return ppm;
}

afk::QuadDifferential load_alpha(const Options& opt) {
    if (opt.alpha_file.empty()) return afk::QuadDifferential{};
    return afk::parse_differential_json(read_file(opt.alpha_file));
}

void render_sample(const afk::LimitSetSample& sample, const Options& opt,
                   const std::string& hash, const std::string& stem,
                   const std::vector<afk::ChartCircle>& circles = {}) {
    const std::filesystem::path dir(opt.out_dir);
    for (auto [chart, tag] :
         {std::pair{afk::Chart::Zero, "0"}, std::pair{afk::Chart::Infinity, "inf"}}) {
        afk::Image img = afk::render_boundary_points(sample.points, chart, opt.image_size, 1.5,
                                                     circles);
        write_file((dir / (stem + "_" + tag + ".ppm")).string(),
                   with_hash_ppm(afk::image_to_ppm(img), hash));
    }
}

int cmd_limit_set(const Options& opt) {
    const std::string hash = config_hash(opt, "limit-set");
    afk::GroupPresentation group = afk::parse_group_json(read_file(opt.group_files.at(0)));
    if (afk::reduced_word_count(static_cast<int>(group.generators.size()), opt.depth) >
        kWordBudget) {
        std::cerr << "enumeration resource limit exceeded (word budget " << kWordBudget
                  << ")\n";
        return kExitResource;
    }
    afk::SampleConfig config;
    config.threads = thread_count(opt);
    afk::LimitSetSample sample =
        afk::limit_set_sample(group, opt.depth, afk::HalfSpacePoint{afk::cplx{0, 0}, 1.0},
                              config);
    const std::filesystem::path dir(opt.out_dir);
    write_file((dir / "limit_set.csv").string(),
               with_hash_comment_csv(afk::limit_set_to_csv(sample), hash));
    render_sample(sample, opt, hash, "limit_set");
    if (sample.warning_few_points) {
        std::cout << "warning: fewer distinct points than generators; group may be elementary"
                  << std::endl;
    }
    if (sample.warning_jorgensen) {
        std::cout << "warning: a generator pair fails the Jorgensen inequality" << std::endl;
    }
    std::cout << "points " << sample.points.size() << std::endl;
    return 0;
}

int cmd_solve(const Options& opt) {
    const std::string hash = config_hash(opt, "solve");
    afk::QuadDifferential alpha = load_alpha(opt);
    const double sup = afk::sup_norm_hyperbolic(alpha);
    if (sup >= 1.0) {
        std::cerr << "regime violation: sup hyperbolic norm " << sup << " >= 1\n";
        return kExitRegime;
    }
    afk::DiskGrid grid(opt.grid, 0.8);
    afk::SolveConfig config;
    config.tol = opt.tol;
    afk::ConformalFactorField u = afk::solve_gauss_equation(alpha, grid, config);
    afk::BoundsReport bounds = afk::check_bounds(u);
    const std::filesystem::path dir(opt.out_dir);
    write_file((dir / "u_header.json").string(),
               with_hash_json(afk::field_header_json(u), hash));
    write_file((dir / "u_values.csv").string(),
               with_hash_comment_csv(afk::field_values_csv(u), hash));
    nlohmann::ordered_json report;
    report["u_min"] = bounds.u_min;
    report["u_max"] = bounds.u_max;
    report["bounds_pass"] = bounds.pass;
    report["residual"] = u.residual_norm;
    write_file((dir / "solve_report.json").string(), with_hash_json(report.dump(2), hash));
    std::cout << "u_min " << bounds.u_min << " u_max " << bounds.u_max << " bounds "
              << (bounds.pass ? "PASS" : "FAIL") << std::endl;
    return 0;
}

int cmd_certify(const Options& opt) {
    const std::string hash = config_hash(opt, "certify");
    const std::filesystem::path dir(opt.out_dir);

    std::string stage = "parse";
    try {
        afk::QuadDifferential alpha = load_alpha(opt);

        stage = "regime";
        const double sup = afk::sup_norm_hyperbolic(alpha);
        if (sup >= 1.0) {
            std::cerr << "certify failed at stage regime: sup hyperbolic norm " << sup
                      << " >= 1\n";
            return kExitRegime;
        }

        stage = "solve";
        afk::DiskGrid grid(opt.grid, 0.8);
        afk::SolveConfig solve_config;
        solve_config.tol = opt.tol;
        afk::ConformalFactorField u = afk::solve_gauss_equation(alpha, grid, solve_config);

        stage = "integrate";
        afk::ImmersedPatch patch = afk::integrate_immersion(u, alpha);
        write_file((dir / "patch_header.json").string(),
                   with_hash_json(afk::patch_header_json(patch), hash));
        {
            std::vector<double> packed = afk::patch_values_packed(patch);
            std::string bytes(reinterpret_cast<const char*>(packed.data()),
                              packed.size() * sizeof(double));
            write_file((dir / "patch_values.f64").string(), bytes);
        }

        stage = "limit-set";
        afk::LimitSetSample sample;
        bool have_sample = false;
        if (!opt.group_files.empty()) {
            afk::GroupPresentation group =
                afk::parse_group_json(read_file(opt.group_files.at(0)));
            afk::SampleConfig sc;
            sc.threads = thread_count(opt);
            sample = afk::limit_set_sample(group, opt.depth,
                                           afk::HalfSpacePoint{afk::cplx{0, 0}, 1.0}, sc);
            have_sample = true;
        }

        stage = "certificate";
        afk::CertifyConfig cc;
        cc.C_epstein = opt.c_epstein;
        cc.C_K = opt.c_koebe;
        afk::Certificate cert =
            afk::assemble_certificate(u, alpha, patch, have_sample ? &sample : nullptr, cc);
        write_file((dir / "certificate.json").string(),
                   with_hash_json(afk::certificate_to_json(cert), hash));
        if (have_sample) {
            std::vector<afk::ChartCircle> circles{
                {afk::BoundaryPoint::finite(afk::cplx{0, 0}), cert.R, {255, 0, 0}}};
            render_sample(sample, opt, hash, "certify", circles);
        }
        std::cout << "verdict " << afk::verdict_name(cert.verdict) << " R " << cert.R
                  << std::endl;
        return 0;
    } catch (const afk::SolverFailure& e) {
        std::cerr << "certify failed at stage " << stage << ": " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "certify failed at stage " << stage << ": " << e.what() << "\n";
        return kExitInput;
    }
}

int cmd_experiment(const Options& opt) {
    const std::string hash = config_hash(opt, "experiment");
    std::vector<afk::GroupPresentation> groups;
    for (const std::string& file : opt.group_files) {
        groups.push_back(afk::parse_group_json(read_file(file)));
        if (groups.back().label.empty()) {
            groups.back().label = std::filesystem::path(file).stem().string();
        }
    }
    afk::BarrierConfig config;
    config.depth = opt.depth;
    config.sample.threads = thread_count(opt);
    std::vector<afk::BarrierRow> rows = afk::barrier_experiment(groups, config);
    const std::filesystem::path dir(opt.out_dir);
    write_file((dir / "experiment.csv").string(),
               with_hash_comment_csv(afk::barrier_to_csv(rows), hash));
    for (std::size_t k = 0; k < groups.size(); ++k) {
        afk::SampleConfig sc;
        sc.threads = thread_count(opt);
        afk::LimitSetSample sample = afk::limit_set_sample(
            groups[k], config.depth, afk::HalfSpacePoint{afk::cplx{0, 0}, 1.0}, sc);
        render_sample(sample, opt, hash, "experiment_" + std::to_string(k));
    }
    for (const afk::BarrierRow& row : rows) {
        std::cout << row.label << " empty_radius " << row.empty_radius << " hausdorff "
                  << row.hausdorff_prev << std::endl;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"almost-Fuchsian certificate toolkit"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--depth", opt.depth, "reduced-word length bound");
        cmd->add_option("--grid", opt.grid, "grid size (odd)");
        cmd->add_option("--tol", opt.tol, "solver tolerance");
        cmd->add_option("--c-epstein", opt.c_epstein, "Jacobian lower-bound constant");
        cmd->add_option("--c-koebe", opt.c_koebe, "distance-comparison constant");
        cmd->add_option("--out", opt.out_dir, "output directory");
        cmd->add_option("--threads", opt.threads, "worker threads (env AFK_THREADS fallback)");
        cmd->add_option("--image-size", opt.image_size, "render size in pixels");
        cmd->add_option("--seed", opt.seed, "random seed (reserved, outputs deterministic)");
    };

    CLI::App* limit = app.add_subcommand("limit-set", "sample and render a limit set");
    limit->add_option("--group", opt.group_files, "group JSON file")->required();
    add_common(limit);

    CLI::App* solve = app.add_subcommand("solve", "solve for the conformal factor");
    solve->add_option("--alpha", opt.alpha_file, "differential JSON file")->required();
    add_common(solve);

    CLI::App* certify = app.add_subcommand("certify", "full certificate pipeline");
    certify->add_option("--group", opt.group_files, "group JSON file (optional)");
    certify->add_option("--alpha", opt.alpha_file, "differential JSON file");
    add_common(certify);

    CLI::App* experiment = app.add_subcommand("experiment", "empty-ball family experiment");
    experiment->add_option("--group", opt.group_files, "group JSON files (repeatable)")
        ->required();
    add_common(experiment);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        std::filesystem::create_directories(opt.out_dir);
        if (limit->parsed()) return cmd_limit_set(opt);
        if (solve->parsed()) return cmd_solve(opt);
        if (certify->parsed()) return cmd_certify(opt);
        if (experiment->parsed()) return cmd_experiment(opt);
    } catch (const afk::SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
