// awl1 -- build, query and analyze asymmetric-LSH indexes for
// nearest-neighbor search under per-query weighted Manhattan distances.
//
// Exit codes: 0 success, 1 I/O failure, 2 validation/usage error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "awl1/core.hpp"
#include "awl1/errors.hpp"
#include "awl1/eval.hpp"
#include "awl1/hash.hpp"
#include "awl1/index.hpp"
#include "awl1/io.hpp"
#include "awl1/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;

awl1::HashVariant make_variant(const std::string& name, std::optional<double> window,
                               std::uint32_t steps) {
    if (name == "theta") {
        if (window) throw std::invalid_argument("--window applies to the l2 variant only");
        return awl1::HashVariant::theta();
    }
    return awl1::HashVariant::l2(window ? *window : awl1::default_window(steps));
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    // No seed given: draw one and print it so the run can be reproduced.
    const std::uint64_t drawn = std::random_device{}();
    std::cerr << "seed not given; using seed=" << drawn << "\n";
    return drawn;
}

struct BuildArgs {
    std::string data_path;
    std::string out_path;
    std::string variant;
    double lower = 0.0;
    double upper = 0.0;
    double t = 0.0;
    std::optional<double> window;
    std::optional<std::uint32_t> num_hashes;
    std::optional<std::uint32_t> num_tables;
    std::optional<double> p1;
    std::optional<double> p2;
    std::optional<std::uint64_t> seed;
};

int run_build(const BuildArgs& args) {
    const auto data = awl1::load_dataset(args.data_path);
    if (data.empty()) throw std::invalid_argument("dataset file has no points");

    awl1::IndexParams params;
    params.grid = awl1::QuantizationGrid::create(args.lower, args.upper, args.t);
    params.dim = static_cast<std::uint32_t>(data[0].dim());
    params.variant = make_variant(args.variant, args.window, params.grid.steps);
    params.seed = resolve_seed(args.seed);

    double exponent = std::numeric_limits<double>::quiet_NaN();
    if (args.num_hashes && args.num_tables) {
        params.num_hashes = *args.num_hashes;
        params.num_tables = *args.num_tables;
        if (args.p1 || args.p2) {
            throw std::invalid_argument("give either --k/--L or --p1/--p2, not both");
        }
    } else if (args.p1 && args.p2) {
        const auto chosen = awl1::select_params(data.size(), *args.p1, *args.p2);
        params.num_hashes = chosen.num_hashes;
        params.num_tables = chosen.num_tables;
        exponent = awl1::rho(*args.p1, *args.p2);
    } else {
        throw std::invalid_argument("give either both --k and --L, or both --p1 and --p2");
    }

    const auto start = std::chrono::steady_clock::now();
    const awl1::Index index = awl1::Index::build(data, params);
    const auto stop = std::chrono::steady_clock::now();
    index.save(args.out_path);

    std::cout << "n=" << data.size() << " d=" << params.dim << " M=" << params.grid.steps
              << " K=" << params.num_hashes << " L=" << params.num_tables
              << " rho=" << (std::isnan(exponent) ? "n/a" : awl1::format_double(exponent))
              << " build_ms="
              << awl1::format_double(
                     std::chrono::duration<double, std::milli>(stop - start).count())
              << "\n";
    return kExitOk;
}

struct QueryArgs {
    std::string index_path;
    std::string queries_path;
    std::optional<double> r1;
    std::optional<double> r2;
    bool top1 = false;
    std::uint32_t budget = 0;
};

int run_query(const QueryArgs& args) {
    const awl1::Index index = awl1::Index::load(args.index_path);
    const auto queries = awl1::load_queries(args.queries_path);
    if (queries.empty()) throw std::invalid_argument("query file has no queries");

    const bool radius_mode = args.r1.has_value() || args.r2.has_value();
    if (radius_mode == args.top1) {
        throw std::invalid_argument("choose one mode: --r1/--r2 or --top1 --budget");
    }
    if (radius_mode && (!args.r1 || !args.r2)) {
        throw std::invalid_argument("radius mode needs both --r1 and --r2");
    }
    if (args.top1 && args.budget == 0) {
        throw std::invalid_argument("--top1 needs a positive --budget");
    }

    for (const auto& [w, q] : queries) {
        if (radius_mode) {
            const auto id = index.query_near(q, w, *args.r1, *args.r2);
            if (id) {
                const double dist = awl1::weighted_manhattan(index.real_point(*id), q, w);
                std::cout << *id << " " << awl1::format_double(dist) << "\n";
            } else {
                std::cout << "NONE\n";
            }
        } else {
            const auto hit = index.query_top1(q, w, args.budget);
            if (hit) {
                std::cout << hit->first << " " << awl1::format_double(hit->second) << "\n";
            } else {
                std::cout << "NONE\n";
            }
        }
    }
    return kExitOk;
}

struct ProbeArgs {
    std::string variant;
    std::uint32_t steps = 0;
    std::uint32_t dim = 0;
    std::string weights;
    std::optional<double> window;
    double rmin = 0.0;
    double rmax = 0.0;
    std::uint32_t num_steps = 0;
    std::uint32_t simulate = 0;
    std::optional<std::uint64_t> seed;
};

// Greedy nearest realizable weighted grid distance: builds per-coordinate
// displacements in {0..steps} whose weighted sum approaches the target.
double nearest_realizable(double target, const awl1::WeightVector& w, std::uint32_t steps,
                          awl1::GridPoint& o, awl1::GridPoint& q) {
    const std::size_t d = w.dim();
    o.coords.assign(d, 0);
    q.coords.assign(d, 0);
    std::vector<std::size_t> order(d);
    for (std::size_t i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(w[a]) > std::abs(w[b]); });
    double remaining = target;
    double achieved = 0.0;
    for (const std::size_t i : order) {
        if (w[i] == 0.0) continue;
        double want = std::round(remaining / w[i]);
        want = std::clamp(want, 0.0, static_cast<double>(steps));
        const auto delta = static_cast<std::uint32_t>(want);
        q.coords[i] = delta;
        remaining -= w[i] * want;
        achieved += w[i] * want;
    }
    return achieved;
}

int run_probe(const ProbeArgs& args) {
    if (!(args.rmin < args.rmax)) throw std::invalid_argument("--rmin must be below --rmax");
    if (args.num_steps < 2) throw std::invalid_argument("--steps must be at least 2");
    const awl1::WeightVector w(awl1::parse_double_list(args.weights));
    if (w.dim() != args.dim) {
        throw std::invalid_argument("--weights must list exactly --d values");
    }
    const awl1::HashVariant variant = make_variant(args.variant, args.window, args.steps);
    const std::uint64_t seed = args.simulate > 0 ? resolve_seed(args.seed) : 0;

    awl1::GridPoint o, q;
    for (std::uint32_t i = 0; i < args.num_steps; ++i) {
        double r = args.rmin + (args.rmax - args.rmin) * i / (args.num_steps - 1);
        if (args.simulate > 0) {
            // Simulation needs an actual point pair; snap r to the nearest
            // distance a pair can realize so both columns describe it.
            r = nearest_realizable(r, w, args.steps, o, q);
            const auto est = awl1::estimate_collision_prob(o, q, w, variant, args.steps, args.dim,
                                                           args.simulate, seed + i);
            std::cout << awl1::format_double(r) << "," << awl1::format_double(est.theoretical)
                      << "," << awl1::format_double(est.empirical) << "\n";
        } else {
            const double p = awl1::collision_prob(variant, r, w, args.steps, args.dim);
            std::cout << awl1::format_double(r) << "," << awl1::format_double(p) << "\n";
        }
    }
    return kExitOk;
}

struct OracleArgs {
    std::string data_path;
    std::string queries_path;
};

int run_oracle(const OracleArgs& args) {
    const auto data = awl1::load_dataset(args.data_path);
    if (data.empty()) throw std::invalid_argument("dataset file has no points");
    const auto queries = awl1::load_queries(args.queries_path);
    if (queries.empty()) throw std::invalid_argument("query file has no queries");
    for (const auto& [w, q] : queries) {
        const auto [id, dist] = awl1::brute_force_nn(data, q, w);
        std::cout << id << " " << awl1::format_double(dist) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymmetric-LSH nearest-neighbor search under per-query weighted "
                 "Manhattan distances"};
    app.require_subcommand(1);

    BuildArgs build_args;
    auto* build = app.add_subcommand("build", "build an index from a dataset file");
    build->add_option("--data", build_args.data_path, "dataset CSV, one point per line")
        ->required();
    build->add_option("--out", build_args.out_path, "output index file")->required();
    build->add_option("--variant", build_args.variant, "hash variant: l2 or theta")
        ->required()
        ->check(CLI::IsMember({"l2", "theta"}));
    build->add_option("--ml", build_args.lower, "lower bound of the data box")->required();
    build->add_option("--mu", build_args.upper, "upper bound of the data box")->required();
    build->add_option("--t", build_args.t, "grid resolution (steps = floor((mu-ml)*t))")
        ->required();
    build->add_option("--window", build_args.window,
                      "l2 bucket width (default 4*sqrt(steps))");
    build->add_option("--k", build_args.num_hashes, "hashes per table");
    build->add_option("--L", build_args.num_tables, "number of tables");
    build->add_option("--p1", build_args.p1, "near collision probability for parameter selection");
    build->add_option("--p2", build_args.p2, "far collision probability for parameter selection");
    build->add_option("--seed", build_args.seed, "build seed (random if omitted, printed)");

    QueryArgs query_args;
    auto* query = app.add_subcommand("query", "run queries against a saved index");
    query->add_option("--index", query_args.index_path, "index file")->required();
    query->add_option("--queries", query_args.queries_path,
                      "query CSV: d weights then d coordinates per line")
        ->required();
    query->add_option("--r1", query_args.r1, "near radius (box space)");
    query->add_option("--r2", query_args.r2, "far radius (box space)");
    query->add_flag("--top1", query_args.top1, "return the best candidate instead");
    query->add_option("--budget", query_args.budget, "candidate budget for --top1");

    ProbeArgs probe_args;
    auto* probe = app.add_subcommand("probe", "emit collision probability curves as CSV");
    probe->add_option("--variant", probe_args.variant, "hash variant: l2 or theta")
        ->required()
        ->check(CLI::IsMember({"l2", "theta"}));
    probe->add_option("--m", probe_args.steps, "grid steps")->required();
    probe->add_option("--d", probe_args.dim, "dimension")->required();
    probe->add_option("--weights", probe_args.weights, "comma-separated weight vector")
        ->required();
    probe->add_option("--window", probe_args.window, "l2 bucket width");
    probe->add_option("--rmin", probe_args.rmin, "smallest distance")->required();
    probe->add_option("--rmax", probe_args.rmax, "largest distance")->required();
    probe->add_option("--steps", probe_args.num_steps, "number of CSV rows")->required();
    probe->add_option("--simulate", probe_args.simulate,
                      "add an empirical column from this many sampled functions");
    probe->add_option("--seed", probe_args.seed, "simulation seed");

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "exact brute-force answers for a query file");
    oracle->add_option("--data", oracle_args.data_path, "dataset CSV")->required();
    oracle->add_option("--queries", oracle_args.queries_path, "query CSV")->required();

    try {
        app.parse(argc, argv);
        if (build->parsed()) return run_build(build_args);
        if (query->parsed()) return run_query(query_args);
        if (probe->parsed()) return run_probe(probe_args);
        if (oracle->parsed()) return run_oracle(oracle_args);
        return kExitValidation;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    } catch (const awl1::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
