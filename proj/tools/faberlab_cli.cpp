// faberlab command-line front-end.
//
// Subcommands:
//   gen      write Faber polynomial coefficient files
//   zeros    write zero sets (JSON) plus a scatter-ready CSV
//   predict  asymptotic-model report (H_n, accumulation set, rate classes)
//   verify   run the acceptance checks; exit 0 iff all pass
//
// Exit codes: 0 ok, 1 failed verify check, 2 usage / bad map spec,
// 3 numeric failure.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "faberlab/asymptotics.hpp"
#include "faberlab/io.hpp"
#include "faberlab/verify.hpp"
#include "faberlab/zeros.hpp"

namespace fs = std::filesystem;
using namespace faberlab;

namespace {

struct RunConfig {
    std::string map_spec;            // path or inline JSON
    std::string degrees = "";        // "a..b" or comma list
    std::string out_dir = ".";
    std::string format = "json";     // json | csv
    std::uint64_t seed = 42;
    double tol = 1e-8;
};

int thread_cap() {
    if (const char* env = std::getenv("FABERLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<int> parse_degrees(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int a = std::stoi(text.substr(0, dots));
        const int b = std::stoi(text.substr(dots + 2));
        for (int n = a; n <= b; ++n) out.push_back(n);
    } else {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    }
    for (int n : out)
        if (n < 0) throw DomainError("degrees must be >= 0");
    return out;
}

json load_map_json(const std::string& spec) {
    std::string text = spec;
    if (!spec.empty() && spec.front() != '{') {
        std::ifstream in(spec);
        if (!in) throw DomainError("cannot open map spec file: " + spec);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return json::parse(text);
}

MapBundle load_bundle(const RunConfig& cfg, int min_truncation = 256) {
    return parse_map_spec(load_map_json(cfg.map_spec),
                          std::max(256, min_truncation));
}

void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << content;
    }
    fs::rename(tmp, path);
}

// Fan a per-degree job out over at most FABERLAB_THREADS workers.
void parallel_over(const std::vector<int>& degrees,
                   const std::function<void(int)>& job) {
    const int workers =
        std::min<int>(thread_cap(), static_cast<int>(degrees.size()));
    if (workers <= 1) {
        for (int n : degrees) job(n);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (size_t i = next++; i < degrees.size(); i = next++)
                job(degrees[i]);
        });
    for (auto& th : pool) th.join();
}

int cmd_gen(const RunConfig& cfg) {
    const auto degrees = parse_degrees(cfg.degrees);
    if (degrees.empty()) {
        std::cerr << "gen: empty degree list\n";
        return 2;
    }
    const int n_max = *std::max_element(degrees.begin(), degrees.end());
    const auto bundle = load_bundle(cfg, n_max + 1);
    const auto seq = faber_sequence(bundle, n_max);
    fs::create_directories(cfg.out_dir);
    parallel_over(degrees, [&](int n) {
        const fs::path p = fs::path(cfg.out_dir) /
                           ("faber_n" + std::to_string(n) + ".json");
        write_atomic(p, polynomial_to_json(seq[n]).dump(2) + "\n");
    });
    return 0;
}

int cmd_zeros(const RunConfig& cfg) {
    const auto degrees = parse_degrees(cfg.degrees);
    if (degrees.empty()) {
        std::cerr << "zeros: empty degree list\n";
        return 2;
    }
    const int n_max = *std::max_element(degrees.begin(), degrees.end());
    const auto bundle = load_bundle(cfg, n_max + 1);
    // wide coefficients: double rounding of high-degree coefficients moves
    // the outer zeros; lemniscates get the closed form directly
    const bool lem = bundle.kind == MapKind::lemniscate;
    std::vector<WideFaberPolynomial> seq;
    if (!lem) seq = faber_sequence_wide(bundle, n_max);
    fs::create_directories(cfg.out_dir);
    std::vector<CountingMeasure> measures(degrees.size());
    bool numeric_fail = false;
    parallel_over(degrees, [&](int n) {
        const size_t idx =
            std::find(degrees.begin(), degrees.end(), n) - degrees.begin();
        if (n < 1) {
            measures[idx].n = n;
            return;
        }
        measures[idx] =
            lem ? find_zeros_lemniscate(bundle.lemniscate_s, n, 1e-13, 600)
                : find_zeros(seq[n], 1e-13, 600);
        if (!measures[idx].converged) numeric_fail = true;
        const fs::path p = fs::path(cfg.out_dir) /
                           ("zeros_n" + std::to_string(n) + ".json");
        write_atomic(p, zeros_to_json(measures[idx]).dump(2) + "\n");
    });
    // scatter CSV, header exactly "n,re,im"
    std::ostringstream csv;
    csv << "n,re,im\n";
    csv.precision(17);
    for (size_t i = 0; i < degrees.size(); ++i)
        for (const auto& z : measures[i].points)
            csv << degrees[i] << "," << z.real() << "," << z.imag() << "\n";
    write_atomic(fs::path(cfg.out_dir) / "zeros.csv", csv.str());
    return numeric_fail ? 3 : 0;
}

int cmd_predict(const RunConfig& cfg) {
    const auto degrees = parse_degrees(cfg.degrees);
    const auto bundle = load_bundle(cfg);
    json report;
    report["map_kind"] = bundle.kind == MapKind::lemniscate ? "lemniscate"
                         : bundle.kind == MapKind::two_corner ? "two_corner"
                                                              : "laurent";
    // per-corner error-rate classes
    json corners = json::array();
    for (const auto& c : bundle.corners) {
        const auto rate = error_rate_class(c);
        corners.push_back(json{{"theta", c.theta},
                               {"lambda", c.lambda},
                               {"z", cplx_to_json(c.z)},
                               {"A", cplx_to_json(c.A)},
                               {"rate_class", rate.text}});
    }
    report["corners"] = corners;

    const auto model = make_interior_model(bundle);
    report["C1"] = model.C1;
    report["leading_pair"] = json::array(
        {model.Lambda1, model.M1});

    // H_n evaluations on a seeded interior grid, plus alpha normalizers
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> grid;
    int guard = 0;
    while (grid.size() < 8 && guard++ < 50000) {
        const cplx z{u(rng), u(rng)};
        bool near_pole = false;
        for (const auto& p : model.poles)
            if (std::abs(z - p) < 0.2) near_pole = true;
        if (!near_pole && is_interior(bundle, z)) grid.push_back(z);
    }
    json per_degree = json::array();
    bool all_H_zero = true;
    for (int n : degrees) {
        json entry;
        entry["n"] = n;
        if (n >= 2)
            entry["normalizer"] = cplx_to_json(interior_normalizer(model, n));
        const auto H = interior_model(model, n);
        json vals = json::array();
        double hmax = 0.0;
        for (const auto& z : grid) {
            const cplx v = H(z);
            hmax = std::max(hmax, std::abs(v));
            vals.push_back(json{{"z", cplx_to_json(z)}, {"H", cplx_to_json(v)}});
        }
        if (hmax > 1e-10) all_H_zero = false;
        entry["H_on_grid"] = vals;
        per_degree.push_back(entry);
    }
    report["models"] = per_degree;

    // accumulation set
    const auto prob = make_accumulation_problem(bundle);
    bool all_rational = true;
    for (bool irr : prob.irrational) all_rational = all_rational && irr == false;
    try {
        if (all_rational) {
            report["accumulation"] =
                points_to_json(accumulation_points_rational(prob, bundle));
        } else if (prob.A_hat.size() == 2) {
            report["accumulation"] =
                locus_to_json(accumulation_locus_u2_irrational(prob, bundle));
        } else {
            report["accumulation"] = json{{"kind", "unsupported"}};
        }
    } catch (const A3Violation& e) {
        report["warning"] = e.what();
    }
    if (bundle.kind == MapKind::lemniscate) {
        if (!degrees.empty() && all_H_zero)
            report["warning"] =
                "H_n vanishes identically off the residue-class subsequence; "
                "see subsequence_model";
        // subsequence model reported alongside H_n for lemniscates
        json sub = json::array();
        for (int n : degrees) {
            const int s = bundle.lemniscate_s;
            const int l = n % s, m = n / s;
            if (l == 0 || m < 1) continue;
            const cplx z{0.5, 0.0};
            const auto sm = lemniscate_subsequence_model(s, l, m, z);
            sub.push_back(json{{"n", n},
                               {"z", cplx_to_json(z)},
                               {"leading", cplx_to_json(sm.leading)},
                               {"correction", cplx_to_json(sm.correction)}});
        }
        report["subsequence_model"] = sub;
    }
    fs::create_directories(cfg.out_dir);
    write_atomic(fs::path(cfg.out_dir) / "predict.json",
                 report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const auto results = run_acceptance_checks(cfg.seed);
    json report = json::array();
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name
                  << " (" << r.detail << ")\n";
        report.push_back(json{{"id", r.id},
                              {"name", r.name},
                              {"pass", r.pass},
                              {"residual", r.residual},
                              {"detail", r.detail}});
        all = all && r.pass;
    }
    fs::create_directories(cfg.out_dir);
    write_atomic(fs::path(cfg.out_dir) / "verify.json",
                 report.dump(2) + "\n");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Faber polynomial asymptotics and zero analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--map", cfg.map_spec, "map spec: JSON file path or inline JSON");
    app.add_option("--n", cfg.degrees, "degrees: comma list or range a..b");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_option("--format", cfg.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", cfg.seed, "random seed for test-point sampling");
    app.add_option("--tol", cfg.tol, "tolerance override");

    auto* gen = app.add_subcommand("gen", "generate Faber coefficients");
    auto* zeros = app.add_subcommand("zeros", "compute polynomial zeros");
    auto* predict = app.add_subcommand("predict", "asymptotic predictions");
    auto* verify = app.add_subcommand("verify", "run acceptance checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(cfg);
        if (zeros->parsed()) return cmd_zeros(cfg);
        if (predict->parsed()) return cmd_predict(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: bad map spec: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
