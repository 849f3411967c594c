#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rrg/csv.hpp"
#include "rrg/error.hpp"
#include "rrg/graphgen.hpp"
#include "rrg/harness.hpp"
#include "rrg/iprstats.hpp"
#include "rrg/spectra.hpp"

namespace fs = std::filesystem;
using namespace rrg;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInvalidConfig = 2;

std::ostream* open_or_stdout(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return &std::cout;
    file.open(path);
    if (!file) throw Error("cannot write " + path);
    return &file;
}

graphgen::RegularGraph load_or_generate(const std::string& graph_file, std::size_t n, std::size_t z,
                                        std::uint64_t& seed) {
    if (!graph_file.empty()) {
        std::ifstream in(graph_file);
        if (!in) throw ConfigError("cannot open graph file " + graph_file);
        auto s = graphgen::read_graph(in);
        seed = s.seed;
        return std::move(s.graph);
    }
    return graphgen::generate_regular({n, z, seed});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random regular graph Laplacian eigenvector IPR toolkit"};
    app.require_subcommand(1);

    std::size_t n = 0, z = 0, workers = 1;
    std::uint64_t seed = 1;
    std::string out, config, graph_file;
    std::optional<std::string> solver;
    const auto solver_names = CLI::IsMember({"ql", "divide_and_conquer"});

    auto* gen = app.add_subcommand("generate", "Sample a random z-regular graph");
    gen->add_option("--n", n, "Vertex count")->required();
    gen->add_option("--z", z, "Degree")->required();
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--out", out, "Output file (default stdout)");

    bool with_vectors = false;
    auto* spec = app.add_subcommand("spectrum", "Laplacian eigenvalues and per-mode IPR of one graph");
    spec->add_option("--n", n, "Vertex count");
    spec->add_option("--z", z, "Degree");
    spec->add_option("--seed", seed, "RNG seed");
    spec->add_option("--graph", graph_file, "Read the graph from a file instead of sampling");
    spec->add_option("--out", out, "Output CSV (default stdout)");
    spec->add_flag("--vectors", with_vectors, "Append eigenvector components to each row");
    spec->add_option("--eigensolver", solver, "ql (default) or divide_and_conquer")->check(solver_names);

    std::optional<std::uint64_t> seed_override;
    std::optional<std::size_t> workers_override;
    std::optional<std::string> out_override;
    auto* ens = app.add_subcommand("ensemble", "Run an ensemble sweep described by a config file");
    ens->add_option("--config", config, "Config file")->required();
    ens->add_option("--seed", seed_override, "Override the master seed");
    ens->add_option("--workers", workers_override, "Override the worker count");
    ens->add_option("--out", out_override, "Override the output directory");
    ens->add_option("--eigensolver", solver, "Override the eigensolver")->check(solver_names);

    std::vector<std::size_t> verify_n{2, 3, 4, 5, 6, 7, 8, 10, 20, 100};
    bool json = false;
    auto* ver = app.add_subcommand("sphere-verify", "Check the subsphere moment identities");
    ver->add_option("--n", verify_n, "Orders to check")->delimiter(',');
    ver->add_option("--workers", workers, "Monte Carlo threads");
    ver->add_option("--out", out, "Directory for verification.txt and verification.json");
    ver->add_flag("--json", json, "Print JSON instead of text");

    bool ipr_stats = false;
    auto* enu = app.add_subcommand("enumerate", "List all connected z-regular graphs on n vertices");
    enu->add_option("--n", n, "Vertex count")->required();
    enu->add_option("--z", z, "Degree")->required();
    enu->add_option("--out", out, "Write the graphs to this file");
    enu->add_flag("--ipr", ipr_stats, "Diagonalize every graph and report IPR census statistics");

    std::string figure, dest;
    auto* fig = app.add_subcommand("figure-data", "Emit plot data for a figure from a finished run");
    fig->add_option("--out", out, "Run directory")->required();
    fig->add_option("--figure", figure, "Figure id: 2, 3, 5, 6, 7, 8, 9, 10 or all")->required();
    fig->add_option("--dest", dest, "Destination directory (default <run>/figures)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalidConfig;
    }

    try {
        if (*gen) {
            std::ofstream file;
            graphgen::write_graph(*open_or_stdout(out, file), graphgen::generate_regular({n, z, seed}), seed);
            return kOk;
        }
        if (*spec) {
            if (graph_file.empty() && (n == 0 || z == 0)) throw ConfigError("spectrum needs --graph or --n and --z");
            const auto g = load_or_generate(graph_file, n, z, seed);
            const auto method = solver ? spectra::parse_eigen_method(*solver) : spectra::EigenMethod::ql;
            const auto d = spectra::eigendecompose(spectra::laplacian(g), spectra::kDefaultEigenTolerance, method);
            const std::size_t zero = spectra::zero_mode_index(d);
            std::ofstream file;
            std::ostream& os = *open_or_stdout(out, file);
            os << "graph_index,mode_index,eigenvalue,ipr";
            if (with_vectors) {
                for (std::size_t i = 0; i < d.n; ++i) os << ",x" << i;
            }
            os << '\n';
            for (std::size_t k = 0; k < d.n; ++k) {
                os << 0 << ',' << k << ',' << format_real(d.eigenvalues[k]) << ','
                   << format_real(iprstats::ipr(d.vector(k)));
                if (with_vectors) {
                    for (double x : d.vector(k)) os << ',' << format_real(x);
                }
                os << '\n';
            }
            std::cerr << "zero mode index " << zero << ", residual " << spectra::residual_norm(spectra::laplacian(g), d)
                      << '\n';
            return kOk;
        }
        if (*ens) {
            auto cfg = harness::load_config(config);
            if (seed_override) cfg.seed = *seed_override;
            if (workers_override) cfg.workers = *workers_override;
            if (out_override) cfg.out = *out_override;
            if (solver) cfg.eigensolver = spectra::parse_eigen_method(*solver);
            cfg.validate();
            const auto rec = harness::run_ensemble(cfg);
            for (const auto& c : rec.cells) {
                if (c.ok()) {
                    const auto& s = *c.stats;
                    std::cout << "n=" << s.n << " z=" << s.z << " N_G=" << s.graphs << " mean_ipr=" << s.mean_ipr
                              << " mu1=" << c.mu1 << " delta1=" << s.delta1 << " mean_var=" << s.mean_var
                              << " mu2=" << c.mu2 << '\n';
                } else {
                    std::cout << "n=" << c.cell.n << " z=" << c.cell.z << " FAILED: " << c.error << '\n';
                }
            }
            if (rec.verification) std::cout << rec.verification->text();
            std::cout << "output written to " << cfg.out.string() << '\n';
            return rec.all_ok() ? kOk : kVerificationFailed;
        }
        if (*ver) {
            const auto report = harness::verify_analytics(verify_n, workers);
            std::cout << (json ? report.json() : report.text());
            if (!out.empty()) {
                fs::create_directories(out);
                std::ofstream(fs::path(out) / "verification.txt") << report.text();
                std::ofstream(fs::path(out) / "verification.json") << report.json();
            }
            return report.all_pass() ? kOk : kVerificationFailed;
        }
        if (*enu) {
            const auto r = graphgen::enumerate_connected_regular(n, z);
            std::cout << "n=" << n << " z=" << z << " connected graphs: " << r.count << " (search nodes "
                      << r.search_nodes << ")\n";
            if (!out.empty()) {
                std::ofstream file(out);
                for (const auto& g : r.graphs) graphgen::write_graph(file, g, 0);
            }
            if (ipr_stats) {
                std::vector<iprstats::GraphIprSummary> summaries;
                std::size_t at_max = 0, with_two_site = 0;
                for (const auto& g : r.graphs) {
                    const auto d = spectra::eigendecompose(spectra::laplacian(g));
                    summaries.push_back(iprstats::graph_ipr_summary(d));
                    if (summaries.back().max_ipr >= static_cast<double>(n) / 2.0 - 1e-8) ++at_max;
                    for (const auto& m : iprstats::detect_localized(d).modes) {
                        if (m.localized && m.support == 2) {
                            ++with_two_site;
                            break;
                        }
                    }
                }
                const auto s = iprstats::ensemble_stats(summaries, 0.0, 0.0);
                std::cout << "mean_ipr=" << s.mean_ipr << " (+-" << s.std_ipr << ")  mean_var=" << s.mean_var
                          << " (+-" << s.std_var << ")\n"
                          << "graphs with max IPR = n/2: " << at_max << " ("
                          << 100.0 * static_cast<double>(at_max) / static_cast<double>(r.count) << "%)\n"
                          << "graphs with an exact two-site mode: " << with_two_site << '\n';
            }
            return kOk;
        }
        if (*fig) {
            const auto rec = harness::load_record(out);
            const fs::path target = dest.empty() ? fs::path(out) / "figures" : fs::path(dest);
            const std::vector<std::string> ids =
                figure == "all" ? std::vector<std::string>{"2", "3", "5", "6", "7", "8", "9", "10"}
                                : std::vector<std::string>{figure};
            int status = kOk;
            for (const auto& id : ids) {
                try {
                    for (const auto& p : harness::emit_figure_data(rec, id, target)) std::cout << p.string() << '\n';
                } catch (const Error& e) {
                    if (figure != "all") throw;
                    std::cerr << e.what() << '\n';
                    status = kVerificationFailed;
                }
            }
            const auto run = fs::weakly_canonical(out);
            const auto rel = fs::weakly_canonical(target).lexically_relative(run);
            if (!rel.empty() && *rel.begin() != "..") harness::refresh_manifest(out);
            return status;
        }
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const InvalidSpec& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerificationFailed;
    }
    return kOk;
}
