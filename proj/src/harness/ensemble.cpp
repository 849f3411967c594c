#include <atomic>
#include <chrono>
#include <condition_variable>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "internal.hpp"
#include "rrg/csv.hpp"
#include "rrg/error.hpp"
#include "rrg/graphgen.hpp"
#include "rrg/rng.hpp"
#include "rrg/sphere.hpp"

namespace rrg::harness {
namespace fs = std::filesystem;
using nlohmann::json;

namespace detail {

std::string cell_dir_name(const Cell& c) {
    return "cell_n" + std::to_string(c.n) + "_z" + std::to_string(c.z) + (c.exhaustive ? "_exhaustive" : "");
}

json config_to_json(const RunConfig& cfg) {
    json cells = json::array();
    for (const auto& c : cfg.cells) {
        cells.push_back({{"n", c.n}, {"z", c.z}, {"graphs", cfg.graphs_for(c)}, {"exhaustive", c.exhaustive}});
    }
    return {{"cells", cells},
            {"graphs", cfg.graphs},
            {"seed", cfg.seed},
            {"workers", cfg.workers},
            {"out", cfg.out.string()},
            {"eig_bins", cfg.eig_bins},
            {"ipr_bins", cfg.ipr_bins},
            {"ipr_min", cfg.ipr_min},
            {"ipr_max", cfg.ipr_max},
            {"dump_eigenvectors", cfg.dump_eigenvectors},
            {"verify_sphere", cfg.verify_sphere},
            {"verify_n", cfg.verify_n},
            {"eigensolver", std::string(spectra::eigen_method_name(cfg.eigensolver))}};
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    for (const auto& c : j.at("cells")) {
        cfg.cells.push_back({c.at("n").get<std::size_t>(), c.at("z").get<std::size_t>(),
                             c.at("graphs").get<std::size_t>(), c.at("exhaustive").get<bool>()});
    }
    cfg.graphs = j.at("graphs").get<std::size_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.workers = j.at("workers").get<std::size_t>();
    cfg.out = j.at("out").get<std::string>();
    cfg.eig_bins = j.at("eig_bins").get<std::size_t>();
    cfg.ipr_bins = j.at("ipr_bins").get<std::size_t>();
    cfg.ipr_min = j.at("ipr_min").get<double>();
    cfg.ipr_max = j.at("ipr_max").get<double>();
    cfg.dump_eigenvectors = j.at("dump_eigenvectors").get<bool>();
    cfg.verify_sphere = j.at("verify_sphere").get<bool>();
    cfg.verify_n = j.at("verify_n").get<std::vector<std::size_t>>();
    cfg.eigensolver = spectra::parse_eigen_method(j.value("eigensolver", std::string("ql")));
    return cfg;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> row;
        std::stringstream ss(line);
        for (std::string field; std::getline(ss, field, ',');) row.push_back(field);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

namespace {

struct Item {
    GraphRecord record;
    std::vector<double> vectors;
    std::string error;
};

// Receives finished graphs in index order on the collector thread.
class CellSink {
public:
    virtual ~CellSink() = default;
    virtual void graph(std::size_t index, const GraphRecord& r, const std::vector<double>& vectors) = 0;
};

Item process_graph(const Cell& cell, std::size_t index, std::uint64_t master,
                   const graphgen::RegularGraph* given, bool keep_vectors, spectra::EigenMethod method) {
    Item item;
    auto& r = item.record;
    std::optional<graphgen::RegularGraph> sampled;
    if (given == nullptr) {
        r.seed = derive_seed(master, {cell.n, cell.z, index});
        auto rep = graphgen::generate_regular_report({cell.n, cell.z, r.seed});
        r.pairing_restarts = rep.pairing_restarts;
        r.connectivity_retries = rep.connectivity_retries;
        sampled.emplace(std::move(rep.graph));
        given = &*sampled;
    }
    auto d = spectra::eigendecompose(spectra::laplacian(*given), spectra::kDefaultEigenTolerance, method);
    r.summary = iprstats::graph_ipr_summary(d);
    r.localized = iprstats::detect_localized(d).modes;
    r.eigenvalues = d.eigenvalues;
    if (keep_vectors) item.vectors = std::move(d.vectors);
    return item;
}

CellResult run_cell(const RunConfig& cfg, const Cell& cell, CellSink* sink) {
    CellResult result;
    result.cell = cell;
    result.mu1 = sphere::nearest_double(sphere::mu1_exact(cell.n));
    result.mu2 = sphere::nearest_double(sphere::mu2_exact(cell.n));

    std::vector<graphgen::RegularGraph> exhaustive;
    if (cell.exhaustive) exhaustive = graphgen::enumerate_connected_regular(cell.n, cell.z).graphs;
    const std::size_t count = cell.exhaustive ? exhaustive.size() : cfg.graphs_for(cell);
    result.cell.graphs = count;
    if (count == 0) throw Error("cell has no graphs");

    std::vector<std::optional<Item>> slots(count);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    const bool keep_vectors = cfg.dump_eigenvectors && sink != nullptr;

    auto work = [&] {
        for (std::size_t i; !stop && (i = next.fetch_add(1)) < count;) {
            Item item;
            try {
                item = process_graph(cell, i, cfg.seed, cell.exhaustive ? &exhaustive[i] : nullptr, keep_vectors,
                                     cfg.eigensolver);
            } catch (const std::exception& e) {
                item.error = "graph " + std::to_string(i) + ": " + e.what();
            }
            std::lock_guard lock(mu);
            slots[i] = std::move(item);
            cv.notify_all();
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(cfg.workers, count); ++w) pool.emplace_back(work);

    std::string error;
    for (std::size_t i = 0; i < count && error.empty(); ++i) {
        Item item;
        {
            std::unique_lock lock(mu);
            cv.wait(lock, [&] { return slots[i].has_value(); });
            item = std::move(*slots[i]);
            slots[i].reset();
        }
        if (!item.error.empty()) {
            error = item.error;
            break;
        }
        try {
            if (sink) sink->graph(i, item.record, item.vectors);
        } catch (const std::exception& e) {
            error = e.what();
        }
        result.graphs.push_back(std::move(item.record));
    }
    stop = true;
    for (auto& t : pool) t.join();
    if (!error.empty()) throw Error(error);

    std::vector<iprstats::GraphIprSummary> summaries;
    summaries.reserve(result.graphs.size());
    for (const auto& g : result.graphs) summaries.push_back(g.summary);
    result.stats = iprstats::ensemble_stats(summaries, result.mu1, result.mu2);
    return result;
}

class FileSink : public CellSink {
public:
    FileSink(const fs::path& dir, bool dump) : dir_(dir), dump_(dump) {
        fs::create_directories(dir_);
        modes_.open(dir_ / "ipr_per_mode.csv");
        eigs_.open(dir_ / "eigenvalues.csv");
        graphs_.open(dir_ / "graphs.csv");
        localized_.open(dir_ / "localized.csv");
        csv_row(modes_, "graph_index", "mode_index", "eigenvalue", "ipr");
        csv_row(eigs_, "graph_index", "mode_index", "eigenvalue");
        csv_row(graphs_, "graph_index", "seed", "pairing_restarts", "connectivity_retries");
        csv_row(localized_, "graph_index", "mode_index", "eigenvalue", "ipr", "support", "balanced", "localized");
        if (dump_) fs::create_directories(dir_ / "eigenvectors");
    }

    void graph(std::size_t index, const GraphRecord& r, const std::vector<double>& vectors) override {
        const std::size_t zero = spectra::zero_mode_index(r.eigenvalues);
        for (std::size_t k = 0, m = 0; k < r.eigenvalues.size(); ++k) {
            csv_row(eigs_, index, k, r.eigenvalues[k]);
            if (k == zero) continue;
            csv_row(modes_, index, k, r.eigenvalues[k], r.summary.mode_iprs[m++]);
        }
        csv_row(graphs_, index, r.seed, r.pairing_restarts, r.connectivity_retries);
        for (const auto& l : r.localized) {
            csv_row(localized_, index, l.mode_index, l.eigenvalue, l.ipr, l.support, l.balanced ? 1 : 0,
                    l.localized ? 1 : 0);
        }
        if (dump_) {
            std::ofstream out(dir_ / "eigenvectors" / ("graph_" + std::to_string(index) + ".csv"));
            const std::size_t n = r.eigenvalues.size();
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t i = 0; i < n; ++i) out << (i ? "," : "") << format_real(vectors[k * n + i]);
                out << '\n';
            }
            if (!out) throw Error("failed writing eigenvectors for graph " + std::to_string(index));
        }
    }

    void close() {
        for (auto* f : {&modes_, &eigs_, &graphs_, &localized_}) {
            f->close();
            if (f->fail()) throw Error("failed writing files in " + dir_.string());
        }
    }

private:
    fs::path dir_;
    bool dump_;
    std::ofstream modes_, eigs_, graphs_, localized_;
};

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

void write_summary(const fs::path& path, const OutputRecord& rec) {
    std::ofstream out(path);
    csv_row(out, "n", "z", "N_G", "mean_ipr", "std_ipr", "mean_var", "mu1_exact", "mu2_exact", "delta1", "delta2");
    for (const auto& c : rec.cells) {
        if (!c.ok()) continue;
        const auto& s = *c.stats;
        csv_row(out, s.n, s.z, s.graphs, s.mean_ipr, s.std_ipr, s.mean_var, c.mu1, c.mu2, s.delta1, s.delta2);
    }
}

}  // namespace

bool OutputRecord::all_ok() const {
    for (const auto& c : cells) {
        if (!c.ok()) return false;
    }
    return !verification || verification->all_pass();
}

const CellResult* OutputRecord::find(std::size_t n, std::size_t z) const {
    for (const auto& c : cells) {
        if (c.cell.n == n && c.cell.z == z && c.ok()) return &c;
    }
    return nullptr;
}

OutputRecord compute_ensemble(const RunConfig& cfg) {
    cfg.validate();
    OutputRecord rec;
    rec.config = cfg;
    for (const auto& cell : cfg.cells) {
        try {
            rec.cells.push_back(run_cell(cfg, cell, nullptr));
        } catch (const std::exception& e) {
            CellResult failed;
            failed.cell = cell;
            failed.error = e.what();
            rec.cells.push_back(std::move(failed));
        }
    }
    if (cfg.verify_sphere) rec.verification = verify_analytics(cfg.verify_n, cfg.workers);
    return rec;
}

OutputRecord run_ensemble(const RunConfig& cfg) {
    cfg.validate();
    OutputRecord rec;
    rec.config = cfg;
    const std::string started = utc_now();
    fs::create_directories(cfg.out);
    for (const auto& cell : cfg.cells) {
        const fs::path dir = cfg.out / detail::cell_dir_name(cell);
        fs::remove_all(dir);
        try {
            FileSink sink(dir, cfg.dump_eigenvectors);
            rec.cells.push_back(run_cell(cfg, cell, &sink));
            sink.close();
        } catch (const std::exception& e) {
            std::error_code ec;
            fs::remove_all(dir, ec);
            CellResult failed;
            failed.cell = cell;
            failed.error = e.what();
            rec.cells.push_back(std::move(failed));
        }
    }
    write_summary(cfg.out / "ensemble_summary.csv", rec);
    if (cfg.verify_sphere) {
        rec.verification = verify_analytics(cfg.verify_n, cfg.workers);
        std::ofstream(cfg.out / "verification.txt") << rec.verification->text();
        std::ofstream(cfg.out / "verification.json") << rec.verification->json();
    }
    const json meta = {{"config", detail::config_to_json(cfg)},
                       {"rng_algorithm", std::string(kRngAlgorithm)},
                       {"seed_derivation", "splitmix64 fold of (master_seed, n, z, graph_index)"},
                       {"eigensolver", cfg.eigensolver == spectra::EigenMethod::ql ? "LAPACK dsyev (implicit QL/QR)"
                                                                                : "LAPACK dsyevd (divide and conquer)"},
                       {"started_at", started},
                       {"finished_at", utc_now()}};
    std::ofstream(cfg.out / "metadata.json") << meta.dump(2) << '\n';
    write_manifest(cfg.out, rec);
    return rec;
}

OutputRecord load_record(const fs::path& dir) {
    std::ifstream meta_in(dir / "metadata.json");
    if (!meta_in) throw Error("no metadata.json in " + dir.string());
    const json meta = json::parse(meta_in);
    OutputRecord rec;
    rec.config = detail::config_from_json(meta.at("config"));
    rec.config.out = dir;

    json errors = json::object();
    if (std::ifstream man_in(dir / "manifest.json"); man_in) errors = json::parse(man_in).value("cell_errors", json::object());

    for (const auto& cell : rec.config.cells) {
        CellResult c;
        c.cell = cell;
        c.mu1 = sphere::nearest_double(sphere::mu1_exact(cell.n));
        c.mu2 = sphere::nearest_double(sphere::mu2_exact(cell.n));
        const std::string name = detail::cell_dir_name(cell);
        const fs::path cdir = dir / name;
        if (errors.contains(name)) {
            c.error = errors[name].get<std::string>();
            rec.cells.push_back(std::move(c));
            continue;
        }
        for (const auto& row : detail::read_csv(cdir / "graphs.csv")) {
            GraphRecord g;
            g.seed = std::stoull(row.at(1));
            g.pairing_restarts = std::stoul(row.at(2));
            g.connectivity_retries = std::stoul(row.at(3));
            g.summary.n = cell.n;
            g.summary.z = cell.z;
            c.graphs.push_back(std::move(g));
        }
        for (const auto& row : detail::read_csv(cdir / "eigenvalues.csv")) {
            c.graphs.at(std::stoul(row.at(0))).eigenvalues.push_back(std::stod(row.at(2)));
        }
        for (const auto& row : detail::read_csv(cdir / "ipr_per_mode.csv")) {
            auto& s = c.graphs.at(std::stoul(row.at(0))).summary;
            s.mode_eigenvalues.push_back(std::stod(row.at(2)));
            s.mode_iprs.push_back(std::stod(row.at(3)));
        }
        for (const auto& row : detail::read_csv(cdir / "localized.csv")) {
            iprstats::LocalizedMode m;
            m.mode_index = std::stoul(row.at(1));
            m.eigenvalue = std::stod(row.at(2));
            m.ipr = std::stod(row.at(3));
            m.support = std::stoul(row.at(4));
            m.balanced = row.at(5) == "1";
            m.equal_magnitude = true;
            m.localized = row.at(6) == "1";
            c.graphs.at(std::stoul(row.at(0))).localized.push_back(m);
        }
        std::vector<iprstats::GraphIprSummary> summaries;
        for (auto& g : c.graphs) {
            auto& s = g.summary;
            const double m = static_cast<double>(s.mode_iprs.size());
            double sum = 0.0, ss = 0.0;
            for (double v : s.mode_iprs) sum += v;
            s.mean_ipr = sum / m;
            for (double v : s.mode_iprs) ss += (v - s.mean_ipr) * (v - s.mean_ipr);
            s.variance = ss / m;
            s.max_ipr = *std::max_element(s.mode_iprs.begin(), s.mode_iprs.end());
            s.zero_mode_eigenvalue = g.eigenvalues.at(spectra::zero_mode_index(g.eigenvalues));
            summaries.push_back(s);
        }
        c.cell.graphs = c.graphs.size();
        c.stats = iprstats::ensemble_stats(summaries, c.mu1, c.mu2);
        rec.cells.push_back(std::move(c));
    }
    return rec;
}

}  // namespace rrg::harness
