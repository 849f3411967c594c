#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rrg/error.hpp"
#include "rrg/graphgen.hpp"
#include "rrg/harness.hpp"

namespace rrg::harness {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, sep);) out.push_back(trim(part));
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

template <typename T>
T parse_number(const std::string& s, std::size_t line, const std::string& key) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        fail(line, "invalid value '" + s + "' for " + key);
    }
    return v;
}

bool parse_bool(const std::string& s, std::size_t line, const std::string& key) {
    std::string v = s;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail(line, "invalid boolean '" + s + "' for " + key);
}

Cell parse_cell(const std::string& value, std::size_t line) {
    const auto parts = split(value, ',');
    if (parts.size() < 2 || parts.size() > 4) fail(line, "cell must be n,z[,N_G][,exhaustive]");
    Cell c;
    c.n = parse_number<std::size_t>(parts[0], line, "cell n");
    c.z = parse_number<std::size_t>(parts[1], line, "cell z");
    for (std::size_t k = 2; k < parts.size(); ++k) {
        if (parts[k] == "exhaustive") {
            c.exhaustive = true;
        } else {
            c.graphs = parse_number<std::size_t>(parts[k], line, "cell N_G");
            if (c.graphs == 0) fail(line, "cell N_G must be at least 1");
        }
    }
    return c;
}

}  // namespace

std::size_t default_graph_count(std::size_t n) { return n <= 2000 ? 100 : 20; }

std::size_t RunConfig::graphs_for(const Cell& c) const {
    if (c.graphs > 0) return c.graphs;
    if (graphs > 0) return graphs;
    return default_graph_count(c.n);
}

void RunConfig::validate() const {
    if (cells.empty()) throw ConfigError("config has no cells");
    for (const auto& c : cells) {
        try {
            graphgen::validate(graphgen::GraphSpec{c.n, c.z, 0});
        } catch (const InvalidSpec& e) {
            throw ConfigError("cell n=" + std::to_string(c.n) + " z=" + std::to_string(c.z) + ": " + e.what());
        }
        if (c.n < 2) throw ConfigError("cell n=" + std::to_string(c.n) + " has no non-zero modes");
    }
    if (workers == 0) throw ConfigError("workers must be at least 1");
    if (eig_bins == 0 || ipr_bins == 0) throw ConfigError("histogram bins must be at least 1");
    if (!(ipr_max > ipr_min)) throw ConfigError("ipr_max must exceed ipr_min");
    if (out.empty()) throw ConfigError("out directory is empty");
    for (auto n : verify_n) {
        if (n < 2) throw ConfigError("verify_n entries must be at least 2");
    }
}

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    bool verify_n_set = false;
    std::size_t lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "cell") {
            cfg.cells.push_back(parse_cell(value, lineno));
        } else if (key == "graphs") {
            cfg.graphs = parse_number<std::size_t>(value, lineno, key);
            if (cfg.graphs == 0) fail(lineno, "graphs must be at least 1");
        } else if (key == "seed") {
            cfg.seed = parse_number<std::uint64_t>(value, lineno, key);
        } else if (key == "workers") {
            cfg.workers = parse_number<std::size_t>(value, lineno, key);
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "eig_bins") {
            cfg.eig_bins = parse_number<std::size_t>(value, lineno, key);
        } else if (key == "ipr_bins") {
            cfg.ipr_bins = parse_number<std::size_t>(value, lineno, key);
        } else if (key == "ipr_min") {
            cfg.ipr_min = parse_number<double>(value, lineno, key);
        } else if (key == "ipr_max") {
            cfg.ipr_max = parse_number<double>(value, lineno, key);
        } else if (key == "dump_eigenvectors") {
            cfg.dump_eigenvectors = parse_bool(value, lineno, key);
        } else if (key == "verify_sphere") {
            cfg.verify_sphere = parse_bool(value, lineno, key);
        } else if (key == "eigensolver") {
            try {
                cfg.eigensolver = spectra::parse_eigen_method(value);
            } catch (const InvalidArgument& e) {
                fail(lineno, e.what());
            }
        } else if (key == "verify_n") {
            if (!verify_n_set) cfg.verify_n.clear();
            verify_n_set = true;
            for (const auto& part : split(value, ',')) cfg.verify_n.push_back(parse_number<std::size_t>(part, lineno, key));
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    return parse_config(in);
}

}  // namespace rrg::harness
