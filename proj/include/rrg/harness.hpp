#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "rrg/iprstats.hpp"
#include "rrg/spectra.hpp"

namespace rrg::harness {

struct Cell {
    std::size_t n = 0;
    std::size_t z = 0;
    /// 0 selects default_graph_count(n), or the config-wide `graphs` value.
    std::size_t graphs = 0;
    /// Use every connected z-regular graph on n vertices instead of random samples.
    bool exhaustive = false;
};

/// 100 for n ≤ 2000, 20 above.
std::size_t default_graph_count(std::size_t n);

struct RunConfig {
    std::vector<Cell> cells;
    std::size_t graphs = 0;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::filesystem::path out = "rrg_out";
    std::size_t eig_bins = 50;
    std::size_t ipr_bins = iprstats::kDefaultIprBins;
    double ipr_min = iprstats::kDefaultIprMin;
    double ipr_max = iprstats::kDefaultIprMax;
    bool dump_eigenvectors = false;
    bool verify_sphere = false;
    std::vector<std::size_t> verify_n{3, 4, 5, 6, 7, 8};
    spectra::EigenMethod eigensolver = spectra::EigenMethod::ql;

    /// Graph count used for a cell (ignored for exhaustive cells).
    std::size_t graphs_for(const Cell& c) const;

    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

/// Flat `key = value` lines; `#` starts a comment; `cell = n,z[,N_G][,exhaustive]`
/// may repeat. Throws ConfigError with the offending line number.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

struct GraphRecord {
    std::uint64_t seed = 0;
    std::size_t pairing_restarts = 0;
    std::size_t connectivity_retries = 0;
    std::vector<double> eigenvalues;
    iprstats::GraphIprSummary summary;
    std::vector<iprstats::LocalizedMode> localized;
};

struct CellResult {
    Cell cell;
    /// Empty on success; otherwise the error that aborted the cell.
    std::string error;
    std::vector<GraphRecord> graphs;
    std::optional<iprstats::EnsembleIprStats> stats;
    double mu1 = 0.0;
    double mu2 = 0.0;

    bool ok() const { return error.empty(); }
};

struct VerificationEntry {
    std::string name;
    std::size_t n = 0;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct VerificationReport {
    std::vector<VerificationEntry> entries;

    bool all_pass() const;
    std::string text() const;
    std::string json() const;
};

struct OutputRecord {
    RunConfig config;
    std::vector<CellResult> cells;
    std::optional<VerificationReport> verification;

    bool all_ok() const;
    const CellResult* find(std::size_t n, std::size_t z) const;
};

/// Runs every cell, writes the per-cell CSVs, ensemble_summary.csv,
/// metadata.json and manifest.json under cfg.out. A failing cell is removed
/// from disk, recorded in the manifest, and does not affect other cells.
OutputRecord run_ensemble(const RunConfig& cfg);

/// Same computation without touching the filesystem.
OutputRecord compute_ensemble(const RunConfig& cfg);

/// Rebuilds a record from a finished run directory.
OutputRecord load_record(const std::filesystem::path& dir);

/// Figure ids: 2, 3, 5, 6, 7, 8, 9, 10. Returns the files written under dest.
/// Throws InvalidArgument for an unknown id and Error naming the figure and
/// the missing input when the record lacks it.
std::vector<std::filesystem::path> emit_figure_data(const OutputRecord& record, const std::string& figure,
                                                    const std::filesystem::path& dest);

inline constexpr std::uint64_t kVerifySeed = 20240601;
inline constexpr std::size_t kVerifySamples = 200000;

/// Sphere-module identity suite for each n in n_list.
VerificationReport verify_analytics(const std::vector<std::size_t>& n_list, std::size_t workers = 1);

/// SHA-256 of a file, lowercase hex.
std::string sha256_file(const std::filesystem::path& path);

/// Writes manifest.json listing every other regular file under dir.
void write_manifest(const std::filesystem::path& dir, const OutputRecord& record);

/// Recomputes the file list of an existing manifest.json, keeping its other fields.
void refresh_manifest(const std::filesystem::path& dir);

}  // namespace rrg::harness
