#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "internal.hpp"
#include "rrg/csv.hpp"
#include "rrg/error.hpp"

namespace rrg::harness {
namespace fs = std::filesystem;
namespace {

[[noreturn]] void missing(const std::string& figure, const std::string& what) {
    throw Error("figure " + figure + ": missing " + what);
}

std::vector<const CellResult*> ok_cells(const OutputRecord& rec, const std::string& figure) {
    std::vector<const CellResult*> out;
    for (const auto& c : rec.cells) {
        if (c.ok() && c.stats) out.push_back(&c);
    }
    if (out.empty()) missing(figure, "ensemble statistics (no successful cell in the record)");
    return out;
}

std::string cell_tag(const CellResult& c) { return "n" + std::to_string(c.cell.n) + "_z" + std::to_string(c.cell.z); }

std::vector<iprstats::GraphIprSummary> summaries(const CellResult& c) {
    std::vector<iprstats::GraphIprSummary> s;
    for (const auto& g : c.graphs) s.push_back(g.summary);
    return s;
}

class Writer {
public:
    Writer(const fs::path& dest, std::vector<fs::path>& written) : dest_(dest), written_(written) {}

    std::ofstream open(const std::string& name) {
        fs::create_directories(dest_);
        written_.push_back(dest_ / name);
        std::ofstream out(written_.back());
        if (!out) throw Error("cannot write " + written_.back().string());
        return out;
    }

private:
    fs::path dest_;
    std::vector<fs::path>& written_;
};

void figure2(const OutputRecord& rec, Writer& w) {
    for (const auto* c : ok_cells(rec, "2")) {
        if (c->cell.z < 2) continue;
        std::vector<std::vector<double>> spectra;
        for (const auto& g : c->graphs) {
            if (g.eigenvalues.empty()) missing("2", "eigenvalues for " + cell_tag(*c));
            spectra.push_back(g.eigenvalues);
        }
        const auto h = spectra::eigenvalue_histogram(spectra, c->cell.z, rec.config.eig_bins);
        const auto km = spectra::kesten_mckay_bin_masses(h, c->cell.z);
        auto out = w.open("fig2_" + cell_tag(*c) + ".csv");
        csv_row(out, "bin_center", "bin_lo", "bin_hi", "empirical_mass", "kesten_mckay_mass", "zero_mode_mass");
        for (std::size_t b = 0; b < h.bins(); ++b) {
            csv_row(out, h.center(b), h.edges[b], h.edges[b + 1], h.masses[b], km[b], h.zero_mode_mass);
        }
    }
}

void figure3(const OutputRecord& rec, Writer& w) {
    const auto cells = ok_cells(rec, "3");
    auto fits = w.open("fig3_fits.csv");
    csv_row(fits, "n", "z", "amplitude", "mean", "sigma", "rss", "skewness", "fit_error");
    const auto& cfg = rec.config;
    for (const auto* c : cells) {
        const auto s = summaries(*c);
        const auto h = iprstats::ipr_histogram(s, cfg.ipr_bins, cfg.ipr_min, cfg.ipr_max);
        std::optional<iprstats::GaussianFit> fit;
        std::string error;
        try {
            fit = iprstats::gaussian_fit(h);
        } catch (const FitError& e) {
            error = e.what();
        }
        const double nan = std::nan("");
        double skew = nan;
        try {
            skew = iprstats::histogram_skewness(h);
        } catch (const InvalidArgument&) {
        }
        if (fit) {
            csv_row(fits, c->cell.n, c->cell.z, fit->amplitude, fit->mean, fit->sigma, fit->rss, skew, "");
        } else {
            csv_row(fits, c->cell.n, c->cell.z, nan, nan, nan, nan, skew, error);
        }
        auto out = w.open("fig3_" + cell_tag(*c) + ".csv");
        csv_row(out, "bin_center", "mass", "density", "fit_density");
        for (std::size_t b = 0; b < h.bins(); ++b) {
            double model = nan;
            if (fit) {
                const double u = (h.center(b) - fit->mean) / fit->sigma;
                model = fit->amplitude / (fit->sigma * std::sqrt(2.0 * std::numbers::pi)) * std::exp(-0.5 * u * u);
            }
            csv_row(out, h.center(b), h.masses[b], h.masses[b] / h.width(b), model);
        }
    }
}

void figure5(const OutputRecord& rec, Writer& w) {
    const auto cells = ok_cells(rec, "5");
    auto out = w.open("fig5.csv");
    csv_row(out, "n", "z", "N_G", "mean_ipr", "std_ipr", "mu1_exact");
    for (const auto* c : cells) {
        const auto& s = *c->stats;
        csv_row(out, s.n, s.z, s.graphs, s.mean_ipr, s.std_ipr, c->mu1);
    }
}

void figure6(const OutputRecord& rec, Writer& w) {
    const auto cells = ok_cells(rec, "6");
    auto out = w.open("fig6.csv");
    csv_row(out, "n", "z", "N_G", "delta1", "delta1_error", "n_delta1");
    for (const auto* c : cells) {
        const auto& s = *c->stats;
        const double err = s.std_ipr / std::sqrt(static_cast<double>(s.graphs)) / c->mu1;
        csv_row(out, s.n, s.z, s.graphs, s.delta1, err, static_cast<double>(s.n) * s.delta1);
    }
}

void figure7(const OutputRecord& rec, Writer& w) {
    const auto cells = ok_cells(rec, "7");
    auto out = w.open("fig7.csv");
    csv_row(out, "n", "z", "N_G", "mean_var", "std_var", "mu2_exact");
    for (const auto* c : cells) {
        const auto& s = *c->stats;
        csv_row(out, s.n, s.z, s.graphs, s.mean_var, s.std_var, c->mu2);
    }
}

void figure8(const OutputRecord& rec, Writer& w) {
    const auto cells = ok_cells(rec, "8");
    auto out = w.open("fig8.csv");
    csv_row(out, "n", "z", "N_G", "delta2", "abs_delta2");
    for (const auto* c : cells) {
        const auto& s = *c->stats;
        csv_row(out, s.n, s.z, s.graphs, s.delta2, std::fabs(s.delta2));
    }
}

void figure9(const OutputRecord& rec, Writer& w) {
    std::vector<const CellResult*> cubic;
    for (const auto* c : ok_cells(rec, "9")) {
        if (c->cell.z == 3) cubic.push_back(c);
    }
    if (cubic.empty()) missing("9", "a z=3 cell");
    auto out = w.open("fig9.csv");
    csv_row(out, "n", "N_G", "mean_ipr", "std_ipr", "mu1_exact", "mean_var", "std_var", "mu2_exact");
    for (const auto* c : cubic) {
        const auto& s = *c->stats;
        csv_row(out, s.n, s.graphs, s.mean_ipr, s.std_ipr, c->mu1, s.mean_var, s.std_var, c->mu2);
    }
}

void figure10(const OutputRecord& rec, Writer& w) {
    const CellResult* cell = rec.find(16, 3);
    if (cell == nullptr) missing("10", "the n=16, z=3 cell");
    auto modes = w.open("fig10_modes.csv");
    csv_row(modes, "graph_index", "eigenvalue", "ipr");
    std::vector<std::pair<double, std::size_t>> maxima;
    for (std::size_t g = 0; g < cell->graphs.size(); ++g) {
        const auto& s = cell->graphs[g].summary;
        for (std::size_t m = 0; m < s.mode_iprs.size(); ++m) csv_row(modes, g, s.mode_eigenvalues[m], s.mode_iprs[m]);
        maxima.emplace_back(s.max_ipr, g);
    }
    auto sorted = maxima;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    auto out = w.open("fig10_max.csv");
    csv_row(out, "graph_index", "max_ipr", "sorted_rank", "sorted_max_ipr");
    for (std::size_t g = 0; g < maxima.size(); ++g) csv_row(out, g, maxima[g].first, g, sorted[g].first);
}

}  // namespace

std::vector<fs::path> emit_figure_data(const OutputRecord& record, const std::string& figure, const fs::path& dest) {
    std::vector<fs::path> written;
    Writer w(dest, written);
    if (figure == "2") figure2(record, w);
    else if (figure == "3") figure3(record, w);
    else if (figure == "5") figure5(record, w);
    else if (figure == "6") figure6(record, w);
    else if (figure == "7") figure7(record, w);
    else if (figure == "8") figure8(record, w);
    else if (figure == "9") figure9(record, w);
    else if (figure == "10") figure10(record, w);
    else throw InvalidArgument("unknown figure '" + figure + "'; expected one of 2, 3, 5, 6, 7, 8, 9, 10");
    return written;
}

}  // namespace rrg::harness
