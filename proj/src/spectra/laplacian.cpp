#include <string>

#include "rrg/error.hpp"
#include "rrg/spectra.hpp"

namespace rrg::spectra {

LaplacianMatrix::LaplacianMatrix(std::size_t n, std::size_t z, std::vector<double> entries)
    : n_(n), z_(z), entries_(std::move(entries)) {
    if (entries_.size() != n * n) throw InvalidArgument("Laplacian entries must be n*n");
    const double diag = static_cast<double>(z);
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = entries_[i * n + j];
            row += v;
            if (v != entries_[j * n + i]) throw InvalidArgument("Laplacian is not symmetric");
            if (i == j ? v != diag : (v != 0.0 && v != -1.0)) {
                throw InvalidArgument("Laplacian entry (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") is not of the form zI - A");
            }
        }
        if (row != 0.0) throw InvalidArgument("Laplacian row " + std::to_string(i) + " does not sum to zero");
    }
}

LaplacianMatrix laplacian(const graphgen::RegularGraph& g) {
    const std::size_t n = g.order();
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        e[i * n + i] = static_cast<double>(g.degree());
        for (auto j : g.neighbors(i)) e[i * n + j] = -1.0;
    }
    return LaplacianMatrix(n, g.degree(), std::move(e));
}

}  // namespace rrg::spectra
