#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rrg/graphgen.hpp"

namespace rrg::spectra {

/// Dense symmetric Laplacian L = z·I − A, row-major.
class LaplacianMatrix {
public:
    /// Checks symmetry, zero row sums, diagonal z and off-diagonals in {0, −1}.
    LaplacianMatrix(std::size_t n, std::size_t z, std::vector<double> entries);

    std::size_t order() const noexcept { return n_; }
    std::size_t degree() const noexcept { return z_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    std::span<const double> entries() const noexcept { return entries_; }

private:
    std::size_t n_, z_;
    std::vector<double> entries_;
};

LaplacianMatrix laplacian(const graphgen::RegularGraph& g);

/// Ascending eigenvalues with orthonormal eigenvectors, eigenvector k stored
/// contiguously. Each eigenvector's first component of largest magnitude is
/// positive. Inside a degenerate eigenspace the basis is whatever the solver
/// produced; quantities such as the per-mode IPR are basis-dependent there.
struct EigenDecomposition {
    std::size_t n = 0;
    std::size_t degree = 0;
    std::vector<double> eigenvalues;
    std::vector<double> vectors;

    std::span<const double> vector(std::size_t k) const { return {vectors.data() + k * n, n}; }
};

inline constexpr double kDefaultEigenTolerance = 1e-10;

/// Solver for the tridiagonal stage. Both start from the same Householder
/// reduction; divide-and-conquer (LAPACK dsyevd) is several times faster
/// when eigenvectors are wanted at n in the thousands.
enum class EigenMethod { ql, divide_and_conquer };

std::string_view eigen_method_name(EigenMethod m);
/// Accepts "ql" and "divide_and_conquer"; throws InvalidArgument otherwise.
EigenMethod parse_eigen_method(std::string_view name);

/// Householder tridiagonalization followed by implicit-shift QL/QR with
/// eigenvector accumulation (LAPACK dsyev), or divide-and-conquer when
/// requested. Throws NumericError naming the first unconverged index.
EigenDecomposition eigendecompose(const LaplacianMatrix& L, double tol = kDefaultEigenTolerance,
                                  EigenMethod method = EigenMethod::ql);

/// Same reduction without eigenvectors.
std::vector<double> eigenvalues(const LaplacianMatrix& L);

/// Flips each eigenvector so its first component of largest magnitude is positive.
void normalize_signs(EigenDecomposition& d);

/// max_k ‖L v_k − ε_k v_k‖₂ / ‖L‖_F
double residual_norm(const LaplacianMatrix& L, const EigenDecomposition& d);

/// max_{j,k} |v_j·v_k − δ_jk|
double orthonormality_defect(const EigenDecomposition& d);

/// max_{i,j} |(V diag(ε) Vᵀ)_ij − L_ij|
double reconstruction_error(const LaplacianMatrix& L, const EigenDecomposition& d);

/// Index of the unique eigenvalue with |ε| < tol·max(1, max|ε|). Its vector
/// must overlap the uniform vector to within 1e-8. Throws DisconnectedGraph
/// if the kernel is not one-dimensional, NumericError if the overlap fails.
std::size_t zero_mode_index(const EigenDecomposition& d, double tol = kDefaultEigenTolerance);

/// Same test on a bare ascending spectrum.
std::size_t zero_mode_index(std::span<const double> eigenvalues, double tol = kDefaultEigenTolerance);

// ---------------------------------------------------------------------------
// Kesten-McKay law for the Laplacian of a random z-regular graph

/// Continuum band [z − 2√(z−1), z + 2√(z−1)].
std::pair<double, double> kesten_mckay_band(std::size_t z);

/// Continuum density; zero outside the band. The 1/n weight at ε = 0 is
/// not part of this function. Requires z >= 2.
double kesten_mckay_density(double eps, std::size_t z);

/// Integral of the continuum density over [lo, hi].
double kesten_mckay_mass(double lo, double hi, std::size_t z);

struct SpectralDensityHistogram {
    std::vector<double> edges;
    /// Fraction of the n−1 non-zero modes per bin, averaged over graphs.
    std::vector<double> masses;
    std::size_t graphs = 0;
    /// Weight 1/n of the zero mode, reported apart from the binned continuum.
    double zero_mode_mass = 0.0;

    std::size_t bins() const noexcept { return masses.size(); }
    double center(std::size_t b) const { return 0.5 * (edges[b] + edges[b + 1]); }
};

/// Per-graph normalized histogram of the non-zero eigenvalues, then averaged
/// over graphs. The range defaults to the Kesten-McKay band of z.
SpectralDensityHistogram eigenvalue_histogram(std::span<const std::vector<double>> spectra, std::size_t z,
                                              std::size_t bins,
                                              std::optional<std::pair<double, double>> range = std::nullopt);

SpectralDensityHistogram eigenvalue_histogram(std::span<const EigenDecomposition> decomps, std::size_t bins,
                                              std::optional<std::pair<double, double>> range = std::nullopt);

/// Kesten-McKay mass of each bin of h.
std::vector<double> kesten_mckay_bin_masses(const SpectralDensityHistogram& h, std::size_t z);

}  // namespace rrg::spectra
