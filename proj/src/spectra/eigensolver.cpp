#include <algorithm>
#include <cmath>
#include <string>

#include "rrg/error.hpp"
#include "rrg/spectra.hpp"

extern "C" {
// LAPACK (gfortran ABI: trailing hidden lengths for character arguments).
void dsyev_(const char* jobz, const char* uplo, const int* n, double* a, const int* lda, double* w, double* work,
            const int* lwork, int* info, std::size_t jobz_len, std::size_t uplo_len);
void dsyevd_(const char* jobz, const char* uplo, const int* n, double* a, const int* lda, double* w, double* work,
             const int* lwork, int* iwork, const int* liwork, int* info, std::size_t jobz_len, std::size_t uplo_len);
}

namespace rrg::spectra {
namespace {

std::vector<double> run_dsyev(char jobz, std::vector<double>& a, std::size_t order) {
    const int n = static_cast<int>(order);
    std::vector<double> w(order);
    if (order == 0) return w;
    int info = 0;
    int lwork = -1;
    double query = 0.0;
    dsyev_(&jobz, "U", &n, a.data(), &n, w.data(), &query, &lwork, &info, 1, 1);
    lwork = static_cast<int>(query);
    std::vector<double> work(static_cast<std::size_t>(lwork));
    dsyev_(&jobz, "U", &n, a.data(), &n, w.data(), work.data(), &lwork, &info, 1, 1);
    if (info < 0) throw NumericError("dsyev rejected argument " + std::to_string(-info));
    if (info > 0) {
        throw NumericError("QL iteration failed to converge: " + std::to_string(info) +
                           " off-diagonal elements unconverged, first failing index " +
                           std::to_string(order - static_cast<std::size_t>(info)));
    }
    return w;
}

std::vector<double> run_dsyevd(std::vector<double>& a, std::size_t order) {
    const int n = static_cast<int>(order);
    std::vector<double> w(order);
    if (order == 0) return w;
    int info = 0, lwork = -1, liwork = -1, iquery = 0;
    double query = 0.0;
    dsyevd_("V", "U", &n, a.data(), &n, w.data(), &query, &lwork, &iquery, &liwork, &info, 1, 1);
    lwork = static_cast<int>(query);
    liwork = iquery;
    std::vector<double> work(static_cast<std::size_t>(lwork));
    std::vector<int> iwork(static_cast<std::size_t>(liwork));
    dsyevd_("V", "U", &n, a.data(), &n, w.data(), work.data(), &lwork, iwork.data(), &liwork, &info, 1, 1);
    if (info < 0) throw NumericError("dsyevd rejected argument " + std::to_string(-info));
    if (info > 0) {
        throw NumericError("divide-and-conquer failed to converge at index " + std::to_string(info - 1));
    }
    return w;
}

double frobenius(const LaplacianMatrix& L) {
    double s = 0.0;
    for (double v : L.entries()) s += v * v;
    return std::sqrt(s);
}

}  // namespace

void normalize_signs(EigenDecomposition& d) {
    for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
        double* v = d.vectors.data() + k * d.n;
        std::size_t arg = 0;
        for (std::size_t i = 1; i < d.n; ++i) {
            if (std::fabs(v[i]) > std::fabs(v[arg])) arg = i;
        }
        if (v[arg] < 0.0) std::transform(v, v + d.n, v, [](double x) { return -x; });
    }
}

std::string_view eigen_method_name(EigenMethod m) {
    return m == EigenMethod::ql ? "ql" : "divide_and_conquer";
}

EigenMethod parse_eigen_method(std::string_view name) {
    if (name == "ql") return EigenMethod::ql;
    if (name == "divide_and_conquer") return EigenMethod::divide_and_conquer;
    throw InvalidArgument("unknown eigensolver '" + std::string(name) + "' (expected ql or divide_and_conquer)");
}

EigenDecomposition eigendecompose(const LaplacianMatrix& L, double tol, EigenMethod method) {
    if (!(tol > 0.0)) throw InvalidArgument("eigen tolerance must be positive");
    EigenDecomposition d;
    d.n = L.order();
    d.degree = L.degree();
    // Column-major storage of a symmetric matrix equals its row-major storage,
    // and LAPACK leaves eigenvector k in column k, i.e. contiguous.
    d.vectors.assign(L.entries().begin(), L.entries().end());
    d.eigenvalues =
        method == EigenMethod::ql ? run_dsyev('V', d.vectors, d.n) : run_dsyevd(d.vectors, d.n);
    normalize_signs(d);
    return d;
}

std::vector<double> eigenvalues(const LaplacianMatrix& L) {
    std::vector<double> a(L.entries().begin(), L.entries().end());
    return run_dsyev('N', a, L.order());
}

double residual_norm(const LaplacianMatrix& L, const EigenDecomposition& d) {
    const std::size_t n = d.n;
    double worst = 0.0;
    std::vector<double> r(n);
    for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
        auto v = d.vector(k);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = -d.eigenvalues[k] * v[i];
            for (std::size_t j = 0; j < n; ++j) acc += L(i, j) * v[j];
            s += acc * acc;
        }
        worst = std::max(worst, std::sqrt(s));
    }
    const double norm = frobenius(L);
    return norm > 0.0 ? worst / norm : worst;
}

double orthonormality_defect(const EigenDecomposition& d) {
    const std::size_t m = d.eigenvalues.size();
    double worst = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        auto va = d.vector(a);
        for (std::size_t b = a; b < m; ++b) {
            auto vb = d.vector(b);
            double dot = 0.0;
            for (std::size_t i = 0; i < d.n; ++i) dot += va[i] * vb[i];
            worst = std::max(worst, std::fabs(dot - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double reconstruction_error(const LaplacianMatrix& L, const EigenDecomposition& d) {
    const std::size_t n = d.n;
    // t[i][k] = v_k[i] so that both operands of each dot product are contiguous.
    std::vector<double> t(n * n), scaled(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            t[i * n + k] = d.vectors[k * n + i];
            scaled[i * n + k] = d.vectors[k * n + i] * d.eigenvalues[k];
        }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* si = scaled.data() + i * n;
        for (std::size_t j = i; j < n; ++j) {
            const double* tj = t.data() + j * n;
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += si[k] * tj[k];
            worst = std::max(worst, std::fabs(acc - L(i, j)));
        }
    }
    return worst;
}

std::size_t zero_mode_index(std::span<const double> eigenvalues, double tol) {
    double scale = 1.0;
    for (double e : eigenvalues) scale = std::max(scale, std::fabs(e));
    const double cut = tol * scale;
    std::size_t count = 0, index = 0;
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
        if (std::fabs(eigenvalues[k]) < cut) {
            if (count++ == 0) index = k;
        }
    }
    if (count != 1) {
        throw DisconnectedGraph("expected one zero eigenvalue, found " + std::to_string(count) +
                                " below " + std::to_string(cut));
    }
    return index;
}

std::size_t zero_mode_index(const EigenDecomposition& d, double tol) {
    const std::size_t k = zero_mode_index(d.eigenvalues, tol);
    double sum = 0.0;
    for (double x : d.vector(k)) sum += x;
    const double overlap = std::fabs(sum) / std::sqrt(static_cast<double>(d.n));
    if (!(overlap > 1.0 - 1e-8)) {
        throw NumericError("zero mode overlaps the uniform vector only to " + std::to_string(overlap));
    }
    return k;
}

}  // namespace rrg::spectra
