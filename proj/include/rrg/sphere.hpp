#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "rrg/rng.hpp"

namespace rrg::sphere {

/// Closest double to q (mpq_get_d truncates instead of rounding).
double nearest_double(const mpq_class& q);

/// rational·(√π)^pi_half_power, rational kept in lowest terms.
struct ExactSphereValue {
    mpq_class rational;
    int pi_half_power = 0;

    bool is_zero() const { return rational == 0; }
    double to_double() const;
    friend bool operator==(const ExactSphereValue& a, const ExactSphereValue& b);
};

ExactSphereValue operator*(const ExactSphereValue& a, const ExactSphereValue& b);
ExactSphereValue operator/(const ExactSphereValue& a, const ExactSphereValue& b);

/// Γ(m/2) for m ≥ 1.
ExactSphereValue gamma_half(unsigned m);

using ExponentVector = std::vector<unsigned>;

/// ∫ x^a dσ over the unit sphere in ℝ^m, m = a.size() ≥ 1.
/// Exactly zero when some a_j is odd; otherwise 2·ΠΓ(b_j)/Γ(Σb_j), b_j = (a_j+1)/2.
ExactSphereValue folland_integral(std::span<const unsigned> a);

/// folland_integral(a) / folland_integral(0): the uniform average of x^a.
mpq_class sphere_average(std::span<const unsigned> a);

/// Γ((n−1)/2) / Γ((n−1)/2 + shift) for shift ∈ {2, 4}, from the Γ recursion.
mpq_class gamma_half_ratio(std::size_t n, unsigned shift);

// ---------------------------------------------------------------------------
// Rotation taking ℘ = (1,…,1)/√n to e_n. Indices are 1-based.

/// Q_ij from the componentwise formula.
double q_component(std::size_t i, std::size_t j, std::size_t n);

/// Row-major Q built as 1 + sinθ(v₂⊗v₁ − v₁⊗v₂) + (cosθ − 1)(v₁⊗v₁ + v₂⊗v₂).
std::vector<double> q_matrix_tensor(std::size_t n);

/// Row-major Q from q_component.
std::vector<double> q_matrix(std::size_t n);

struct QPowerCoeffs {
    unsigned s = 0;
    std::size_t n = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// For i < n: Q_ij^s = [(−1)^s + α_s δ_nj + β_s δ_ij] / (n+√n)^s. s ∈ {1,2,3,4,6,8}.
QPowerCoeffs q_power_coeffs(unsigned s, std::size_t n);

/// Row indices k, l, m range over 1..n−1, column indices over 1..n; primes
/// denote sums over pairwise distinct indices.
struct QSums {
    double quartic = 0.0;   ///< Σ_i Σ_k Q_ki⁴
    double two_two = 0.0;   ///< Σ_i Σ'_{k,l} Q_ki² Q_li²
    double eighth = 0.0;    ///< Σ_k Σ_i Q_ki⁸
    double six_two = 0.0;   ///< Σ'_{k,l} Σ_i Q_ki⁶ Q_li²
    double mixed = 0.0;     ///< Σ'_{k,l,m} Σ'_{i,j} Q_ki³ Q_li Q_kj Q_lj Q_mj²
};

/// Closed forms in n.
QSums q_closed_form_sums(std::size_t n);

/// Direct summation over q_component. The mixed sum is O(n⁵).
QSums q_direct_sums(std::size_t n);

// ---------------------------------------------------------------------------
// IPR moments over the subsphere orthogonal to ℘

/// Mean IPR: 3 − 6/(n+1).
mpq_class mu1_exact(std::size_t n);

/// Mean squared IPR: 9 + 48/(n+1) − 270/(n+3) + 210/(n+5).
mpq_class ipr2_sphere_average_exact(std::size_t n);

/// IPR variance: 24n(n−2)(n−3) / ((n+5)(n+3)(n+1)²).
mpq_class mu2_exact(std::size_t n);

inline constexpr std::size_t kExpansionMinOrder = 3;
inline constexpr std::size_t kExpansionMaxOrder = 8;

/// Average of IPR(Qᵀy)^power over the unit sphere of y ∈ ℝ^{n−1}, obtained by
/// expanding the polynomial over ℚ(√n) and averaging every monomial exactly.
/// power ∈ {1, 2}; throws ResourceError outside 3 ≤ n ≤ 8.
mpq_class expansion_moment_exact(std::size_t n, unsigned power);

/// Uniform point on the subsphere: normals, minus their mean, normalized.
std::vector<double> sample_subsphere(std::size_t n, Rng& rng);

struct McMoments {
    std::size_t n = 0;
    std::size_t samples = 0;
    double mean = 0.0;
    /// Unbiased sample variance.
    double variance = 0.0;
    /// Delete-one jackknife standard errors.
    double mean_error = 0.0;
    double variance_error = 0.0;
};

/// Samples are drawn in fixed-size chunks with per-chunk seeds, so results
/// depend on (n, samples, seed) only, not on the worker count.
McMoments mc_ipr_moments(std::size_t n, std::size_t samples, std::uint64_t seed, std::size_t workers = 1);

}  // namespace rrg::sphere
