#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "rrg/csv.hpp"
#include "rrg/error.hpp"
#include "rrg/harness.hpp"
#include "rrg/sphere.hpp"

namespace rrg::harness {
namespace {

constexpr std::size_t kMaxDirectSumOrder = 40;
constexpr std::size_t kMaxRotationOrder = 200;

class Builder {
public:
    void add(std::string name, std::size_t n, std::string expected, std::string actual, bool pass) {
        report.entries.push_back({std::move(name), n, std::move(expected), std::move(actual), pass});
    }
    void exact(const std::string& name, std::size_t n, const mpq_class& expected, const mpq_class& actual) {
        add(name, n, expected.get_str(), actual.get_str(), expected == actual);
    }
    void close(const std::string& name, std::size_t n, double expected, double actual, double rel) {
        const bool pass = std::fabs(actual - expected) <= rel * std::max(1.0, std::fabs(expected));
        add(name, n, format_real(expected), format_real(actual), pass);
    }
    void guarded(const std::string& name, std::size_t n, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(name, n, "no error", e.what(), false);
        }
    }

    VerificationReport report;
};

mpq_class fraction(std::size_t num, std::size_t den) {
    mpq_class q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double w = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::fabs(a[i] - b[i]));
    return w;
}

void rotation_checks(Builder& b, std::size_t n) {
    const auto q = sphere::q_matrix(n);
    double orth = 0.0, rows = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            row += q[i * n + j];
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) dot += q[i * n + k] * q[j * n + k];
            orth = std::max(orth, std::fabs(dot - (i == j ? 1.0 : 0.0)));
        }
        rows = std::max(rows, std::fabs(row - (i == n - 1 ? std::sqrt(static_cast<double>(n)) : 0.0)));
    }
    b.add("Q orthogonality max|QQ^T - I|", n, "< 1e-12", format_real(orth), orth < 1e-12);
    b.add("Q row sums max|sum_j Q_ij - sqrt(n) delta_in|", n, "< 1e-12", format_real(rows), rows < 1e-12);
    const double tensor = max_abs_diff(q, sphere::q_matrix_tensor(n));
    b.add("Q tensor form vs componentwise", n, "< 1e-12", format_real(tensor), tensor < 1e-12);

    const double scale = static_cast<double>(n) + std::sqrt(static_cast<double>(n));
    double worst = 0.0;
    for (unsigned s : {1u, 2u, 3u, 4u, 6u, 8u}) {
        const auto c = sphere::q_power_coeffs(s, n);
        for (std::size_t i = 1; i < n; ++i) {
            for (std::size_t j = 1; j <= n; ++j) {
                const double direct = std::pow(sphere::q_component(i, j, n), s);
                const double table = ((s % 2 ? -1.0 : 1.0) + (j == n ? c.alpha : 0.0) + (i == j ? c.beta : 0.0)) /
                                     std::pow(scale, s);
                worst = std::max(worst, std::fabs(direct - table) / std::max(1e-300, std::fabs(direct)));
            }
        }
    }
    b.add("Q power coefficients vs direct powers (relative)", n, "< 1e-10", format_real(worst), worst < 1e-10);
}

void sum_checks(Builder& b, std::size_t n) {
    const auto c = sphere::q_closed_form_sums(n);
    const auto d = sphere::q_direct_sums(n);
    b.close("quartic sum closed form vs direct", n, d.quartic, c.quartic, 1e-10);
    b.close("2-2 sum closed form vs direct", n, d.two_two, c.two_two, 1e-10);
    b.close("eighth-power sum closed form vs direct", n, d.eighth, c.eighth, 1e-10);
    b.close("6-2 sum closed form vs direct", n, d.six_two, c.six_two, 1e-10);
    b.close("mixed sum closed form vs direct", n, d.mixed, c.mixed, 1e-10);
}

void moment_checks(Builder& b, std::size_t n, std::size_t workers) {
    const mpq_class mu1 = sphere::mu1_exact(n), ipr2 = sphere::ipr2_sphere_average_exact(n);
    const mpq_class mu2 = sphere::mu2_exact(n);
    b.exact("ipr2 - mu1^2 = mu2", n, mu2, mpq_class(ipr2 - mu1 * mu1));
    b.exact("Gamma ratio shift 2", n, fraction(4, (n + 1) * (n - 1)), sphere::gamma_half_ratio(n, 2));
    b.exact("Gamma ratio shift 4", n, fraction(16, (n + 5) * (n + 3) * (n + 1) * (n - 1)),
            sphere::gamma_half_ratio(n, 4));
    if (n >= sphere::kExpansionMinOrder && n <= sphere::kExpansionMaxOrder) {
        b.exact("expansion oracle first moment = mu1", n, mu1, sphere::expansion_moment_exact(n, 1));
        b.exact("expansion oracle second moment = ipr2", n, ipr2, sphere::expansion_moment_exact(n, 2));
    }
    if (n <= 1000) {
        const auto mc = sphere::mc_ipr_moments(n, kVerifySamples, kVerifySeed, workers);
        const double m1 = sphere::nearest_double(mu1), m2 = sphere::nearest_double(mu2);
        std::ostringstream exp1, exp2;
        exp1 << format_real(m1) << " +- 3*" << format_real(mc.mean_error);
        exp2 << format_real(m2) << " +- 3*" << format_real(mc.variance_error);
        b.add("Monte Carlo mean vs mu1", n, exp1.str(), format_real(mc.mean),
              std::fabs(mc.mean - m1) <= 3.0 * mc.mean_error + 1e-12);
        b.add("Monte Carlo variance vs mu2", n, exp2.str(), format_real(mc.variance),
              std::fabs(mc.variance - m2) <= 3.0 * mc.variance_error + 1e-12);
    }
}

}  // namespace

bool VerificationReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

std::string VerificationReport::text() const {
    std::ostringstream out;
    std::size_t passed = 0;
    for (const auto& e : entries) {
        out << (e.pass ? "PASS" : "FAIL") << "  n=" << e.n << "  " << e.name << "\n      expected " << e.expected
            << "\n      actual   " << e.actual << '\n';
        passed += e.pass ? 1 : 0;
    }
    out << passed << "/" << entries.size() << " checks passed\n";
    return out.str();
}

std::string VerificationReport::json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : entries) {
        list.push_back({{"name", e.name}, {"n", e.n}, {"expected", e.expected}, {"actual", e.actual}, {"pass", e.pass}});
    }
    return nlohmann::json{{"checks", list}, {"all_pass", all_pass()}}.dump(2) + "\n";
}

VerificationReport verify_analytics(const std::vector<std::size_t>& n_list, std::size_t workers) {
    Builder b;
    for (std::size_t n : n_list) {
        if (n < 2) {
            b.add("order", n, "n >= 2", std::to_string(n), false);
            continue;
        }
        b.guarded("moment identities", n, [&] { moment_checks(b, n, workers); });
        if (n <= kMaxDirectSumOrder) b.guarded("Q sums", n, [&] { sum_checks(b, n); });
        if (n <= kMaxRotationOrder) b.guarded("rotation", n, [&] { rotation_checks(b, n); });
    }
    return b.report;
}

}  // namespace rrg::harness
