#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>

#include "rrg/error.hpp"
#include "rrg/sphere.hpp"

namespace rrg::sphere {
namespace {

// a + b·√n with rational a, b.
struct Surd {
    mpq_class a, b;
};

class SurdField {
public:
    explicit SurdField(std::size_t n) : n_(static_cast<unsigned long>(n)) {}

    Surd add(const Surd& x, const Surd& y) const { return {x.a + y.a, x.b + y.b}; }
    Surd mul(const Surd& x, const Surd& y) const { return {x.a * y.a + x.b * y.b * n_, x.a * y.b + x.b * y.a}; }
    Surd rational(const mpq_class& q) const { return {q, 0}; }
    Surd inv_sqrt() const { return {0, mpq_class(1) / n_}; }

private:
    mpq_class n_;
};

// Exponents of y_1..y_{n−1}, four bits each.
using Key = std::uint32_t;
using Poly = std::unordered_map<Key, Surd>;

unsigned exponent(Key k, std::size_t var) { return (k >> (4 * var)) & 0xFu; }

Poly multiply(const SurdField& f, const Poly& p, const Poly& q) {
    Poly out;
    out.reserve(p.size() * 2);
    for (const auto& [kp, cp] : p) {
        for (const auto& [kq, cq] : q) {
            // Degrees stay ≤ 8 < 16, so packed exponents add without carries.
            auto [it, fresh] = out.try_emplace(kp + kq, Surd{});
            it->second = f.add(it->second, f.mul(cp, cq));
        }
    }
    return out;
}

// Exact Q_ki as a Surd, from the componentwise formula with 1/√n = √n/n.
Surd q_exact(const SurdField& f, std::size_t i, std::size_t j, std::size_t n) {
    const long dij = i == j, din = i == n, dnj = j == n;
    const mpq_class nn(static_cast<unsigned long>(n));
    // (1 − √n)/(n − 1)
    const Surd c{mpq_class(1) / (nn - 1), mpq_class(-1) / (nn - 1)};
    const Surd bracket = f.add(f.mul(c, f.rational(1 - din - dnj + nn * dnj * din)), f.rational(din - dnj));
    return f.add(f.rational(dij), f.mul(f.inv_sqrt(), bracket));
}

}  // namespace

mpq_class expansion_moment_exact(std::size_t n, unsigned power) {
    if (n < kExpansionMinOrder || n > kExpansionMaxOrder) {
        throw ResourceError("expansion_moment_exact supports " + std::to_string(kExpansionMinOrder) +
                            " <= n <= " + std::to_string(kExpansionMaxOrder) + ", got n=" + std::to_string(n));
    }
    if (power != 1 && power != 2) throw InvalidArgument("expansion_moment_exact supports power 1 or 2");
    const SurdField f(n);
    const std::size_t vars = n - 1;

    // P(y) = Σ_i x_i⁴ with x = Qᵀy, y_n = 0, so x_i = Σ_{k<n} Q_ki y_k.
    Poly p;
    for (std::size_t i = 1; i <= n; ++i) {
        Poly x;
        for (std::size_t k = 1; k <= vars; ++k) x.emplace(Key{1} << (4 * (k - 1)), q_exact(f, k, i, n));
        const Poly x2 = multiply(f, x, x);
        for (const auto& [k, c] : multiply(f, x2, x2)) {
            auto [it, fresh] = p.try_emplace(k, Surd{});
            it->second = f.add(it->second, c);
        }
    }
    const Poly full = power == 1 ? p : multiply(f, p, p);

    std::map<std::vector<unsigned>, mpq_class> averages;
    Surd total{};
    for (const auto& [k, c] : full) {
        std::vector<unsigned> a(vars);
        bool even = true;
        for (std::size_t v = 0; v < vars; ++v) {
            a[v] = exponent(k, v);
            even = even && a[v] % 2 == 0;
        }
        if (!even) continue;
        // The average depends on the exponent multiset only.
        std::vector<unsigned> sig = a;
        std::sort(sig.begin(), sig.end());
        auto it = averages.find(sig);
        if (it == averages.end()) it = averages.emplace(sig, sphere_average(sig)).first;
        total = f.add(total, f.mul(c, f.rational(it->second)));
    }
    if (total.b != 0) throw NumericError("expansion left an irrational remainder");
    mpq_class scale(static_cast<unsigned long>(n));
    if (power == 2) scale *= scale;
    mpq_class r = total.a * scale;
    r.canonicalize();
    return r;
}

}  // namespace rrg::sphere
