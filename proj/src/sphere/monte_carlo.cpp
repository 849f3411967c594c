#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "rrg/error.hpp"
#include "rrg/sphere.hpp"

namespace rrg::sphere {
namespace {

constexpr std::size_t kChunk = 1u << 14;

}  // namespace

std::vector<double> sample_subsphere(std::size_t n, Rng& rng) {
    if (n < 2) throw InvalidArgument("subsphere needs n >= 2");
    std::vector<double> x(n);
    for (;;) {
        double mean = 0.0;
        for (double& v : x) {
            v = rng.normal();
            mean += v;
        }
        mean /= static_cast<double>(n);
        double norm = 0.0;
        for (double& v : x) {
            v -= mean;
            norm += v * v;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-12) continue;
        for (double& v : x) v /= norm;
        return x;
    }
}

McMoments mc_ipr_moments(std::size_t n, std::size_t samples, std::uint64_t seed, std::size_t workers) {
    if (n < 2) throw InvalidArgument("subsphere needs n >= 2");
    if (samples < 100) throw InvalidArgument("mc_ipr_moments needs at least 100 samples, got " + std::to_string(samples));
    workers = std::max<std::size_t>(1, workers);

    std::vector<double> values(samples);
    const std::size_t chunks = (samples + kChunk - 1) / kChunk;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t c; (c = next.fetch_add(1)) < chunks;) {
            Rng rng(derive_seed(seed, {n, c}));
            const std::size_t end = std::min(samples, (c + 1) * kChunk);
            for (std::size_t s = c * kChunk; s < end; ++s) {
                const auto x = sample_subsphere(n, rng);
                double s4 = 0.0;
                for (double v : x) s4 += v * v * v * v;
                values[s] = static_cast<double>(n) * s4;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < std::min(workers, chunks); ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    const double N = static_cast<double>(samples);
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / N;
    double s1 = 0.0, s2 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        s1 += d;
        s2 += d * d;
    }
    McMoments m;
    m.n = n;
    m.samples = samples;
    m.mean = mean;
    m.variance = (s2 - s1 * s1 / N) / (N - 1.0);

    // Delete-one jackknife on centered sums, two passes for accuracy.
    auto leave_out = [&](double v) {
        const double d = v - mean;
        const double r1 = s1 - d, r2 = s2 - d * d;
        return std::pair{r1 / (N - 1.0), (r2 - r1 * r1 / (N - 1.0)) / (N - 2.0)};
    };
    double jm = 0.0, jv = 0.0;
    for (double v : values) {
        const auto [mi, vi] = leave_out(v);
        jm += mi;
        jv += vi;
    }
    jm /= N;
    jv /= N;
    double sm = 0.0, sv = 0.0;
    for (double v : values) {
        const auto [mi, vi] = leave_out(v);
        sm += (mi - jm) * (mi - jm);
        sv += (vi - jv) * (vi - jv);
    }
    m.mean_error = std::sqrt((N - 1.0) / N * sm);
    m.variance_error = std::sqrt((N - 1.0) / N * sv);
    return m;
}

}  // namespace rrg::sphere
