#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

namespace oracle {

using Adjacency = std::vector<std::vector<int>>;  // dense 0/1 matrix

inline bool is_simple_regular(const std::vector<std::vector<unsigned>>& nb, std::size_t z) {
    const std::size_t n = nb.size();
    Adjacency a(n, std::vector<int>(n, 0));
    for (std::size_t v = 0; v < n; ++v) {
        if (nb[v].size() != z) return false;
        for (unsigned u : nb[v]) {
            if (u >= n || u == v || a[v][u]) return false;
            a[v][u] = 1;
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) {
            if (a[v][u] != a[u][v]) return false;
        }
    }
    return true;
}

inline std::size_t bfs_components(const std::vector<std::vector<unsigned>>& nb) {
    std::vector<bool> seen(nb.size(), false);
    std::size_t comps = 0;
    for (std::size_t s = 0; s < nb.size(); ++s) {
        if (seen[s]) continue;
        ++comps;
        std::queue<std::size_t> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            const auto v = q.front();
            q.pop();
            for (unsigned u : nb[v]) {
                if (!seen[u]) {
                    seen[u] = true;
                    q.push(u);
                }
            }
        }
    }
    return comps;
}

inline bool connected(const Adjacency& a) {
    std::vector<std::vector<unsigned>> nb(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[i][j]) nb[i].push_back(static_cast<unsigned>(j));
        }
    }
    return bfs_components(nb) == 1;
}

/// Backtracking isomorphism test between two graphs of equal order.
inline bool isomorphic(const Adjacency& a, const Adjacency& b) {
    const std::size_t n = a.size();
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> extend = [&](std::size_t v) {
        if (v == n) return true;
        for (std::size_t w = 0; w < n; ++w) {
            if (used[w]) continue;
            bool ok = true;
            for (std::size_t u = 0; u < v && ok; ++u) ok = a[v][u] == b[w][static_cast<std::size_t>(map[u])];
            if (!ok) continue;
            map[v] = static_cast<int>(w);
            used[w] = true;
            if (extend(v + 1)) return true;
            used[w] = false;
        }
        map[v] = -1;
        return false;
    };
    return extend(0);
}

/// Every labelled z-regular graph on n vertices (symmetric 0/1 matrices with
/// zero diagonal and row sums z), filled cell by cell in row-major order.
inline void for_each_labelled_regular(std::size_t n, std::size_t z, const std::function<void(const Adjacency&)>& f) {
    Adjacency a(n, std::vector<int>(n, 0));
    std::vector<std::size_t> deg(n, 0);
    std::function<void(std::size_t, std::size_t)> cell = [&](std::size_t i, std::size_t j) {
        if (i == n) {
            f(a);
            return;
        }
        if (j == n) {
            if (deg[i] == z) cell(i + 1, i + 2);
            return;
        }
        // Row i must still be able to reach degree z with the remaining columns.
        if (deg[i] + (n - j) < z) return;
        cell(i, j + 1);
        if (deg[i] < z && deg[j] < z) {
            a[i][j] = a[j][i] = 1;
            ++deg[i];
            ++deg[j];
            cell(i, j + 1);
            a[i][j] = a[j][i] = 0;
            --deg[i];
            --deg[j];
        }
    };
    cell(0, 1);
}

/// Connected z-regular graphs on n vertices up to isomorphism.
inline std::size_t brute_force_connected_count(std::size_t n, std::size_t z) {
    std::vector<Adjacency> reps;
    for_each_labelled_regular(n, z, [&](const Adjacency& a) {
        if (!connected(a)) return;
        for (const auto& r : reps) {
            if (isomorphic(a, r)) return;
        }
        reps.push_back(a);
    });
    return reps.size();
}

}  // namespace oracle
