#include "core/grid.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace pql {

Axis periodic_axis(int n, double lo, double hi) {
    if (n < 5) throw std::invalid_argument("periodic axis needs at least 5 nodes");
    if (!(hi > lo)) throw std::invalid_argument("axis needs hi > lo");
    return Axis{AxisKind::Periodic, n, lo, hi};
}

Axis bounded_axis(int n_cells, double lo, double hi) {
    if (n_cells < 4) throw std::invalid_argument("bounded axis needs at least 4 cells");
    if (n_cells % 2 != 0) throw std::invalid_argument("bounded axis needs an even cell count");
    if (!(hi > lo)) throw std::invalid_argument("axis needs hi > lo");
    return Axis{AxisKind::Bounded, n_cells, lo, hi};
}

namespace {

std::vector<double> build_weights(const Axis& ax) {
    std::vector<double> w(ax.nodes());
    double h = ax.h();
    if (ax.kind == AxisKind::Periodic) {
        for (auto& v : w) v = h;
    } else {
        // composite Simpson: h/3 * (1, 4, 2, 4, ..., 2, 4, 1)
        w.front() = h / 3.0;
        w.back() = h / 3.0;
        for (int i = 1; i < ax.n; ++i) w[i] = (i % 2 ? 4.0 : 2.0) * h / 3.0;
    }
    return w;
}

std::vector<StencilRow> build_stencils(const Axis& ax) {
    std::vector<StencilRow> rows(ax.nodes());
    double h = ax.h();
    auto central = [&](int i, int wrap) {
        StencilRow r;
        r.m = 4;
        int off[4] = {-2, -1, 1, 2};
        double cc[4] = {1.0, -8.0, 8.0, -1.0};
        for (int k = 0; k < 4; ++k) {
            int j = i + off[k];
            if (wrap) j = (j % ax.n + ax.n) % ax.n;
            r.idx[k] = j;
            r.c[k] = cc[k] / (12.0 * h);
        }
        return r;
    };
    if (ax.kind == AxisKind::Periodic) {
        for (int i = 0; i < ax.n; ++i) rows[i] = central(i, 1);
        return rows;
    }
    int n = ax.n; // nodes 0..n
    auto onesided = [&](int base, const double (&cc)[5], double s) {
        StencilRow r;
        r.m = 5;
        for (int k = 0; k < 5; ++k) {
            r.idx[k] = base + (s > 0 ? k : -k);
            r.c[k] = s * cc[k] / (12.0 * h);
        }
        return r;
    };
    const double edge[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
    const double next[5] = {-3.0, -10.0, 18.0, -6.0, 1.0};
    rows[0] = onesided(0, edge, +1.0);
    rows[1] = onesided(0, next, +1.0);
    // interior
    for (int i = 2; i <= n - 2; ++i) rows[i] = central(i, 0);
    rows[n - 1] = onesided(n, next, -1.0);
    rows[n] = onesided(n, edge, -1.0);
    // the one-sided rows at the far end were built walking backwards from
    // base, so their idx/c arrays are in reverse order -- harmless, the rows
    // are only ever used as (idx, c) pairs.
    return rows;
}

} // namespace

Grid::Grid(std::string name, std::vector<Axis> axes) : name_(std::move(name)), axes_(std::move(axes)) {
    if (axes_.empty() || axes_.size() > 3)
        throw std::invalid_argument("grid dimension must be 1..3");
    node_count_ = 1;
    for (const Axis& ax : axes_) {
        node_count_ *= ax.nodes();
        axis_weights_.push_back(build_weights(ax));
        stencils_.push_back(build_stencils(ax));
    }
}

std::vector<BoundaryFace> boundary_faces(const Grid& g) {
    std::vector<BoundaryFace> out;
    for (int a = 0; a < g.dim(); ++a) {
        if (g.axis(a).kind != AxisKind::Bounded) continue;
        std::vector<Axis> rest;
        for (int b = 0; b < g.dim(); ++b)
            if (b != a) rest.push_back(g.axis(b));
        if (rest.empty())
            throw std::invalid_argument("boundary of a 1-d grid is not a grid");
        int par = (a % 2 == 0) ? 1 : -1; // moving dx_a to the front
        out.push_back({a, g.axis(a).n,
                       par, Grid(g.name() + ":hi" + std::to_string(a), rest)});
        out.push_back({a, 0, -par, Grid(g.name() + ":lo" + std::to_string(a), rest)});
    }
    return out;
}

const std::vector<std::vector<int>>& subsets(int d, int k) {
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(d, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // lexicographic enumeration by simple recursion
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < d; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    if (k >= 0 && k <= d) rec(rec, 0);
    return cache.emplace(key, std::move(out)).first->second;
}

int subset_index(int d, std::span<const int> s) {
    const auto& list = subsets(d, static_cast<int>(s.size()));
    for (int i = 0; i < static_cast<int>(list.size()); ++i) {
        bool eq = true;
        for (size_t j = 0; j < s.size(); ++j)
            if (list[i][j] != s[j]) { eq = false; break; }
        if (eq) return i;
    }
    throw std::invalid_argument("subset_index: not an increasing subset");
}

} // namespace pql
