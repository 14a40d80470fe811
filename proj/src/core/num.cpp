#include "core/num.hpp"

#include <map>
#include <mutex>

namespace pql {

namespace {

// Legendre P_n(x) and derivative via the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

Quadrature1D build_gl(int n) {
    Quadrature1D q;
    q.x.resize(n);
    q.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess, then Newton.
        double x = std::cos(PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 60; ++it) {
            auto [p, dp] = legendre(n, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        auto [p, dp] = legendre(n, x);
        (void)p;
        // map from [-1,1] to [0,1]; reverse so nodes come out increasing
        q.x[n - 1 - i] = 0.5 * (x + 1.0);
        q.w[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

} // namespace

const Quadrature1D& gauss_legendre_01(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre_01: order out of range");
    static std::map<int, Quadrature1D> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gl(n)).first;
    return it->second;
}

namespace {

struct SimpsonPanel {
    double a, b;
    double fa, fm, fb;
    double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

} // namespace

AdaptiveResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                double tol, int max_panels) {
    AdaptiveResult res;
    // Explicit stack, processed depth-first left-to-right: the evaluation
    // order (and hence the floating-point result) is independent of anything
    // but (f, a, b, tol, max_panels).
    std::vector<SimpsonPanel> stack;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb)});
    KahanSum<double> acc;
    KahanSum<double> err;
    int panels = 1;
    while (!stack.empty()) {
        SimpsonPanel p = stack.back();
        stack.pop_back();
        double m = 0.5 * (p.a + p.b);
        double fl = f(0.5 * (p.a + m));
        double fr = f(0.5 * (m + p.b));
        double left = simpson(p.a, m, p.fa, fl, p.fm);
        double right = simpson(m, p.b, p.fm, fr, p.fb);
        double delta = left + right - p.whole;
        // Scale the local budget with the panel fraction of the interval.
        double local_tol = tol * (p.b - p.a) / (b - a);
        if (std::abs(delta) <= 15.0 * local_tol || panels >= max_panels) {
            acc.add(left + right + delta / 15.0);
            err.add(std::abs(delta) / 15.0);
        } else {
            panels += 1;
            // push right first so the left half is processed next (in-order)
            stack.push_back({m, p.b, p.fm, fr, p.fb, right});
            stack.push_back({p.a, m, p.fa, fl, p.fm, left});
        }
    }
    res.value = acc.value();
    res.error_estimate = err.value();
    res.panels = panels;
    res.converged = panels < max_panels;
    return res;
}

} // namespace pql
