#include "core/synth.hpp"

namespace pql {

namespace {

struct Mode {
    double amp = 0.0;
    double phase = 0.0;
    int k[3] = {0, 0, 0};
};

std::vector<Mode> draw_modes(Rng& rng, int dim, int kmax, double amp, int nmodes) {
    std::vector<Mode> ms(nmodes);
    for (Mode& m : ms) {
        m.amp = rng.uniform(-amp, amp);
        m.phase = rng.uniform(0.0, TWO_PI);
        for (int a = 0; a < dim; ++a) m.k[a] = rng.index(2 * kmax + 1) - kmax;
    }
    return ms;
}

double eval_modes(const std::vector<Mode>& ms, int dim, std::span<const double> x) {
    double v = 0.0;
    for (const Mode& m : ms) {
        double ph = m.phase;
        for (int a = 0; a < dim; ++a) ph += TWO_PI * m.k[a] * x[a];
        v += m.amp * std::cos(ph);
    }
    return v;
}

} // namespace

AnalyticForm fourier_scalar_form(int dim, int degree, int kmax, double amp, int nmodes,
                                 unsigned seed) {
    Rng rng(seed);
    int ncomp = static_cast<int>(subsets(dim, degree).size());
    std::vector<std::vector<Mode>> comp_modes(ncomp);
    for (auto& cm : comp_modes) cm = draw_modes(rng, dim, kmax, amp, nmodes);
    AnalyticForm f;
    f.dim = dim;
    f.degree = degree;
    f.eval = [comp_modes, dim](int c, std::span<const double> x, std::span<cplx> out) {
        out[0] = eval_modes(comp_modes[c], dim, x);
    };
    return f;
}

AnalyticForm fourier_lie_form(int dim, int degree, const LieAlgebra& alg, int kmax, double amp,
                              int nmodes, unsigned seed) {
    Rng rng(seed);
    int ncomp = static_cast<int>(subsets(dim, degree).size());
    // one mode bundle per (component, basis direction)
    std::vector<std::vector<std::vector<Mode>>> modes(ncomp);
    for (auto& per_comp : modes) {
        per_comp.resize(alg.dim());
        for (auto& cm : per_comp) cm = draw_modes(rng, dim, kmax, amp, nmodes);
    }
    const LieAlgebra* ap = &alg;
    AnalyticForm f;
    f.dim = dim;
    f.degree = degree;
    f.mat_n = alg.n;
    f.eval = [modes, dim, ap](int c, std::span<const double> x, std::span<cplx> out) {
        SMat v(ap->n);
        for (int b = 0; b < ap->dim(); ++b)
            v += eval_modes(modes[c][b], dim, x) * ap->basis[b];
        for (int i = 0; i < ap->n * ap->n; ++i) out[i] = v.a[i];
    };
    return f;
}

SmoothMap torus_translation(std::span<const double> disp) {
    int d = static_cast<int>(disp.size());
    std::vector<double> dv(disp.begin(), disp.end());
    SmoothMap m;
    m.src_dim = m.tgt_dim = d;
    m.eval = [dv, d](std::span<const double> x, std::span<double> out) {
        for (int i = 0; i < d; ++i) out[i] = x[i] + dv[i];
    };
    m.jacobian = [d](std::span<const double>, std::span<double> j) {
        for (int i = 0; i < d * d; ++i) j[i] = 0.0;
        for (int i = 0; i < d; ++i) j[i * d + i] = 1.0;
    };
    return m;
}

SmoothMap torus_warp(int dim, double eps, unsigned seed) {
    Rng rng(seed);
    std::vector<double> phase(dim);
    for (double& p : phase) p = rng.uniform(0.0, 1.0);
    SmoothMap m;
    m.src_dim = m.tgt_dim = dim;
    m.eval = [dim, eps, phase](std::span<const double> x, std::span<double> out) {
        for (int a = 0; a < dim; ++a)
            out[a] = x[a] + eps * std::sin(TWO_PI * (x[(a + 1) % dim] + phase[a]));
    };
    m.jacobian = [dim, eps, phase](std::span<const double> x, std::span<double> j) {
        for (int i = 0; i < dim * dim; ++i) j[i] = 0.0;
        for (int a = 0; a < dim; ++a) {
            j[a * dim + a] = 1.0;
            int b = (a + 1) % dim;
            j[a * dim + b] += eps * TWO_PI * std::cos(TWO_PI * (x[b] + phase[a]));
        }
    };
    return m;
}

} // namespace pql
