#include "core/gauge.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace pql {

namespace {

const cplx I(0.0, 1.0);

void check_group_form(const FormField& psi, const char* what) {
    if (psi.degree != 0 || psi.mat_n == 0)
        throw std::invalid_argument(std::string(what) + ": need a matrix-valued 0-form");
}

} // namespace

FormField group_inverse(const FormField& psi) {
    check_group_form(psi, "group_inverse");
    FormField out = psi;
    for (std::int64_t f = 0; f < psi.grid.node_count(); ++f)
        out.set_mat(0, f, inverse(psi.mat_at(0, f)));
    return out;
}

FormField group_mult(const FormField& a, const FormField& b) {
    check_group_form(a, "group_mult");
    if (!a.grid.same_layout(b.grid) || a.vdim != b.vdim)
        throw std::invalid_argument("group_mult: mismatched fields");
    FormField out = a;
    for (std::int64_t f = 0; f < a.grid.node_count(); ++f)
        out.set_mat(0, f, a.mat_at(0, f) * b.mat_at(0, f));
    return out;
}

FormField group_pow(const FormField& psi, int k) {
    check_group_form(psi, "group_pow");
    if (k < 0) throw std::invalid_argument("group_pow: negative power");
    FormField out = psi;
    for (std::int64_t f = 0; f < psi.grid.node_count(); ++f) {
        SMat g = SMat::id(psi.mat_n);
        SMat p = psi.mat_at(0, f);
        for (int i = 0; i < k; ++i) g = g * p;
        out.set_mat(0, f, g);
    }
    return out;
}

FormField group_exp(const FormField& eta, double t) {
    check_group_form(eta, "group_exp");
    FormField out = eta;
    for (std::int64_t f = 0; f < eta.grid.node_count(); ++f)
        out.set_mat(0, f, exp_map(eta.mat_at(0, f), t));
    return out;
}

FormField group_identity(const Grid& g, int mat_n) {
    if (mat_n < 1) throw std::invalid_argument("group_identity: mat_n must be >= 1");
    FormField psi = lie_form(g, 0, mat_n);
    SMat id = SMat::id(mat_n);
    for (std::int64_t f = 0; f < g.node_count(); ++f) psi.set_mat(0, f, id);
    return psi;
}

FormField ad_apply(const FormField& psi, const FormField& w) {
    check_group_form(psi, "ad_apply");
    if (!psi.grid.same_layout(w.grid) || psi.mat_n != w.mat_n)
        throw std::invalid_argument("ad_apply: mismatched fields");
    FormField out = w;
    for (std::int64_t f = 0; f < w.grid.node_count(); ++f) {
        SMat g = psi.mat_at(0, f);
        SMat gi = inverse(g);
        for (int c = 0; c < w.ncomp(); ++c) out.set_mat(c, f, g * w.mat_at(c, f) * gi);
    }
    return out;
}

double algebra_residual(const FormField& w, const LieAlgebra& alg) {
    if (w.mat_n != alg.n) return 1e300;
    double worst = 0.0;
    for (int c = 0; c < w.ncomp(); ++c)
        for (std::int64_t f = 0; f < w.grid.node_count(); ++f) {
            SMat x = w.mat_at(c, f);
            double r = 0.0;
            switch (alg.kind) {
                case AlgKind::U1:
                    r = std::abs(x.at(0, 0).real());
                    break;
                case AlgKind::SU2:
                    r = std::max((x + x.adjoint()).max_abs(), std::abs(x.trace()));
                    break;
                case AlgKind::SO3: {
                    double im = 0.0;
                    for (int i = 0; i < 9; ++i) im = std::max(im, std::abs(x.a[i].imag()));
                    r = std::max(im, (x + x.transpose()).max_abs());
                    break;
                }
                case AlgKind::GL: {
                    for (int i = 0; i < alg.n * alg.n; ++i)
                        r = std::max(r, std::abs(x.a[i].imag()));
                    break;
                }
            }
            worst = std::max(worst, r);
        }
    return worst;
}

double group_residual(const FormField& psi, GroupId g) {
    double worst = 0.0;
    for (std::int64_t f = 0; f < psi.grid.node_count(); ++f) {
        SMat m = psi.mat_at(0, f);
        double r = 0.0;
        switch (g) {
            case GroupId::U1:
                r = std::abs(std::abs(m.at(0, 0)) - 1.0);
                break;
            case GroupId::SU2:
                r = std::max((m.adjoint() * m - SMat::id(2)).max_abs(),
                             std::abs(det(m) - 1.0));
                break;
            case GroupId::GL2:
            case GroupId::GL3: {
                for (int i = 0; i < m.n * m.n; ++i) r = std::max(r, std::abs(m.a[i].imag()));
                break;
            }
        }
        worst = std::max(worst, r);
    }
    return worst;
}

FormField curvature(const FormField& A) {
    if (A.degree != 1 || A.mat_n == 0)
        throw std::invalid_argument("curvature: need a Lie-valued 1-form");
    FormField F = exterior_d(A);
    // abelian case: A ^ A is a commutator and vanishes identically
    if (A.mat_n > 1) F += wedge_mat(A, A);
    return F;
}

FormField gauge_apply(const FormField& A, const FormField& psi) {
    check_group_form(psi, "gauge_apply");
    if (!A.grid.same_layout(psi.grid) || A.mat_n != psi.mat_n)
        throw std::invalid_argument("gauge_apply: mismatched fields");
    FormField dpsi = exterior_d(psi);
    FormField out = A;
    for (std::int64_t f = 0; f < A.grid.node_count(); ++f) {
        SMat g = psi.mat_at(0, f);
        SMat gi = inverse(g);
        for (int c = 0; c < A.ncomp(); ++c)
            out.set_mat(c, f, gi * A.mat_at(c, f) * g + gi * dpsi.mat_at(c, f));
    }
    return out;
}

FormField gauge_act(const FormField& A, const FormField& phi) {
    return gauge_apply(A, group_inverse(phi));
}

FormField cov_d(const FormField& A, const FormField& w) {
    if (A.mat_n != w.mat_n || !A.grid.same_layout(w.grid))
        throw std::invalid_argument("cov_d: mismatched fields");
    FormField out = exterior_d(w);
    out += wedge_mat(A, w);
    double s = (w.degree % 2 == 0) ? -1.0 : 1.0; // -(-1)^deg
    FormField wa = wedge_mat(w, A);
    out += cplx(s) * wa;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ShuffleSet {
    std::vector<std::vector<std::vector<int>>> blocks; // [shuffle][slot] -> positions
    std::vector<double> sign;
};

// all ways to split positions 0..total-1 into ordered blocks of given sizes,
// each block increasing; sign = parity of the rearrangement
const ShuffleSet& shuffles(const std::vector<int>& sizes) {
    static std::map<std::vector<int>, ShuffleSet> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(sizes);
    if (it != cache.end()) return it->second;

    int total = 0;
    for (int s : sizes) total += s;
    ShuffleSet out;
    std::vector<std::vector<int>> cur(sizes.size());
    std::vector<int> avail(total);
    for (int i = 0; i < total; ++i) avail[i] = i;

    auto rec = [&](auto&& self, size_t slot, std::vector<int> rem, int inv) -> void {
        if (slot == sizes.size()) {
            out.blocks.push_back(cur);
            out.sign.push_back(inv % 2 == 0 ? 1.0 : -1.0);
            return;
        }
        int k = sizes[slot];
        int m = static_cast<int>(rem.size());
        std::vector<int> pick(k);
        // choose k of the remaining positions in increasing order; picking
        // rem[i] as the got-th element jumps it over the i-got unchosen
        // entries before it, each an inversion
        std::function<void(int, int, int)> choose = [&](int start, int got, int inv2) {
            if (got == k) {
                std::vector<int> next;
                std::vector<char> used(m, 0);
                for (int j = 0; j < k; ++j) used[pick[j]] = 1;
                for (int i = 0; i < m; ++i)
                    if (!used[i]) next.push_back(rem[i]);
                cur[slot].clear();
                for (int j = 0; j < k; ++j) cur[slot].push_back(rem[pick[j]]);
                self(self, slot + 1, std::move(next), inv + inv2);
                return;
            }
            for (int i = start; i < m; ++i) {
                pick[got] = i;
                choose(i + 1, got + 1, inv2 + (i - got));
            }
        };
        choose(0, 0, 0);
    };
    rec(rec, 0, avail, 0);
    return cache.emplace(sizes, std::move(out)).first->second;
}

} // namespace

FormField polarized_product(const InvariantPolynomial& p,
                            std::span<const FormField* const> args) {
    if (static_cast<int>(args.size()) != p.degree)
        throw std::invalid_argument("polarized_product: slot count != polynomial degree");
    const Grid& g = args[0]->grid;
    int total = 0;
    std::vector<int> sizes;
    for (const FormField* a : args) {
        if (!a->grid.same_layout(g))
            throw std::invalid_argument("polarized_product: fields on different grids");
        if (a->mat_n != p.alg->n)
            throw std::invalid_argument("polarized_product: value dim does not match algebra");
        sizes.push_back(a->degree);
        total += a->degree;
    }
    if (total > g.dim())
        throw std::invalid_argument("polarized_product: total degree exceeds dimension");

    FormField out = scalar_form(g, total);
    const auto& tsubs = subsets(g.dim(), total);
    const ShuffleSet& sh = shuffles(sizes);
    std::int64_t nn = g.node_count();
    int r = p.degree;
    std::vector<SMat> vals(r);

    for (size_t jc = 0; jc < tsubs.size(); ++jc) {
        const auto& J = tsubs[jc];
        for (size_t s = 0; s < sh.blocks.size(); ++s) {
            // component index of each slot for this shuffle
            std::vector<int> comp_of(r);
            for (int slot = 0; slot < r; ++slot) {
                std::vector<int> sub;
                for (int pos : sh.blocks[s][slot]) sub.push_back(J[pos]);
                comp_of[slot] = subset_index(g.dim(), sub);
            }
            double sgn = sh.sign[s];
            cplx* ot = out.comp[jc].data();
            for (std::int64_t f = 0; f < nn; ++f) {
                for (int slot = 0; slot < r; ++slot)
                    vals[slot] = args[slot]->mat_at(comp_of[slot], f);
                ot[f] += sgn * p.polarized(vals);
            }
        }
    }
    return out;
}

FormField char_form(const InvariantPolynomial& p, const FormField& F) {
    std::vector<const FormField*> args(p.degree, &F);
    return polarized_product(p, args);
}

FormField transgress(const InvariantPolynomial& p, const FormField& A1, const FormField& A0) {
    if (!A1.grid.same_layout(A0.grid) || A1.vdim != A0.vdim)
        throw std::invalid_argument("transgress: mismatched connections");
    int r = p.degree;
    FormField delta = A1 - A0;
    if (r == 1) return char_form(p, delta);

    // integrand in t is polynomial of degree 2(r-1); r+2 nodes are exact
    // with one order to spare
    const auto& q = gauss_legendre_01(r + 2);
    FormField acc = scalar_form(A1.grid, 2 * r - 1);
    for (size_t i = 0; i < q.x.size(); ++i) {
        double t = q.x[i];
        FormField At = cplx(1.0 - t) * A0 + cplx(t) * A1;
        FormField Ft = curvature(At);
        std::vector<const FormField*> args(r, &Ft);
        args[0] = &delta;
        acc += cplx(q.w[i] * r) * polarized_product(p, args);
    }
    return acc;
}

FormField transgress2(const InvariantPolynomial& p, const FormField& X, const FormField& Y,
                      const FormField& Z) {
    int r = p.degree;
    if (r == 1) return scalar_form(X.grid, 0); // r(r-1) = 0
    if (r > 2) throw std::invalid_argument("transgress2: only degree <= 2 supported");
    // over the triangle {A = X + u(Y-X) + v(Z-X)} the integrand has no
    // curvature slots left when r = 2, so the simplex integral is exactly
    // (area 1/2) * r(r-1) * p(Y-X, Z-X)
    FormField dy = Y - X, dz = Z - X;
    const FormField* args[2] = {&dy, &dz};
    return polarized_product(p, args);
}

double cs_action(const InvariantPolynomial& p, const Chain& u, const FormField& A,
                 const FormField& A0) {
    if (u.dim != 2 * p.degree - 1)
        throw std::invalid_argument("cs_action: chain dimension must be 2r-1");
    return -chain_integrate(u, transgress(p, A, A0)).real();
}

SymGen zero_gen(const Grid& g, int mat_n) {
    return SymGen{scalar_form(g, 1), lie_form(g, 0, mat_n)};
}

FormField vertical_part(const FormField& A, const SymGen& X) {
    FormField out = contract(X.v, A);
    out += X.xi;
    return out;
}

FormField action_on_conn(const FormField& A, const SymGen& X) {
    return cov_d(A, vertical_part(A, X));
}

FormField u1_winding(const Grid& g, std::span<const int> w) {
    if (static_cast<int>(w.size()) != g.dim())
        throw std::invalid_argument("u1_winding: winding vector size");
    FormField psi = lie_form(g, 0, 1);
    for_each_node(g, [&](std::int64_t f, std::span<const int> idx) {
        double ph = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            const Axis& ax = g.axis(a);
            ph += w[a] * (ax.coord(idx[a]) - ax.lo) / ax.length();
        }
        psi.comp[0][f] = std::exp(cplx(0.0, TWO_PI * ph));
    });
    return psi;
}

FormField su2_bump(const Grid& g, double R, BumpProfile profile) {
    if (g.dim() != 3) throw std::invalid_argument("su2_bump: needs a 3-d grid");
    FormField psi = lie_form(g, 0, 2);
    auto S = profile == BumpProfile::C4 ? smoothstep_c4 : smoothstep_cinf;
    for_each_node(g, [&](std::int64_t fl, std::span<const int> idx) {
        double y[3], rho2 = 0.0;
        for (int a = 0; a < 3; ++a) {
            const Axis& ax = g.axis(a);
            y[a] = (ax.coord(idx[a]) - ax.lo) / ax.length() - 0.5;
            rho2 += y[a] * y[a];
        }
        double rho = std::sqrt(rho2);
        double f = PI * (1.0 - S(rho / R));
        double cf = std::cos(f), sf = std::sin(f);
        double n[3] = {0.0, 0.0, 1.0};
        if (rho > 1e-14)
            for (int a = 0; a < 3; ++a) n[a] = y[a] / rho;
        // exp(i f n.sigma) = cos f + i sin f (n . sigma)
        SMat m(2);
        m.at(0, 0) = cf + I * sf * n[2];
        m.at(0, 1) = I * sf * (n[0] - I * n[1]);
        m.at(1, 0) = I * sf * (n[0] + I * n[1]);
        m.at(1, 1) = cf - I * sf * n[2];
        psi.set_mat(0, fl, m);
    });
    return psi;
}

} // namespace pql
