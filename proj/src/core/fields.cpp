#include "core/fields.hpp"

#include <stdexcept>

namespace pql {

namespace {

void require_same_shape(const FormField& a, const FormField& b, const char* what) {
    if (!a.grid.same_layout(b.grid) || a.degree != b.degree || a.vdim != b.vdim)
        throw std::invalid_argument(std::string(what) + ": mismatched field shapes");
}

std::vector<std::int64_t> node_strides(const Grid& g) {
    std::vector<std::int64_t> s(g.dim());
    std::int64_t acc = 1;
    for (int a = g.dim() - 1; a >= 0; --a) {
        s[a] = acc;
        acc *= g.axis(a).nodes();
    }
    return s;
}

} // namespace

FormField::FormField(const Grid& g, int deg, int matn) : grid(g), degree(deg), mat_n(matn) {
    if (deg < 0 || deg > g.dim()) throw std::invalid_argument("form degree out of range");
    vdim = matn == 0 ? 1 : matn * matn;
    const auto& subs = subsets(g.dim(), deg);
    comp.assign(subs.size(), std::vector<cplx>(g.node_count() * vdim));
}

FormField scalar_form(const Grid& g, int degree) { return FormField(g, degree, 0); }
FormField lie_form(const Grid& g, int degree, int mat_n) { return FormField(g, degree, mat_n); }

FormField& FormField::operator+=(const FormField& o) {
    require_same_shape(*this, o, "+=");
    for (int c = 0; c < ncomp(); ++c)
        for (size_t i = 0; i < comp[c].size(); ++i) comp[c][i] += o.comp[c][i];
    return *this;
}

FormField& FormField::operator-=(const FormField& o) {
    require_same_shape(*this, o, "-=");
    for (int c = 0; c < ncomp(); ++c)
        for (size_t i = 0; i < comp[c].size(); ++i) comp[c][i] -= o.comp[c][i];
    return *this;
}

FormField& FormField::operator*=(cplx s) {
    for (auto& cc : comp)
        for (auto& v : cc) v *= s;
    return *this;
}

FormField exterior_d(const FormField& w) {
    const Grid& g = w.grid;
    FormField out(g, w.degree + 1, w.mat_n);
    const auto& tgt = subsets(g.dim(), w.degree + 1);
    auto strides = node_strides(g);
    int vd = w.vdim;

    for (size_t jc = 0; jc < tgt.size(); ++jc) {
        const auto& J = tgt[jc];
        for (size_t p = 0; p < J.size(); ++p) {
            int a = J[p];
            double sgn = (p % 2 == 0) ? 1.0 : -1.0;
            std::vector<int> src(J);
            src.erase(src.begin() + p);
            int sc = subset_index(g.dim(), src);
            const cplx* in = w.comp[sc].data();
            cplx* ot = out.comp[jc].data();
            for_each_node(g, [&](std::int64_t f, std::span<const int> idx) {
                const StencilRow& row = g.stencil(a, idx[a]);
                cplx* o = ot + f * vd;
                for (int k = 0; k < row.m; ++k) {
                    const cplx* s =
                        in + (f + (row.idx[k] - idx[a]) * strides[a]) * vd;
                    double c = sgn * row.c[k];
                    for (int l = 0; l < vd; ++l) o[l] += c * s[l];
                }
            });
        }
    }
    return out;
}

double max_abs(const FormField& w) {
    double m = 0.0;
    for (const auto& cc : w.comp)
        for (const cplx& v : cc) m = std::max(m, std::abs(v));
    return m;
}

FormField wedge(const FormField& a, const FormField& b, int out_mat_n, const PairFn& mul) {
    if (!a.grid.same_layout(b.grid)) throw std::invalid_argument("wedge: different grids");
    const Grid& g = a.grid;
    int p = a.degree, q = b.degree;
    if (p + q > g.dim()) throw std::invalid_argument("wedge: degree exceeds dimension");
    FormField out(g, p + q, out_mat_n);
    const auto& tgt = subsets(g.dim(), p + q);

    std::int64_t nn = g.node_count();
    for (size_t jc = 0; jc < tgt.size(); ++jc) {
        const auto& J = tgt[jc];
        // all ways to pick the positions of a's factor inside J
        for (const auto& pos : subsets(p + q, p)) {
            std::vector<int> I, K;
            std::vector<char> taken(p + q, 0);
            for (int x : pos) taken[x] = 1;
            int inversions = 0;
            for (int x : pos)
                for (int y = 0; y < x; ++y)
                    if (!taken[y]) ++inversions;
            for (int x = 0; x < p + q; ++x) (taken[x] ? I : K).push_back(J[x]);
            double sgn = (inversions % 2 == 0) ? 1.0 : -1.0;
            int ia = subset_index(g.dim(), I);
            int ib = subset_index(g.dim(), K);
            std::vector<cplx> tmp(out.vdim);
            for (std::int64_t f = 0; f < nn; ++f) {
                std::fill(tmp.begin(), tmp.end(), cplx(0.0));
                mul(a.at(ia, f), b.at(ib, f), tmp);
                auto o = out.at(jc, f);
                for (int l = 0; l < out.vdim; ++l) o[l] += sgn * tmp[l];
            }
        }
    }
    return out;
}

FormField wedge_scalar(const FormField& a, const FormField& b) {
    if (!a.is_scalar() || !b.is_scalar())
        throw std::invalid_argument("wedge_scalar needs scalar fields");
    return wedge(a, b, 0,
                 [](std::span<const cplx> x, std::span<const cplx> y, std::span<cplx> o) {
                     o[0] += x[0] * y[0];
                 });
}

FormField wedge_mat(const FormField& a, const FormField& b) {
    if (a.mat_n == 0 || a.mat_n != b.mat_n)
        throw std::invalid_argument("wedge_mat needs matching matrix fields");
    int n = a.mat_n;
    return wedge(a, b, n,
                 [n](std::span<const cplx> x, std::span<const cplx> y, std::span<cplx> o) {
                     for (int i = 0; i < n; ++i)
                         for (int k = 0; k < n; ++k) {
                             cplx v = x[i * n + k];
                             if (v == cplx(0.0)) continue;
                             for (int j = 0; j < n; ++j) o[i * n + j] += v * y[k * n + j];
                         }
                 });
}

FormField wedge_scalar_mat(const FormField& a, const FormField& b) {
    if (!a.is_scalar() || b.mat_n == 0)
        throw std::invalid_argument("wedge_scalar_mat needs scalar x matrix");
    int vd = b.vdim;
    return wedge(a, b, b.mat_n,
                 [vd](std::span<const cplx> x, std::span<const cplx> y, std::span<cplx> o) {
                     for (int l = 0; l < vd; ++l) o[l] += x[0] * y[l];
                 });
}

FormField contract(const FormField& vec, const FormField& w) {
    if (vec.degree != 1 || !vec.is_scalar())
        throw std::invalid_argument("contract: vector field must be a scalar 1-field");
    if (!vec.grid.same_layout(w.grid)) throw std::invalid_argument("contract: different grids");
    if (w.degree == 0) throw std::invalid_argument("contract: cannot contract a 0-form");
    const Grid& g = w.grid;
    FormField out(g, w.degree - 1, w.mat_n);
    const auto& tgt = subsets(g.dim(), w.degree - 1);
    std::int64_t nn = g.node_count();
    int vd = w.vdim;

    for (size_t kc = 0; kc < tgt.size(); ++kc) {
        const auto& K = tgt[kc];
        for (int a = 0; a < g.dim(); ++a) {
            bool in_K = false;
            int before = 0;
            for (int k : K) {
                if (k == a) in_K = true;
                if (k < a) ++before;
            }
            if (in_K) continue;
            std::vector<int> src(K.begin(), K.end());
            src.insert(src.begin() + before, a);
            int sc = subset_index(g.dim(), src);
            double sgn = (before % 2 == 0) ? 1.0 : -1.0;
            const cplx* vcomp = vec.comp[a].data();
            const cplx* in = w.comp[sc].data();
            cplx* ot = out.comp[kc].data();
            for (std::int64_t f = 0; f < nn; ++f) {
                cplx v = sgn * vcomp[f];
                for (int l = 0; l < vd; ++l) ot[f * vd + l] += v * in[f * vd + l];
            }
        }
    }
    return out;
}

cplx integrate(const FormField& w) {
    if (w.degree != w.grid.dim())
        throw std::invalid_argument("integrate: form degree must equal grid dimension");
    if (!w.is_scalar()) throw std::invalid_argument("integrate: scalar forms only");
    KahanSum<cplx> s;
    const cplx* v = w.comp[0].data();
    for_each_node(w.grid, [&](std::int64_t f, std::span<const int> idx) {
        s.add(w.grid.weight(idx) * v[f]);
    });
    return s.value();
}

FormField restrict_to_face(const FormField& w, const BoundaryFace& bf) {
    const Grid& g = w.grid;
    if (w.degree > bf.face.dim())
        throw std::invalid_argument("restrict_to_face: degree exceeds face dimension");
    FormField out(bf.face, w.degree, w.mat_n);
    const auto& fsubs = subsets(bf.face.dim(), w.degree);
    int vd = w.vdim;
    std::vector<int> pidx(g.dim());
    for (size_t c = 0; c < fsubs.size(); ++c) {
        // face axis b corresponds to parent axis b (+1 past the frozen one)
        std::vector<int> parent_sub;
        for (int b : fsubs[c]) parent_sub.push_back(b < bf.axis ? b : b + 1);
        int sc = subset_index(g.dim(), parent_sub);
        const cplx* in = w.comp[sc].data();
        cplx* ot = out.comp[c].data();
        for_each_node(bf.face, [&](std::int64_t f, std::span<const int> idx) {
            for (int b = 0; b < bf.face.dim(); ++b)
                pidx[b < bf.axis ? b : b + 1] = idx[b];
            pidx[bf.axis] = bf.node;
            std::int64_t pf = g.flat(pidx);
            for (int l = 0; l < vd; ++l) ot[f * vd + l] = in[pf * vd + l];
        });
    }
    return out;
}

cplx integrate_boundary(const FormField& w) {
    if (w.degree != w.grid.dim() - 1)
        throw std::invalid_argument("integrate_boundary: need a (dim-1)-form");
    KahanSum<cplx> s;
    for (const BoundaryFace& bf : boundary_faces(w.grid))
        s.add(static_cast<double>(bf.sign) * integrate(restrict_to_face(w, bf)));
    return s.value();
}

FormField sample(const Grid& g, const AnalyticForm& f) {
    if (f.dim != g.dim()) throw std::invalid_argument("sample: dimension mismatch");
    FormField out(g, f.degree, f.mat_n);
    std::vector<double> x(g.dim());
    for (int c = 0; c < out.ncomp(); ++c) {
        cplx* ot = out.comp[c].data();
        for_each_node(g, [&](std::int64_t fl, std::span<const int> idx) {
            g.coords(idx, x);
            f.eval(c, x, {ot + fl * out.vdim, static_cast<size_t>(out.vdim)});
        });
    }
    return out;
}

} // namespace pql
