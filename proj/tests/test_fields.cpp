#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/fields.hpp"
#include "core/liealg.hpp"

#include <cmath>

using namespace pql;

namespace {

const cplx I(0.0, 1.0);

Grid t2(int n) { return Grid("t2", {periodic_axis(n), periodic_axis(n)}); }
Grid t3(int n) { return Grid("t3", {periodic_axis(n), periodic_axis(n), periodic_axis(n)}); }
Grid slab(int n) {
    return Grid("slab", {bounded_axis(n), periodic_axis(n), periodic_axis(n)});
}

// small deterministic scalar field synthesizer: a handful of Fourier modes
FormField rand_scalar(const Grid& g, int degree, unsigned seed) {
    Rng rng(seed);
    AnalyticForm f;
    f.dim = g.dim();
    f.degree = degree;
    int ncomp = static_cast<int>(subsets(g.dim(), degree).size());
    struct Mode {
        double amp, phase;
        int k[3];
    };
    std::vector<std::vector<Mode>> modes(ncomp);
    for (auto& mv : modes)
        for (int t = 0; t < 3; ++t) {
            Mode m;
            m.amp = rng.uniform(-1.0, 1.0);
            m.phase = rng.uniform(0.0, TWO_PI);
            for (int a = 0; a < 3; ++a) m.k[a] = rng.index(3) - 1;
            mv.push_back(m);
        }
    f.eval = [modes, d = g.dim()](int c, std::span<const double> x, std::span<cplx> out) {
        double v = 0.0;
        for (const Mode& m : modes[c]) {
            double ph = m.phase;
            for (int a = 0; a < d; ++a) ph += TWO_PI * m.k[a] * x[a];
            v += m.amp * std::cos(ph);
        }
        out[0] = v;
    };
    return sample(g, f);
}

} // namespace

TEST_CASE("grid indexing round-trips") {
    Grid g = slab(8);
    CHECK(g.node_count() == 9 * 8 * 8);
    int idx[3];
    for (std::int64_t f : {std::int64_t(0), std::int64_t(100), g.node_count() - 1}) {
        g.unflat(f, idx);
        CHECK(g.flat(idx) == f);
    }
    // lexicographic: last axis fastest
    int i0[3] = {0, 0, 1};
    CHECK(g.flat(i0) == 1);
    int i1[3] = {1, 0, 0};
    CHECK(g.flat(i1) == 64);
}

TEST_CASE("quadrature weights sum to the volume") {
    for (const Grid& g : {t3(8), slab(8)}) {
        KahanSum<double> s;
        for_each_node(g, [&](std::int64_t, std::span<const int> idx) { s.add(g.weight(idx)); });
        CHECK(std::abs(s.value() - 1.0) < 1e-13);
    }
    Grid st("st", {bounded_axis(8, 0.25, 1.0), periodic_axis(8), periodic_axis(8)});
    KahanSum<double> s;
    for_each_node(st, [&](std::int64_t, std::span<const int> idx) { s.add(st.weight(idx)); });
    CHECK(std::abs(s.value() - 0.75) < 1e-13);
}

TEST_CASE("axis validation") {
    CHECK_THROWS(periodic_axis(3));
    CHECK_THROWS(bounded_axis(5)); // odd cell count
    CHECK_THROWS(bounded_axis(2));
    CHECK_THROWS(periodic_axis(8, 1.0, 0.0));
}

TEST_CASE("subset tables") {
    CHECK(subsets(3, 0).size() == 1);
    CHECK(subsets(3, 1).size() == 3);
    CHECK(subsets(3, 2).size() == 3);
    CHECK(subsets(3, 3).size() == 1);
    CHECK(subsets(3, 2)[1] == std::vector<int>({0, 2}));
    int s01[] = {0, 1};
    CHECK(subset_index(3, s01) == 0);
    int s12[] = {1, 2};
    CHECK(subset_index(3, s12) == 2);
}

TEST_CASE("stencil derivative converges at fourth order") {
    auto err_at = [](int n) {
        Grid g("t1xt1", {periodic_axis(n), periodic_axis(5)});
        AnalyticForm f;
        f.dim = 2;
        f.degree = 0;
        f.eval = [](int, std::span<const double> x, std::span<cplx> out) {
            out[0] = std::sin(TWO_PI * x[0]);
        };
        FormField w = sample(g, f);
        FormField dw = exterior_d(w);
        double e = 0.0;
        for_each_node(g, [&](std::int64_t fl, std::span<const int> idx) {
            double x = g.axis(0).coord(idx[0]);
            e = std::max(e, std::abs(dw.comp[0][fl] - cplx(TWO_PI * std::cos(TWO_PI * x))));
        });
        return e;
    };
    double e16 = err_at(16), e32 = err_at(32);
    CHECK(e32 < 4e-4); // (2 pi)^5 h^4 / 30 is ~3.1e-4 at n=32
    CHECK(e16 / e32 > 12.0); // ~16 for a fourth-order scheme
}

TEST_CASE("one-sided stencils differentiate quartics exactly") {
    Grid g("slab1", {bounded_axis(8), periodic_axis(5)});
    AnalyticForm f;
    f.dim = 2;
    f.degree = 0;
    f.eval = [](int, std::span<const double> x, std::span<cplx> out) {
        double s = x[0];
        out[0] = 1.0 + s * (2.0 + s * (-1.5 + s * (0.25 + s * 0.125)));
    };
    FormField dw = exterior_d(sample(g, f));
    for_each_node(g, [&](std::int64_t fl, std::span<const int> idx) {
        double s = g.axis(0).coord(idx[0]);
        double ref = 2.0 + s * (-3.0 + s * (0.75 + s * 0.5));
        CHECK(std::abs(dw.comp[0][fl] - cplx(ref)) < 1e-11);
    });
}

TEST_CASE("d of d vanishes to machine precision") {
    for (const Grid& g : {t3(8), slab(8)}) {
        FormField w = rand_scalar(g, 1, 2024);
        FormField ddw = exterior_d(exterior_d(w));
        CHECK(max_abs(ddw) < 1e-10 * std::max(1.0, max_abs(w)));
    }
}

TEST_CASE("top-degree integrals of closed-grid derivatives vanish identically") {
    // on fully periodic grids the stencil sums telescope, so Stokes is exact
    Grid g = t3(8);
    FormField w = rand_scalar(g, 2, 99);
    CHECK(std::abs(integrate(exterior_d(w))) < 1e-13);
}

TEST_CASE("trapezoid rule on periodic axes is exact below Nyquist") {
    Grid g = t2(8);
    AnalyticForm f;
    f.dim = 2;
    f.degree = 2;
    f.eval = [](int, std::span<const double> x, std::span<cplx> out) {
        double sx = std::sin(TWO_PI * x[0]);
        double sy = std::sin(TWO_PI * x[1]);
        out[0] = sx * sx * sy * sy + 0.7 * std::cos(TWO_PI * (x[0] + 2.0 * x[1]));
    };
    CHECK(std::abs(integrate(sample(g, f)) - cplx(0.25)) < 1e-14);
}

TEST_CASE("wedge of scalar one-forms anticommutes") {
    Grid g = t2(8);
    FormField a = rand_scalar(g, 1, 5), b = rand_scalar(g, 1, 6);
    FormField ab = wedge_scalar(a, b);
    FormField ba = wedge_scalar(b, a);
    CHECK(max_abs(ab + ba) < 1e-14);
    // components: (a^b)_{01} = a_0 b_1 - a_1 b_0 at every node
    for (std::int64_t f = 0; f < g.node_count(); f += 7) {
        cplx expect = a.comp[0][f] * b.comp[1][f] - a.comp[1][f] * b.comp[0][f];
        CHECK(std::abs(ab.comp[0][f] - expect) < 1e-14);
    }
}

TEST_CASE("matrix wedge of a one-form with itself produces commutators") {
    Grid g = t2(6);
    Rng rng(404);
    FormField A = lie_form(g, 1, 2);
    for (int c = 0; c < 2; ++c)
        for (std::int64_t f = 0; f < g.node_count(); ++f)
            A.set_mat(c, f, algebra_su2().random_element(rng, 1.0));
    FormField AA = wedge_mat(A, A);
    for (std::int64_t f = 0; f < g.node_count(); f += 5) {
        SMat expect = comm(A.mat_at(0, f), A.mat_at(1, f));
        CHECK((AA.mat_at(0, f) - expect).max_abs() < 1e-14);
    }
}

TEST_CASE("interior product: antiderivation checks") {
    Grid g = t2(8);
    FormField a = rand_scalar(g, 1, 7), b = rand_scalar(g, 1, 8);
    FormField v = rand_scalar(g, 1, 9); // holds vector components
    FormField lhs = contract(v, wedge_scalar(a, b));
    // contract(v,a) is a 0-form; wedge with b then subtract a*(iv b)
    FormField iva_b = wedge_scalar(contract(v, a), b);
    FormField a_ivb = wedge_scalar(contract(v, b), a); // (iv b) * a, 0-form x 1-form
    FormField diff = lhs - (iva_b - a_ivb);
    CHECK(max_abs(diff) < 1e-13);
    // iv iv w = 0
    FormField w2 = wedge_scalar(a, b);
    CHECK(max_abs(contract(v, contract(v, w2))) < 1e-13);
}

TEST_CASE("face restriction matches direct sampling") {
    Grid g = slab(8);
    AnalyticForm f;
    f.dim = 3;
    f.degree = 1;
    f.eval = [](int c, std::span<const double> x, std::span<cplx> out) {
        out[0] = std::cos(TWO_PI * x[1] + c) * (1.0 + x[0] * x[0]) +
                 std::sin(TWO_PI * x[2]) * x[0];
    };
    FormField w = sample(g, f);
    auto faces = boundary_faces(g);
    REQUIRE(faces.size() == 2);
    for (const auto& bf : faces) {
        FormField r = restrict_to_face(w, bf);
        double s = g.axis(0).coord(bf.node);
        // compare against evaluating the tangential components on the face
        for_each_node(bf.face, [&](std::int64_t fl, std::span<const int> idx) {
            double x[3] = {s, bf.face.axis(0).coord(idx[0]), bf.face.axis(1).coord(idx[1])};
            for (int c = 0; c < 2; ++c) {
                cplx want;
                f.eval(c + 1, x, {&want, 1});
                CHECK(std::abs(r.comp[c][fl] - want) < 1e-14);
            }
        });
    }
}

TEST_CASE("Stokes on the slab: orientation and value") {
    // w = s dx^dy: dw = ds^dx^dy, volume 1; boundary picks s=1 face minus s=0
    Grid g = slab(8);
    AnalyticForm f;
    f.dim = 3;
    f.degree = 2;
    f.eval = [](int c, std::span<const double> x, std::span<cplx> out) {
        out[0] = (c == 2) ? cplx(x[0]) : cplx(0.0); // component {1,2} = dx^dy
    };
    FormField w = sample(g, f);
    CHECK(std::abs(integrate(exterior_d(w)) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(integrate_boundary(w) - cplx(1.0)) < 1e-12);
}

TEST_CASE("Stokes on the slab converges at fourth order for smooth data") {
    auto gap = [](int n) {
        Grid g("slab", {bounded_axis(n), periodic_axis(8), periodic_axis(8)});
        AnalyticForm f;
        f.dim = 3;
        f.degree = 2;
        f.eval = [](int c, std::span<const double> x, std::span<cplx> out) {
            double s = x[0];
            if (c == 2)
                out[0] = std::exp(s) * (1.0 + 0.3 * std::cos(TWO_PI * x[1]));
            else if (c == 0)
                out[0] = std::sin(s) * std::sin(TWO_PI * x[2]); // ds^dx slot
            else
                out[0] = 0.0;
        };
        FormField w = sample(g, f);
        return std::abs(integrate(exterior_d(w)) - integrate_boundary(w));
    };
    double g8 = gap(8), g16 = gap(16);
    CHECK(g16 < 1e-5);
    CHECK(g8 / g16 > 10.0);
}

TEST_CASE("linear operations and max_abs") {
    Grid g = t2(6);
    FormField a = rand_scalar(g, 1, 21), b = rand_scalar(g, 1, 22);
    FormField c = a + b - a;
    CHECK(max_abs(c - b) < 1e-15);
    FormField z = cplx(0.0) * a;
    CHECK(max_abs(z) == 0.0);
    CHECK_THROWS(void(a + scalar_form(g, 2)));
}
