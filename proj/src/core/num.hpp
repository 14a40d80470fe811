#pragma once
// Shared numeric utilities: compensated summation, quadrature rules,
// deterministic RNG, finite-difference helpers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace pql {

using cplx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846;
inline constexpr double TWO_PI = 2.0 * PI;

// ---------------------------------------------------------------------------
// Kahan (compensated) summation. All grid reductions go through this in a
// fixed traversal order so results are bitwise reproducible.
template <typename T>
class KahanSum {
public:
    void add(T v) {
        T y = v - c_;
        T t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    T value() const { return s_; }

private:
    T s_{};
    T c_{};
};

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes/weights on [0,1]. Computed once per order by Newton
// iteration on P_n; n stays small (<= 16) everywhere in this project.
struct Quadrature1D {
    std::vector<double> x;
    std::vector<double> w;
};

const Quadrature1D& gauss_legendre_01(int n);

// Adaptive composite Simpson on [a,b]. Deterministic subdivision order.
struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    int panels = 0;
};

AdaptiveResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                double tol, int max_panels);

// ---------------------------------------------------------------------------
// Central difference with one Richardson step: O(h^4) directional derivative.
// Only used by verification oracles, never by the production operators.
inline double fd_richardson(const std::function<double(double)>& f, double h) {
    double d1 = (f(h) - f(-h)) / (2.0 * h);
    double d2 = (f(h / 2.0) - f(-h / 2.0)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

// ---------------------------------------------------------------------------
// Deterministic RNG. We scale raw 64-bit draws ourselves instead of going
// through std distributions, so streams depend only on the seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    std::uint64_t raw() { return eng_(); }
    int index(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Smooth profile helpers for the bump/suspension gauge maps.

// Degree-9 polynomial step: S(0)=0, S(1)=1, C^4 junctions.
inline double smoothstep_c4(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double u2 = u * u;
    return u2 * u2 * u * (126.0 + u * (-420.0 + u * (540.0 + u * (-315.0 + u * 70.0))));
}

// C-infinity step with all derivatives vanishing at both ends.
inline double smoothstep_cinf(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = std::exp(-1.0 / u);
    double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

// Circular distance on R/Z.
inline double circle_dist(double a, double b) {
    double d = a - b;
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

inline double dist_to_integer(double a) {
    return std::abs(a - std::round(a));
}

} // namespace pql
