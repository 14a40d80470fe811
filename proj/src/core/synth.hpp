#pragma once
// Deterministic closed-form test fields: band-limited Fourier forms (scalar
// and Lie-valued) and smooth torus self-maps. Everything is a pure function
// of the seed, so resampling at another resolution gives the same underlying
// object.

#include "core/liealg.hpp"
#include "core/maps.hpp"

namespace pql {

// Random band-limited scalar k-form: each component is a sum of `nmodes`
// cosine modes with |k|_inf <= kmax and amplitudes in [-amp, amp].
AnalyticForm fourier_scalar_form(int dim, int degree, int kmax, double amp, int nmodes,
                                 unsigned seed);

// Lie-valued variant: coefficients are real multiples of the algebra basis,
// so sampled values always satisfy the membership conditions exactly.
AnalyticForm fourier_lie_form(int dim, int degree, const LieAlgebra& alg, int kmax, double amp,
                              int nmodes, unsigned seed);

// x -> x + disp on the unit torus. Band-limited integrands make the missing
// mod-1 harmless.
SmoothMap torus_translation(std::span<const double> disp);

// Volume-distorting but invertible warp of the unit torus:
//   x_a -> x_a + eps * sin(2 pi (x_{a+1 mod d} + phase_a)).
// A diffeomorphism whenever |eps| < 1/(2 pi).
SmoothMap torus_warp(int dim, double eps, unsigned seed);

} // namespace pql
