#pragma once

#include "fkg/field.hpp"

namespace fkg {

/// Unitary discrete Fourier transform adapted to the centered grid:
///   fhat(k) = M^{-1/2} sum_n f(x_n) exp(-i xi_k . x_n),  M = prod_j N_j,
/// with x_n the node coordinates and xi_k the signed frequencies of the
/// grid. Satisfies cellVol * sum |f|^2 = cellVol * sum |fhat|^2 exactly,
/// and maps the pure mode exp(i xi_K . x) to sqrt(M) at index K.
Field forward_fft(const Field& f);
Field inverse_fft(const Field& fhat);

/// Periodic convolution, (f*g)(x) = cellVol * sum_y f(y) g(x-y) with wrap;
/// computed spectrally as cellVol * sqrt(M) * fhat . ghat.
Field convolve(const Field& f, const Field& g);

} // namespace fkg
