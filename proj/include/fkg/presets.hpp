#pragma once

#include "fkg/field.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fkg {

/// Initial-data recipes as grid-independent closed forms, so a sweep that
/// refines its grid re-samples the same function rather than a resampled
/// approximation.

FieldFactory zero_preset();

/// amplitude * exp(-|x - center|^2 / width^2), complex-valued real field.
FieldFactory gaussian_preset(std::vector<double> center, double width, double amplitude);

/// exp(i xi . x) with xi_j = 2 pi mode_j / L_j; extents pin the physical
/// frequency so the same mode appears on any refinement of the box.
FieldFactory plane_wave_preset(std::vector<int> mode, std::vector<double> extents);

/// Real trigonometric sum over |k_j| <= band_j with coefficients drawn
/// from the seeded generator; identical on every grid over the same box.
FieldFactory random_bandlimited_preset(std::uint64_t seed, std::vector<int> band,
                                       std::vector<double> extents);

/// Closed-form C0 mass bump amplitude * exp(-|x - center|^2 / width^2).
std::function<double(std::span<const double>)> gaussian_bump(std::vector<double> center,
                                                             double width, double amplitude);

} // namespace fkg
