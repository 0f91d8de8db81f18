#include "fkg/presets.hpp"

#include "fkg/errors.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

namespace fkg {
namespace {

void check_box(const BoxGrid& grid, const std::vector<double>& extents) {
    if (grid.extents() != extents)
        throw std::invalid_argument("preset was built for a different box");
}

} // namespace

FieldFactory zero_preset() {
    return [](const GridPtr& grid) { return Field(grid); };
}

FieldFactory gaussian_preset(std::vector<double> center, double width, double amplitude) {
    if (!(width > 0.0)) throw ConfigError("gaussian preset width must be positive");
    return [=](const GridPtr& grid) {
        if (grid->dim() != static_cast<int>(center.size()))
            throw std::invalid_argument("gaussian center dimension mismatch");
        return sample(grid, [&](std::span<const double> x) {
            double r2 = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double d = x[j] - center[j];
                r2 += d * d;
            }
            return cplx(amplitude * std::exp(-r2 / (width * width)), 0.0);
        });
    };
}

FieldFactory plane_wave_preset(std::vector<int> mode, std::vector<double> extents) {
    return [=](const GridPtr& grid) {
        check_box(*grid, extents);
        if (grid->dim() != static_cast<int>(mode.size()))
            throw std::invalid_argument("plane wave mode dimension mismatch");
        constexpr double two_pi = 6.283185307179586476925286766559;
        std::vector<double> xi(mode.size());
        for (std::size_t j = 0; j < mode.size(); ++j) xi[j] = two_pi * mode[j] / extents[j];
        return sample(grid, [&](std::span<const double> x) {
            double phase = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) phase += xi[j] * x[j];
            return std::polar(1.0, phase);
        });
    };
}

FieldFactory random_bandlimited_preset(std::uint64_t seed, std::vector<int> band,
                                       std::vector<double> extents) {
    if (band.size() != extents.size()) throw ConfigError("band dimension mismatch");
    for (int b : band)
        if (b < 1) throw ConfigError("band limits must be positive");

    // Coefficients drawn once, in a fixed mode order, so every grid over
    // the same box sees the same function.
    struct Mode {
        std::vector<double> xi;
        double re, im;
    };
    auto modes = std::make_shared<std::vector<Mode>>();
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        constexpr double two_pi = 6.283185307179586476925286766559;
        std::size_t total = 1;
        for (int b : band) total *= static_cast<std::size_t>(2 * b + 1);
        for (std::size_t flat = 0; flat < total; ++flat) {
            Mode m;
            m.xi.resize(band.size());
            std::size_t rem = flat;
            for (std::size_t j = band.size(); j-- > 0;) {
                const auto span = static_cast<std::size_t>(2 * band[j] + 1);
                const int kj = static_cast<int>(rem % span) - band[j];
                rem /= span;
                m.xi[j] = two_pi * kj / extents[j];
            }
            m.re = coef(rng);
            m.im = coef(rng);
            modes->push_back(std::move(m));
        }
    }

    return [modes, extents](const GridPtr& grid) {
        check_box(*grid, extents);
        return sample(grid, [&](std::span<const double> x) {
            double acc = 0.0;
            for (const auto& m : *modes) {
                double phase = 0.0;
                for (std::size_t j = 0; j < x.size(); ++j) phase += m.xi[j] * x[j];
                acc += m.re * std::cos(phase) + m.im * std::sin(phase);
            }
            return cplx(acc, 0.0);
        });
    };
}

std::function<double(std::span<const double>)> gaussian_bump(std::vector<double> center,
                                                             double width, double amplitude) {
    if (!(width > 0.0)) throw ConfigError("bump width must be positive");
    if (amplitude < 0.0) throw ConfigError("bump amplitude must be nonnegative");
    return [=](std::span<const double> x) {
        double r2 = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double d = x[j] - center[j];
            r2 += d * d;
        }
        return amplitude * std::exp(-r2 / (width * width));
    };
}

} // namespace fkg
