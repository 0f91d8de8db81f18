#include "fkg/symbol.hpp"

#include "fkg/errors.hpp"
#include "fkg/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace fkg {
namespace {

double ipow(double x, int n) {
    double r = 1.0;
    for (double b = x; n > 0; n >>= 1, b *= b)
        if (n & 1) r *= b;
    return r;
}

} // namespace

RocklandSymbol::RocklandSymbol(DilationStructure dilation, std::vector<int> exponents)
    : dilation_(std::move(dilation)), exponents_(std::move(exponents)), nu_(0) {
    if (static_cast<int>(exponents_.size()) != dilation_.dim())
        throw ConfigError("symbol exponent count does not match dimension");
    for (std::size_t j = 0; j < exponents_.size(); ++j) {
        if (exponents_[j] < 1)
            throw ConfigError("symbol exponents must be positive integers");
        const Rational nu_j = Rational(2 * exponents_[j]) * dilation_.weight(static_cast<int>(j));
        if (j == 0) {
            nu_ = nu_j;
        } else if (nu_j != nu_) {
            throw ConfigError("inconsistent homogeneity: 2*m_j*v_j gives " + to_string(nu_j) +
                              " on axis " + std::to_string(j) + " but " + to_string(nu_) +
                              " on axis 0");
        }
    }
}

double RocklandSymbol::operator()(std::span<const double> xi) const {
    if (static_cast<int>(xi.size()) != dilation_.dim())
        throw std::invalid_argument("frequency dimension mismatch");
    double acc = 0.0;
    for (std::size_t j = 0; j < xi.size(); ++j) acc += ipow(xi[j], 2 * exponents_[j]);
    return acc;
}

std::vector<double> RocklandSymbol::values_on(const BoxGrid& grid) const {
    if (!(grid.dilation() == dilation_))
        throw std::invalid_argument("grid dilation structure does not match symbol");
    std::vector<double> out(grid.size());
    for_each_index(grid, [&](std::size_t flat, const std::vector<int>& idx) {
        double acc = 0.0;
        for (int j = 0; j < grid.dim(); ++j)
            acc += ipow(grid.freq(j, idx[static_cast<std::size_t>(j)]),
                        2 * exponents_[static_cast<std::size_t>(j)]);
        out[flat] = acc;
    });
    return out;
}

Field apply_power(const RocklandSymbol& a, double sigma, const Field& f) {
    if (sigma < 0.0) throw std::domain_error("apply_power requires sigma >= 0");
    if (sigma == 0.0) return f;
    Field fhat = forward_fft(f);
    const std::vector<double> av = a.values_on(*f.grid());
    for (std::size_t i = 0; i < fhat.size(); ++i)
        fhat[i] *= av[i] > 0.0 ? std::pow(av[i], sigma) : 0.0;
    return inverse_fft(fhat);
}

} // namespace fkg
