#include "fkg/dilation.hpp"

#include "fkg/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace fkg {

DilationStructure::DilationStructure(std::vector<Rational> weights)
    : weights_(std::move(weights)), q_(0) {
    if (weights_.empty()) throw ConfigError("dilation structure needs at least one weight");
    for (const auto& v : weights_) {
        if (v <= Rational(0)) throw ConfigError("dilation weights must be positive, got " + to_string(v));
        q_ += v;
    }
}

DilationStructure DilationStructure::isotropic(int dim) {
    if (dim < 1) throw ConfigError("dimension must be positive");
    return DilationStructure(std::vector<Rational>(static_cast<std::size_t>(dim), Rational(1)));
}

std::vector<double> dilate(std::span<const double> x, double r, const DilationStructure& d) {
    if (!(r > 0.0)) throw std::domain_error("dilation parameter must be positive");
    if (static_cast<int>(x.size()) != d.dim())
        throw std::invalid_argument("point dimension does not match dilation structure");
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = std::pow(r, to_double(d.weights()[j])) * x[j];
    return out;
}

} // namespace fkg
