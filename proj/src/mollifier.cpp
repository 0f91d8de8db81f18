#include "fkg/mollifier.hpp"

#include "fkg/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <vector>

namespace fkg {
namespace {

double bump_radial(double r2) { return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0; }

// Integral of exp(-1/(1-|x|^2)) over the unit ball of R^d, reduced to the
// radial integral S_{d-1} * int_0^1 r^{d-1} exp(-1/(1-r^2)) dr with a
// midpoint rule far finer than any working grid.
double bump_integral(int dim) {
    const int n = 1 << 20;
    const double h = 1.0 / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = (i + 0.5) * h;
        acc += std::pow(r, dim - 1) * bump_radial(r * r);
    }
    const double pi = 3.14159265358979323846;
    const double sphere_area = 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim);
    return sphere_area * acc * h;
}

double cached_normalization(int dim) {
    static std::mutex mutex;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(dim);
    if (it == cache.end()) it = cache.emplace(dim, 1.0 / bump_integral(dim)).first;
    return it->second;
}

} // namespace

MollifierProfile::MollifierProfile(int dim) : dim_(dim), c_(0.0) {
    if (dim < 1) throw ConfigError("mollifier dimension must be positive");
    c_ = cached_normalization(dim);
}

double MollifierProfile::operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("mollifier point dimension mismatch");
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return c_ * bump_radial(r2);
}

bool mollifier_resolved(double eps, const BoxGrid& grid) {
    const DilationStructure& d = grid.dilation();
    for (int j = 0; j < grid.dim(); ++j) {
        const double radius = std::pow(eps, to_double(d.weight(j)));
        if (!(radius > 2.0 * grid.spacings()[static_cast<std::size_t>(j)])) return false;
    }
    return true;
}

Field mollifier_scale(double eps, const GridPtr& grid, MollifierDiagnostics* diag) {
    if (!(eps > 0.0) || eps > 1.0) throw std::domain_error("mollifier scale requires eps in (0,1]");
    const DilationStructure& d = grid->dilation();

    int min_nodes = 0;
    for (int j = 0; j < grid->dim(); ++j) {
        const double radius = std::pow(eps, to_double(d.weight(j)));
        const double h = grid->spacings()[static_cast<std::size_t>(j)];
        if (radius > 0.5 * grid->extents()[static_cast<std::size_t>(j)]) {
            std::ostringstream msg;
            msg << "mollifier support radius " << radius << " exceeds half extent on axis " << j;
            throw ResolutionError(msg.str());
        }
        const int nodes = 2 * static_cast<int>(std::ceil(radius / h)) - 1;
        min_nodes = j == 0 ? nodes : std::min(min_nodes, nodes);
        if (!(radius > 2.0 * h)) {
            std::ostringstream msg;
            msg << "mollifier at eps=" << eps << " spans only " << nodes
                << " nodes on axis " << j << " (need at least 4)";
            throw ResolutionError(msg.str());
        }
    }

    const MollifierProfile psi(grid->dim());
    const double amp = std::pow(eps, -d.q());
    Field out(grid);
    std::vector<double> y(static_cast<std::size_t>(grid->dim()));
    for_each_index(*grid, [&](std::size_t flat, const std::vector<int>& idx) {
        for (int j = 0; j < grid->dim(); ++j)
            y[static_cast<std::size_t>(j)] = grid->coord(j, idx[static_cast<std::size_t>(j)]) /
                                             std::pow(eps, to_double(d.weight(j)));
        out[flat] = amp * psi(y);
    });

    double raw_mass = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) raw_mass += out[i].real();
    raw_mass *= grid->cell_volume();
    if (!(raw_mass > 0.0)) throw NumericalError("mollifier sampled to zero mass");
    out *= cplx(1.0 / raw_mass, 0.0);

    if (diag) {
        diag->raw_mass = raw_mass;
        diag->min_axis_nodes = min_nodes;
    }
    return out;
}

} // namespace fkg
