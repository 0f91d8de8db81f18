#include "fkg/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

namespace fkg {

Field::Field(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), cplx(0.0, 0.0)) {}

Field::Field(GridPtr grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size())
        throw std::invalid_argument("field value count does not match grid size");
}

static void check_same_grid(const Field& a, const Field& b) {
    if (!a.grid()->same_as(*b.grid()))
        throw std::invalid_argument("fields live on different grids");
}

Field& Field::operator+=(const Field& other) {
    check_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    check_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

Field& Field::operator*=(cplx c) {
    for (auto& v : values_) v *= c;
    return *this;
}

Field& Field::hadamard(const Field& other) {
    check_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= other.values_[i];
    return *this;
}

double Field::lp_norm(double p) const {
    if (std::isinf(p)) return sup_norm();
    if (!(p >= 1.0)) throw std::domain_error("lp_norm requires p >= 1");
    double acc = 0.0;
    if (p == 2.0) {
        for (const auto& v : values_) acc += std::norm(v);
    } else {
        for (const auto& v : values_) acc += std::pow(std::abs(v), p);
    }
    return std::pow(grid_->cell_volume() * acc, 1.0 / p);
}

double Field::sup_norm() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool Field::has_nan() const {
    return std::any_of(values_.begin(), values_.end(), [](const cplx& v) {
        return !std::isfinite(v.real()) || !std::isfinite(v.imag());
    });
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx c, Field f) { return f *= c; }

Field sample(const GridPtr& grid, const std::function<cplx(std::span<const double>)>& f) {
    Field out(grid);
    std::vector<double> x(static_cast<std::size_t>(grid->dim()));
    for_each_index(*grid, [&](std::size_t flat, const std::vector<int>& idx) {
        for (int j = 0; j < grid->dim(); ++j)
            x[static_cast<std::size_t>(j)] = grid->coord(j, idx[static_cast<std::size_t>(j)]);
        out[flat] = f(x);
    });
    return out;
}

} // namespace fkg
