#pragma once

#include "fkg/grid.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace fkg {

using cplx = std::complex<double>;

/// Complex-valued samples on a BoxGrid, stored flat in row-major order.
class Field {
public:
    explicit Field(GridPtr grid);
    Field(GridPtr grid, std::vector<cplx> values);

    const GridPtr& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    cplx* data() { return values_.data(); }
    const cplx* data() const { return values_.data(); }
    cplx& operator[](std::size_t i) { return values_[i]; }
    const cplx& operator[](std::size_t i) const { return values_[i]; }
    std::vector<cplx>& values() { return values_; }
    const std::vector<cplx>& values() const { return values_; }

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(cplx c);
    /// Pointwise product with another field on the same grid.
    Field& hadamard(const Field& other);

    /// Discrete L^p norm, (cellVol * sum |f|^p)^{1/p}; p = inf gives sup norm.
    double lp_norm(double p) const;
    double l2_norm() const { return lp_norm(2.0); }
    double sup_norm() const;

    bool has_nan() const;

private:
    GridPtr grid_;
    std::vector<cplx> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx c, Field f);

/// Samples f(x) at every node of the grid.
Field sample(const GridPtr& grid, const std::function<cplx(std::span<const double>)>& f);

/// Re-evaluates a closed-form function on a different grid; used when a
/// sweep refines resolution and needs the same data on the finer grid.
using FieldFactory = std::function<Field(const GridPtr&)>;

} // namespace fkg
