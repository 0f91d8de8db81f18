#pragma once

#include "fkg/dilation.hpp"
#include "fkg/field.hpp"

#include <span>
#include <vector>

namespace fkg {

/// Nonnegative Fourier multiplier a(xi) = sum_j xi_j^{2 m_j} with positive
/// integer exponents m_j. The homogeneous degree nu = 2 m_j v_j must come
/// out identical for every axis (checked exactly in rational arithmetic),
/// which gives a(D_r xi) = r^nu a(xi).
class RocklandSymbol {
public:
    RocklandSymbol(DilationStructure dilation, std::vector<int> exponents);

    const DilationStructure& dilation() const { return dilation_; }
    const std::vector<int>& exponents() const { return exponents_; }
    Rational degree_exact() const { return nu_; }
    double degree() const { return to_double(nu_); }

    double operator()(std::span<const double> xi) const;

    /// a(xi_k) at every node of the frequency lattice, in storage order.
    std::vector<double> values_on(const BoxGrid& grid) const;

private:
    DilationStructure dilation_;
    std::vector<int> exponents_;
    Rational nu_;
};

/// Spectral multiplier a(xi)^sigma. sigma = 0 short-circuits to the
/// identity; sigma > 0 annihilates the zero mode since a(0) = 0;
/// sigma < 0 is rejected.
Field apply_power(const RocklandSymbol& a, double sigma, const Field& f);

} // namespace fkg
