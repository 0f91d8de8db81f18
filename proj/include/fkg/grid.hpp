#pragma once

#include "fkg/dilation.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace fkg {

/// Uniform periodic grid on a centered box \prod_j [-L_j/2, L_j/2),
/// tied to the dilation structure it discretizes.
///
/// Node coordinates along axis j are x = (k - N_j/2) h_j for k in 0..N_j-1,
/// so the origin is always a node. Frequencies use the signed convention
/// k~ = k for k < N_j/2, k - N_j otherwise, with xi = 2 pi k~ / L_j.
/// Counts must be even and at least 4.
class BoxGrid {
public:
    BoxGrid(DilationStructure dims, std::vector<double> extents, std::vector<int> counts);

    int dim() const { return static_cast<int>(counts_.size()); }
    const DilationStructure& dilation() const { return dims_; }
    const std::vector<int>& counts() const { return counts_; }
    const std::vector<double>& extents() const { return extents_; }
    const std::vector<double>& spacings() const { return spacings_; }

    /// Total number of nodes, \prod_j N_j.
    std::size_t size() const { return size_; }
    /// Volume of one cell, \prod_j h_j.
    double cell_volume() const { return cell_volume_; }

    double coord(int axis, int index) const;
    /// Signed integer frequency index in [-N_j/2, N_j/2).
    int freq_index(int axis, int index) const;
    /// Continuous frequency 2 pi k~ / L_j.
    double freq(int axis, int index) const;

    /// Row-major flat index; the last axis varies fastest.
    std::size_t flat(const std::vector<int>& idx) const;
    std::vector<int> unflat(std::size_t flat_index) const;

    bool same_as(const BoxGrid& other) const;

private:
    DilationStructure dims_;
    std::vector<int> counts_;
    std::vector<double> extents_;
    std::vector<double> spacings_;
    std::vector<std::size_t> strides_;
    std::size_t size_;
    double cell_volume_;
};

using GridPtr = std::shared_ptr<const BoxGrid>;

GridPtr make_grid(DilationStructure dims, std::vector<double> extents, std::vector<int> counts);

/// Same box, node counts multiplied by factor on every axis.
GridPtr refined_grid(const BoxGrid& base, int factor);

/// Visits every multi-index of the grid in flat (row-major) order.
template <typename F>
void for_each_index(const BoxGrid& g, F&& f) {
    std::vector<int> idx(static_cast<std::size_t>(g.dim()), 0);
    const auto& n = g.counts();
    const std::size_t total = g.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        f(flat, idx);
        for (int axis = g.dim() - 1; axis >= 0; --axis) {
            if (++idx[static_cast<std::size_t>(axis)] < n[static_cast<std::size_t>(axis)]) break;
            idx[static_cast<std::size_t>(axis)] = 0;
        }
    }
}

} // namespace fkg
