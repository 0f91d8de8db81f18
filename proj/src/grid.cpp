#include "fkg/grid.hpp"

#include "fkg/errors.hpp"

#include <stdexcept>

namespace fkg {

BoxGrid::BoxGrid(DilationStructure dims, std::vector<double> extents, std::vector<int> counts)
    : dims_(std::move(dims)), counts_(std::move(counts)), extents_(std::move(extents)) {
    if (counts_.empty()) throw ConfigError("grid needs at least one axis");
    if (counts_.size() != extents_.size())
        throw ConfigError("grid counts and extents must have the same dimension");
    if (static_cast<int>(counts_.size()) != dims_.dim())
        throw ConfigError("grid dimension does not match dilation structure");
    size_ = 1;
    cell_volume_ = 1.0;
    spacings_.resize(counts_.size());
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        const int n = counts_[j];
        if (n < 4 || n % 2 != 0)
            throw ConfigError("grid counts must be even and at least 4, got " + std::to_string(n));
        if (!(extents_[j] > 0.0)) throw ConfigError("grid extents must be positive");
        spacings_[j] = extents_[j] / n;
        size_ *= static_cast<std::size_t>(n);
        cell_volume_ *= spacings_[j];
    }
    strides_.assign(counts_.size(), 1);
    for (std::size_t j = counts_.size() - 1; j-- > 0;)
        strides_[j] = strides_[j + 1] * static_cast<std::size_t>(counts_[j + 1]);
}

double BoxGrid::coord(int axis, int index) const {
    const int n = counts_[static_cast<std::size_t>(axis)];
    return (index - n / 2) * spacings_[static_cast<std::size_t>(axis)];
}

int BoxGrid::freq_index(int axis, int index) const {
    const int n = counts_[static_cast<std::size_t>(axis)];
    return index < n / 2 ? index : index - n;
}

double BoxGrid::freq(int axis, int index) const {
    constexpr double two_pi = 6.283185307179586476925286766559;
    return two_pi * freq_index(axis, index) / extents_[static_cast<std::size_t>(axis)];
}

std::size_t BoxGrid::flat(const std::vector<int>& idx) const {
    if (idx.size() != counts_.size()) throw std::invalid_argument("index dimension mismatch");
    std::size_t f = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] < 0 || idx[j] >= counts_[j]) throw std::out_of_range("grid index out of range");
        f += strides_[j] * static_cast<std::size_t>(idx[j]);
    }
    return f;
}

std::vector<int> BoxGrid::unflat(std::size_t flat_index) const {
    if (flat_index >= size_) throw std::out_of_range("flat index out of range");
    std::vector<int> idx(counts_.size());
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        idx[j] = static_cast<int>(flat_index / strides_[j]);
        flat_index %= strides_[j];
    }
    return idx;
}

bool BoxGrid::same_as(const BoxGrid& other) const {
    return counts_ == other.counts_ && extents_ == other.extents_ && dims_ == other.dims_;
}

GridPtr make_grid(DilationStructure dims, std::vector<double> extents, std::vector<int> counts) {
    return std::make_shared<const BoxGrid>(std::move(dims), std::move(extents), std::move(counts));
}

GridPtr refined_grid(const BoxGrid& base, int factor) {
    if (factor < 1) throw std::invalid_argument("refinement factor must be positive");
    std::vector<int> counts = base.counts();
    for (int& n : counts) n *= factor;
    return make_grid(base.dilation(), base.extents(), counts);
}

} // namespace fkg
