#include "fkg/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace fkg {
namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
// Plans are created once per grid shape with FFTW_UNALIGNED so that
// fftw_execute_dft may run on any caller-provided buffers.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    PlanPair get(const std::vector<int>& counts) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(counts);
        if (it != plans_.end()) return it->second;

        std::size_t total = 1;
        for (int n : counts) total *= static_cast<std::size_t>(n);
        std::vector<fftw_complex> in(total), out(total);
        PlanPair p;
        p.fwd = fftw_plan_dft(static_cast<int>(counts.size()), counts.data(), in.data(),
                              out.data(), FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.bwd = fftw_plan_dft(static_cast<int>(counts.size()), counts.data(), in.data(),
                              out.data(), FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(counts, p);
        return p;
    }

private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::vector<int>, PlanPair> plans_;
};

// Parity (-1)^{k_1+...+k_d} of the multi-index; valid for even counts,
// where it coincides with the parity of the signed frequency index.
void apply_checkerboard(Field& f) {
    const auto& g = *f.grid();
    for_each_index(g, [&](std::size_t flat, const std::vector<int>& idx) {
        int s = 0;
        for (int v : idx) s += v;
        if (s & 1) f[flat] = -f[flat];
    });
}

} // namespace

Field forward_fft(const Field& f) {
    const auto& g = *f.grid();
    PlanPair plans = PlanCache::instance().get(g.counts());
    Field out(f.grid());
    auto* in_ptr = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(f.data()));
    auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plans.fwd, in_ptr, out_ptr);
    apply_checkerboard(out);
    const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
    out *= cplx(scale, 0.0);
    return out;
}

Field inverse_fft(const Field& fhat) {
    const auto& g = *fhat.grid();
    PlanPair plans = PlanCache::instance().get(g.counts());
    Field tmp = fhat;
    apply_checkerboard(tmp);
    Field out(fhat.grid());
    auto* in_ptr = reinterpret_cast<fftw_complex*>(tmp.data());
    auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plans.bwd, in_ptr, out_ptr);
    const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
    out *= cplx(scale, 0.0);
    return out;
}

Field convolve(const Field& f, const Field& g) {
    if (!f.grid()->same_as(*g.grid()))
        throw std::invalid_argument("convolve requires fields on the same grid");
    Field fh = forward_fft(f);
    Field gh = forward_fft(g);
    const double factor = f.grid()->cell_volume() * std::sqrt(static_cast<double>(f.grid()->size()));
    fh.hadamard(gh);
    fh *= cplx(factor, 0.0);
    return inverse_fft(fh);
}

} // namespace fkg
