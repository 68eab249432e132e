#include "leraylab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace leray {
namespace {

// FFTW's planner is not thread safe; executing distinct plans is.
// Plans are created with FFTW_ESTIMATE so the algorithm choice (and hence
// the exact floating-point result) does not depend on runtime measurements.
std::mutex planner_mutex;

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(const Grid& g) {
    static std::map<std::pair<int, int>, PlanPair> cache;
    std::lock_guard<std::mutex> lock(planner_mutex);
    auto key = std::make_pair(g.dim, g.n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<Complex> scratch(g.size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    int dims[3] = {g.n, g.n, g.n};
    PlanPair pp;
    pp.fwd = fftw_plan_dft(g.dim, dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    pp.bwd = fftw_plan_dft(g.dim, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!pp.fwd || !pp.bwd) throw std::runtime_error("fft: plan creation failed");
    return cache.emplace(key, pp).first->second;
}

}  // namespace

void fft_forward(const Grid& g, std::vector<Complex>& data) {
    if (data.size() != g.size()) throw std::invalid_argument("fft_forward: size mismatch");
    auto& pp = plans_for(g);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(pp.fwd, buf, buf);
}

void fft_backward(const Grid& g, std::vector<Complex>& data) {
    if (data.size() != g.size()) throw std::invalid_argument("fft_backward: size mismatch");
    auto& pp = plans_for(g);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(pp.bwd, buf, buf);
}

}  // namespace leray
