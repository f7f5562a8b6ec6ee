#include "pathlab/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

namespace pathlab {
namespace {

// The FFTW planner is not thread-safe; execution with new-array calls is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)), size(n) {
    if (data == nullptr) throw Error(ErrorCode::BudgetExceeded, "fftw_alloc_complex failed");
    std::memset(data, 0, sizeof(fftw_complex) * n);
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* data;
  std::size_t size;
};

}  // namespace

struct ToeplitzConvolver::Plans {
  explicit Plans(std::size_t m) : kernel_hat(m) {
    FftwBuffer scratch(m);
    std::lock_guard<std::mutex> lock(planner_mutex());
    const int len = static_cast<int>(m);
    forward = fftw_plan_dft_1d(len, scratch.data, scratch.data, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(len, scratch.data, scratch.data, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (forward == nullptr || backward == nullptr) throw Error(ErrorCode::BudgetExceeded, "FFTW planning failed");
  }
  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }

  FftwBuffer kernel_hat;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::size_t smooth_fft_size(std::size_t n) noexcept {
  std::size_t m = std::max<std::size_t>(n, 1);
  for (;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u, 7u}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

ToeplitzConvolver::ToeplitzConvolver(std::span<const ComplexAmplitude> kernel, std::size_t n)
    : n_(n), m_(smooth_fft_size(2 * n - 1)) {
  require(n >= 1, "ToeplitzConvolver: empty sequence length");
  require(kernel.size() == 2 * n - 1, "ToeplitzConvolver: kernel must have 2N - 1 entries");
  plans_ = std::make_unique<Plans>(m_);
  // Lag d = i - j sits at circular position d mod M.
  auto* k = reinterpret_cast<ComplexAmplitude*>(plans_->kernel_hat.data);
  for (std::size_t idx = 0; idx < kernel.size(); ++idx) {
    const auto lag = static_cast<std::ptrdiff_t>(idx) - static_cast<std::ptrdiff_t>(n - 1);
    const std::size_t pos = lag >= 0 ? static_cast<std::size_t>(lag) : m_ - static_cast<std::size_t>(-lag);
    k[pos] = kernel[idx];
  }
  fftw_execute_dft(plans_->forward, plans_->kernel_hat.data, plans_->kernel_hat.data);
}

ToeplitzConvolver::~ToeplitzConvolver() = default;
ToeplitzConvolver::ToeplitzConvolver(ToeplitzConvolver&&) noexcept = default;
ToeplitzConvolver& ToeplitzConvolver::operator=(ToeplitzConvolver&&) noexcept = default;

std::vector<ComplexAmplitude> ToeplitzConvolver::apply(std::span<const ComplexAmplitude> input) const {
  require(input.size() == n_, "ToeplitzConvolver::apply: input length mismatch");
  FftwBuffer work(m_);
  auto* w = reinterpret_cast<ComplexAmplitude*>(work.data);
  std::copy(input.begin(), input.end(), w);
  fftw_execute_dft(plans_->forward, work.data, work.data);
  const auto* k = reinterpret_cast<const ComplexAmplitude*>(plans_->kernel_hat.data);
  for (std::size_t i = 0; i < m_; ++i) w[i] *= k[i];
  fftw_execute_dft(plans_->backward, work.data, work.data);
  const double scale = 1.0 / static_cast<double>(m_);
  std::vector<ComplexAmplitude> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = w[i] * scale;
  return out;
}

}  // namespace pathlab
