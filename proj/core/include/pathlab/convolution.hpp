#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "pathlab/amplitude.hpp"

namespace pathlab {

/// Linear convolution of length-N sequences with a fixed Toeplitz kernel:
///
///   out[i] = sum_j kernel[i - j + N - 1] * in[j],   0 <= i, j < N.
///
/// `kernel` has 2N - 1 entries indexed by the lag i - j shifted by N - 1.
/// Evaluated by FFT on a circular buffer of length >= 2N - 1, so the result
/// carries no wrap-around. `apply` is const and reentrant.
class ToeplitzConvolver {
 public:
  ToeplitzConvolver(std::span<const ComplexAmplitude> kernel, std::size_t n);
  ~ToeplitzConvolver();
  ToeplitzConvolver(ToeplitzConvolver&&) noexcept;
  ToeplitzConvolver& operator=(ToeplitzConvolver&&) noexcept;
  ToeplitzConvolver(const ToeplitzConvolver&) = delete;
  ToeplitzConvolver& operator=(const ToeplitzConvolver&) = delete;

  std::size_t size() const noexcept { return n_; }
  std::size_t transform_size() const noexcept { return m_; }

  std::vector<ComplexAmplitude> apply(std::span<const ComplexAmplitude> input) const;

 private:
  struct Plans;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::unique_ptr<Plans> plans_;
};

/// Smallest integer >= n whose only prime factors are 2, 3, 5 and 7.
std::size_t smooth_fft_size(std::size_t n) noexcept;

}  // namespace pathlab
