#pragma once

#include <vector>

#include "snls/common.hpp"

// Shared FFTW plumbing. Plans are created once per grid size with
// FFTW_ESTIMATE: ESTIMATE plan selection is deterministic, so roundoff (and
// therefore every CSV byte) is reproducible across reruns. Plans are built
// in-place on an internal buffer; caller arrays with the same alignment class
// execute directly, others go through the buffer.
//
// Orchestration is single-writer: engines are not meant to be shared by
// concurrent callers.

namespace snls::detail {

class FftEngine {
 public:
  explicit FftEngine(int n);
  ~FftEngine();
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  /// Unscaled FFTW transforms, in place.
  void forward_inplace(Complex* a);
  void backward_inplace(Complex* a);

  int n() const { return n_; }

 private:
  void execute(void* plan, Complex* a);

  int n_;
  std::vector<Complex> buffer_;
  void* plan_forward_ = nullptr;
  void* plan_backward_ = nullptr;
};

/// Cached engine per grid size.
FftEngine& engine_for(int n);

}  // namespace snls::detail
