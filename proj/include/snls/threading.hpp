#pragma once

namespace snls {

/// Applies the SNLS_THREADS environment variable (default 1) to OpenMP and the
/// FFT engine. Call once at process start; idempotent. A fixed thread count
/// pins the reduction trees and FFT plans, which is what makes reruns
/// byte-identical.
void configure_threads_from_env();

/// Thread count currently configured for kernels and transforms.
int configured_threads();

}  // namespace snls
