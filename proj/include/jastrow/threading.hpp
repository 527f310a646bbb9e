#ifndef JASTROW_THREADING_HPP
#define JASTROW_THREADING_HPP

namespace jastrow {

/// How a data-parallel kernel should run. Serial variants are kept as the
/// reference implementation; parallel variants must produce bit-identical
/// results (all kernels collect results by index).
enum class Execution { Serial, Parallel };

/// Worker-thread cap: min(OpenMP max threads, JASTROW_LAB_THREADS env var).
/// Returns 1 when built without OpenMP.
int max_threads();

}  // namespace jastrow

#endif
