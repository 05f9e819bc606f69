#pragma once

namespace entropic {

/// Every data-parallel kernel keeps a serial reference path selected by this flag.
/// Both paths must return identical results.
enum class Exec { Serial, Parallel };

/// Number of OpenMP threads parallel kernels will use.
int thread_count();
void set_thread_count(int threads);

}  // namespace entropic
