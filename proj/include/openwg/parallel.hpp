#pragma once

#include <functional>

namespace openwg {

/// 0 = auto (hardware concurrency).
void set_num_threads(int n);
int num_threads();

/// Deterministic parallel loop: disjoint index ranges, no reductions.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace openwg
