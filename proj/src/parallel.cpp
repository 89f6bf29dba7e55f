#include "robinmc/parallel.hpp"

#include <algorithm>

namespace robinmc {

namespace {
unsigned g_max_threads = std::max(1u, std::thread::hardware_concurrency());
}

void set_max_threads(unsigned n) { g_max_threads = std::max(1u, n); }
unsigned max_threads() { return g_max_threads; }

}  // namespace robinmc
