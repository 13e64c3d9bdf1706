#include "scalpos/parallel.hpp"

namespace scalpos {

namespace {
int g_max_threads = 0;  // 0 = hardware concurrency
}

int max_threads() { return g_max_threads; }
void set_max_threads(int n) { g_max_threads = n; }

}  // namespace scalpos
