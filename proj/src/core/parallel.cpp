#include "ipsjoin/core/parallel.hpp"

#include <atomic>

namespace ipsjoin {
namespace {
std::atomic<unsigned> g_threads{1};
}

unsigned default_threads() { return g_threads.load(); }
void set_default_threads(unsigned threads) { g_threads.store(threads == 0 ? 1 : threads); }

}  // namespace ipsjoin
