#include "skewlab/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace skewlab {

namespace {

int initial_threads() {
  if (const char* env = std::getenv("SKEWLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

std::atomic<int>& thread_setting() {
  static std::atomic<int> n{initial_threads()};
  return n;
}

}  // namespace

int default_threads() { return thread_setting().load(); }

void set_default_threads(int n) { thread_setting().store(n > 0 ? n : 1); }

}  // namespace skewlab
