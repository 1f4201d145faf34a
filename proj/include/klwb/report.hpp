#pragma once

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace klwb {

enum class Status { pass, fail, finding };
inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    default:
      return "finding";
  }
}

struct CheckResult {
  std::string check;
  std::string type;
  std::string orbit;  // representative, empty when not orbit-specific
  Status status = Status::pass;
  std::string detail;
  std::string witness;  // empty unless failing
};

inline bool all_pass(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (r.status == Status::fail) return false;
  return true;
}

// KLWB_THREADS or 1
inline int default_threads() {
  if (const char* e = std::getenv("KLWB_THREADS")) {
    int n = std::atoi(e);
    if (n > 0) return n;
  }
  return 1;
}

// Runs f(i) for i in [0, n) on up to `threads` workers; callers write into
// slot i so results stay in index order.
template <class F>
void parallel_for(int n, int threads, F f) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  const int k = threads < n ? threads : n;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(k));
  std::vector<std::thread> pool;
  for (int t = 0; t < k; ++t)
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < n; i += k) f(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace klwb
