#pragma once

// Lexicographic enumeration of strictly increasing integer tuples and an
// order-preserving parallel map used by the survey drivers.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace lonely {

// Strictly increasing n-tuples from {1, ..., max_value}, lexicographic.
class TupleEnumerator {
 public:
  TupleEnumerator(std::int64_t n, std::int64_t max_value) : n_(n), max_(max_value) {
    if (n < 1) throw std::invalid_argument("tuple length must be positive");
    if (max_value < n) throw std::invalid_argument("max value must be at least the tuple length");
  }

  // Resumes strictly after `last`, which must itself be a valid tuple.
  static TupleEnumerator after(std::int64_t n, std::int64_t max_value, std::span<const std::int64_t> last) {
    TupleEnumerator e(n, max_value);
    if (static_cast<std::int64_t>(last.size()) != n) throw std::invalid_argument("resume tuple has wrong length");
    for (std::size_t i = 0; i < last.size(); ++i) {
      if (last[i] < 1 || last[i] > max_value || (i > 0 && last[i] <= last[i - 1])) {
        throw std::invalid_argument("resume tuple is not strictly increasing within range");
      }
    }
    e.cur_.assign(last.begin(), last.end());
    e.started_ = true;
    return e;
  }

  bool next(std::vector<std::int64_t>& out) {
    if (done_) return false;
    if (!started_) {
      started_ = true;
      cur_.resize(static_cast<std::size_t>(n_));
      for (std::int64_t i = 0; i < n_; ++i) cur_[static_cast<std::size_t>(i)] = i + 1;
      out = cur_;
      return true;
    }
    std::int64_t i = n_ - 1;
    while (i >= 0 && cur_[static_cast<std::size_t>(i)] == max_ - (n_ - 1 - i)) --i;
    if (i < 0) {
      done_ = true;
      return false;
    }
    ++cur_[static_cast<std::size_t>(i)];
    for (auto k = static_cast<std::size_t>(i) + 1; k < cur_.size(); ++k) cur_[k] = cur_[k - 1] + 1;
    out = cur_;
    return true;
  }

 private:
  std::int64_t n_;
  std::int64_t max_;
  std::vector<std::int64_t> cur_;
  bool started_ = false;
  bool done_ = false;
};

// results[k] = fn(items[k]); work is claimed in small chunks by `workers`
// threads, so output order never depends on scheduling.
template <class In, class Fn>
auto parallel_map(const std::vector<In>& items, unsigned workers, Fn fn) {
  using Out = decltype(fn(items.front()));
  std::vector<std::optional<Out>> slots(items.size());
  const std::size_t chunk = 16;
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t begin = cursor.fetch_add(chunk);
      if (begin >= items.size()) return;
      const std::size_t end = std::min(items.size(), begin + chunk);
      try {
        for (std::size_t k = begin; k < end; ++k) slots[k].emplace(fn(items[k]));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        cursor.store(items.size());
        return;
      }
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1 || items.size() <= chunk) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Out> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace lonely
