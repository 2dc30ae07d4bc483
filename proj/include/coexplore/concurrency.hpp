#pragma once

#include <condition_variable>
#include <cstddef>
#include <mutex>

namespace coexplore {

// Counting admission gate that also records the peak number of holders.
class AdmissionGate {
 public:
  explicit AdmissionGate(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

  void acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return in_flight_ < capacity_; });
    ++in_flight_;
    if (in_flight_ > peak_) peak_ = in_flight_;
  }

  void release() {
    {
      std::lock_guard lock(mutex_);
      --in_flight_;
    }
    cv_.notify_one();
  }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t peak() const {
    std::lock_guard lock(mutex_);
    return peak_;
  }

  class Ticket {
   public:
    explicit Ticket(AdmissionGate& gate) : gate_(gate) { gate_.acquire(); }
    ~Ticket() { gate_.release(); }
    Ticket(const Ticket&) = delete;
    Ticket& operator=(const Ticket&) = delete;

   private:
    AdmissionGate& gate_;
  };

 private:
  const std::size_t capacity_;
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::size_t in_flight_ = 0;
  std::size_t peak_ = 0;
};

}  // namespace coexplore
