#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <memory>

namespace matchcover {

class BudgetedTask;

/// Counts work units: one unit is one adjacency entry examined or one edge
/// moved. A meter owned by a BudgetedTask suspends the task when the current
/// slice's grant would be exceeded.
class WorkMeter {
 public:
  void charge(std::uint64_t units = 1);
  std::uint64_t total() const { return total_; }
  void reset() { total_ = 0; }

 private:
  friend class BudgetedTask;
  std::uint64_t total_ = 0;
  BudgetedTask* task_ = nullptr;
};

inline void charge(WorkMeter* meter, std::uint64_t units = 1) {
  if (meter) meter->charge(units);
}

/// A resumable computation. run(grant) executes the body until it finishes
/// or until this slice has consumed `grant` units.
/// Exceptions thrown by the body resurface from run().
class BudgetedTask {
 public:
  explicit BudgetedTask(std::function<void(WorkMeter&)> body);
  ~BudgetedTask();
  BudgetedTask(const BudgetedTask&) = delete;
  BudgetedTask& operator=(const BudgetedTask&) = delete;

  /// Returns the units consumed in this slice, never more than grant. A
  /// charge larger than what is left is split across slices.
  std::uint64_t run(std::uint64_t grant);
  /// Runs to completion without suspension.
  std::uint64_t finish();
  bool done() const { return done_; }
  std::uint64_t total() const { return meter_.total(); }

 private:
  friend class WorkMeter;
  void consume(std::uint64_t units);

  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::function<void(WorkMeter&)> body_;
  WorkMeter meter_;
  std::uint64_t grant_ = 0;
  std::uint64_t used_ = 0;
  bool unlimited_ = false;
  bool done_ = false;
  std::exception_ptr error_;
};

}  // namespace matchcover
