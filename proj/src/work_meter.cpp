#include "matchcover/work_meter.hpp"

#include <boost/context/fiber.hpp>
#include <boost/context/fixedsize_stack.hpp>
#include <limits>
#include <utility>

namespace matchcover {

namespace ctx = boost::context;

struct BudgetedTask::Impl {
  ctx::fiber task;
  ctx::fiber caller;
};

void WorkMeter::charge(std::uint64_t units) {
  if (task_) task_->consume(units);
  total_ += units;
}

BudgetedTask::BudgetedTask(std::function<void(WorkMeter&)> body)
    : impl_(std::make_unique<Impl>()), body_(std::move(body)) {
  meter_.task_ = this;
  impl_->task = ctx::fiber(std::allocator_arg, ctx::fixedsize_stack(4 << 20),
                           [this](ctx::fiber&& caller) {
                             impl_->caller = std::move(caller);
                             try {
                               body_(meter_);
                             } catch (const ctx::detail::forced_unwind&) {
                               throw;
                             } catch (...) {
                               error_ = std::current_exception();
                             }
                             done_ = true;
                             return std::move(impl_->caller);
                           });
}

BudgetedTask::~BudgetedTask() = default;

void BudgetedTask::consume(std::uint64_t units) {
  if (unlimited_) {
    used_ += units;
    return;
  }
  // A bulk charge stands for a loop; spread it over as many slices as needed.
  while (used_ + units > grant_) {
    units -= grant_ - used_;
    used_ = grant_;
    impl_->caller = std::move(impl_->caller).resume();
  }
  used_ += units;
}

std::uint64_t BudgetedTask::run(std::uint64_t grant) {
  if (done_ || grant == 0) return 0;
  grant_ = grant;
  used_ = 0;
  impl_->task = std::move(impl_->task).resume();
  if (error_) {
    auto e = std::exchange(error_, nullptr);
    std::rethrow_exception(e);
  }
  return used_;
}

std::uint64_t BudgetedTask::finish() {
  unlimited_ = true;
  const std::uint64_t used = run(std::numeric_limits<std::uint64_t>::max());
  unlimited_ = false;
  return used;
}

}  // namespace matchcover
