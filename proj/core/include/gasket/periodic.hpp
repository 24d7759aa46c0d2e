#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "gasket/errors.hpp"

namespace gasket {

/// An eventually periodic sequence u v v v ... held in canonical form:
/// the period is primitive and the preperiod is as short as possible.
/// Two values compare equal iff they describe the same infinite sequence.
template <class Symbol>
class EventuallyPeriodic {
 public:
  using value_type = Symbol;

  EventuallyPeriodic(std::vector<Symbol> preperiod, std::vector<Symbol> period)
      : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw DomainError("eventually periodic sequence needs a nonempty period");
    canonicalize();
  }

  static EventuallyPeriodic constant(Symbol s) { return EventuallyPeriodic({}, {s}); }

  const std::vector<Symbol>& preperiod() const noexcept { return preperiod_; }
  const std::vector<Symbol>& period() const noexcept { return period_; }
  std::size_t preperiod_length() const noexcept { return preperiod_.size(); }
  std::size_t period_length() const noexcept { return period_.size(); }

  /// Term at 0-based position `index`.
  Symbol operator[](std::size_t index) const noexcept {
    if (index < preperiod_.size()) return preperiod_[index];
    return period_[(index - preperiod_.size()) % period_.size()];
  }

  std::vector<Symbol> prefix(std::size_t length) const {
    std::vector<Symbol> out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i) out.push_back((*this)[i]);
    return out;
  }

  /// Left shift by `count` positions.
  EventuallyPeriodic shifted(std::size_t count) const {
    if (count < preperiod_.size()) {
      return EventuallyPeriodic({preperiod_.begin() + static_cast<std::ptrdiff_t>(count), preperiod_.end()},
                                period_);
    }
    const std::size_t k = (count - preperiod_.size()) % period_.size();
    std::vector<Symbol> rotated(period_);
    std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(k), rotated.end());
    return EventuallyPeriodic({}, std::move(rotated));
  }

  template <class F>
  auto transformed(F f) const -> EventuallyPeriodic<std::invoke_result_t<F, Symbol>> {
    using Out = std::invoke_result_t<F, Symbol>;
    std::vector<Out> pre, per;
    pre.reserve(preperiod_.size());
    per.reserve(period_.size());
    for (const auto& s : preperiod_) pre.push_back(f(s));
    for (const auto& s : period_) per.push_back(f(s));
    return EventuallyPeriodic<Out>(std::move(pre), std::move(per));
  }

  friend bool operator==(const EventuallyPeriodic&, const EventuallyPeriodic&) = default;

 private:
  void canonicalize() {
    const std::size_t p = period_.size();
    for (std::size_t d = 1; d < p; ++d) {
      if (p % d != 0) continue;
      bool periodic = true;
      for (std::size_t i = d; i < p && periodic; ++i) periodic = period_[i] == period_[i - d];
      if (periodic) {
        period_.resize(d);
        break;
      }
    }
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
      std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
      preperiod_.pop_back();
    }
  }

  std::vector<Symbol> preperiod_;
  std::vector<Symbol> period_;
};

/// Zip two eventually periodic sequences positionwise with `combine`.
/// The raw result has preperiod max(|u1|,|u2|) and period lcm(|v1|,|v2|).
template <class A, class B, class F>
auto zip_with(const EventuallyPeriodic<A>& a, const EventuallyPeriodic<B>& b, F combine)
    -> EventuallyPeriodic<std::invoke_result_t<F, A, B>> {
  using Out = std::invoke_result_t<F, A, B>;
  const std::size_t pre = std::max(a.preperiod_length(), b.preperiod_length());
  const std::size_t per = std::lcm(a.period_length(), b.period_length());
  std::vector<Out> head, cycle;
  head.reserve(pre);
  cycle.reserve(per);
  for (std::size_t i = 0; i < pre; ++i) head.push_back(combine(a[i], b[i]));
  for (std::size_t i = pre; i < pre + per; ++i) cycle.push_back(combine(a[i], b[i]));
  return EventuallyPeriodic<Out>(std::move(head), std::move(cycle));
}

}  // namespace gasket

template <class Symbol>
struct std::hash<gasket::EventuallyPeriodic<Symbol>> {
  std::size_t operator()(const gasket::EventuallyPeriodic<Symbol>& s) const noexcept {
    std::size_t h = s.preperiod_length() * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (const auto& x : s.preperiod()) mix(std::hash<Symbol>{}(x));
    mix(0xfeedULL);
    for (const auto& x : s.period()) mix(std::hash<Symbol>{}(x));
    return h;
  }
};
