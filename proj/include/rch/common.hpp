#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rch {

/// Raised for inputs that violate an operation's precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for malformed serialized graphs, colorings and configs.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

/// Outcome of a budgeted exhaustive search. `indeterminate` is never a
/// yes or a no.
enum class SearchStatus { complete, indeterminate };

inline std::string_view to_string(SearchStatus s) {
  return s == SearchStatus::complete ? "complete" : "indeterminate";
}

/// Counts backtracking nodes against a fixed limit.
class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t limit = kDefaultNodeBudget) : limit_(limit) {}

  /// Charges one node; false once the limit has been passed.
  bool spend() {
    ++used_;
    if (used_ > limit_) exhausted_ = true;
    return !exhausted_;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }
  SearchStatus status() const { return exhausted_ ? SearchStatus::indeterminate : SearchStatus::complete; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  bool exhausted_ = false;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

}  // namespace rch
