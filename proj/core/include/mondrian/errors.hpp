#pragma once

#include <stdexcept>
#include <string>

namespace mondrian {

// A configured work limit (span, node count, memo size) was hit before the
// computation finished. Callers report the result as indeterminate.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mondrian
