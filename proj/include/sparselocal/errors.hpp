#pragma once

#include <stdexcept>
#include <string>

namespace sparselocal {

// Raised when an operation would exceed an explicit resource cap (arc guard,
// verification subset cap, embedding cap, search node budget). Callers that
// can tolerate "don't know" catch this; everything else propagates.
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when exact scattered-set search gives up within its node budget.
// Distinct from capacity_error so callers can report "undecided" rather than
// a hard failure.
class undecided_error : public std::runtime_error {
 public:
  explicit undecided_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sparselocal
