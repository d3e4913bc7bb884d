#pragma once

#include <stdexcept>
#include <string>

namespace blowdown {

// A violated precondition or a request outside an operation's domain
// (bad parameter range, lattice mismatch, failed hypothesis).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two routes that must agree did not, or a ledger identity broke after an
// update. Always a bug somewhere, never bad input.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blowdown
