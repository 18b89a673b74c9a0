#pragma once

#include <stdexcept>
#include <string>

namespace congestcut {

// Precondition or input-domain failure (empty cut side, eps out of range, ...).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Instance too large for an exponential-time routine.
struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant that must hold by construction was violated.
struct invariant_error : std::runtime_error {
  invariant_error(std::string condition_id, const std::string& what)
      : std::runtime_error(condition_id + ": " + what), condition(std::move(condition_id)) {}
  std::string condition;
};

// Simulator failures: bandwidth overflow, timeout, malformed tree.
struct sim_error : std::runtime_error {
  explicit sim_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace congestcut
