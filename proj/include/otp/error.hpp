#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace otp {

/// Bad input: violated precondition, malformed parameter, infeasible budget.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by tree-only operations when the graph has a cycle or is disconnected.
class NotATree : public InvalidArgument {
 public:
  NotATree() : InvalidArgument("graph is not a tree") {}
};

/// A sampled branching process died out below the requested size.
class DegenerateTree : public std::runtime_error {
 public:
  explicit DegenerateTree(std::size_t nodes)
      : std::runtime_error("degenerate tree with " + std::to_string(nodes) + " node(s)"),
        nodes_(nodes) {}
  std::size_t nodes() const noexcept { return nodes_; }

 private:
  std::size_t nodes_;
};

/// The equilibrium linear system could not be solved to tolerance.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public IoError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : IoError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace otp
