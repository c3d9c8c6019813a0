#pragma once

#include <stdexcept>
#include <string>

namespace plfiber {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A point where two cells overlap but their functionals disagree: the
// PLFunction2 is malformed.
struct ContinuityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Level set contains a full 2-cell.
struct DegenerateLevelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Radializing map requested on a plateau (f(x) in {0,1}).
struct PlateauError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive trace refinement exceeded its depth limit.
struct RefinementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PlacementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_no(line) {}
  int line_no;
};

struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace plfiber
