#pragma once

#include <stdexcept>
#include <string>

namespace bargmann {

// A potential or one of its derivatives produced a non-finite number.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// null_completion asked to solve h0 = 0 with a vanishing time component.
class NoTimeFlow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sampled path is too short or has non-advancing time.
class PathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two trajectories compared sample by sample do not share a grid.
class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace bargmann
