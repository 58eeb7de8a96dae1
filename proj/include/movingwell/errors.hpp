#pragma once

#include <stdexcept>
#include <string>

namespace movingwell {

/// Base of every failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Walls met or crossed: w(t) <= 0.
class WallCollision : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class FrameMismatch : public Error {
 public:
  using Error::Error;
};

/// Intersection point requested for parallel walls (it lies at infinity).
class ParallelWalls : public Error {
 public:
  using Error::Error;
};

class Singularity : public Error {
 public:
  using Error::Error;
};

class DegeneratePacket : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A rescaled time p/q that the trajectory never reaches.
class UnreachableTau : public Error {
 public:
  UnreachableTau(const std::string& what, double supremum)
      : Error(what), supremum_(supremum) {}
  /// Largest attainable tau' (may be +inf if the obstruction is a collision).
  double supremum() const { return supremum_; }

 private:
  double supremum_;
};

}  // namespace movingwell
