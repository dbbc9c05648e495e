#pragma once

#include <stdexcept>
#include <string>

namespace ideal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coincident or otherwise degenerate points handed to a cross-ratio,
/// Moebius or incircle routine.
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

class InvalidHeight : public Error {
 public:
  using Error::Error;
};

/// The input configuration does not span a solid polyhedron (all points
/// on one circle of the sphere).
class FlatConfiguration : public Error {
 public:
  using Error::Error;
};

/// A point configuration violating separation, labelling or size rules.
class InvalidConfiguration : public Error {
 public:
  using Error::Error;
};

class InvalidTriangulation : public Error {
 public:
  using Error::Error;
};

class IllegalFlip : public Error {
 public:
  using Error::Error;
};

class LabelMismatch : public Error {
 public:
  using Error::Error;
};

class ResourceBound : public Error {
 public:
  using Error::Error;
};

class TooFewCusps : public Error {
 public:
  using Error::Error;
};

class IncompleteStructure : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the offending location in its message.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ideal
