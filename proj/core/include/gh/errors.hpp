#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gh {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base class for distance-matrix validation failures.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ZeroDimension final : public ValidationError {
 public:
  ZeroDimension() : ValidationError("distance matrix must have side >= 1") {}
};

class ViolatedSymmetry final : public ValidationError {
 public:
  ViolatedSymmetry(std::size_t i, std::size_t j, double delta)
      : ValidationError("asymmetric entries at (" + std::to_string(i) + "," +
                        std::to_string(j) + "), |d_ij - d_ji| = " +
                        std::to_string(delta)),
        i(i), j(j), delta(delta) {}
  std::size_t i, j;
  double delta;
};

class NonZeroDiagonal final : public ValidationError {
 public:
  NonZeroDiagonal(std::size_t i, double value)
      : ValidationError("nonzero diagonal entry at (" + std::to_string(i) +
                        "," + std::to_string(i) + ") = " +
                        std::to_string(value)),
        i(i), value(value) {}
  std::size_t i;
  double value;
};

class NonPositiveOffDiagonal final : public ValidationError {
 public:
  NonPositiveOffDiagonal(std::size_t i, std::size_t j, double value)
      : ValidationError("non-positive off-diagonal entry at (" +
                        std::to_string(i) + "," + std::to_string(j) +
                        ") = " + std::to_string(value)),
        i(i), j(j), value(value) {}
  std::size_t i, j;
  double value;
};

class ViolatedTriangle final : public ValidationError {
 public:
  ViolatedTriangle(std::size_t i, std::size_t j, std::size_t k, double slack)
      : ValidationError("triangle inequality fails for (" + std::to_string(i) +
                        "," + std::to_string(j) + "," + std::to_string(k) +
                        "): d_ik - d_ij - d_jk = " + std::to_string(slack)),
        i(i), j(j), k(k), slack(slack) {}
  std::size_t i, j, k;
  double slack;
};

class IndexOutOfRange final : public Error {
 public:
  IndexOutOfRange(std::size_t index, std::size_t size)
      : Error("point index " + std::to_string(index) +
              " out of range for space of size " + std::to_string(size)),
        index(index), size(size) {}
  std::size_t index, size;
};

class DifferentAmbientSpaces final : public Error {
 public:
  DifferentAmbientSpaces()
      : Error("subsets live in different ambient spaces") {}
};

class NonPositiveScale final : public Error {
 public:
  explicit NonPositiveScale(double lambda)
      : Error("scale factor must be positive, got " + std::to_string(lambda)),
        lambda(lambda) {}
  double lambda;
};

class SizeMismatch final : public Error {
 public:
  SizeMismatch(std::size_t expected, std::size_t got)
      : Error("size mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)),
        expected(expected), got(got) {}
  std::size_t expected, got;
};

class OracleTooLarge final : public Error {
 public:
  OracleTooLarge(std::size_t nx, std::size_t ny, std::size_t cap)
      : Error("correspondence enumeration needs nx*ny <= " +
              std::to_string(cap) + ", got " + std::to_string(nx) + "*" +
              std::to_string(ny)),
        nx(nx), ny(ny), cap(cap) {}
  std::size_t nx, ny, cap;
};

class NonPositiveRadius final : public Error {
 public:
  explicit NonPositiveRadius(double radius)
      : Error("gluing radius must be positive, got " + std::to_string(radius)),
        radius(radius) {}
  double radius;
};

class RadiusTooSmall final : public Error {
 public:
  RadiusTooSmall(double radius, double required)
      : Error("gluing radius " + std::to_string(radius) +
              " is below half the correspondence distortion " +
              std::to_string(required)),
        radius(radius), required(required) {}
  double radius, required;
};

class EnumerationTooLarge final : public Error {
 public:
  explicit EnumerationTooLarge(const std::string& what) : Error(what) {}
};

/// Input file could not be read or parsed; message carries position info.
class ParseError final : public Error {
 public:
  using Error::Error;
};

}  // namespace gh
