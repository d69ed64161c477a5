#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsde {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter or time argument lies outside the domain of the operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A time argument that must be a grid node is not one.
class NodeError : public Error {
  public:
    using Error::Error;
};

/// Parameters are individually valid but jointly inadmissible.
class ParameterError : public Error {
  public:
    using Error::Error;
};

class UnsupportedGridError : public Error {
  public:
    using Error::Error;
};

/// Cholesky factorization of a covariance matrix failed even after jitter.
class FactorizationError : public Error {
  public:
    FactorizationError(std::size_t leading_minor, const std::string& what);
    /// 1-based order of the leading minor that is not positive definite.
    [[nodiscard]] std::size_t leading_minor() const noexcept { return leading_minor_; }

  private:
    std::size_t leading_minor_;
};

/// Circulant embedding produced eigenvalues too negative to clamp.
class EmbeddingError : public Error {
  public:
    using Error::Error;
};

/// The Euler recurrence produced a non-finite or runaway state.
class BlowUpError : public Error {
  public:
    BlowUpError(std::size_t node, double time, const std::string& what);
    [[nodiscard]] std::size_t node() const noexcept { return node_; }
    [[nodiscard]] double time() const noexcept { return time_; }

  private:
    std::size_t node_;
    double time_;
};

class LookupError : public Error {
  public:
    using Error::Error;
};

/// An O(n^2) functional was asked to run above its configured node cap.
class CapacityError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace fsde
