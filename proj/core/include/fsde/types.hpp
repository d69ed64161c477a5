#pragma once

namespace fsde {

/// Hurst index of the fractional driver, restricted to the regime 1/2 < H < 1.
class HurstParameter {
  public:
    explicit HurstParameter(double value);
    [[nodiscard]] double value() const noexcept { return value_; }
    friend bool operator==(HurstParameter, HurstParameter) = default;

  private:
    double value_;
};

/// Order of the W_0^{alpha,infty} family: 0 < alpha < 1/2.
class AlphaParameter {
  public:
    explicit AlphaParameter(double value);
    [[nodiscard]] double value() const noexcept { return value_; }
    friend bool operator==(AlphaParameter, AlphaParameter) = default;

  private:
    double value_;
};

/// Order of a fractional integral or derivative: 0 < order < 1.
class FracOrder {
  public:
    explicit FracOrder(double value);
    FracOrder(AlphaParameter alpha) : value_(alpha.value()) {}  // NOLINT: every alpha is an order
    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] FracOrder complement() const { return FracOrder(1.0 - value_); }
    friend bool operator==(FracOrder, FracOrder) = default;

  private:
    double value_;
};

}  // namespace fsde
