#pragma once

// Number types and square matrices over the natural and arctic semirings.
//
// Certificate checking uses BigInt (exact).  Searches instantiate the same
// templates with std::int64_t and report overflow by throwing, so a
// candidate that overflows is simply discarded.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace relsrs {

  using BigInt   = boost::multiprecision::cpp_int;
  using Rational = boost::multiprecision::cpp_rational;

  struct ArithmeticOverflow : std::overflow_error {
    ArithmeticOverflow() : std::overflow_error("int64 overflow") {}
  };

  inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
      throw ArithmeticOverflow();
    }
    return r;
  }
  inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
      throw ArithmeticOverflow();
    }
    return r;
  }
  inline BigInt checked_add(BigInt const& a, BigInt const& b) {
    return a + b;
  }
  inline BigInt checked_mul(BigInt const& a, BigInt const& b) {
    return a * b;
  }

  // An element of Z u {-inf}.  -inf is a separate state, not a magic number.
  template <typename Int>
  class BasicArctic {
   public:
    BasicArctic() = default;  // -inf
    explicit BasicArctic(Int v) : finite_(true), value_(std::move(v)) {}

    static BasicArctic neg_inf() {
      return BasicArctic();
    }

    bool is_neg_inf() const noexcept {
      return !finite_;
    }
    bool is_finite() const noexcept {
      return finite_;
    }
    Int const& value() const {
      if (!finite_) {
        throw std::logic_error("value of -inf");
      }
      return value_;
    }

    // arctic addition: max
    friend BasicArctic arctic_max(BasicArctic const& x, BasicArctic const& y) {
      return x < y ? y : x;
    }
    // arctic multiplication: +, with -inf absorbing
    friend BasicArctic arctic_plus(BasicArctic const& x, BasicArctic const& y) {
      if (!x.finite_ || !y.finite_) {
        return BasicArctic();
      }
      return BasicArctic(checked_add(x.value_, y.value_));
    }

    friend bool operator==(BasicArctic const& x, BasicArctic const& y) {
      return x.finite_ == y.finite_ && (!x.finite_ || x.value_ == y.value_);
    }
    friend bool operator<(BasicArctic const& x, BasicArctic const& y) {
      if (!x.finite_) {
        return y.finite_;
      }
      return y.finite_ && x.value_ < y.value_;
    }
    friend bool operator>(BasicArctic const& x, BasicArctic const& y) {
      return y < x;
    }
    friend bool operator>=(BasicArctic const& x, BasicArctic const& y) {
      return !(x < y);
    }
    friend bool operator<=(BasicArctic const& x, BasicArctic const& y) {
      return !(y < x);
    }

    /// x >> y: x > y, or both are -inf.
    friend bool much_greater(BasicArctic const& x, BasicArctic const& y) {
      return (!x.finite_ && !y.finite_) || y < x;
    }

   private:
    bool finite_ = false;
    Int  value_{};
  };

  using Arctic = BasicArctic<BigInt>;

  template <typename T>
  class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t dim, T fill) : dim_(dim), data_(dim * dim, fill) {}

    std::size_t dim() const noexcept {
      return dim_;
    }
    T& operator()(std::size_t i, std::size_t j) {
      return data_[i * dim_ + j];
    }
    T const& operator()(std::size_t i, std::size_t j) const {
      return data_[i * dim_ + j];
    }
    std::vector<T> const& entries() const noexcept {
      return data_;
    }
    bool operator==(Matrix const&) const = default;

   private:
    std::size_t    dim_ = 0;
    std::vector<T> data_;
  };

  template <typename Int>
  struct NaturalSemiring {
    using value_type = Int;
    static value_type zero() {
      return Int(0);
    }
    static value_type one() {
      return Int(1);
    }
    static value_type add(value_type const& a, value_type const& b) {
      return checked_add(a, b);
    }
    static value_type mul(value_type const& a, value_type const& b) {
      return checked_mul(a, b);
    }
  };

  template <typename Int>
  struct ArcticSemiring {
    using value_type = BasicArctic<Int>;
    static value_type zero() {
      return value_type::neg_inf();
    }
    static value_type one() {
      return value_type(Int(0));
    }
    static value_type add(value_type const& a, value_type const& b) {
      return arctic_max(a, b);
    }
    static value_type mul(value_type const& a, value_type const& b) {
      return arctic_plus(a, b);
    }
  };

  template <typename S>
  Matrix<typename S::value_type> identity_matrix(std::size_t dim) {
    Matrix<typename S::value_type> m(dim, S::zero());
    for (std::size_t i = 0; i < dim; ++i) {
      m(i, i) = S::one();
    }
    return m;
  }

  template <typename S>
  Matrix<typename S::value_type> multiply(Matrix<typename S::value_type> const& x,
                                          Matrix<typename S::value_type> const& y) {
    if (x.dim() != y.dim()) {
      throw std::invalid_argument("matrix dimension mismatch");
    }
    auto const                     d = x.dim();
    Matrix<typename S::value_type> out(d, S::zero());
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        auto const& xik = x(i, k);
        for (std::size_t j = 0; j < d; ++j) {
          out(i, j) = S::add(out(i, j), S::mul(xik, y(k, j)));
        }
      }
    }
    return out;
  }

}  // namespace relsrs
