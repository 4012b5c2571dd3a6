#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "gcirc/group.hpp"

namespace gcirc {

template <class Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// A function on G (or on the dual group), indexed by mixed-radix element index.
template <class Scalar = double>
struct GroupFunction {
  GroupSpec group;
  ComplexVector<Scalar> values;

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

/// Validates length and finiteness.
template <class Scalar, class Derived>
GroupFunction<Scalar> make_function(const GroupSpec& g, const Eigen::MatrixBase<Derived>& values) {
  if (static_cast<std::size_t>(values.size()) != g.size())
    throw std::invalid_argument("function length does not match group size");
  GroupFunction<Scalar> f{g, values.template cast<std::complex<Scalar>>()};
  for (Eigen::Index i = 0; i < f.values.size(); ++i)
    if (!std::isfinite(f.values[i].real()) || !std::isfinite(f.values[i].imag()))
      throw std::invalid_argument("function values must be finite");
  return f;
}

template <class Scalar = double>
GroupFunction<Scalar> delta(const GroupSpec& g, Element a) {
  GroupFunction<Scalar> f{g, ComplexVector<Scalar>::Zero(static_cast<Eigen::Index>(g.size()))};
  f.values[static_cast<Eigen::Index>(a.index)] = Scalar(1);
  return f;
}

/// Precomputed per-axis twiddles for the tensor-product transform
///   fhat(chi) = sum_a f(a) chi(a).
/// Each axis is transformed in turn: a butterfly for d = 2, iterative radix-2
/// for other powers of two, and the direct O(d^2) kernel otherwise.
/// A plan is immutable after construction and may be shared across threads.
template <class Scalar = double>
class FourierPlan {
public:
  using Complex = std::complex<Scalar>;

  explicit FourierPlan(GroupSpec g) : group_(std::move(g)) {
    for (std::size_t j = 0; j < group_.rank(); ++j) {
      Axis axis;
      axis.order = static_cast<std::size_t>(group_.orders()[j]);
      axis.stride = group_.stride(j);
      axis.pow2 = (axis.order & (axis.order - 1)) == 0;
      axis.twiddles.resize(axis.order);
      for (std::size_t k = 0; k < axis.order; ++k) axis.twiddles[k] = unit_root<Scalar>(k, axis.order);
      if (axis.pow2 && axis.order > 2) {
        std::size_t bits = 0;
        while ((std::size_t{1} << bits) < axis.order) ++bits;
        axis.bitrev.resize(axis.order);
        for (std::size_t k = 0; k < axis.order; ++k) {
          std::size_t r = 0;
          for (std::size_t b = 0; b < bits; ++b) r |= ((k >> b) & 1u) << (bits - 1 - b);
          axis.bitrev[k] = r;
        }
      }
      axes_.push_back(std::move(axis));
    }
  }

  const GroupSpec& group() const { return group_; }

  /// out = unnormalized forward transform of in. scratch is resized as needed.
  void forward(std::span<const Complex> in, std::span<Complex> out, std::vector<Complex>& scratch) const {
    if (in.size() != group_.size() || out.size() != group_.size())
      throw std::invalid_argument("transform length does not match group size");
    if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
    for (const Axis& axis : axes_) transform_axis(axis, out, scratch);
  }

  template <class Derived>
  ComplexVector<Scalar> forward(const Eigen::MatrixBase<Derived>& in) const {
    ComplexVector<Scalar> x = in.template cast<Complex>();
    ComplexVector<Scalar> out(x.size());
    std::vector<Complex> scratch;
    forward(std::span<const Complex>(x.data(), static_cast<std::size_t>(x.size())),
            std::span<Complex>(out.data(), static_cast<std::size_t>(out.size())), scratch);
    return out;
  }

  /// (1/N) * conj(forward(conj(in))), the inverse of forward.
  template <class Derived>
  ComplexVector<Scalar> inverse(const Eigen::MatrixBase<Derived>& in) const {
    ComplexVector<Scalar> x = in.template cast<Complex>().conjugate();
    ComplexVector<Scalar> out = forward(x).conjugate();
    out /= static_cast<Scalar>(group_.size());
    return out;
  }

  /// Test hook: twiddle table of one axis, for fault injection.
  std::vector<Complex>& mutable_twiddles(std::size_t axis) { return axes_.at(axis).twiddles; }

private:
  struct Axis {
    std::size_t order = 0;
    std::size_t stride = 1;
    bool pow2 = false;
    std::vector<Complex> twiddles;
    std::vector<std::size_t> bitrev;
  };

  void transform_axis(const Axis& axis, std::span<Complex> data, std::vector<Complex>& scratch) const {
    const std::size_t d = axis.order;
    const std::size_t s = axis.stride;
    const std::size_t block = d * s;
    const std::size_t n = data.size();

    if (d == 2) {
      for (std::size_t base = 0; base < n; base += block) {
        Complex* lo = data.data() + base;
        Complex* hi = lo + s;
        for (std::size_t i = 0; i < s; ++i) {
          const Complex u = lo[i];
          const Complex v = hi[i];
          lo[i] = u + v;
          hi[i] = u - v;
        }
      }
      return;
    }

    scratch.resize(2 * d);
    Complex* line = scratch.data();
    Complex* tmp = scratch.data() + d;
    for (std::size_t base = 0; base < n; base += block) {
      for (std::size_t inner = 0; inner < s; ++inner) {
        Complex* x = data.data() + base + inner;
        if (axis.pow2) {
          for (std::size_t k = 0; k < d; ++k) line[axis.bitrev[k]] = x[k * s];
          for (std::size_t len = 2; len <= d; len <<= 1) {
            const std::size_t half = len / 2;
            const std::size_t step = d / len;
            for (std::size_t i = 0; i < d; i += len) {
              for (std::size_t k = 0; k < half; ++k) {
                const Complex u = line[i + k];
                const Complex v = line[i + k + half] * axis.twiddles[k * step];
                line[i + k] = u + v;
                line[i + k + half] = u - v;
              }
            }
          }
          for (std::size_t k = 0; k < d; ++k) x[k * s] = line[k];
        } else {
          for (std::size_t k = 0; k < d; ++k) line[k] = x[k * s];
          for (std::size_t t = 0; t < d; ++t) {
            Complex acc{};
            std::size_t phase = 0;
            for (std::size_t a = 0; a < d; ++a) {
              acc += line[a] * axis.twiddles[phase];
              phase += t;
              if (phase >= d) phase -= d;
            }
            tmp[t] = acc;
          }
          for (std::size_t k = 0; k < d; ++k) x[k * s] = tmp[k];
        }
      }
    }
  }

  GroupSpec group_;
  std::vector<Axis> axes_;
};

/// Direct double loop fhat(chi) = sum_a f(a) chi(a). O(N^2); the correctness oracle.
template <class Scalar>
GroupFunction<Scalar> dft_naive(const GroupFunction<Scalar>& f) {
  const GroupSpec& g = f.group;
  const std::size_t n = g.size();
  std::vector<std::complex<Scalar>> roots(g.exponent());
  for (std::uint64_t k = 0; k < g.exponent(); ++k) roots[k] = unit_root<Scalar>(k, g.exponent());

  GroupFunction<Scalar> out{g, ComplexVector<Scalar>::Zero(static_cast<Eigen::Index>(n))};
  for (std::size_t t = 0; t < n; ++t) {
    std::complex<Scalar> acc{};
    for (std::size_t a = 0; a < n; ++a)
      acc += f.values[static_cast<Eigen::Index>(a)] * roots[phase_numerator(g, Character{t}, Element{a})];
    out.values[static_cast<Eigen::Index>(t)] = acc;
  }
  return out;
}

template <class Scalar>
GroupFunction<Scalar> fft_fast(const GroupFunction<Scalar>& f, const FourierPlan<Scalar>& plan) {
  if (!(plan.group() == f.group)) throw std::invalid_argument("plan built for a different group");
  return {f.group, plan.forward(f.values)};
}

template <class Scalar>
GroupFunction<Scalar> fft_fast(const GroupFunction<Scalar>& f) {
  return fft_fast(f, FourierPlan<Scalar>(f.group));
}

template <class Scalar>
GroupFunction<Scalar> inverse_fft(const GroupFunction<Scalar>& fhat) {
  return {fhat.group, FourierPlan<Scalar>(fhat.group).inverse(fhat.values)};
}

/// (f * g)(a) = sum_b f(a b^{-1}) g(b), computed directly.
template <class Scalar>
GroupFunction<Scalar> convolve(const GroupFunction<Scalar>& f, const GroupFunction<Scalar>& h) {
  if (!(f.group == h.group)) throw std::invalid_argument("convolution of functions on different groups");
  const GroupSpec& g = f.group;
  const std::size_t n = g.size();
  std::vector<Element> inverses(n);
  for (std::size_t b = 0; b < n; ++b) inverses[b] = inv(g, Element{b});

  GroupFunction<Scalar> out{g, ComplexVector<Scalar>::Zero(static_cast<Eigen::Index>(n))};
  for (std::size_t a = 0; a < n; ++a) {
    std::complex<Scalar> acc{};
    for (std::size_t b = 0; b < n; ++b)
      acc += f.values[static_cast<Eigen::Index>(mul(g, Element{a}, inverses[b]).index)] *
             h.values[static_cast<Eigen::Index>(b)];
    out.values[static_cast<Eigen::Index>(a)] = acc;
  }
  return out;
}

}  // namespace gcirc
