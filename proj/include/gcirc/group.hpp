#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gcirc {

/// Largest group size accepted by make_group unless a different cap is given.
inline constexpr std::size_t default_size_cap = std::size_t{1} << 22;

/// Element of G, stored as its row-major mixed-radix index.
struct Element {
  std::size_t index = 0;
  friend bool operator==(Element, Element) = default;
  friend auto operator<=>(Element, Element) = default;
};

/// Character of G. The dual group uses the same mixed-radix encoding, so
/// Character{t} evaluates to exp(2 pi i sum_j t_j a_j / d_j).
struct Character {
  std::size_t index = 0;
  friend bool operator==(Character, Character) = default;
  friend auto operator<=>(Character, Character) = default;
};

/// Exact rational number, used for p2 = |{a : a^2 = 1}| / |G|.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational reduced(std::int64_t num, std::int64_t den);

/// A finite abelian group presented as Z_{d_1} x ... x Z_{d_k}.
///
/// The presentation is kept as given (no invariant-factor normalization),
/// and element indices are row-major: the last coordinate varies fastest.
class GroupSpec {
public:
  GroupSpec() = default;  // trivial group

  const std::vector<int>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::size_t size() const { return size_; }
  /// Index stride of coordinate j.
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }
  /// Least common multiple of the orders; every character phase is a multiple of 1/exponent().
  std::uint64_t exponent() const { return exponent_; }

  std::vector<int> coords(std::size_t index) const;
  std::size_t index_of(std::span<const int> coords) const;

  /// Build an element from coordinates (reduced modulo the orders).
  Element element(std::span<const int> coords) const { return Element{index_of(coords)}; }
  Character character(std::span<const int> coords) const { return Character{index_of(coords)}; }

  bool contains(Element a) const { return a.index < size_; }
  bool contains(Character chi) const { return chi.index < size_; }

  std::string to_string() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.orders_ == b.orders_; }

private:
  friend GroupSpec make_group(std::vector<int> orders, std::size_t size_cap);

  std::vector<int> orders_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
  std::uint64_t exponent_ = 1;
};

/// Throws std::invalid_argument for an order < 2 or a size above size_cap.
GroupSpec make_group(std::vector<int> orders, std::size_t size_cap = default_size_cap);

/// Parses "4,2,5" or "3,2^10" (d^k expands to k factors of d). "1" or "" is the trivial group.
GroupSpec parse_group_spec(std::string_view text, std::size_t size_cap = default_size_cap);

Element identity(const GroupSpec& g);
Element mul(const GroupSpec& g, Element a, Element b);
Element inv(const GroupSpec& g, Element a);
bool is_involution(const GroupSpec& g, Element a);

/// |{a : a^2 = 1}|, the product over coordinates of 2 (d_j even) or 1 (d_j odd).
std::size_t involution_count(const GroupSpec& g);
/// involution_count / |G| in lowest terms.
Rational p2(const GroupSpec& g);

/// The involution subgroup A = {a : 2a = 0} as a sorted element list.
std::vector<Element> involution_subgroup(const GroupSpec& g);
/// Closure of gens under the group law, sorted. Throws std::length_error above size_cap.
std::vector<Element> subgroup_closure(const GroupSpec& g, std::span<const Element> gens,
                                      std::size_t size_cap = default_size_cap);

/// Numerator of the character phase: chi(a) = exp(2 pi i k / exponent()), k in [0, exponent()).
std::uint64_t phase_numerator(const GroupSpec& g, Character chi, Element a);

/// exp(2 pi i num / den), exact at quarter turns.
template <class Scalar>
std::complex<Scalar> unit_root(std::uint64_t num, std::uint64_t den);

template <class Scalar = double>
std::complex<Scalar> char_value(const GroupSpec& g, Character chi, Element a) {
  return unit_root<Scalar>(phase_numerator(g, chi, a), g.exponent());
}

Character conj(const GroupSpec& g, Character chi);
bool is_real_character(const GroupSpec& g, Character chi);
std::size_t real_character_count(const GroupSpec& g);

/// Values of chi on the listed subgroup elements, in list order.
std::vector<std::complex<double>> restrict_character(const GroupSpec& g, Character chi,
                                                     std::span<const Element> subgroup);
/// True when chi1 and chi2 agree on every listed element (exact phase comparison).
bool restrictions_agree(const GroupSpec& g, Character chi1, Character chi2,
                        std::span<const Element> subgroup);

// ---------------------------------------------------------------------------

template <class Scalar>
std::complex<Scalar> unit_root(std::uint64_t num, std::uint64_t den) {
  num %= den;
  if (num == 0) return {Scalar(1), Scalar(0)};
  if (4 * num == den) return {Scalar(0), Scalar(1)};
  if (2 * num == den) return {Scalar(-1), Scalar(0)};
  if (4 * num == 3 * den) return {Scalar(0), Scalar(-1)};
  // Evaluate in long double so float and double both round from a better value.
  constexpr long double two_pi = 6.283185307179586476925286766559005768L;
  const long double theta = two_pi * static_cast<long double>(num) / static_cast<long double>(den);
  return {static_cast<Scalar>(std::cos(theta)), static_cast<Scalar>(std::sin(theta))};
}

}  // namespace gcirc
