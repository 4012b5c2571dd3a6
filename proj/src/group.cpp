#include "gcirc/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace gcirc {

Rational reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

GroupSpec make_group(std::vector<int> orders, std::size_t size_cap) {
  GroupSpec g;
  std::size_t n = 1;
  std::uint64_t lcm = 1;
  for (int d : orders) {
    if (d < 2) throw std::invalid_argument("cyclic order must be >= 2, got " + std::to_string(d));
    if (n > size_cap / static_cast<std::size_t>(d))
      throw std::invalid_argument("group size exceeds cap of " + std::to_string(size_cap));
    n *= static_cast<std::size_t>(d);
    lcm = std::lcm(lcm, static_cast<std::uint64_t>(d));
  }
  g.strides_.assign(orders.size(), 1);
  for (std::size_t j = orders.size(); j-- > 1;)
    g.strides_[j - 1] = g.strides_[j] * static_cast<std::size_t>(orders[j]);
  g.orders_ = std::move(orders);
  g.size_ = n;
  g.exponent_ = lcm;
  return g;
}

GroupSpec parse_group_spec(std::string_view text, std::size_t size_cap) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto to_int = [&](std::string_view s) {
    s = trim(s);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw std::invalid_argument("bad group spec token '" + std::string(s) + "'");
    return v;
  };

  text = trim(text);
  std::vector<int> orders;
  if (text.empty() || text == "1") return make_group({}, size_cap);
  while (true) {
    const auto comma = text.find(',');
    const std::string_view token = text.substr(0, comma);
    const auto caret = token.find('^');
    if (caret == std::string_view::npos) {
      orders.push_back(to_int(token));
    } else {
      const int base = to_int(token.substr(0, caret));
      const int count = to_int(token.substr(caret + 1));
      if (count < 0 || count > 64)
        throw std::invalid_argument("bad exponent in group spec '" + std::string(token) + "'");
      orders.insert(orders.end(), static_cast<std::size_t>(count), base);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return make_group(std::move(orders), size_cap);
}

std::vector<int> GroupSpec::coords(std::size_t index) const {
  if (index >= size_) throw std::out_of_range("element index out of range");
  std::vector<int> c(orders_.size());
  for (std::size_t j = 0; j < orders_.size(); ++j)
    c[j] = static_cast<int>((index / strides_[j]) % static_cast<std::size_t>(orders_[j]));
  return c;
}

std::size_t GroupSpec::index_of(std::span<const int> coords) const {
  if (coords.size() != orders_.size())
    throw std::invalid_argument("coordinate count " + std::to_string(coords.size()) +
                                " does not match group rank " + std::to_string(orders_.size()));
  std::size_t index = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    const int d = orders_[j];
    const int r = ((coords[j] % d) + d) % d;
    index += static_cast<std::size_t>(r) * strides_[j];
  }
  return index;
}

std::string GroupSpec::to_string() const {
  if (orders_.empty()) return "1";
  std::string out;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(orders_[j]);
  }
  return out;
}

namespace {

void check(const GroupSpec& g, Element a) {
  if (!g.contains(a)) throw std::out_of_range("element not in group");
}

void check(const GroupSpec& g, Character chi) {
  if (!g.contains(chi)) throw std::out_of_range("character not in dual group");
}

std::size_t digit(const GroupSpec& g, std::size_t index, std::size_t axis) {
  return (index / g.stride(axis)) % static_cast<std::size_t>(g.orders()[axis]);
}

}  // namespace

Element identity(const GroupSpec&) { return Element{0}; }

Element mul(const GroupSpec& g, Element a, Element b) {
  check(g, a);
  check(g, b);
  std::size_t out = 0;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    const auto d = static_cast<std::size_t>(g.orders()[j]);
    out += ((digit(g, a.index, j) + digit(g, b.index, j)) % d) * g.stride(j);
  }
  return Element{out};
}

Element inv(const GroupSpec& g, Element a) {
  check(g, a);
  std::size_t out = 0;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    const auto d = static_cast<std::size_t>(g.orders()[j]);
    out += ((d - digit(g, a.index, j)) % d) * g.stride(j);
  }
  return Element{out};
}

bool is_involution(const GroupSpec& g, Element a) { return inv(g, a) == a; }

std::size_t involution_count(const GroupSpec& g) {
  std::size_t count = 1;
  for (int d : g.orders()) count *= (d % 2 == 0) ? 2 : 1;
  return count;
}

Rational p2(const GroupSpec& g) {
  return reduced(static_cast<std::int64_t>(involution_count(g)), static_cast<std::int64_t>(g.size()));
}

std::vector<Element> involution_subgroup(const GroupSpec& g) {
  // Per coordinate the solutions of 2a = 0 are {0} or {0, d/2}.
  std::vector<std::size_t> indices{0};
  for (std::size_t j = 0; j < g.rank(); ++j) {
    const int d = g.orders()[j];
    if (d % 2 != 0) continue;
    const std::size_t shift = static_cast<std::size_t>(d / 2) * g.stride(j);
    const std::size_t n = indices.size();
    for (std::size_t i = 0; i < n; ++i) indices.push_back(indices[i] + shift);
  }
  std::sort(indices.begin(), indices.end());
  std::vector<Element> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(Element{i});
  return out;
}

std::vector<Element> subgroup_closure(const GroupSpec& g, std::span<const Element> gens,
                                      std::size_t size_cap) {
  std::vector<char> seen(g.size(), 0);
  std::vector<Element> members{identity(g)};
  seen[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Element s : gens) {
      const Element next = mul(g, members[i], s);
      if (seen[next.index]) continue;
      seen[next.index] = 1;
      members.push_back(next);
      if (members.size() > size_cap) throw std::length_error("subgroup closure exceeds size cap");
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::uint64_t phase_numerator(const GroupSpec& g, Character chi, Element a) {
  check(g, chi);
  check(g, a);
  const std::uint64_t L = g.exponent();
  std::uint64_t k = 0;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    const auto d = static_cast<std::uint64_t>(g.orders()[j]);
    const std::uint64_t ta = (digit(g, chi.index, j) * digit(g, a.index, j)) % d;
    k = (k + ta * (L / d)) % L;
  }
  return k;
}

Character conj(const GroupSpec& g, Character chi) {
  check(g, chi);
  return Character{inv(g, Element{chi.index}).index};
}

bool is_real_character(const GroupSpec& g, Character chi) { return conj(g, chi) == chi; }

std::size_t real_character_count(const GroupSpec& g) {
  std::size_t count = 0;
  for (std::size_t t = 0; t < g.size(); ++t) count += is_real_character(g, Character{t}) ? 1 : 0;
  return count;
}

std::vector<std::complex<double>> restrict_character(const GroupSpec& g, Character chi,
                                                     std::span<const Element> subgroup) {
  std::vector<std::complex<double>> values;
  values.reserve(subgroup.size());
  for (Element a : subgroup) values.push_back(char_value(g, chi, a));
  return values;
}

bool restrictions_agree(const GroupSpec& g, Character chi1, Character chi2,
                        std::span<const Element> subgroup) {
  return std::all_of(subgroup.begin(), subgroup.end(), [&](Element a) {
    return phase_numerator(g, chi1, a) == phase_numerator(g, chi2, a);
  });
}

}  // namespace gcirc
