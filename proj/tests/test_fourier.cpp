#include "doctest.h"

#include <chrono>
#include <cmath>
#include <complex>

#include "gcirc/ensembles.hpp"
#include "gcirc/fourier.hpp"
#include "gcirc/selftest.hpp"

using namespace gcirc;
using cd = std::complex<double>;

namespace {

ComplexVector<double> random_values(const GroupSpec& g, std::uint64_t seed) {
  ComplexVector<double> v(static_cast<Eigen::Index>(g.size()));
  for (Eigen::Index a = 0; a < v.size(); ++a) {
    CounterRng rng(seed, 99, static_cast<std::uint64_t>(a));
    const auto [x, y] = rng.normal_pair();
    v[a] = {x, y};
  }
  return v;
}

std::vector<GroupSpec> test_groups() {
  return {make_group({2}),       make_group({12}),       make_group({8, 3}),         make_group({2, 2, 2, 2, 2, 2}),
          make_group({4, 2, 5}), make_group({2, 2, 2, 2, 3}), make_group({6}),      make_group({16, 9}),
          make_group({32}),      make_group({7, 4})};
}

double max_abs(const ComplexVector<double>& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("naive transform examples") {
  const auto g = make_group({4, 2, 5});
  const auto d = dft_naive(delta<double>(g, identity(g)));
  for (Eigen::Index t = 0; t < d.values.size(); ++t) CHECK(std::abs(d.values[t] - cd(1.0)) < 1e-15);

  const auto ones = make_function<double>(g, ComplexVector<double>::Ones(40));
  const auto c = dft_naive(ones);
  CHECK(std::abs(c.values[0] - cd(40.0)) < 1e-12);
  for (Eigen::Index t = 1; t < c.values.size(); ++t) CHECK(std::abs(c.values[t]) < 1e-12);

  const auto z2 = make_group({2});
  ComplexVector<double> f(2);
  f << 0.0, 1.0;
  const auto fh = dft_naive(make_function<double>(z2, f));
  CHECK(fh.values[0] == cd(1.0));
  CHECK(fh.values[1] == cd(-1.0));
}

TEST_CASE("fast transform examples match the naive oracle") {
  const auto g = make_group({4, 2, 5});
  const auto fd = fft_fast(delta<double>(g, identity(g)));
  CHECK(max_abs(fd.values - ComplexVector<double>::Ones(40)) < 1e-12);
  const auto ones = make_function<double>(g, ComplexVector<double>::Ones(40));
  CHECK(max_abs(fft_fast(ones).values - dft_naive(ones).values) < 1e-12);

  const auto z2 = make_group({2});
  ComplexVector<double> f(2);
  f << 0.0, 1.0;
  const auto fh = fft_fast(make_function<double>(z2, f));
  CHECK(fh.values[0] == cd(1.0));
  CHECK(fh.values[1] == cd(-1.0));

  // delta_a on Z4: fhat(chi_t) = i^{t a}
  const auto z4 = make_group({4});
  const cd powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t a = 0; a < 4; ++a) {
    const auto dh = fft_fast(delta<double>(z4, Element{a}));
    for (std::size_t t = 0; t < 4; ++t) CHECK(std::abs(dh.values[static_cast<Eigen::Index>(t)] - powers[(t * a) % 4]) < 1e-15);
  }

  const auto g83 = make_group({8, 3});
  const auto r = make_function<double>(g83, random_values(g83, 1));
  CHECK(max_abs(fft_fast(r).values - dft_naive(r).values) < 1e-9);
}

TEST_CASE("fast transform equals the oracle on random functions") {
  for (const auto& g : test_groups()) {
    CAPTURE(g.to_string());
    const FourierPlan<double> plan(g);
    for (std::uint64_t k = 0; k < 50; ++k) {
      const auto f = make_function<double>(g, random_values(g, k));
      const auto fast = fft_fast(f, plan);
      CHECK(max_abs(fast.values - dft_naive(f).values) < 1e-9 * std::max(1.0, f.values.norm()));
      // Parseval: ||fhat||^2 = N ||f||^2
      const double rhs = static_cast<double>(g.size()) * f.values.squaredNorm();
      CHECK(std::abs(fast.values.squaredNorm() - rhs) < 1e-9 * rhs);
    }
  }
}

TEST_CASE("inverse transform") {
  const auto g = make_group({4, 2, 5});
  for (std::size_t a = 0; a < g.size(); a += 7) {
    const auto d = delta<double>(g, Element{a});
    CHECK(max_abs(inverse_fft(fft_fast(d)).values - d.values) < 1e-12);
  }
  for (const auto& h : test_groups()) {
    const auto f = make_function<double>(h, random_values(h, 5));
    CHECK(max_abs(inverse_fft(fft_fast(f)).values - f.values) < 1e-9);
  }
  const auto ones = make_function<double>(g, ComplexVector<double>::Ones(40));
  CHECK(max_abs(inverse_fft(ones).values - delta<double>(g, identity(g)).values) < 1e-12);
}

TEST_CASE("linearity") {
  for (const auto& g : test_groups()) {
    const FourierPlan<double> plan(g);
    const auto f = random_values(g, 11), h = random_values(g, 12);
    const cd a(0.3, -1.2), b(-2.0, 0.5);
    const ComplexVector<double> combo = a * f + b * h;
    const ComplexVector<double> lhs = plan.forward(combo);
    const ComplexVector<double> rhs = a * plan.forward(f) + b * plan.forward(h);
    CHECK(max_abs(lhs - rhs) < 1e-9 * std::max(1.0, combo.norm()));
  }
}

TEST_CASE("convolution") {
  const auto g = make_group({4, 2, 5});
  const Element a{13}, b{29};
  const auto dd = convolve(delta<double>(g, a), delta<double>(g, b));
  CHECK(max_abs(dd.values - delta<double>(g, mul(g, a, b)).values) == 0.0);

  const auto f = make_function<double>(g, random_values(g, 3));
  CHECK(max_abs(convolve(f, delta<double>(g, identity(g))).values - f.values) == 0.0);

  CHECK_THROWS_AS(convolve(f, delta<double>(make_group({40}), Element{0})), std::invalid_argument);

  for (const auto& h : {make_group({6}), make_group({12}), make_group({8, 3}), make_group({2, 2, 2, 2, 2, 2}),
                        make_group({16, 16}), make_group({4, 2, 5})}) {
    CAPTURE(h.to_string());
    const auto x = make_function<double>(h, random_values(h, 21));
    const auto y = make_function<double>(h, random_values(h, 22));
    const ComplexVector<double> lhs = fft_fast(convolve(x, y)).values;
    const ComplexVector<double> rhs = fft_fast(x).values.cwiseProduct(fft_fast(y).values);
    CHECK(max_abs(lhs - rhs) < 1e-9 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("single-precision plan") {
  const auto g = make_group({8, 3, 2});
  const auto vd = random_values(g, 2);
  const ComplexVector<float> vf = vd.cast<std::complex<float>>();
  const ComplexVector<float> fast = FourierPlan<float>(g).forward(vf);
  const ComplexVector<double> oracle = dft_naive(make_function<double>(g, vd)).values;
  CHECK((fast.cast<cd>() - oracle).cwiseAbs().maxCoeff() < 1e-4 * vd.norm());
}

TEST_CASE("function validation") {
  const auto g = make_group({4});
  CHECK_THROWS_AS(make_function<double>(g, ComplexVector<double>::Ones(3)), std::invalid_argument);
  ComplexVector<double> bad = ComplexVector<double>::Ones(4);
  bad[2] = cd(std::nan(""), 0.0);
  CHECK_THROWS_AS(make_function<double>(g, bad), std::invalid_argument);
}

TEST_CASE("Walsh-Hadamard size transform is fast") {
  const auto g = parse_group_spec("2^18");
  const FourierPlan<double> plan(g);
  const auto f = random_values(g, 4);
  const auto start = std::chrono::steady_clock::now();
  const ComplexVector<double> out = plan.forward(f);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("(Z2)^18 transform: " << seconds << " s");
  CHECK(seconds < 1.0);
  CHECK(std::abs(out.squaredNorm() - 262144.0 * f.squaredNorm()) < 1e-9 * 262144.0 * f.squaredNorm());
}

TEST_CASE("selftest passes and detects a corrupted twiddle table") {
  CHECK(all_passed(run_selftest()));

  SelftestOptions tampered;
  tampered.random_functions = 3;
  tampered.tamper_plan = [](const GroupSpec& g, FourierPlan<double>& plan) {
    if (g.orders() == std::vector<int>{12}) plan.mutable_twiddles(0)[5] *= cd(0.0, 1.0);
  };
  const auto results = run_selftest(tampered);
  CHECK_FALSE(all_passed(results));
  for (const auto& r : results) {
    if (r.name == "transform_oracle[12]") CHECK_FALSE(r.passed);
    if (r.name == "transform_oracle[8,3]") CHECK(r.passed);
  }
}
