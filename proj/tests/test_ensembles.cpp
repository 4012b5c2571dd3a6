#include "doctest.h"

#include <cmath>
#include <set>

#include "gcirc/ensembles.hpp"
#include "gcirc/limit_laws.hpp"

using namespace gcirc;

namespace {

EnsembleConfig config(BaseDistribution base, double alpha, double beta, bool hermitian, std::uint64_t seed = 1) {
  EnsembleConfig c;
  c.base = base;
  c.alpha = alpha;
  c.beta = beta;
  c.hermitian = hermitian;
  c.seed = seed;
  return c;
}

constexpr BaseDistribution all_bases[] = {BaseDistribution::gaussian, BaseDistribution::rademacher,
                                          BaseDistribution::uniform};

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config(BaseDistribution::gaussian, -0.1, 1, false).validate(), std::invalid_argument);
  CHECK_THROWS_AS(config(BaseDistribution::gaussian, 1.1, 1, false).validate(), std::invalid_argument);
  CHECK_THROWS_AS(config(BaseDistribution::gaussian, 0.5, 0.0, true).validate(), std::invalid_argument);
  CHECK_THROWS_AS(sample_entries(make_group({4}), config(BaseDistribution::gaussian, 2, 1, false)),
                  std::invalid_argument);
  CHECK_NOTHROW(config(BaseDistribution::uniform, 1.0, 3.0, true).validate());
  CHECK(parse_base_distribution("rademacher") == BaseDistribution::rademacher);
  CHECK_THROWS_AS(parse_base_distribution("cauchy"), std::invalid_argument);
  CHECK(config(BaseDistribution::gaussian, 0.5, 1, true, 3).hash() ==
        config(BaseDistribution::gaussian, 0.5, 1, true, 3).hash());
  CHECK(config(BaseDistribution::gaussian, 0.5, 1, true, 3).hash() !=
        config(BaseDistribution::gaussian, 0.5, 1, true, 4).hash());
}

TEST_CASE("counter streams are keyed, not sequenced") {
  CounterRng a(1, 2, 3), b(1, 2, 3), c(1, 2, 4), d(2, 2, 3);
  const auto xa = a.next_u64();
  CHECK(xa == b.next_u64());
  CHECK(xa != c.next_u64());
  CHECK(xa != d.next_u64());
  CounterRng u(5, 0, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("Hermitian tables are exactly conjugate-symmetric") {
  for (const auto& g : {make_group({12}), make_group({4, 2, 5}), make_group({2, 2, 2}), make_group({3, 2, 2, 2})}) {
    for (auto base : all_bases) {
      const auto t = sample_entries(g, config(base, 0.4, 2.5, true, 9));
      CHECK(t.hermitian);
      for (std::size_t a = 0; a < g.size(); ++a) {
        const Element x{a};
        const auto y = t[x];
        const auto yi = t[inv(g, x)];
        CHECK(y.real() == yi.real());
        CHECK(y.imag() == -yi.imag());
        if (is_involution(g, x)) CHECK(y.imag() == 0.0);
      }
    }
  }
}

TEST_CASE("GUE-analogue and Ginibre-analogue entry laws") {
  // Involution entries ~ N(0,1); pair entries ~ standard complex Gaussian.
  const auto g = make_group({2, 2, 2, 3});  // 8 involutions, 8 pairs
  std::vector<double> involution_re, pair_re, pair_im;
  for (std::uint64_t trial = 0; trial < 600; ++trial) {
    const auto t = sample_entries(g, config(BaseDistribution::gaussian, 0.0, 1.0, true, 17), trial);
    for (std::size_t a = 0; a < g.size(); ++a) {
      const Element x{a};
      if (is_involution(g, x)) {
        involution_re.push_back(t[x].real());
      } else if (inv(g, x).index > a) {
        pair_re.push_back(t[x].real());
        pair_im.push_back(t[x].imag());
      }
    }
  }
  CHECK(involution_re.size() == 4800);
  const double limit = 1.63 / std::sqrt(4800.0);
  CHECK(ks_distance_real(involution_re, LimitLaw::real_normal(1.0)) < limit);
  CHECK(ks_distance_real(pair_re, LimitLaw::real_normal(0.5)) < limit);
  CHECK(ks_distance_real(pair_im, LimitLaw::real_normal(0.5)) < limit);

  // Non-Hermitian alpha = 0: every entry standard complex Gaussian.
  std::vector<std::complex<double>> ginibre;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const auto t = sample_entries(make_group({48}), config(BaseDistribution::gaussian, 0.0, 1.0, false, 3), trial);
    ginibre.insert(ginibre.end(), t.entries.data(), t.entries.data() + t.entries.size());
  }
  const auto d = distance_complex(ginibre, LimitLaw::gamma(0.0));
  CHECK(d.ks_re < limit);
  CHECK(d.ks_im < limit);
}

TEST_CASE("real rademacher entries") {
  const auto g = parse_group_spec("2^6");
  const auto t = sample_entries(g, config(BaseDistribution::rademacher, 1.0, 1.0, true, 5));
  for (Eigen::Index a = 0; a < t.entries.size(); ++a) {
    CHECK(std::abs(t.entries[a].real()) == 1.0);
    CHECK(t.entries[a].imag() == 0.0);
  }
  const auto z = sample_entries(make_group({9}), config(BaseDistribution::rademacher, 1.0, 1.0, false, 5));
  for (Eigen::Index a = 0; a < z.entries.size(); ++a) {
    CHECK(std::abs(z.entries[a].real()) == 1.0);
    CHECK(z.entries[a].imag() == 0.0);
  }
}

TEST_CASE("sampling is reproducible and order independent") {
  const auto g = make_group({4, 2, 5});
  const auto cfg = config(BaseDistribution::uniform, 0.3, 1.0, false, 77);
  const auto t1 = sample_entries(g, cfg, 4);
  const auto t2 = sample_entries(g, cfg, 4);
  CHECK(t1.entries == t2.entries);
  CHECK(t1.entries != sample_entries(g, cfg, 5).entries);
  for (std::size_t a = 0; a < g.size(); ++a) {
    CounterRng rng(77, 4, a);
    CHECK(t1[Element{a}] == draw_pair_entry(cfg, rng));
  }
  CHECK(t1.tag.trial == 4);
  CHECK(t1.tag.seed == 77);
  CHECK(t1.tag.config_hash == cfg.hash());
}

TEST_CASE("entry moments") {
  const std::size_t n = 1000000;
  const double tol = 4.0 / std::sqrt(static_cast<double>(n));
  for (auto base : all_bases) {
    for (double alpha : {0.0, 0.5, 1.0}) {
      CAPTURE(to_string(base));
      CAPTURE(alpha);
      const auto r = moment_check(config(base, alpha, 2.0, true, 123), n);
      CHECK(std::abs(r.mean.value) < tol);
      CHECK(std::abs(r.second_abs.value - 1.0) < tol);
      CHECK(std::abs(r.second.value - std::complex<double>(alpha, 0.0)) < tol);
      CHECK(std::abs(r.involution_variance.value - 2.0) < tol * std::sqrt(8.0));  // Var(beta X^2) <= 2 beta^2
      if (alpha == 1.0) CHECK(r.max_abs_imag == 0.0);
      // Rademacher entries have |Y|^2 = 1 exactly, so only continuous bases show spread.
      if (base != BaseDistribution::rademacher) CHECK(r.second_abs.standard_error > 0.0);
      else CHECK(r.second_abs.standard_error < 1e-9);
    }
  }
  CHECK_THROWS_AS(moment_check(config(BaseDistribution::gaussian, 0.0, 1.0, false), 999), std::invalid_argument);
}

TEST_CASE("Lindeberg statistic") {
  const auto g = parse_group_spec("2^6");
  const auto rad = sample_entries(g, config(BaseDistribution::rademacher, 0.0, 1.0, false, 2));
  CHECK(lindeberg_statistic(rad, 1.0) == 0.0);
  // Below every |Y_a| the indicator is always on.
  const auto gauss = sample_entries(g, config(BaseDistribution::gaussian, 0.0, 1.0, false, 2));
  CHECK(lindeberg_statistic(gauss, 1e-300) == doctest::Approx(gauss.entries.squaredNorm() / 64.0).epsilon(1e-12));
  CHECK_THROWS_AS(lindeberg_statistic(gauss, 0.0), std::invalid_argument);

  const auto big = make_group({4096});
  int small = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    small += lindeberg_statistic(sample_entries(big, config(BaseDistribution::gaussian, 0.0, 1.0, false, seed)), 1.0) <
             1e-6;
  CHECK(small >= 99);
}
