#include "gcirc/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gcirc {

std::string_view to_string(BaseDistribution base) {
  switch (base) {
    case BaseDistribution::gaussian: return "gaussian";
    case BaseDistribution::rademacher: return "rademacher";
    case BaseDistribution::uniform: return "uniform";
  }
  return "unknown";
}

BaseDistribution parse_base_distribution(std::string_view name) {
  if (name == "gaussian") return BaseDistribution::gaussian;
  if (name == "rademacher") return BaseDistribution::rademacher;
  if (name == "uniform") return BaseDistribution::uniform;
  throw std::invalid_argument("unknown base distribution '" + std::string(name) +
                              "' (expected gaussian, rademacher or uniform)");
}

void EnsembleConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in [0, 1], got " + std::to_string(alpha));
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("beta must be positive, got " + std::to_string(beta));
}

std::string EnsembleConfig::canonical() const {
  std::ostringstream os;
  os.precision(17);
  os << "base=" << to_string(base) << ";alpha=" << alpha << ";beta=" << beta
     << ";hermitian=" << (hermitian ? 1 : 0) << ";seed=" << seed;
  return os.str();
}

std::uint64_t EnsembleConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t element) {
  std::uint64_t k = mix64(seed + golden);
  k = mix64(k ^ mix64(trial + 2 * golden));
  k = mix64(k ^ mix64(element + 3 * golden));
  state_ = k;
}

std::uint64_t CounterRng::next_u64() {
  state_ += golden;
  return mix64(state_);
}

double CounterRng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> CounterRng::normal_pair() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

double draw_standard(BaseDistribution base, CounterRng& rng) {
  switch (base) {
    case BaseDistribution::gaussian: return rng.normal_pair().first;
    case BaseDistribution::rademacher: return (rng.next_u64() >> 63) ? 1.0 : -1.0;
    case BaseDistribution::uniform: return std::numbers::sqrt3 * (2.0 * rng.uniform() - 1.0);
  }
  throw std::logic_error("unhandled base distribution");
}

std::pair<double, double> draw_standard_pair(BaseDistribution base, CounterRng& rng) {
  if (base == BaseDistribution::gaussian) return rng.normal_pair();
  const double x1 = draw_standard(base, rng);
  const double x2 = draw_standard(base, rng);
  return {x1, x2};
}

std::complex<double> draw_pair_entry(const EnsembleConfig& cfg, CounterRng& rng) {
  const auto [x1, x2] = draw_standard_pair(cfg.base, rng);
  const double s1 = std::sqrt((1.0 + cfg.alpha) / 2.0);
  const double s2 = std::sqrt((1.0 - cfg.alpha) / 2.0);
  return {s1 * x1, s2 * x2};
}

double draw_involution_entry(const EnsembleConfig& cfg, CounterRng& rng) {
  return std::sqrt(cfg.beta) * draw_standard(cfg.base, rng);
}

EntryTable sample_entries(const GroupSpec& g, const EnsembleConfig& cfg, std::uint64_t trial) {
  cfg.validate();
  const std::size_t n = g.size();
  EntryTable table{g, ComplexVector<double>(static_cast<Eigen::Index>(n)), cfg.hermitian,
                   SampleTag{cfg.hash(), cfg.seed, trial}};
  auto& y = table.entries;

  if (!cfg.hermitian) {
    for (std::size_t a = 0; a < n; ++a) {
      CounterRng rng(cfg.seed, trial, a);
      y[static_cast<Eigen::Index>(a)] = draw_pair_entry(cfg, rng);
    }
    return table;
  }

  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t b = inv(g, Element{a}).index;
    if (b < a) continue;
    CounterRng rng(cfg.seed, trial, a);
    if (b == a) {
      y[static_cast<Eigen::Index>(a)] = draw_involution_entry(cfg, rng);
    } else {
      const std::complex<double> v = draw_pair_entry(cfg, rng);
      y[static_cast<Eigen::Index>(a)] = v;
      y[static_cast<Eigen::Index>(b)] = std::conj(v);
    }
  }
  return table;
}

double lindeberg_statistic(const EntryTable& table, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const double n = static_cast<double>(table.entries.size());
  const double threshold = epsilon * std::sqrt(n);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < table.entries.size(); ++i) {
    const double m = std::abs(table.entries[i]);
    if (m >= threshold) sum += m * m;
  }
  return sum / n;
}

namespace {

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
  }
  double mean(double n) const { return sum / n; }
  double variance(double n) const {
    const double m = mean(n);
    return std::max(0.0, (sum_sq / n - m * m) * n / (n - 1.0));
  }
};

}  // namespace

MomentReport moment_check(const EnsembleConfig& cfg, std::size_t trials) {
  cfg.validate();
  if (trials < 1000) throw std::invalid_argument("moment_check needs at least 1000 trials");
  const double n = static_cast<double>(trials);

  Accumulator re, im, abs2, sq_re, sq_im, inv2;
  double max_imag = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    CounterRng rng(cfg.seed, 0, i);
    const std::complex<double> y = draw_pair_entry(cfg, rng);
    const std::complex<double> y2 = y * y;
    re.add(y.real());
    im.add(y.imag());
    abs2.add(std::norm(y));
    sq_re.add(y2.real());
    sq_im.add(y2.imag());
    max_imag = std::max(max_imag, std::abs(y.imag()));
    if (cfg.hermitian) {
      CounterRng irng(cfg.seed, 1, i);
      const double x = draw_involution_entry(cfg, irng);
      inv2.add(x * x);
    }
  }

  MomentReport r;
  r.trials = trials;
  r.mean = {{re.mean(n), im.mean(n)}, std::sqrt((re.variance(n) + im.variance(n)) / n)};
  r.second_abs = {abs2.mean(n), std::sqrt(abs2.variance(n) / n)};
  r.second = {{sq_re.mean(n), sq_im.mean(n)}, std::sqrt((sq_re.variance(n) + sq_im.variance(n)) / n)};
  r.max_abs_imag = max_imag;
  if (cfg.hermitian) r.involution_variance = {inv2.mean(n), std::sqrt(inv2.variance(n) / n)};
  return r;
}

}  // namespace gcirc
