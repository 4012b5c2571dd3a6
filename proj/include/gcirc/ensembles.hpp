#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "gcirc/fourier.hpp"
#include "gcirc/group.hpp"

namespace gcirc {

enum class BaseDistribution { gaussian, rademacher, uniform };

std::string_view to_string(BaseDistribution base);
/// Accepts "gaussian", "rademacher", "uniform".
BaseDistribution parse_base_distribution(std::string_view name);

/// Entry law of a random G-circulant ensemble.
///
/// Pair entries satisfy E Y = 0, E|Y|^2 = 1, E Y^2 = alpha. Under the
/// Hermitian constraint Y_{a^{-1}} = conj(Y_a), involution entries are real
/// with variance beta; beta is ignored otherwise.
struct EnsembleConfig {
  BaseDistribution base = BaseDistribution::gaussian;
  double alpha = 0.0;
  double beta = 1.0;
  bool hermitian = false;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless alpha in [0,1] and beta > 0.
  void validate() const;
  /// Stable across runs and platforms (FNV-1a of the canonical key=value form).
  std::uint64_t hash() const;
  std::string canonical() const;
};

/// Counter-based random stream keyed by (seed, trial, element).
///
/// The key is a splitmix64 hash chain of the three counters, and draws are
/// the splitmix64 sequence started at that key. Streams are independent of
/// sampling order and of how trials are scheduled across threads.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t element);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Two independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair();

private:
  std::uint64_t state_;
};

/// Mean 0, variance 1 draws from the base law.
double draw_standard(BaseDistribution base, CounterRng& rng);
std::pair<double, double> draw_standard_pair(BaseDistribution base, CounterRng& rng);

/// sigma1 X1 + i sigma2 X2 with sigma1 = sqrt((1+alpha)/2), sigma2 = sqrt((1-alpha)/2).
std::complex<double> draw_pair_entry(const EnsembleConfig& cfg, CounterRng& rng);
/// sqrt(beta) X, real.
double draw_involution_entry(const EnsembleConfig& cfg, CounterRng& rng);

struct SampleTag {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

/// One realization {Y_a : a in G}.
struct EntryTable {
  GroupSpec group;
  ComplexVector<double> entries;
  bool hermitian = false;
  SampleTag tag;

  std::complex<double> operator[](Element a) const { return entries[static_cast<Eigen::Index>(a.index)]; }
};

/// Samples trial number `trial` of the ensemble on g. For Hermitian configs the
/// entry of the smaller index in each pair {a, a^{-1}} is drawn and the other
/// set to its exact conjugate.
EntryTable sample_entries(const GroupSpec& g, const EnsembleConfig& cfg, std::uint64_t trial = 0);

/// (1/N) sum_a |Y_a|^2 1{|Y_a| >= epsilon sqrt(N)}.
double lindeberg_statistic(const EntryTable& table, double epsilon);

template <class T>
struct Estimate {
  T value{};
  double standard_error = 0.0;
};

struct MomentReport {
  std::size_t trials = 0;
  Estimate<std::complex<double>> mean;         // E Y
  Estimate<double> second_abs;                 // E |Y|^2
  Estimate<std::complex<double>> second;       // E Y^2
  double max_abs_imag = 0.0;
  Estimate<double> involution_variance;        // E X^2 for involution entries; hermitian only
};

/// Empirical moments of `trials` scalar draws of the entry laws. Throws for trials < 1000.
MomentReport moment_check(const EnsembleConfig& cfg, std::size_t trials);

}  // namespace gcirc
