#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcirc/ensembles.hpp"
#include "gcirc/group.hpp"
#include "gcirc/spectra.hpp"

namespace gcirc {

/// CDF of N(0, variance); variance 0 is the point mass at 0.
double normal_cdf(double x, double variance);
/// Left limit P(X < x).
double normal_cdf_left(double x, double variance);

enum class LawKind { complex_gaussian_mixture, real_gaussian_mixture };

/// One centered Gaussian on C = R^2 with diagonal covariance diag(var_re, var_im).
struct GaussianComponent {
  double weight = 1.0;
  double var_re = 1.0;
  double var_im = 0.0;
};

/// Finite mixture of centered Gaussians with diagonal covariances.
struct LimitLaw {
  LawKind kind = LawKind::real_gaussian_mixture;
  std::vector<GaussianComponent> components;

  /// N(0, v) on the real line.
  static LimitLaw real_normal(double variance);
  static LimitLaw real_mixture(std::span<const std::pair<double, double>> weight_variance);
  /// gamma_alpha: covariance diag((1+alpha)/2, (1-alpha)/2). gamma_0 is the standard complex Gaussian.
  static LimitLaw gamma(double alpha);
  static LimitLaw complex_mixture(std::span<const std::pair<double, double>> weight_alpha);

  double cdf_re(double x) const;
  double cdf_re_left(double x) const;
  double cdf_im(double x) const;
  double cdf_im_left(double x) const;

  double second_moment_re() const;
  double second_moment_im() const;

  /// Throws std::invalid_argument on bad weights or variances.
  void validate() const;
  std::string describe() const;
};

/// Limiting spectral law for the ensemble when p2 of the groups tends to p.
///
/// Non-Hermitian: (1-p) gamma_C + p gamma_alpha. Hermitian with p < 1:
/// (1-p) N(0, 1 + p(beta-alpha-1)) + p N(0, 1 + alpha + p(beta-alpha-1)); p = 1: N(0, beta).
/// Hermitian with p in (1/2, 1) is rejected since 1/p2 is always an integer.
LimitLaw limit_for(const EnsembleConfig& cfg, Rational p);

/// How two characters relate through conjugation and restriction to the involution subgroup A.
struct CharacterRelation {
  bool same = false;                // chi1 == chi2
  bool conjugate = false;           // chi1 == conj(chi2)
  bool restrictions_agree = false;  // chi1|_A == chi2|_A
};

CharacterRelation relate(const GroupSpec& g, Character chi1, Character chi2);

/// E[lambda1 conj(lambda2)] and E[lambda1 lambda2].
struct PairMoments {
  std::complex<double> cross_conj;
  std::complex<double> cross;
};

/// Exact second moments of eigenvalues on a finite group with involution fraction p2.
PairMoments predicted_pair_moments(const CharacterRelation& rel, const EnsembleConfig& cfg, double p2);

/// Covariance of (Re lambda, Im lambda) for a single character.
/// Non-Hermitian: (I + 1{chi real} diag(alpha, -alpha)) / 2.
/// Hermitian: diag(1 + alpha 1{chi real} + p2(beta-alpha-1), 0).
Eigen::Matrix2d predicted_covariance(bool chi_real, const EnsembleConfig& cfg, double p2);

/// Covariance of (Re lambda1, Im lambda1, Re lambda2, Im lambda2).
Eigen::Matrix4d predicted_pair_covariance(const CharacterRelation& rel, bool chi1_real, bool chi2_real,
                                          const EnsembleConfig& cfg, double p2);

/// Real 2x2 block E[(Re z, Im z)^T (Re w, Im w)] from c = E z conj(w) and r = E z w.
Eigen::Matrix2d real_cross_block(std::complex<double> cross_conj, std::complex<double> cross);

/// Kolmogorov-Smirnov sup distance between the sample ECDF and a CDF with
/// possible atoms (cdf_left gives P(X < x)). Throws on an empty sample.
template <class Cdf, class CdfLeft>
double ks_distance(std::vector<double> samples, Cdf cdf, CdfLeft cdf_left);

/// KS distance of real samples to a real-kind law.
double ks_distance_real(std::span<const double> samples, const LimitLaw& law);

struct ComplexDistance {
  double ks_re = 0.0;
  double ks_im = 0.0;
  double abs_corr_re_im = 0.0;
};

/// Marginal KS distances and |corr(Re, Im)| of complex samples to a complex-kind law.
ComplexDistance distance_complex(std::span<const std::complex<double>> samples, const LimitLaw& law);

/// Monte Carlo second moments of (Re l1, Im l1, Re l2, Im l2), l_i = lambda_{chi_i},
/// with elementwise standard errors. Needs at least 1000 spectra.
struct EmpiricalPairCovariance {
  std::size_t trials = 0;
  Eigen::Matrix4d moments = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d standard_errors = Eigen::Matrix4d::Zero();
};

EmpiricalPairCovariance empirical_eigen_covariance(std::span<const Spectrum> spectra, Character chi1,
                                                   Character chi2);

// ---------------------------------------------------------------------------

template <class Cdf, class CdfLeft>
double ks_distance(std::vector<double> samples, Cdf cdf, CdfLeft cdf_left) {
  if (samples.empty()) throw std::invalid_argument("KS distance of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double x = samples[i];
    // ECDF is i/n just left of x and j/n at x.
    d = std::max(d, std::abs(static_cast<double>(i) / n - cdf_left(x)));
    d = std::max(d, std::abs(static_cast<double>(j) / n - cdf(x)));
    i = j;
  }
  return d;
}

}  // namespace gcirc
