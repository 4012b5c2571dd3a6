#include "gcirc/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gcirc {

double normal_cdf(double x, double variance) {
  if (variance == 0.0) return x >= 0.0 ? 1.0 : 0.0;
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

double normal_cdf_left(double x, double variance) {
  if (variance == 0.0) return x > 0.0 ? 1.0 : 0.0;
  return normal_cdf(x, variance);
}

LimitLaw LimitLaw::real_normal(double variance) {
  return LimitLaw{LawKind::real_gaussian_mixture, {{1.0, variance, 0.0}}};
}

LimitLaw LimitLaw::real_mixture(std::span<const std::pair<double, double>> weight_variance) {
  LimitLaw law{LawKind::real_gaussian_mixture, {}};
  for (auto [w, v] : weight_variance) law.components.push_back({w, v, 0.0});
  law.validate();
  return law;
}

LimitLaw LimitLaw::gamma(double alpha) {
  return LimitLaw{LawKind::complex_gaussian_mixture, {{1.0, (1.0 + alpha) / 2.0, (1.0 - alpha) / 2.0}}};
}

LimitLaw LimitLaw::complex_mixture(std::span<const std::pair<double, double>> weight_alpha) {
  LimitLaw law{LawKind::complex_gaussian_mixture, {}};
  for (auto [w, a] : weight_alpha) law.components.push_back({w, (1.0 + a) / 2.0, (1.0 - a) / 2.0});
  law.validate();
  return law;
}

double LimitLaw::cdf_re(double x) const {
  double f = 0.0;
  for (const auto& c : components) f += c.weight * normal_cdf(x, c.var_re);
  return f;
}

double LimitLaw::cdf_re_left(double x) const {
  double f = 0.0;
  for (const auto& c : components) f += c.weight * normal_cdf_left(x, c.var_re);
  return f;
}

double LimitLaw::cdf_im(double x) const {
  double f = 0.0;
  for (const auto& c : components) f += c.weight * normal_cdf(x, c.var_im);
  return f;
}

double LimitLaw::cdf_im_left(double x) const {
  double f = 0.0;
  for (const auto& c : components) f += c.weight * normal_cdf_left(x, c.var_im);
  return f;
}

double LimitLaw::second_moment_re() const {
  double m = 0.0;
  for (const auto& c : components) m += c.weight * c.var_re;
  return m;
}

double LimitLaw::second_moment_im() const {
  double m = 0.0;
  for (const auto& c : components) m += c.weight * c.var_im;
  return m;
}

void LimitLaw::validate() const {
  if (components.empty()) throw std::invalid_argument("limit law has no components");
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.weight >= 0.0 && c.weight <= 1.0)) throw std::invalid_argument("mixture weight outside [0, 1]");
    if (!(c.var_re >= 0.0) || !(c.var_im >= 0.0)) throw std::invalid_argument("negative component variance");
    if (kind == LawKind::real_gaussian_mixture && c.var_im != 0.0)
      throw std::invalid_argument("real law with imaginary variance");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mixture weights do not sum to 1");
}

std::string LimitLaw::describe() const {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (i) os << " + ";
    os << c.weight;
    if (kind == LawKind::real_gaussian_mixture)
      os << "*N(0," << c.var_re << ")";
    else
      os << "*N2(0,diag(" << c.var_re << "," << c.var_im << "))";
  }
  return os.str();
}

LimitLaw limit_for(const EnsembleConfig& cfg, Rational p) {
  cfg.validate();
  if (p.den <= 0 || p.num < 0 || p.num > p.den) throw std::invalid_argument("p must lie in [0, 1]");
  const double pv = p.value();

  if (!cfg.hermitian) {
    if (cfg.alpha == 0.0 || p.num == 0) return LimitLaw::gamma(0.0);
    if (p.num == p.den) return LimitLaw::gamma(cfg.alpha);
    const std::pair<double, double> parts[] = {{1.0 - pv, 0.0}, {pv, cfg.alpha}};
    return LimitLaw::complex_mixture(parts);
  }

  // 2p > 1 with p < 1.
  if (2 * p.num > p.den && p.num < p.den)
    throw std::invalid_argument("p in (1/2, 1) is impossible: 1/p2 is always an integer");
  if (cfg.alpha == 0.0 && cfg.beta == 1.0) return LimitLaw::real_normal(1.0);
  if (p.num == p.den) return LimitLaw::real_normal(cfg.beta);
  const double shift = pv * (cfg.beta - cfg.alpha - 1.0);
  if (p.num == 0) return LimitLaw::real_normal(1.0);
  const std::pair<double, double> parts[] = {{1.0 - pv, 1.0 + shift}, {pv, 1.0 + cfg.alpha + shift}};
  return LimitLaw::real_mixture(parts);
}

CharacterRelation relate(const GroupSpec& g, Character chi1, Character chi2) {
  const auto involutions = involution_subgroup(g);
  return {chi1 == chi2, chi1 == conj(g, chi2), restrictions_agree(g, chi1, chi2, involutions)};
}

PairMoments predicted_pair_moments(const CharacterRelation& rel, const EnsembleConfig& cfg, double p2) {
  const double same = rel.same ? 1.0 : 0.0;
  const double conjugate = rel.conjugate ? 1.0 : 0.0;
  if (!cfg.hermitian) return {same, cfg.alpha * conjugate};
  const double m = same + cfg.alpha * conjugate +
                   p2 * (cfg.beta - cfg.alpha - 1.0) * (rel.restrictions_agree ? 1.0 : 0.0);
  return {m, m};
}

Eigen::Matrix2d real_cross_block(std::complex<double> c, std::complex<double> r) {
  Eigen::Matrix2d b;
  b << 0.5 * (r + c).real(), 0.5 * (r - c).imag(),
       0.5 * (r + c).imag(), 0.5 * (c - r).real();
  return b;
}

Eigen::Matrix2d predicted_covariance(bool chi_real, const EnsembleConfig& cfg, double p2) {
  const CharacterRelation self{true, chi_real, true};
  const PairMoments m = predicted_pair_moments(self, cfg, p2);
  return real_cross_block(m.cross_conj, m.cross);
}

Eigen::Matrix4d predicted_pair_covariance(const CharacterRelation& rel, bool chi1_real, bool chi2_real,
                                          const EnsembleConfig& cfg, double p2) {
  const PairMoments m = predicted_pair_moments(rel, cfg, p2);
  Eigen::Matrix4d cov;
  cov.topLeftCorner<2, 2>() = predicted_covariance(chi1_real, cfg, p2);
  cov.bottomRightCorner<2, 2>() = predicted_covariance(chi2_real, cfg, p2);
  cov.topRightCorner<2, 2>() = real_cross_block(m.cross_conj, m.cross);
  cov.bottomLeftCorner<2, 2>() = cov.topRightCorner<2, 2>().transpose();
  return cov;
}

double ks_distance_real(std::span<const double> samples, const LimitLaw& law) {
  if (law.kind != LawKind::real_gaussian_mixture) throw std::invalid_argument("ks_distance_real needs a real law");
  return ks_distance(std::vector<double>(samples.begin(), samples.end()),
                     [&](double x) { return law.cdf_re(x); }, [&](double x) { return law.cdf_re_left(x); });
}

ComplexDistance distance_complex(std::span<const std::complex<double>> samples, const LimitLaw& law) {
  if (law.kind != LawKind::complex_gaussian_mixture)
    throw std::invalid_argument("distance_complex needs a complex law");
  if (samples.empty()) throw std::invalid_argument("distance of an empty sample");
  std::vector<double> re(samples.size()), im(samples.size());
  double mr = 0.0, mi = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    re[i] = samples[i].real();
    im[i] = samples[i].imag();
    mr += re[i];
    mi += im[i];
  }
  const double n = static_cast<double>(samples.size());
  mr /= n;
  mi /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    sxx += (re[i] - mr) * (re[i] - mr);
    syy += (im[i] - mi) * (im[i] - mi);
    sxy += (re[i] - mr) * (im[i] - mi);
  }

  ComplexDistance d;
  d.abs_corr_re_im = (sxx > 0.0 && syy > 0.0) ? std::abs(sxy) / std::sqrt(sxx * syy) : 0.0;
  d.ks_re = ks_distance(std::move(re), [&](double x) { return law.cdf_re(x); },
                        [&](double x) { return law.cdf_re_left(x); });
  d.ks_im = ks_distance(std::move(im), [&](double x) { return law.cdf_im(x); },
                        [&](double x) { return law.cdf_im_left(x); });
  return d;
}

EmpiricalPairCovariance empirical_eigen_covariance(std::span<const Spectrum> spectra, Character chi1,
                                                   Character chi2) {
  if (spectra.size() < 1000) throw std::invalid_argument("empirical covariance needs at least 1000 spectra");
  Eigen::Matrix4d sum = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d sum_sq = Eigen::Matrix4d::Zero();
  for (const Spectrum& s : spectra) {
    const auto l1 = s[chi1];
    const auto l2 = s[chi2];
    const Eigen::Vector4d v(l1.real(), l1.imag(), l2.real(), l2.imag());
    const Eigen::Matrix4d outer = v * v.transpose();
    sum += outer;
    sum_sq += outer.cwiseProduct(outer);
  }
  const double n = static_cast<double>(spectra.size());
  EmpiricalPairCovariance out;
  out.trials = spectra.size();
  out.moments = sum / n;
  const Eigen::Matrix4d var =
      ((sum_sq / n - out.moments.cwiseProduct(out.moments)) * (n / (n - 1.0))).cwiseMax(0.0);
  out.standard_errors = (var / n).cwiseSqrt();
  return out;
}

}  // namespace gcirc
