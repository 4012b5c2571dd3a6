#include "gcirc/spectra.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gcirc {

Spectrum eigenvalues(const EntryTable& table, const FourierPlan<double>& plan) {
  if (!(plan.group() == table.group)) throw std::invalid_argument("plan built for a different group");
  const double scale = 1.0 / std::sqrt(static_cast<double>(table.group.size()));
  return Spectrum{table.group, plan.forward(table.entries) * scale, table.tag};
}

Spectrum eigenvalues(const EntryTable& table) { return eigenvalues(table, FourierPlan<double>(table.group)); }

Eigen::MatrixXcd dense_matrix(const EntryTable& table) {
  const GroupSpec& g = table.group;
  const std::size_t n = g.size();
  if (n > dense_size_cap)
    throw std::length_error("dense matrix oracle limited to groups of size <= " + std::to_string(dense_size_cap));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t b = 0; b < n; ++b) {
    const Element b_inv = inv(g, Element{b});
    for (std::size_t a = 0; a < n; ++a)
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = table[mul(g, Element{a}, b_inv)] * scale;
  }
  return m;
}

double eigen_residual(const EntryTable& table) {
  const Eigen::MatrixXcd m = dense_matrix(table);
  const Spectrum s = eigenvalues(table);
  const GroupSpec& g = table.group;
  const auto n = static_cast<Eigen::Index>(g.size());

  double worst = 0.0;
  Eigen::VectorXcd v(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    for (Eigen::Index a = 0; a < n; ++a)
      v[a] = std::conj(char_value(g, Character{static_cast<std::size_t>(t)}, Element{static_cast<std::size_t>(a)}));
    const double r = (m * v - s.eigenvalues[t] * v).norm() / std::sqrt(static_cast<double>(n));
    worst = std::max(worst, r);
  }
  return worst;
}

double spectral_norm(const Spectrum& s) {
  return s.eigenvalues.size() == 0 ? 0.0 : s.eigenvalues.cwiseAbs().maxCoeff();
}

double max_abs_imag(const Spectrum& s) {
  return s.eigenvalues.size() == 0 ? 0.0 : s.eigenvalues.imag().cwiseAbs().maxCoeff();
}

std::vector<NormRatioRow> norm_ratio_curve(const EnsembleConfig& cfg, const std::vector<GroupSpec>& groups,
                                           std::size_t trials) {
  if (trials < 10) throw std::invalid_argument("norm_ratio_curve needs at least 10 trials");
  std::vector<NormRatioRow> rows;
  for (const GroupSpec& g : groups) {
    if (g.size() < 2) throw std::invalid_argument("norm ratio undefined for the trivial group");
    const FourierPlan<double> plan(g);
    const double denom = std::sqrt(std::log(static_cast<double>(g.size())));
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const double r = spectral_norm(eigenvalues(sample_entries(g, cfg, t), plan)) / denom;
      sum += r;
      sum_sq += r * r;
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / (n - 1.0));
    rows.push_back({g, trials, mean, std::sqrt(var / n)});
  }
  return rows;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
  const auto old_precision = os.precision(17);
  os << "character_index,re_lambda,im_lambda,is_real_character\n";
  for (std::size_t t = 0; t < s.size(); ++t) {
    const auto v = s.eigenvalues[static_cast<Eigen::Index>(t)];
    os << t << ',' << v.real() << ',' << v.imag() << ','
       << (is_real_character(s.group, Character{t}) ? 1 : 0) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace gcirc
