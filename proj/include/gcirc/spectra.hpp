#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "gcirc/ensembles.hpp"
#include "gcirc/fourier.hpp"
#include "gcirc/group.hpp"

namespace gcirc {

/// Largest group for which the dense N x N matrix is materialized.
inline constexpr std::size_t dense_size_cap = 512;

/// Eigenvalues lambda_chi of a G-circulant matrix, in character-index order.
struct Spectrum {
  GroupSpec group;
  ComplexVector<double> eigenvalues;
  SampleTag tag;

  std::complex<double> operator[](Character chi) const {
    return eigenvalues[static_cast<Eigen::Index>(chi.index)];
  }
  std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
};

/// lambda_chi = N^{-1/2} sum_a Y_a chi(a); the eigenvector of lambda_chi is conj(chi).
Spectrum eigenvalues(const EntryTable& table, const FourierPlan<double>& plan);
Spectrum eigenvalues(const EntryTable& table);

/// M[a][b] = Y_{a b^{-1}} / sqrt(N). Throws std::length_error above dense_size_cap.
Eigen::MatrixXcd dense_matrix(const EntryTable& table);

/// max_chi || M conj(chi) - lambda_chi conj(chi) || / sqrt(N), from the dense matrix.
double eigen_residual(const EntryTable& table);

/// ||M|| = max_chi |lambda_chi| (M is normal).
double spectral_norm(const Spectrum& s);

double max_abs_imag(const Spectrum& s);

struct NormRatioRow {
  GroupSpec group;
  std::size_t trials = 0;
  double mean = 0.0;            // mean of ||M|| / sqrt(ln N)
  double standard_error = 0.0;
};

/// Monte Carlo mean of ||M|| / sqrt(ln N) for each group. Throws for trials < 10
/// or a group of size < 2.
std::vector<NormRatioRow> norm_ratio_curve(const EnsembleConfig& cfg, const std::vector<GroupSpec>& groups,
                                           std::size_t trials);

/// CSV with header character_index,re_lambda,im_lambda,is_real_character.
void write_spectrum_csv(std::ostream& os, const Spectrum& s);

}  // namespace gcirc
