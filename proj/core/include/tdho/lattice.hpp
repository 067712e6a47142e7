#pragma once

#include <vector>

#include "tdho/frequency.hpp"

namespace tdho {

/// Symmetric tridiagonal discretization of  -d^2/dt^2 - Omega^2(t)  with
/// Dirichlet rows on N interior nodes of [t_a, t_b], h = (t_b-t_a)/(N+1):
///   diag_i = 2/h^2 - Omega^2(t_i),  offdiag = -1/h^2.
/// Used as the independent discrete verifier of the continuum machinery.
struct LatticeOperator {
  int n = 0;
  double h = 0.0;
  double t_a = 0.0;
  std::vector<double> diag;
  std::vector<double> offdiag;  // n-1 entries, all -1/h^2

  double node_time(int i) const { return t_a + (i + 1) * h; }
};

LatticeOperator make_lattice_operator(const FrequencyProfile& profile, int n);

/// Column j of K^{-1} (tridiagonal solve); entry (K^{-1})_{ij} approximates
/// the Dirichlet G_jj(t_i, t_j) with O(h^2) error.
std::vector<double> lattice_green_column(const LatticeOperator& opr, int j);

double lattice_green(const LatticeOperator& opr, int i, int j);

/// ln det K1 - ln det K2 via the tridiagonal determinant recurrence carried
/// in log space (pivot ratios).  Both operators must share the grid.
double lattice_log_det_ratio(const LatticeOperator& opr1,
                             const LatticeOperator& opr2);

/// h * det(h^2 K): the scaled determinant whose continuum limit is D_a(t_b).
double lattice_scaled_determinant(const LatticeOperator& opr);

/// Deterministic Gaussian moments: E[prod_a x_{indices[a]}] for the zero-mean
/// Gaussian with covariance scale * K^{-1}, by Wick pairing over lattice
/// covariances.  Requires K positive definite.
double lattice_gaussian_moments(const LatticeOperator& opr,
                                const std::vector<int>& indices,
                                double scale = 1.0);

}  // namespace tdho
