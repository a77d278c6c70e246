// Copyright 2026 The eprw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <iosfwd>

#include "eprw/errors.hpp"
#include "eprw/ladder.hpp"

namespace eprw {

inline constexpr double kDefaultMaxDeficit = 1e-6;
/// Largest basis dimension stored densely (cutoff^modes); 8192 complex entries
/// squared is 1 GiB.
inline constexpr Eigen::Index kMaxDenseDimension = 8192;

/// Density matrix in the number basis |n_0, n_1>, n_i < cutoff, with basis
/// index n_0 * cutoff + n_1 for two modes.
class FockDensityMatrix {
 public:
  FockDensityMatrix(int cutoff, int modes, Eigen::MatrixXcd matrix);

  int cutoff() const { return cutoff_; }
  int modes() const { return modes_; }
  Eigen::Index dimension() const { return matrix_.rows(); }
  const Eigen::MatrixXcd &matrix() const { return matrix_; }

  Eigen::Index index(int n0, int n1 = 0) const {
    return modes_ == 1 ? n0 : static_cast<Eigen::Index>(n0) * cutoff_ + n1;
  }

  double trace() const { return matrix_.trace().real(); }
  /// 1 - tr(rho): probability lost to the cutoff.
  double trace_deficit() const { return 1.0 - trace(); }
  /// max |rho - rho^dag|.
  double hermiticity_error() const;
  /// Smallest eigenvalue of the Hermitian part, unclamped. O(dim^3).
  double min_eigenvalue() const;

 private:
  int cutoff_;
  int modes_;
  Eigen::MatrixXcd matrix_;
};

/// Squeezed thermal decomposition rho = S(r) rho_th(nu) S(r)^dag with
/// S(r) = exp[(r/2)(a^dag^2 - a^2)]. Then (nu + 1/2) cosh 2r = nbar + 1/2 and
/// (nu + 1/2) sinh 2r = -m; r carries the sign that makes <a^2> = -m.
struct SqueezedThermalParams {
  double nu = 0.0;
  double r = 0.0;
};

SqueezedThermalParams squeezed_thermal_params(double nbar, double m);

/// One-mode state with <a^dag a> = nbar, <a^2> = -m, projected onto n < cutoff.
/// Throws TruncationError if more than max_deficit of the norm is cut off.
FockDensityMatrix build_single_mode_state(double nbar, double m, int cutoff,
                                          double max_deficit = kDefaultMaxDeficit);

/// The beam-splitter output pair <c^dag c> = <d^dag d> = nbar, <cd> = -m,
/// built directly as a two-mode squeezed thermal state
/// exp[r(c^dag d^dag - c d)] (rho_th(nu) x rho_th(nu)) exp[...]^dag.
FockDensityMatrix build_epr_state(double nbar, double m, int cutoff,
                                  double max_deficit = kDefaultMaxDeficit);

FockDensityMatrix tensor_product(const FockDensityMatrix &rho_a, const FockDensityMatrix &rho_b);

/// 50/50 beam splitter c = (a+b)/sqrt 2, d = (a-b)/sqrt 2, i.e.
/// (-1)^{b^dag b} exp[(pi/4)(a^dag b - a b^dag)], applied exactly on every
/// total-photon-number block and projected back onto the cutoff box.
FockDensityMatrix apply_beam_splitter(const FockDensityMatrix &rho,
                                      double max_loss = kDefaultMaxDeficit);

/// D(alpha) = exp(alpha a^dag - alpha^* a) on one mode. Requires
/// |alpha|^2 <= cutoff / 10.
FockDensityMatrix apply_displacement(const FockDensityMatrix &rho, cplx alpha, int mode,
                                     double max_loss = kDefaultMaxDeficit);

/// tr(rho O) with O's matrix elements evaluated exactly (no intermediate
/// truncation), so tr(rho O) = tr(rho P O P) for the projector P onto the box.
cplx expect(const FockDensityMatrix &rho, const LadderExpr &op);

/// P O P as a sparse matrix in the same basis as FockDensityMatrix.
Eigen::SparseMatrix<cplx> operator_matrix(const LadderExpr &op, int cutoff, int modes);

/// 1/2 - tr(rho N) / tr(rho D) for the HBT numerator and denominator.
/// Throws DegenerateInputError when the denominator vanishes.
double witness_trace(const FockDensityMatrix &rho);

/// sum_n sqrt(p_n) |n, n> with Bose-Einstein p_n, renormalised after truncation.
Eigen::VectorXcd nopa_state(double nbar, int cutoff);

/// <psi| rho |psi> for a normalised pure state.
double fidelity(const FockDensityMatrix &rho, const Eigen::VectorXcd &psi);

struct ConvergenceReport {
  int cutoff = 1;
  double trace_deficit = 0.0;
  /// |W(cutoff) - W(2 cutoff)|, 0 for the vacuum.
  double witness_change = 0.0;
};

/// Doubling sweep 1, 2, 4, ... over EPR states (nbar, m). Returns the first
/// cutoff whose trace deficit is below tol and whose witness expectation
/// moves by less than tol when the cutoff is doubled. Throws ConvergenceError
/// if the doubled cutoff would exceed `ceiling`.
ConvergenceReport convergence_check(double nbar, double m, double tol, int ceiling = 256);

/// Debug dump of non-negligible entries as CSV `row,col,re,im`.
void dump_csv(const FockDensityMatrix &rho, std::ostream &os, double threshold = 0.0);

}  // namespace eprw
