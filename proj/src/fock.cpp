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

#include "eprw/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "eprw/format.hpp"
#include "eprw/gaussian.hpp"

namespace eprw {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;

FockDensityMatrix::FockDensityMatrix(int cutoff, int modes, MatrixXcd matrix)
    : cutoff_(cutoff), modes_(modes), matrix_(std::move(matrix)) {
  if (cutoff < 1) throw DomainError("cutoff must be at least 1");
  if (modes != 1 && modes != 2) throw DomainError("only one- and two-mode states are supported");
  const Index dim = modes == 1 ? cutoff : static_cast<Index>(cutoff) * cutoff;
  if (matrix_.rows() != dim || matrix_.cols() != dim)
    throw DomainError("density matrix dimension does not match cutoff^modes");
}

double FockDensityMatrix::hermiticity_error() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double FockDensityMatrix::min_eigenvalue() const {
  const MatrixXcd herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace {

void require_dense_size(int cutoff, int modes) {
  if (cutoff < 1) throw DomainError("cutoff must be at least 1");
  const Index dim = modes == 1 ? cutoff : static_cast<Index>(cutoff) * cutoff;
  if (dim > kMaxDenseDimension)
    throw DomainError("cutoff too large for dense storage (dimension " + std::to_string(dim) +
                      ")");
}

// Extra basis states beyond the box such that a squeezer spreading amplitude
// as tanh|r|^k per step has decayed below 1e-9.
int squeeze_margin(double r) {
  const double t = std::tanh(std::abs(r));
  if (t == 0.0) return 0;
  const double steps = std::log(1e-9) / std::log(t);
  return static_cast<int>(std::min(std::ceil(steps), 4096.0)) + 16;
}

std::vector<double> thermal_weights(double nu, int count) {
  std::vector<double> p(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) p[static_cast<std::size_t>(k)] = bose_einstein_pn(nu, k);
  return p;
}

void check_deficit(double deficit, double allowed, const char *what) {
  if (deficit > allowed)
    throw TruncationError(std::string(what) + ": cutoff drops " + format_real(deficit) +
                          " of the norm (allowed " + format_real(allowed) + ")");
}

// Applies a ladder word to |occ>, rightmost operator first, without truncating
// intermediate states. Returns false if the state is annihilated.
bool apply_word(const std::vector<Ladder> &word, std::array<int, 2> &occ, double &amp) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int &n = occ[static_cast<std::size_t>(it->mode)];
    if (it->dagger) {
      amp *= std::sqrt(static_cast<double>(n) + 1.0);
      ++n;
    } else {
      if (n == 0) return false;
      amp *= std::sqrt(static_cast<double>(n));
      --n;
    }
  }
  return true;
}

// Visits every non-zero <y|op|x> with x, y inside the box.
template <class Visit>
void for_each_element(const LadderExpr &op, int cutoff, int modes, Visit &&visit) {
  if (op.max_mode() >= modes)
    throw DomainError("operator acts on a mode the state does not have");
  const int n1_count = modes == 2 ? cutoff : 1;
  for (int x0 = 0; x0 < cutoff; ++x0)
    for (int x1 = 0; x1 < n1_count; ++x1) {
      const Index x = static_cast<Index>(x0) * n1_count + x1;
      for (const auto &term : op.terms()) {
        std::array<int, 2> occ{x0, x1};
        double amp = 1.0;
        if (!apply_word(term.word, occ, amp)) continue;
        if (occ[0] >= cutoff || occ[1] >= n1_count) continue;
        const Index y = static_cast<Index>(occ[0]) * n1_count + occ[1];
        visit(x, y, term.coeff * amp);
      }
    }
}

// Two-mode squeezed thermal state kept as its blocks of fixed n_c - n_d.
// blocks[delta](j, j') couples |j + delta, j> and |j' + delta, j'>; the
// negative-delta block |j, j + delta> is identical by c <-> d symmetry.
struct EprBlocks {
  int cutoff = 1;
  std::vector<MatrixXd> blocks;

  double at(Index x, Index y) const {
    const int x0 = static_cast<int>(x / cutoff), x1 = static_cast<int>(x % cutoff);
    const int y0 = static_cast<int>(y / cutoff), y1 = static_cast<int>(y % cutoff);
    if (x0 - x1 != y0 - y1) return 0.0;
    const auto &b = blocks[static_cast<std::size_t>(std::abs(x0 - x1))];
    return b.size() == 0 ? 0.0 : b(std::min(x0, x1), std::min(y0, y1));
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t d = 0; d < blocks.size(); ++d)
      if (blocks[d].size() != 0) t += (d == 0 ? 1.0 : 2.0) * blocks[d].trace();
    return t;
  }

  cplx expect(const LadderExpr &op) const {
    cplx total = 0.0;
    for_each_element(op, cutoff, 2, [&](Index x, Index y, cplx elem) {
      const double r = at(x, y);
      if (r != 0.0) total += elem * r;
    });
    return total;
  }

  MatrixXcd dense() const {
    const Index dim = static_cast<Index>(cutoff) * cutoff;
    MatrixXcd rho = MatrixXcd::Zero(dim, dim);
    for (int d = 0; d < cutoff; ++d) {
      const auto &b = blocks[static_cast<std::size_t>(d)];
      if (b.size() == 0) continue;
      for (int j = 0; j < cutoff - d; ++j)
        for (int k = 0; k < cutoff - d; ++k) {
          const double v = b(j, k);
          rho((j + d) * static_cast<Index>(cutoff) + j, (k + d) * static_cast<Index>(cutoff) + k) = v;
          if (d != 0)
            rho(j * static_cast<Index>(cutoff) + j + d, k * static_cast<Index>(cutoff) + k + d) = v;
        }
    }
    return rho;
  }
};

EprBlocks build_epr_blocks(double nbar, double m, int cutoff) {
  const SqueezedThermalParams p = squeezed_thermal_params(nbar, m);
  const int margin = squeeze_margin(p.r);
  EprBlocks out;
  out.cutoff = cutoff;
  out.blocks.resize(static_cast<std::size_t>(cutoff));
  const std::vector<double> pn = thermal_weights(p.nu, 2 * cutoff + margin + 1);

  for (int delta = 0; delta < cutoff; ++delta) {
    const int inside = cutoff - delta;
    const int len = inside + margin;
    Eigen::VectorXd w(len);
    for (int k = 0; k < len; ++k)
      w(k) = pn[static_cast<std::size_t>(k + delta)] * pn[static_cast<std::size_t>(k)];
    // |R| <= sum(w), so chains with no weight stay empty.
    if (w.sum() < 1e-20) continue;

    MatrixXd top;
    if (p.r == 0.0) {
      top = MatrixXd::Identity(inside, len);
    } else {
      MatrixXd g = MatrixXd::Zero(len, len);
      for (int j = 0; j + 1 < len; ++j) {
        const double c = p.r * std::sqrt((j + delta + 1.0) * (j + 1.0));
        g(j + 1, j) = c;
        g(j, j + 1) = -c;
      }
      const MatrixXd s = g.exp();
      top = s.topRows(inside);
    }
    out.blocks[static_cast<std::size_t>(delta)] = top * w.asDiagonal() * top.transpose();
  }
  return out;
}

double blocks_witness(const EprBlocks &b) {
  const double den = b.expect(ops::hbt_denominator()).real();
  if (!(den > 0.0)) return std::nan("");
  return 0.5 - b.expect(ops::hbt_numerator()).real() / den;
}

// (A on `mode`) * m for a one- or two-mode operator A of size cutoff.
MatrixXcd left_apply(const MatrixXcd &m, const MatrixXcd &a, int mode, int cutoff, int modes) {
  if (modes == 1) return a * m;
  const Index d = cutoff;
  const Index dim = d * d;
  MatrixXcd out(dim, dim);
  if (mode == 1) {
    Eigen::Map<const MatrixXcd> in(m.data(), d, d * dim);
    Eigen::Map<MatrixXcd> o(out.data(), d, d * dim);
    o.noalias() = a * in;
  } else {
    const MatrixXcd at = a.transpose();
    for (Index k = 0; k < dim; ++k) {
      Eigen::Map<const MatrixXcd> mk(m.col(k).data(), d, d);
      Eigen::Map<MatrixXcd> ok(out.col(k).data(), d, d);
      ok.noalias() = mk * at;
    }
  }
  return out;
}

}  // namespace

SqueezedThermalParams squeezed_thermal_params(double nbar, double m) {
  require_physical(ModeMoments{nbar, m});
  const double half = nbar + 0.5;
  const double sympl = std::sqrt(std::max((half - m) * (half + m), 0.25));
  const double ratio = std::clamp(m / half, -1.0, 1.0);
  return {std::max(sympl - 0.5, 0.0), -0.5 * std::atanh(ratio)};
}

FockDensityMatrix build_single_mode_state(double nbar, double m, int cutoff,
                                          double max_deficit) {
  require_dense_size(cutoff, 1);
  const SqueezedThermalParams p = squeezed_thermal_params(nbar, m);
  const int work = cutoff + 2 * squeeze_margin(p.r);
  const std::vector<double> pn = thermal_weights(p.nu, work);
  const Eigen::Map<const Eigen::VectorXd> w(pn.data(), work);

  MatrixXd rho;
  if (p.r == 0.0) {
    rho = w.head(cutoff).asDiagonal();
  } else {
    MatrixXd g = MatrixXd::Zero(work, work);
    for (int n = 0; n + 2 < work; ++n) {
      const double c = 0.5 * p.r * std::sqrt((n + 1.0) * (n + 2.0));
      g(n + 2, n) = c;
      g(n, n + 2) = -c;
    }
    const MatrixXd s = g.exp();
    const MatrixXd top = s.topRows(cutoff);
    rho = top * w.asDiagonal() * top.transpose();
  }
  FockDensityMatrix out(cutoff, 1, rho.cast<cplx>());
  check_deficit(out.trace_deficit(), max_deficit, "single-mode state");
  return out;
}

FockDensityMatrix build_epr_state(double nbar, double m, int cutoff, double max_deficit) {
  require_dense_size(cutoff, 2);
  const EprBlocks blocks = build_epr_blocks(nbar, m, cutoff);
  FockDensityMatrix out(cutoff, 2, blocks.dense());
  check_deficit(out.trace_deficit(), max_deficit, "EPR state");
  return out;
}

FockDensityMatrix tensor_product(const FockDensityMatrix &rho_a, const FockDensityMatrix &rho_b) {
  if (rho_a.modes() != 1 || rho_b.modes() != 1)
    throw DomainError("tensor_product expects two one-mode states");
  if (rho_a.cutoff() != rho_b.cutoff()) throw DomainError("cutoff mismatch in tensor_product");
  require_dense_size(rho_a.cutoff(), 2);
  MatrixXcd k = Eigen::kroneckerProduct(rho_a.matrix(), rho_b.matrix());
  return FockDensityMatrix(rho_a.cutoff(), 2, std::move(k));
}

FockDensityMatrix apply_beam_splitter(const FockDensityMatrix &rho, double max_loss) {
  if (rho.modes() != 2) throw DomainError("beam splitter needs a two-mode state");
  const int d = rho.cutoff();
  const Index dim = rho.dimension();
  const double theta = 0.25 * std::numbers::pi;

  // Box states grouped by total photon number N, with P U_N P per block.
  std::vector<Index> perm;
  perm.reserve(static_cast<std::size_t>(dim));
  std::vector<std::pair<Index, MatrixXcd>> blocks;
  for (int total = 0; total <= 2 * (d - 1); ++total) {
    const int kmin = std::max(0, total - d + 1);
    const int kmax = std::min(total, d - 1);
    const Index offset = static_cast<Index>(perm.size());
    for (int k = kmin; k <= kmax; ++k) perm.push_back(rho.index(k, total - k));

    MatrixXd g = MatrixXd::Zero(total + 1, total + 1);
    for (int k = 0; k < total; ++k) {
      const double c = theta * std::sqrt((k + 1.0) * (total - k));
      g(k + 1, k) = c;
      g(k, k + 1) = -c;
    }
    MatrixXd u = g.exp();
    for (int k = 0; k <= total; ++k)
      if ((total - k) % 2 != 0) u.row(k) *= -1.0;
    blocks.emplace_back(offset, u.block(kmin, kmin, kmax - kmin + 1, kmax - kmin + 1).cast<cplx>());
  }

  MatrixXcd work(dim, dim);
  for (Index c = 0; c < dim; ++c)
    for (Index r = 0; r < dim; ++r) work(r, c) = rho.matrix()(perm[r], perm[c]);
  for (const auto &[offset, u] : blocks) work.middleRows(offset, u.rows()) = u * work.middleRows(offset, u.rows());
  for (const auto &[offset, u] : blocks)
    work.middleCols(offset, u.rows()) = work.middleCols(offset, u.rows()) * u.adjoint();

  MatrixXcd out(dim, dim);
  for (Index c = 0; c < dim; ++c)
    for (Index r = 0; r < dim; ++r) out(perm[r], perm[c]) = work(r, c);
  FockDensityMatrix result(d, 2, std::move(out));
  check_deficit(rho.trace() - result.trace(), max_loss, "beam splitter");
  return result;
}

FockDensityMatrix apply_displacement(const FockDensityMatrix &rho, cplx alpha, int mode,
                                     double max_loss) {
  if (mode < 0 || mode >= rho.modes()) throw DomainError("displacement mode out of range");
  const int d = rho.cutoff();
  if (std::norm(alpha) > d / 10.0)
    throw TruncationError("|alpha|^2 exceeds cutoff/10; raise the cutoff");
  const int work = 2 * d + 40;
  MatrixXcd g = MatrixXcd::Zero(work, work);
  for (int n = 0; n + 1 < work; ++n) {
    const double s = std::sqrt(n + 1.0);
    g(n + 1, n) = alpha * s;
    g(n, n + 1) = -std::conj(alpha) * s;
  }
  const MatrixXcd disp = MatrixXcd(g.exp()).topLeftCorner(d, d);
  const MatrixXcd half = left_apply(rho.matrix(), disp, mode, d, rho.modes());
  MatrixXcd full = left_apply(half.adjoint(), disp, mode, d, rho.modes()).adjoint();
  FockDensityMatrix result(d, rho.modes(), std::move(full));
  check_deficit(rho.trace() - result.trace(), max_loss, "displacement");
  return result;
}

cplx expect(const FockDensityMatrix &rho, const LadderExpr &op) {
  const MatrixXcd &m = rho.matrix();
  cplx total = 0.0;
  for_each_element(op, rho.cutoff(), rho.modes(),
                   [&](Index x, Index y, cplx elem) { total += elem * m(x, y); });
  return total;
}

Eigen::SparseMatrix<cplx> operator_matrix(const LadderExpr &op, int cutoff, int modes) {
  if (modes != 1 && modes != 2) throw DomainError("only one- and two-mode operators");
  const Index dim = modes == 1 ? cutoff : static_cast<Index>(cutoff) * cutoff;
  std::vector<Eigen::Triplet<cplx>> triplets;
  for_each_element(op, cutoff, modes,
                   [&](Index x, Index y, cplx elem) { triplets.emplace_back(y, x, elem); });
  Eigen::SparseMatrix<cplx> out(dim, dim);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

double witness_trace(const FockDensityMatrix &rho) {
  if (rho.modes() != 2) throw DomainError("the HBT witness needs a two-mode state");
  const double den = expect(rho, ops::hbt_denominator()).real();
  if (!(den > 0.0)) throw DegenerateInputError("HBT denominator vanishes on this state");
  return 0.5 - expect(rho, ops::hbt_numerator()).real() / den;
}

Eigen::VectorXcd nopa_state(double nbar, int cutoff) {
  require_dense_size(cutoff, 2);
  const Index dim = static_cast<Index>(cutoff) * cutoff;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  for (int n = 0; n < cutoff; ++n)
    psi(static_cast<Index>(n) * cutoff + n) = std::sqrt(bose_einstein_pn(nbar, n));
  return psi / psi.norm();
}

double fidelity(const FockDensityMatrix &rho, const Eigen::VectorXcd &psi) {
  if (psi.size() != rho.dimension()) throw DomainError("state vector dimension mismatch");
  return psi.dot(rho.matrix() * psi).real();
}

ConvergenceReport convergence_check(double nbar, double m, double tol, int ceiling) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  require_physical(ModeMoments{nbar, m});
  const bool vacuum = 3.0 * nbar * nbar + m * m == 0.0;

  struct Sample {
    double deficit;
    double witness;
  };
  auto sample = [&](int cutoff) {
    const EprBlocks b = build_epr_blocks(nbar, m, cutoff);
    return Sample{1.0 - b.trace(), vacuum ? 0.0 : blocks_witness(b)};
  };

  int cutoff = 1;
  Sample current = sample(cutoff);
  while (true) {
    if (vacuum && current.deficit < tol) return {cutoff, current.deficit, 0.0};
    if (2 * cutoff > ceiling)
      throw ConvergenceError("no convergence below cutoff ceiling " + std::to_string(ceiling));
    const Sample next = sample(2 * cutoff);
    const double change = std::abs(next.witness - current.witness);
    if (current.deficit < tol && change < tol) return {cutoff, current.deficit, change};
    cutoff *= 2;
    current = next;
  }
}

void dump_csv(const FockDensityMatrix &rho, std::ostream &os, double threshold) {
  os << "row,col,re,im\r\n";
  const MatrixXcd &m = rho.matrix();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      if (std::abs(m(r, c)) > threshold)
        os << r << ',' << c << ',' << format_real(m(r, c).real()) << ','
           << format_real(m(r, c).imag()) << "\r\n";
}

}  // namespace eprw
