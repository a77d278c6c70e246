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

#include <complex>
#include <vector>

namespace eprw {

using cplx = std::complex<double>;

/// A single bosonic ladder operator. Mode 0 is the first beam (a or c),
/// mode 1 the second (b or d).
struct Ladder {
  int mode = 0;
  bool dagger = false;

  friend bool operator==(const Ladder &, const Ladder &) = default;
};

/// coeff * word[0] * word[1] * ... ; the rightmost operator acts first.
struct LadderTerm {
  cplx coeff{1.0, 0.0};
  std::vector<Ladder> word;
};

/// Polynomial in ladder operators. Evaluated either by Wick contraction on a
/// Gaussian state (gaussian.hpp) or by direct trace in a truncated Fock basis
/// (fock.hpp), so both routes consume the same operator definitions.
class LadderExpr {
 public:
  LadderExpr() = default;
  explicit LadderExpr(LadderTerm term);

  static LadderExpr scalar(cplx c);
  static LadderExpr annihilate(int mode);
  static LadderExpr create(int mode);

  const std::vector<LadderTerm> &terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Highest mode index referenced, or -1 for a pure scalar.
  int max_mode() const;
  /// Longest word in the expression.
  std::size_t degree() const;

  LadderExpr adjoint() const;

  /// The normal-ordering symbol :X: -- creators moved to the left of all
  /// annihilators with commutator terms dropped.
  LadderExpr normal_ordered() const;

  /// Merges terms with identical words and drops zero coefficients.
  LadderExpr simplified() const;

  LadderExpr &operator+=(const LadderExpr &rhs);
  LadderExpr &operator-=(const LadderExpr &rhs);
  LadderExpr &operator*=(cplx s);

  friend LadderExpr operator+(LadderExpr lhs, const LadderExpr &rhs) { return lhs += rhs; }
  friend LadderExpr operator-(LadderExpr lhs, const LadderExpr &rhs) { return lhs -= rhs; }
  friend LadderExpr operator*(const LadderExpr &lhs, const LadderExpr &rhs);
  friend LadderExpr operator*(cplx s, LadderExpr e) { return e *= s; }
  friend LadderExpr operator*(LadderExpr e, cplx s) { return e *= s; }
  friend LadderExpr operator*(double s, LadderExpr e) { return e *= cplx(s, 0.0); }

 private:
  std::vector<LadderTerm> terms_;
};

/// Operators used throughout: Stokes (Schwinger) operators of modes c=0, d=1,
/// the HBT witness correlators and rotated quadratures.
namespace ops {

LadderExpr a(int mode);
LadderExpr adag(int mode);
LadderExpr number(int mode);
LadderExpr identity();

/// X(phi) = (a e^{-i phi} + a^dag e^{i phi}) / sqrt(2).
LadderExpr rotated_quadrature(int mode, double phi);

LadderExpr stokes_0();
LadderExpr stokes_x();
LadderExpr stokes_y();
LadderExpr stokes_z();

/// 2 c^dag d^dag c d + d^dag^2 c^2 + c^dag^2 d^2.
LadderExpr hbt_numerator();
/// :(I_c + I_d)^2: with I = a^dag a.
LadderExpr hbt_denominator();

}  // namespace ops

}  // namespace eprw
