// Copyright 2026 The Polynash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLYNASH_EXACT_SOLVER_HPP_
#define POLYNASH_EXACT_SOLVER_HPP_

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "polynash/common.hpp"
#include "polynash/game.hpp"
#include "polynash/macaulay.hpp"
#include "polynash/mvp.hpp"

namespace polynash {

// One recovered equilibrium with the quantities used to accept it.
template <typename Scalar>
struct SolutionT {
  StrategyProfileT<Scalar> profile;  // renormalized to the exact simplex
  VectorX<Scalar> v;                 // root coordinates in substituted space
  Scalar residual_norm = 0;          // ||system residual|| at v
  Scalar exploitability = 0;         // in the original game
  Scalar exploitability_regularized = 0;
  Scalar simplex_deviation = 0;      // max_i |sum x_i - 1| before renormalizing
  std::string source;                // "exact" or the lambda grid value
};

template <typename Scalar>
struct SolutionSetT {
  std::vector<SolutionT<Scalar>> solutions;
  Scalar residual_tol = 0;
  Scalar sum_to_1_tol = 0;
  Scalar dedup_tv_tol = 0;
  // Pipeline diagnostics.
  Index macaulay_rows = 0;
  Index macaulay_cols = 0;
  Index null_dim = 0;

  bool contains(const StrategyProfileT<Scalar>& profile, Scalar tv_tol) const {
    for (const auto& s : solutions) {
      Scalar worst = 0;
      for (std::size_t i = 0; i < profile.strategies.size(); ++i) {
        worst = std::max(worst, total_variation(s.profile.strategies[i], profile.strategies[i]));
      }
      if (worst < tv_tol) return true;
    }
    return false;
  }
};

using SolutionSet = SolutionSetT<double>;

struct ExactSolverOptions {
  double rank_tol = 1e-8;        // relative to sigma_max
  double residual_tol = 1e-6;
  double first_entry_tol = 1e-8;
  double imag_tol = 1e-6;        // relative imaginary-part rejection
  double neg_tol = 1e-6;
  double sum_to_1_tol = 5e-2;
  double dedup_tv_tol = 1e-3;
  int shift_variable = 0;
  Index extra_selector_rows = 16;
  Index selector_row_limit = -1;  // <=0: take all eligible monomials
  std::int64_t dense_cap = 50'000'000;  // max n_rows * n_cols for the dense path
};

// Orthonormal basis of the null space of M at the given relative rank
// tolerance, via a dense SVD. Throws when the matrix exceeds the dense
// memory cap; callers should switch to the stochastic pipeline then.
template <typename Scalar>
MatrixX<Scalar> null_space_dense(const MacaulayMatrixT<Scalar>& M, Scalar rank_tol,
                                 std::int64_t dense_cap = 50'000'000) {
  if (static_cast<std::int64_t>(M.n_rows) * M.n_cols > dense_cap) {
    throw std::length_error(
        "null_space_dense: matrix exceeds the dense cap; use the stochastic solver");
  }
  const MatrixX<Scalar> D = M.dense();
  Eigen::BDCSVD<MatrixX<Scalar>> svd(D, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Scalar cutoff = sv.size() > 0 ? rank_tol * sv[0] : Scalar(0);
  Index rank = 0;
  for (Index j = 0; j < sv.size(); ++j) {
    if (sv[j] > cutoff) ++rank;
  }
  // Trailing right singular vectors (including any columns beyond the
  // singular value count when n_cols > n_rows) span the null space.
  return svd.matrixV().rightCols(M.n_cols - rank);
}

template <typename Scalar>
struct GevpResult {
  MatrixX<std::complex<Scalar>> eigenvectors;  // columns
  VectorX<std::complex<Scalar>> eigenvalues;
};

// Solves the rectangular pencil (SvlZ, S1Z) through the pseudoinverse:
// eigenpairs of pinv(S1Z) * SvlZ. Requires S1Z to have full column rank,
// which is the selector rank condition.
template <typename Scalar>
GevpResult<Scalar> solve_gevp(const MatrixX<Scalar>& svl_z, const MatrixX<Scalar>& s1_z) {
  if (svl_z.rows() != s1_z.rows() || svl_z.cols() != s1_z.cols()) {
    throw std::invalid_argument("solve_gevp: shape mismatch between shifted and base selections");
  }
  Eigen::CompleteOrthogonalDecomposition<MatrixX<Scalar>> cod(s1_z);
  if (cod.rank() < s1_z.cols()) {
    throw std::runtime_error("solve_gevp: rank condition failed (rank(S1 Z) < dim Z); widen selectors");
  }
  const MatrixX<Scalar> T = cod.pseudoInverse() * svl_z;
  Eigen::EigenSolver<MatrixX<Scalar>> eig(T);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("solve_gevp: eigensolver failed to converge");
  }
  GevpResult<Scalar> r;
  r.eigenvectors = eig.eigenvectors();
  r.eigenvalues = eig.eigenvalues();
  return r;
}

namespace detail {

// Shared candidate filter: maps a real root-coordinate vector to a stored
// solution if it passes residual, nonnegativity, simplex and novelty
// checks. Used by both solver pipelines.
template <typename Scalar>
bool try_accept_candidate(const VectorX<Scalar>& v, const PolynomialSystemT<Scalar>& system,
                          const GameT<Scalar>& game, Scalar residual_tol, Scalar neg_tol,
                          Scalar sum_tol, Scalar dedup_tv_tol, const std::string& source,
                          SolutionSetT<Scalar>& out) {
  auto profile = try_recover_strategy(v, system, neg_tol);
  if (!profile) return false;
  const Scalar resn = system_residual(system, v).norm();
  if (!(resn < residual_tol)) return false;
  Scalar deviation = 0;
  for (auto& x : profile->strategies) {
    deviation = std::max(deviation, std::abs(x.sum() - Scalar(1)));
  }
  if (deviation > sum_tol) return false;
  for (auto& x : profile->strategies) x = renormalize_to_simplex(x);
  if (out.contains(*profile, dedup_tv_tol)) return false;

  SolutionT<Scalar> sol;
  sol.profile = *profile;
  sol.v = v.cwiseMax(Scalar(0));
  sol.residual_norm = resn;
  sol.simplex_deviation = deviation;
  sol.exploitability = exploitability(game, sol.profile).max;
  sol.exploitability_regularized =
      regularized_exploitability(game, sol.profile, system.params).max;
  sol.source = source;
  out.solutions.push_back(std::move(sol));
  return true;
}

}  // namespace detail

// Reads candidate roots out of the GEVP eigenvectors: psi = Z w, normalized
// by its first (constant-monomial) entry; the degree-1 block then holds the
// root coordinates. Complex eigenpairs are discarded since only real roots
// can be equilibria.
template <typename Scalar>
SolutionSetT<Scalar> extract_solutions(const MatrixX<Scalar>& Z, const GevpResult<Scalar>& gevp,
                                       const PolynomialSystemT<Scalar>& system,
                                       const GameT<Scalar>& game,
                                       const ExactSolverOptions& opts = {}) {
  SolutionSetT<Scalar> out;
  out.residual_tol = Scalar(opts.residual_tol);
  out.sum_to_1_tol = Scalar(opts.sum_to_1_tol);
  out.dedup_tv_tol = Scalar(opts.dedup_tv_tol);
  const int nv = system.n_vars;
  for (Index j = 0; j < gevp.eigenvalues.size(); ++j) {
    const std::complex<Scalar> lam = gevp.eigenvalues[j];
    if (std::abs(lam.imag()) > opts.imag_tol * std::max<Scalar>(1, std::abs(lam))) continue;
    VectorX<std::complex<Scalar>> psi = Z * gevp.eigenvectors.col(j);
    if (std::abs(psi[0]) < opts.first_entry_tol) continue;
    psi /= psi[0];
    Scalar max_imag = 0, max_real = 0;
    for (Index t = 0; t < psi.size(); ++t) {
      max_imag = std::max(max_imag, std::abs(psi[t].imag()));
      max_real = std::max(max_real, std::abs(psi[t].real()));
    }
    if (max_imag > opts.imag_tol * std::max<Scalar>(1, max_real)) continue;
    VectorX<Scalar> v(nv);
    for (int t = 0; t < nv; ++t) v[t] = psi[1 + t].real();
    detail::try_accept_candidate<Scalar>(v, system, game, Scalar(opts.residual_tol),
                                         Scalar(opts.neg_tol), Scalar(opts.sum_to_1_tol),
                                         Scalar(opts.dedup_tv_tol), "exact", out);
  }
  return out;
}

// Dense end-to-end pipeline: system, Macaulay matrix, null space, shift
// selectors, GEVP, extraction. Deterministic and parameter-free beyond the
// tolerances; also serves as the ground-truth oracle for the stochastic
// solver.
template <typename Scalar>
SolutionSetT<Scalar> solve_exact(const GameT<Scalar>& game, const TsallisParams& params,
                                 const ExactSolverOptions& opts = {}) {
  const PolynomialSystemT<Scalar> system = build_ne_mvp(game, params);
  const MacaulayMatrixT<Scalar> M = build_macaulay(system);
  const MatrixX<Scalar> Z = null_space_dense(M, Scalar(opts.rank_tol), opts.dense_cap);
  const ShiftSelectors sel =
      build_shift_selectors(M.ordering, Z.cols(), opts.shift_variable, opts.extra_selector_rows,
                            opts.selector_row_limit);
  const MatrixX<Scalar> s1_z = gather_rows(Z, sel.s1_indices);
  const MatrixX<Scalar> svl_z = gather_rows(Z, sel.svl_indices);
  const GevpResult<Scalar> gevp = solve_gevp(svl_z, s1_z);
  SolutionSetT<Scalar> out = extract_solutions(Z, gevp, system, game, opts);
  out.macaulay_rows = M.n_rows;
  out.macaulay_cols = M.n_cols;
  out.null_dim = Z.cols();
  return out;
}

}  // namespace polynash

#endif  // POLYNASH_EXACT_SOLVER_HPP_
