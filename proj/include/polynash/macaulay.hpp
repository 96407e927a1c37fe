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

#ifndef POLYNASH_MACAULAY_HPP_
#define POLYNASH_MACAULAY_HPP_

#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polynash/common.hpp"
#include "polynash/mvp.hpp"
#include "polynash/polynomial.hpp"

namespace polynash {

// Degree bound for the shifted system: d_max * n_e - n_vars + 1, floored at
// d_max for degenerate shapes. Shifting every equation up to this degree is
// sufficient for the null space to carry a full Vandermonde basis.
template <typename Scalar>
int macaulay_degree_bound(const PolynomialSystemT<Scalar>& system) {
  const int d_max = system.max_degree();
  const int d = d_max * system.num_equations() - system.n_vars + 1;
  return std::max(d, d_max);
}

// Row/column counts of the Macaulay matrix without building it. The column
// count uses the shifted degree bound so every shifted row fits.
template <typename Scalar>
std::pair<std::int64_t, std::int64_t> count_rows_cols(const PolynomialSystemT<Scalar>& system,
                                                      std::int64_t cap = kDefaultBasisCap) {
  const int d_bound = macaulay_degree_bound(system);
  std::int64_t rows = 0;
  for (int de : system.degrees) {
    rows += binomial(d_bound - de + system.n_vars, system.n_vars);
  }
  const std::int64_t cols = binomial(d_bound + system.n_vars, system.n_vars);
  if (rows > cap || cols > cap) {
    throw std::length_error("count_rows_cols: Macaulay dimensions exceed cap");
  }
  return {rows, cols};
}

// Sparse Macaulay matrix: one row per (equation, shift monomial) pair,
// expanded over the graded basis of degree <= d_max_M. Row sparsity equals
// the seed polynomial's term count; shifting never changes it.
template <typename Scalar>
struct MacaulayMatrixT {
  Index n_rows = 0;
  Index n_cols = 0;
  int d_max_M = 0;
  MonomialOrdering ordering{1, 0};

  // CSR storage.
  std::vector<Index> row_ptr;
  std::vector<Index> col_idx;
  std::vector<Scalar> values;

  // Per-row source equation and shifting monomial (as a basis index).
  std::vector<std::pair<int, Index>> provenance;

  Index nnz() const { return static_cast<Index>(values.size()); }

  // Dense expansion; callers must respect their own memory caps.
  MatrixX<Scalar> dense() const {
    MatrixX<Scalar> d = MatrixX<Scalar>::Zero(n_rows, n_cols);
    for (Index r = 0; r < n_rows; ++r) {
      for (Index k = row_ptr[r]; k < row_ptr[r + 1]; ++k) d(r, col_idx[k]) = values[k];
    }
    return d;
  }

  // Row dot psi for a dense vector psi of length n_cols.
  Scalar row_dot(Index r, const VectorX<Scalar>& psi) const {
    Scalar s = 0;
    for (Index k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += values[k] * psi[col_idx[k]];
    return s;
  }

  void write_coordinate(std::ostream& os) const {
    for (Index r = 0; r < n_rows; ++r) {
      for (Index k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
        os << r << ' ' << col_idx[k] << ' ' << values[k] << '\n';
      }
    }
  }
};

using MacaulayMatrix = MacaulayMatrixT<double>;

template <typename Scalar>
MacaulayMatrixT<Scalar> build_macaulay(const PolynomialSystemT<Scalar>& system,
                                       std::int64_t cap = kDefaultBasisCap) {
  const auto [rows, cols] = count_rows_cols(system, cap);
  MacaulayMatrixT<Scalar> M;
  M.d_max_M = macaulay_degree_bound(system);
  M.ordering = MonomialOrdering(system.n_vars, M.d_max_M, cap);
  M.n_rows = rows;
  M.n_cols = cols;
  M.row_ptr.reserve(rows + 1);
  M.row_ptr.push_back(0);
  M.provenance.reserve(rows);

  for (int e = 0; e < system.num_equations(); ++e) {
    const auto& p = system.polys[e];
    const Index n_shifts = M.ordering.count_up_to_degree(M.d_max_M - system.degrees[e]);
    for (Index s = 0; s < n_shifts; ++s) {
      const Monomial shift = M.ordering.monomial_at(s);
      for (const auto& [c, mono] : p.terms) {
        M.col_idx.push_back(M.ordering.index_of(mono.times(shift)));
        M.values.push_back(c);
      }
      M.row_ptr.push_back(static_cast<Index>(M.col_idx.size()));
      M.provenance.emplace_back(e, s);
    }
  }
  if (static_cast<Index>(M.provenance.size()) != rows) {
    throw std::logic_error("build_macaulay: row count disagrees with count_rows_cols");
  }
  return M;
}

// Paired row selections encoding multiplication by one variable: for each
// position j, monomial(svl[j]) = monomial(s1[j]) * v_l. Selected monomials
// are exactly those of degree <= d_max_M - 1 (a prefix of the graded
// order), optionally truncated to row_limit, so the shifted partner always
// stays inside the basis.
struct ShiftSelectors {
  std::vector<Index> s1_indices;
  std::vector<Index> svl_indices;
  int shift_variable = 0;
};

inline ShiftSelectors build_shift_selectors(const MonomialOrdering& ordering, Index null_dim,
                                            int variable, Index extra_rows = 16,
                                            Index row_limit = -1) {
  if (variable < 0 || variable >= ordering.n_vars()) {
    throw std::out_of_range("build_shift_selectors: variable index out of range");
  }
  const Index eligible = ordering.count_up_to_degree(ordering.max_degree() - 1);
  if (eligible < null_dim) {
    throw std::runtime_error(
        "build_shift_selectors: not enough eligible monomials for the rank condition");
  }
  // Take every eligible monomial unless a limit is requested; surplus rows
  // beyond null_dim + extra_rows only help the rank condition downstream.
  Index take = eligible;
  if (row_limit > 0) take = std::min(eligible, std::max(row_limit, std::min(eligible, null_dim + extra_rows)));
  ShiftSelectors sel;
  sel.shift_variable = variable;
  sel.s1_indices.reserve(take);
  sel.svl_indices.reserve(take);
  for (Index j = 0; j < take; ++j) {
    sel.s1_indices.push_back(j);
    sel.svl_indices.push_back(ordering.shifted_index(j, variable));
  }
  return sel;
}

// Gathers the selected rows of a dense matrix (rows of Z indexed by the
// selector's monomials).
template <typename Scalar>
MatrixX<Scalar> gather_rows(const MatrixX<Scalar>& Z, const std::vector<Index>& rows) {
  MatrixX<Scalar> out(static_cast<Index>(rows.size()), Z.cols());
  for (Index j = 0; j < out.rows(); ++j) out.row(j) = Z.row(rows[j]);
  return out;
}

}  // namespace polynash

#endif  // POLYNASH_MACAULAY_HPP_
