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

#ifndef POLYNASH_POLYNOMIAL_HPP_
#define POLYNASH_POLYNOMIAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "polynash/common.hpp"

namespace polynash {

// Coefficients smaller than this are dropped when polynomials are formed.
inline constexpr double kCoeffPruneTol = 1e-14;

// Cap on monomial basis sizes; construction fails fast instead of
// exhausting memory (basis counts grow combinatorially in the degree).
inline constexpr std::int64_t kDefaultBasisCap = 100'000'000;

struct Monomial {
  std::vector<int> exponents;

  Monomial() = default;
  explicit Monomial(std::vector<int> e) : exponents(std::move(e)) {}
  explicit Monomial(int n_vars) : exponents(n_vars, 0) {}

  int degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
  int n_vars() const { return static_cast<int>(exponents.size()); }

  // Exponentwise product of monomials.
  Monomial times(const Monomial& other) const {
    if (exponents.size() != other.exponents.size()) {
      throw std::invalid_argument("Monomial::times: variable count mismatch");
    }
    Monomial r = *this;
    for (std::size_t i = 0; i < r.exponents.size(); ++i) r.exponents[i] += other.exponents[i];
    return r;
  }

  Monomial times_variable(int var) const {
    Monomial r = *this;
    r.exponents.at(var) += 1;
    return r;
  }

  bool operator==(const Monomial& other) const { return exponents == other.exponents; }

  template <typename Scalar>
  Scalar eval(const VectorX<Scalar>& v) const {
    Scalar r = Scalar(1);
    for (int j = 0; j < n_vars(); ++j) {
      for (int e = 0; e < exponents[j]; ++e) r *= v[j];
    }
    return r;
  }
};

// Sparse multivariate polynomial: a term list with no duplicate monomials
// and no stored zero coefficients.
template <typename Scalar>
struct PolynomialT {
  int n_vars = 0;
  std::vector<std::pair<Scalar, Monomial>> terms;

  PolynomialT() = default;
  PolynomialT(int n_vars_in, std::vector<std::pair<Scalar, Monomial>> raw_terms)
      : n_vars(n_vars_in) {
    std::map<std::vector<int>, Scalar> acc;
    for (auto& [c, m] : raw_terms) {
      if (m.n_vars() != n_vars) {
        throw std::invalid_argument("Polynomial: term variable count mismatch");
      }
      acc[m.exponents] += c;
    }
    for (auto& [e, c] : acc) {
      if (std::abs(c) > Scalar(kCoeffPruneTol)) terms.emplace_back(c, Monomial(e));
    }
  }

  int degree() const {
    int d = 0;
    for (const auto& [c, m] : terms) d = std::max(d, m.degree());
    return d;
  }
};

using Polynomial = PolynomialT<double>;

template <typename Scalar>
Scalar eval_poly(const PolynomialT<Scalar>& p, const VectorX<Scalar>& v) {
  if (v.size() != p.n_vars) throw std::invalid_argument("eval_poly: dimension mismatch");
  Scalar r = Scalar(0);
  for (const auto& [c, m] : p.terms) r += c * m.template eval<Scalar>(v);
  return r;
}

// Multiplies every term by the monomial m; coefficients unchanged.
template <typename Scalar>
PolynomialT<Scalar> shift_poly(const PolynomialT<Scalar>& p, const Monomial& m) {
  PolynomialT<Scalar> r;
  r.n_vars = p.n_vars;
  r.terms.reserve(p.terms.size());
  for (const auto& [c, mono] : p.terms) r.terms.emplace_back(c, mono.times(m));
  return r;
}

// Graded ordering of all monomials of total degree <= max_degree:
// first by total degree, then lexicographically within a degree with the
// first variable's exponent decreasing. Index 0 is the constant monomial
// and indices 1..n_vars are the degree-1 monomials in variable order, a
// layout the solvers rely on when reading roots out of eigenvectors.
//
// Index computations are combinatorial, so no monomial table is stored.
class MonomialOrdering {
 public:
  MonomialOrdering(int n_vars, int max_degree, std::int64_t cap = kDefaultBasisCap)
      : n_vars_(n_vars), max_degree_(max_degree) {
    if (n_vars < 1) throw std::invalid_argument("MonomialOrdering: n_vars must be >= 1");
    if (max_degree < 0) throw std::invalid_argument("MonomialOrdering: max_degree must be >= 0");
    count_ = binomial(max_degree + n_vars, n_vars);
    if (count_ > cap) {
      throw std::length_error("MonomialOrdering: basis size " + std::to_string(count_) +
                              " exceeds cap " + std::to_string(cap));
    }
  }

  int n_vars() const { return n_vars_; }
  int max_degree() const { return max_degree_; }
  Index size() const { return count_; }

  // Number of basis monomials of total degree <= d (a prefix of the order).
  Index count_up_to_degree(int d) const {
    if (d < 0) return 0;
    return binomial(std::min(d, max_degree_) + n_vars_, n_vars_);
  }

  Index index_of(const Monomial& m) const {
    if (m.n_vars() != n_vars_) throw std::invalid_argument("index_of: variable count mismatch");
    const int d = m.degree();
    if (d > max_degree_) throw std::out_of_range("index_of: monomial degree exceeds basis bound");
    Index idx = count_up_to_degree(d - 1);
    int rem = d;
    for (int j = 0; j < n_vars_ - 1; ++j) {
      const int e = m.exponents[j];
      // monomials whose j-th exponent is larger than e come first
      for (int f = rem; f > e; --f) {
        idx += binomial(rem - f + n_vars_ - j - 2, n_vars_ - j - 2);
      }
      rem -= e;
    }
    return idx;
  }

  Monomial monomial_at(Index idx) const {
    if (idx < 0 || idx >= count_) throw std::out_of_range("monomial_at: index out of range");
    int d = 0;
    while (count_up_to_degree(d) <= idx) ++d;
    Index rank = idx - count_up_to_degree(d - 1);
    Monomial m(n_vars_);
    int rem = d;
    for (int j = 0; j < n_vars_ - 1; ++j) {
      for (int f = rem; f >= 0; --f) {
        const Index block = binomial(rem - f + n_vars_ - j - 2, n_vars_ - j - 2);
        if (rank < block) {
          m.exponents[j] = f;
          rem -= f;
          break;
        }
        rank -= block;
      }
    }
    m.exponents[n_vars_ - 1] = rem;
    return m;
  }

  // Column index of monomial_at(idx) * v_var, or -1 if it leaves the basis.
  Index shifted_index(Index idx, int var) const {
    Monomial m = monomial_at(idx).times_variable(var);
    if (m.degree() > max_degree_) return -1;
    return index_of(m);
  }

 private:
  int n_vars_;
  int max_degree_;
  Index count_;
};

// Enumerates the full ordered basis.
inline std::vector<Monomial> monomial_basis(const MonomialOrdering& ordering) {
  std::vector<Monomial> out;
  out.reserve(static_cast<std::size_t>(ordering.size()));
  for (Index j = 0; j < ordering.size(); ++j) out.push_back(ordering.monomial_at(j));
  return out;
}

inline MonomialOrdering make_monomial_basis(int n_vars, int max_degree,
                                            std::int64_t cap = kDefaultBasisCap) {
  return MonomialOrdering(n_vars, max_degree, cap);
}

// psi(v): every basis monomial evaluated at v, in order. Entry 0 is 1 and
// entries 1..n_vars are v itself.
template <typename Scalar>
VectorX<Scalar> vandermonde_vector(const VectorX<Scalar>& v, const MonomialOrdering& ordering) {
  if (v.size() != ordering.n_vars()) {
    throw std::invalid_argument("vandermonde_vector: dimension mismatch");
  }
  VectorX<Scalar> psi(ordering.size());
  for (Index j = 0; j < ordering.size(); ++j) {
    psi[j] = ordering.monomial_at(j).template eval<Scalar>(v);
  }
  return psi;
}

}  // namespace polynash

#endif  // POLYNASH_POLYNOMIAL_HPP_
