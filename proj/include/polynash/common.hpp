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

#ifndef POLYNASH_COMMON_HPP_
#define POLYNASH_COMMON_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace polynash {

using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Stateless 64-bit mixer used to derive independent seeds for sub-streams
// (per-trial, per-grid-point, per-step). splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random stream. All randomness in the library goes through
// this class so results are bit-reproducible across platforms; the standard
// distributions are implementation-defined and therefore avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // Warm up so that small seeds do not produce correlated early output.
    for (int i = 0; i < 4; ++i) next_u64();
  }

  std::uint64_t next_u64() {
    // xorshift* generator; period 2^64 - 1 with nonzero state.
    if (state_ == 0) state_ = 0x9e3779b97f4a7c15ULL;
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    return next_u64() % n;
  }

  // Standard normal via Box-Muller; spare value cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Gumbel(0, 1) via inverse CDF: g = -ln(-ln(U)).
  double gumbel() {
    double u = uniform01();
    while (u <= 0.0) u = uniform01();
    return -std::log(-std::log(u));
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// --- simplex helpers ---------------------------------------------------

template <typename Scalar>
bool is_on_simplex(const VectorX<Scalar>& x, Scalar tol) {
  if (x.size() == 0) return false;
  if (x.minCoeff() < -tol) return false;
  return std::abs(x.sum() - Scalar(1)) <= tol;
}

// Clamps tiny negatives to zero and rescales to sum exactly one.
template <typename Scalar>
VectorX<Scalar> renormalize_to_simplex(const VectorX<Scalar>& x) {
  VectorX<Scalar> y = x.cwiseMax(Scalar(0));
  const Scalar s = y.sum();
  if (s <= Scalar(0)) {
    throw std::domain_error("renormalize_to_simplex: nonpositive mass");
  }
  return y / s;
}

// Total-variation distance between two distributions of equal length.
template <typename Scalar>
Scalar total_variation(const VectorX<Scalar>& p, const VectorX<Scalar>& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("total_variation: length mismatch");
  }
  return Scalar(0.5) * (p - q).template lpNorm<1>();
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

}  // namespace polynash

#endif  // POLYNASH_COMMON_HPP_
