#pragma once

#include <cstddef>
#include <vector>

#include "trustsas/support.hpp"

namespace trustsas::crypto {

// (t, n) Shamir sharing over an arbitrary field F given by traits. The
// secret sits at X = 0; share j evaluates a uniformly random degree-t
// polynomial at F::from_index(j), j = 1..n. Any t+1 shares reconstruct;
// any t shares are jointly uniform.
template <typename F>
struct Share {
  typename F::Elem point;
  typename F::Elem value;
};

template <typename F>
struct ShareSet {
  size_t threshold = 0;  // t: polynomial degree
  std::vector<Share<F>> shares;
};

template <typename F>
ShareSet<F> shamir_share(typename F::Elem secret, size_t t, size_t n, Rng& rng) {
  if (t >= n) throw ParamError("shamir: need t < n");
  if (n >= F::kOrder) throw ParamError("shamir: n exceeds field size");
  std::vector<typename F::Elem> coeffs(t + 1);
  coeffs[0] = secret;
  for (size_t k = 1; k <= t; ++k) coeffs[k] = F::random(rng);

  ShareSet<F> out;
  out.threshold = t;
  out.shares.reserve(n);
  for (size_t j = 1; j <= n; ++j) {
    typename F::Elem x = F::from_index(j);
    // Horner
    typename F::Elem acc = coeffs[t];
    for (size_t k = t; k-- > 0;) acc = F::add(F::mul(acc, x), coeffs[k]);
    out.shares.push_back({x, acc});
  }
  return out;
}

// Lagrange coefficients lambda_j with sum_j lambda_j * f(x_j) = f(at)
// for any polynomial of degree < |points|.
template <typename F>
std::vector<typename F::Elem> lagrange_coeffs(
    const std::vector<typename F::Elem>& points, typename F::Elem at) {
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if (F::eq(points[i], points[j])) throw ParamError("lagrange: duplicate points");

  std::vector<typename F::Elem> out(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    typename F::Elem num = F::one();
    typename F::Elem den = F::one();
    for (size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      num = F::mul(num, F::sub(at, points[j]));
      den = F::mul(den, F::sub(points[i], points[j]));
    }
    out[i] = F::mul(num, F::inv(den));
  }
  return out;
}

template <typename F>
typename F::Elem lagrange_reconstruct(const ShareSet<F>& set, typename F::Elem at) {
  if (set.shares.size() < set.threshold + 1)
    throw InsufficientShares("lagrange: fewer than t+1 shares");
  std::vector<typename F::Elem> points;
  points.reserve(set.shares.size());
  for (const auto& s : set.shares) points.push_back(s.point);
  auto lambda = lagrange_coeffs<F>(points, at);
  typename F::Elem acc = F::zero();
  for (size_t i = 0; i < set.shares.size(); ++i)
    acc = F::add(acc, F::mul(lambda[i], set.shares[i].value));
  return acc;
}

template <typename F>
typename F::Elem lagrange_reconstruct(const ShareSet<F>& set) {
  return lagrange_reconstruct<F>(set, F::zero());
}

}  // namespace trustsas::crypto
