#pragma once

#include <cstddef>
#include <vector>

namespace tms {

// Coefficients of det(zI - M) by the Faddeev-LeVerrier recursion, highest
// degree first: result[0] = 1 and result[k] multiplies z^{n-k}. M is a dense
// row-major n x n matrix over any field-like scalar type.
template <typename T>
std::vector<T> faddeev_leverrier(const std::vector<T>& m, int n) {
  const auto idx = [n](int i, int j) { return static_cast<std::size_t>(i * n + j); };
  std::vector<T> coeffs(static_cast<std::size_t>(n + 1), T(0));
  coeffs[0] = T(1);
  std::vector<T> aux(static_cast<std::size_t>(n * n), T(0));  // M_k
  std::vector<T> prod(static_cast<std::size_t>(n * n), T(0));
  for (int k = 1; k <= n; ++k) {
    // M_k = M * M_{k-1} + c_{k-1} I, with M_0 = 0.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        T s(0);
        for (int l = 0; l < n; ++l) s += m[idx(i, l)] * aux[idx(l, j)];
        prod[idx(i, j)] = s;
      }
    for (int i = 0; i < n; ++i) prod[idx(i, i)] += coeffs[static_cast<std::size_t>(k - 1)];
    aux.swap(prod);
    // c_k = -tr(M * M_k) / k
    T trace(0);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) trace += m[idx(i, l)] * aux[idx(l, i)];
    coeffs[static_cast<std::size_t>(k)] = -trace / T(k);
  }
  return coeffs;
}

}  // namespace tms
