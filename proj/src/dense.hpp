#pragma once

#include <Eigen/Dense>

#include "opshift/hessenberg.hpp"

namespace opshift::detail {

inline Eigen::MatrixXcd to_dense(const HessenbergMatrix& M, std::size_t n) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t j = 1; j <= std::min(k + 1, n); ++j) {
      out(static_cast<Eigen::Index>(j - 1), static_cast<Eigen::Index>(k - 1)) = M(j, k);
    }
  }
  return out;
}

inline Eigen::MatrixXcd to_dense(const HessenbergMatrix& M) { return to_dense(M, M.dim()); }

}  // namespace opshift::detail
