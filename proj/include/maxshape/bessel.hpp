#pragma once

#include <array>
#include <cstddef>

#include "maxshape/errors.hpp"

namespace maxshape {

// Ascending Dirichlet-Laplacian eigenvalues of the unit disk are j_{n,m}^2,
// the squared Bessel zeros, with multiplicity 2 for n >= 1. The table lists
// the zeros in spectral order, multiplicity expanded.
//
// Generated with: python3 -c
//   "from scipy.special import jn_zeros
//    v=sorted((z,n) for n in range(9) for z in jn_zeros(n,6))
//    print([f'{z:.15f}' for z,n in v for _ in range(1 if n==0 else 2)][:24])"
inline constexpr std::array<double, 24> kDiskDirichletZeros = {
    2.404825557695772, 3.831705970207512, 3.831705970207512, 5.135622301840683,
    5.135622301840683, 5.520078110286311, 6.380161895923984, 6.380161895923984,
    7.015586669815619, 7.015586669815619, 7.588342434503804, 7.588342434503804,
    8.417244140399866, 8.417244140399866, 8.653727912911013, 8.771483815959954,
    8.771483815959954, 9.761023129981670, 9.761023129981670, 9.936109524217686,
    9.936109524217686, 10.173468135062722, 10.173468135062722, 11.064709488501185,
};

// j zero whose square is the k-th (1-based) unit-disk Dirichlet eigenvalue.
inline double disk_dirichlet_zero(int k) {
  if (k < 1 || k > static_cast<int>(kDiskDirichletZeros.size()))
    throw Error(ErrorCode::InvalidInput, "disk eigenvalue index outside the precomputed table");
  return kDiskDirichletZeros[static_cast<std::size_t>(k - 1)];
}

}  // namespace maxshape
