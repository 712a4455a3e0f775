#pragma once

#include <vector>

#include "dualgap/errors.hpp"
#include "dualgap/rational.hpp"

namespace dualgap {

struct Convergent {
  BigInt p, q;  // p/q approximates sqrt(2)
};

// Convergents of sqrt(2): 1/1, 3/2, 7/5, 17/12, ...
// p_{k+1} = p_k + 2 q_k, q_{k+1} = p_k + q_k; p^2 - 2 q^2 alternates -1, +1.
// Entry k (0-based) of the result is the k-th convergent starting at 1/1.
inline std::vector<Convergent> pell_convergents(int count) {
  if (count < 0) throw DomainError("negative count");
  std::vector<Convergent> out;
  out.reserve(count);
  BigInt p = 1, q = 1;
  for (int k = 0; k < count; ++k) {
    out.push_back({p, q});
    BigInt np = p + 2 * q, nq = p + q;
    p = np;
    q = nq;
  }
  return out;
}

}  // namespace dualgap
