#pragma once

#include <string>

namespace oracle {

// Independent evaluation on the lattice (i/d, j/d) with plain integer arithmetic.
// The index is ab = num/den.
inline std::string classify_by_inequalities(long i, long j, long d, long num, long den) {
  // Scaling line: i/d + (num/den)(j/d) = num/(2 den)  <=>  2 i den + 2 num j = num d
  if (2 * i * den + 2 * num * j != num * d) return "not-admissible";
  if (num > den) {
    // q <= 2ab/(ab-1)  <=>  1/q >= (ab-1)/(2ab)  <=>  2 j num >= d (num - den)
    if (2 * j * num < d * (num - den)) return "not-admissible";
    if (2 * i == d && 2 * j * num == d * (num - den)) return "endpoint";
    return "admissible";
  }
  // p > 2/ab strictly  <=>  1/p < ab/2  <=>  2 i den < num d;  q < inf strictly  <=>  j > 0
  if (!(2 * i * den < num * d) || j == 0) return "not-admissible";
  return "admissible";
}

inline bool in_T_by_inequalities(long i, long j, long d, long dim) {
  if (i == 0 && 2 * j == d) return true;
  if (i == 0 || j == 0) return false;
  // 2/p + dim/q >= dim/2  <=>  4 i + 2 dim j >= dim d
  return 4 * i + 2 * dim * j >= dim * d;
}

}  // namespace oracle
