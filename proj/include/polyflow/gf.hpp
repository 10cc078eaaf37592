#pragma once

#include <cstdint>
#include <vector>

#include "polyflow/errors.hpp"

namespace polyflow {

// Dense matrix over the prime field GF(q). Entries are stored reduced mod q.
struct GfMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> v;  // row-major, size rows*cols

  GfMatrix() = default;
  GfMatrix(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * c, 0) {}

  int& at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
  int at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }

  GfMatrix transposed() const {
    GfMatrix t(cols, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  bool operator==(const GfMatrix& o) const {
    return rows == o.rows && cols == o.cols && v == o.v;
  }
};

bool is_prime(int q);

// a^-1 mod q, q prime, a not divisible by q.
int gf_inverse(int a, int q);

// Rank of the matrix formed by stacking the given matrices vertically.
// All matrices must share the column count.
int gf_stack_rank(const std::vector<const GfMatrix*>& mats, int q);

GfMatrix gf_reduce(GfMatrix m, int q);

}  // namespace polyflow
