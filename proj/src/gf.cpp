#include "polyflow/gf.hpp"

#include <string>

namespace polyflow {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

int gf_inverse(int a, int q) {
  a %= q;
  if (a < 0) a += q;
  if (a == 0) throw InvalidInputError("gf_inverse: zero has no inverse");
  // Extended Euclid.
  int t = 0, new_t = 1, r = q, new_r = a;
  while (new_r != 0) {
    int quot = r / new_r;
    int tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += q;
  return t;
}

GfMatrix gf_reduce(GfMatrix m, int q) {
  for (int& x : m.v) {
    x %= q;
    if (x < 0) x += q;
  }
  return m;
}

int gf_stack_rank(const std::vector<const GfMatrix*>& mats, int q) {
  if (!is_prime(q)) throw InvalidInputError("gf_stack_rank: q must be prime, got " + std::to_string(q));
  if (mats.empty()) return 0;
  int cols = mats[0]->cols;
  int total_rows = 0;
  for (const GfMatrix* m : mats) {
    if (m->cols != cols)
      throw InvalidInputError("gf_stack_rank: column dimension mismatch");
    total_rows += m->rows;
  }
  std::vector<std::vector<int>> a;
  a.reserve(total_rows);
  for (const GfMatrix* m : mats)
    for (int r = 0; r < m->rows; ++r) {
      std::vector<int> row(cols);
      for (int c = 0; c < cols; ++c) {
        int x = m->at(r, c) % q;
        if (x < 0) x += q;
        row[c] = x;
      }
      a.push_back(std::move(row));
    }

  int rank = 0;
  for (int col = 0; col < cols && rank < total_rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < total_rows; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    const int inv = gf_inverse(a[rank][col], q);
    for (int c = col; c < cols; ++c) a[rank][c] = (a[rank][c] * inv) % q;
    for (int r = 0; r < total_rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      const int factor = a[r][col];
      for (int c = col; c < cols; ++c) {
        a[r][c] = (a[r][c] - factor * a[rank][c]) % q;
        if (a[r][c] < 0) a[r][c] += q;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace polyflow
