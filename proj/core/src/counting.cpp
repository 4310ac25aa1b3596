#include "btc/counting.hpp"

#include "btc/error.hpp"

namespace btc {

namespace {

// Product of the even chain 2(n-h-1), 2(n-h-2), ..., k factors. A factor of
// zero ends the chain early; factors never go negative before that.
BigCount even_falling(long long n, long long h, long long k) {
  BigCount out = 1;
  for (long long j = 1; j <= k; ++j) {
    long long factor = 2 * (n - h - j);
    if (factor <= 0) return 0;
    out *= factor;
  }
  return out;
}

}  // namespace

PAux p_aux(long long n, long long h, long long k) {
  if (k < 0) return {0, 0, 0};
  if (k == 0) return {1, 0, 1};
  PAux out;
  out.p0 = even_falling(n, h, k);
  out.p1 = k * even_falling(n, h, k - 1);
  out.p = out.p0 + out.p1;
  return out;
}

FhParts f_h_parts(long long n, long long h, long long k) {
  FhParts parts{0, 0};
  BigCount p = p_aux(n, h, k).p;
  if (p == 0) return parts;
  long long avail = 2 * n + h - k - 1;  // tree nodes left once the tuple is fixed
  if (avail <= 0) return parts;
  parts.equal_pair = p * avail;
  parts.distinct_pair = p * avail * (avail - 1) / 2;
  return parts;
}

BigCount f_h(long long n, long long h, long long k) { return f_h_parts(n, h, k).total(); }

FtParts f_t_parts(long long n, long long h, long long k) {
  FtParts parts{0, 0, 0, 0, 0};
  if (k < 0) return parts;
  PAux full = p_aux(n, h, k);
  long long avail = 2 * n + h - k - 1;
  if (full.p != 0 && avail > 0) parts.outside = full.p * avail;
  parts.free_member = full.p * k;
  if (k >= 1) parts.hybrid_family = p_aux(n, h, k - 1).p * k * (3 * h);
  if (k >= 2) {
    PAux rest = p_aux(n, h, k - 2);
    long long with_root = 2 * (n - h - k + 2);
    long long without_root = 2 * (n - h - k + 1);
    if (rest.p1 != 0 && with_root > 0)
      parts.sibling_root = BigCount(k) * (k - 1) * rest.p1 * with_root;
    if (rest.p0 != 0 && without_root > 0)
      parts.sibling_plain = BigCount(k) * (k - 1) * rest.p0 * without_root;
  }
  return parts;
}

BigCount f_t(long long n, long long h, long long k) { return f_t_parts(n, h, k).total(); }

const BigCount BoundTable::zero_ = 0;

BoundTable::BoundTable(std::uint32_t n_max) : n_max_(n_max) {
  if (n_max < 1) fail(errc::invalid_argument, "bound table needs n_max >= 1");
  rows_.resize(n_max);
  rows_[0] = {BigCount(1)};
  for (std::uint32_t n = 2; n <= n_max; ++n) {
    // Cache the per-(h',k) factors; the row sweep re-queries them densely.
    const std::uint32_t hp_max = n - 2;  // previous row has h' <= n-2
    std::vector<std::vector<BigCount>> ft(hp_max + 1), fh(hp_max + 1);
    for (std::uint32_t hp = 0; hp <= hp_max; ++hp) {
      ft[hp].resize(n);
      fh[hp].resize(n);
      for (std::uint32_t k = 0; k <= n - 1; ++k) {
        ft[hp][k] = f_t(n - 1, hp, k);
        fh[hp][k] = f_h(n - 1, hp, k);
      }
    }
    rows_[n - 1].assign(n, 0);
    for (std::uint32_t h = 0; h <= n - 1; ++h) {
      BigCount total = 0;
      for (std::uint32_t hp = 0; hp <= h && hp <= hp_max; ++hp)
        total += rows_[n - 2][hp] * ft[hp][h - hp];
      for (std::uint32_t hp = 0; hp + 1 <= h && hp <= hp_max; ++hp)
        total += rows_[n - 2][hp] * fh[hp][h - hp - 1];
      rows_[n - 1][h] = std::move(total);
    }
  }
}

const BigCount& BoundTable::at(std::uint32_t n, std::uint32_t h) const {
  if (n < 1 || n > n_max_ || h >= n) return zero_;
  return rows_[n - 1][h];
}

BigCount BoundTable::row_total(std::uint32_t n) const {
  BigCount total = 0;
  if (n >= 1 && n <= n_max_)
    for (const BigCount& b : rows_[n - 1]) total += b;
  return total;
}

BoundTable bound_table(std::uint32_t n_max) { return BoundTable(n_max); }

BigCount bound_total(std::uint32_t n) { return BoundTable(n).row_total(n); }

}  // namespace btc
