#pragma once

#include <cstdint>
#include <vector>

#include "btc/bigint.hpp"

namespace btc {

/// Tuple counts over the "free" tree nodes (no hybrid parent or sibling):
/// p0 excludes the root from the tuple, p1 places it at one position.
struct PAux {
  BigCount p0;
  BigCount p1;
  BigCount p;  // p0 + p1
};

/// k < 0 yields all zeros; overlong tuples vanish through a zero factor.
PAux p_aux(long long n, long long h, long long k);

/// Relaxed H-pair count for tuples of length k, split by whether the two
/// anchor nodes coincide.
struct FhParts {
  BigCount equal_pair;     // tau1 == tau2
  BigCount distinct_pair;  // tau1 != tau2
  BigCount total() const { return equal_pair + distinct_pair; }
};
FhParts f_h_parts(long long n, long long h, long long k);
BigCount f_h(long long n, long long h, long long k);

/// Relaxed T-pair count for tuples of length k, split into the four
/// mutually exclusive anchor placements.
struct FtParts {
  BigCount outside;        // tau not in the tuple
  BigCount hybrid_family;  // tau in the tuple, child or sibling of a hybrid
  BigCount sibling_root;   // tau in the tuple, sibling of another entry, root used
  BigCount sibling_plain;  // tau in the tuple, sibling of another entry, root unused
  BigCount free_member;    // tau in the tuple, none of the above
  BigCount total() const {
    return outside + hybrid_family + sibling_root + sibling_plain + free_member;
  }
};
FtParts f_t_parts(long long n, long long h, long long k);
BigCount f_t(long long n, long long h, long long k);

/// Upper bounds b[n][h] on the number of networks with n leaves and h
/// hybrid nodes, built by the augmentation recurrence from b[1][0] = 1.
class BoundTable {
 public:
  explicit BoundTable(std::uint32_t n_max);

  std::uint32_t n_max() const noexcept { return n_max_; }
  /// Zero outside 1 <= n <= n_max, 0 <= h <= n-1.
  const BigCount& at(std::uint32_t n, std::uint32_t h) const;
  BigCount row_total(std::uint32_t n) const;

 private:
  std::uint32_t n_max_;
  std::vector<std::vector<BigCount>> rows_;  // rows_[n-1][h]
  static const BigCount zero_;
};

BoundTable bound_table(std::uint32_t n_max);
BigCount bound_total(std::uint32_t n);

}  // namespace btc
