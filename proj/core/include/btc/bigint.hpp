#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace btc {

/// Exact nonnegative integer arithmetic; several quantities here outgrow 64
/// bits (path-count vectors, the bound table past n=9).
using BigCount = boost::multiprecision::cpp_int;

}  // namespace btc
