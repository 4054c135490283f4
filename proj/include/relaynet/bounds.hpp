#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace relaynet {

/// Smallest L with base^L >= value (value >= 1, base >= 2).
int ceil_log(std::int64_t base, std::int64_t value);

/// f_{n,N}: 2^n - 1 for n <= ceil(log2 N), else 2^L - 1 + (N-1)(n-L).
std::int64_t complexity_bound(int n, int states);

/// f_{n,N} from f(n,1) = 0, f(0,N) = 0 and
/// f(n,N) = 1 + max_{1<=i<=ceil(N/2)} f(n-1,i) + f(n-1,N-i+1). Memo is per call.
std::int64_t complexity_bound_recursive(int n, int states);

/// Pswitch bound for base-q denominator reduction of x_i/q^n targets:
/// q^n - 1 for n <= L = ceil(log_q N), else (N-1)(q-1)(n-L) + q^L - 1.
std::int64_t denominator_bound(std::int64_t q, int n, int states);

/// Trial division; returns (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t q);

/// Bound for chained prime rounds on x_i/q^n. A prime power p^k is plain
/// denominator reduction with base p and exponent k*n; otherwise
/// (N-1) * sum_i (p_i - 1) k_i n.
std::int64_t composite_bound(std::int64_t q, int n, int states);

}  // namespace relaynet
