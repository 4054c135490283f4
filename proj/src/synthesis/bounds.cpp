#include "relaynet/bounds.hpp"

#include <algorithm>
#include <map>

#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        out *= base;
    }
    return out;
}

void require(bool ok, const char *what) {
    if (!ok) {
        throw ValidationError(what);
    }
}

}  // namespace

int ceil_log(std::int64_t base, std::int64_t value) {
    require(base >= 2 && value >= 1, "ceil_log needs base >= 2 and value >= 1");
    int l = 0;
    for (std::int64_t p = 1; p < value; p *= base) {
        ++l;
    }
    return l;
}

std::int64_t complexity_bound(int n, int states) {
    require(n >= 0 && n <= 62 && states >= 1, "complexity bound needs 0 <= n <= 62 and N >= 1");
    const int l = ceil_log(2, states);
    if (n <= l) {
        return ipow(2, n) - 1;
    }
    return ipow(2, l) - 1 + std::int64_t{states - 1} * (n - l);
}

std::int64_t complexity_bound_recursive(int n, int states) {
    require(n >= 0 && states >= 1, "complexity bound needs n >= 0 and N >= 1");
    std::map<std::pair<int, int>, std::int64_t> memo;
    auto f = [&](auto &self, int bits, int width) -> std::int64_t {
        if (width == 1 || bits == 0) {
            return 0;
        }
        auto it = memo.find({bits, width});
        if (it != memo.end()) {
            return it->second;
        }
        std::int64_t best = 0;
        for (int i = 1; i <= (width + 1) / 2; ++i) {
            best = std::max(best, self(self, bits - 1, i) + self(self, bits - 1, width - i + 1));
        }
        return memo[{bits, width}] = best + 1;
    };
    return f(f, n, states);
}

std::int64_t denominator_bound(std::int64_t q, int n, int states) {
    require(q >= 2 && n >= 0 && states >= 1, "denominator bound needs q >= 2, n >= 0, N >= 1");
    const int l = ceil_log(q, states);
    if (n <= l) {
        return ipow(q, n) - 1;
    }
    return std::int64_t{states - 1} * (q - 1) * (n - l) + ipow(q, l) - 1;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t q) {
    require(q >= 2, "factorize needs q >= 2");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= q; ++p) {
        int k = 0;
        while (q % p == 0) {
            q /= p;
            ++k;
        }
        if (k > 0) {
            out.emplace_back(p, k);
        }
    }
    if (q > 1) {
        out.emplace_back(q, 1);
    }
    return out;
}

std::int64_t composite_bound(std::int64_t q, int n, int states) {
    const auto factors = factorize(q);
    if (factors.size() == 1) {
        return denominator_bound(factors.front().first, factors.front().second * n, states);
    }
    std::int64_t sum = 0;
    for (const auto &[p, k] : factors) {
        sum += (p - 1) * k * n;
    }
    return std::int64_t{states - 1} * sum;
}

}  // namespace relaynet
