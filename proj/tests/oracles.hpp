#pragma once

/* Independent reference computations for the test suites. Everything in
 * this header is deliberately naive and shares no code with the library
 * paths it is used to check. */

#include <gmpxx.h>

#include <map>
#include <vector>

namespace oracles {

/* Exponents k(3k-1)/2 for k in Z (generalized pentagonal numbers), with
 * the sign (-1)^k, collected up to `order`. */
inline std::map<long long, int> pentagonal_signs(int order) {
    std::map<long long, int> m;
    for (long long k = 1;; ++k) {
        long long e1 = k * (3 * k - 1) / 2;
        long long e2 = k * (3 * k + 1) / 2; // k -> -k
        if (e1 > order && e2 > order) break;
        int sign = (k % 2 == 0) ? 1 : -1;
        if (e1 <= order) m[e1] = sign;
        if (e2 <= order) m[e2] = sign;
    }
    m[0] = 1;
    return m;
}

/* Number of partitions of n into parts of size at most maxpart. */
inline mpz_class partitions_max_part(int n, int maxpart) {
    if (n == 0) return 1;
    if (n < 0 || maxpart == 0) return 0;
    static std::map<std::pair<int, int>, mpz_class> memo;
    auto key = std::make_pair(n, maxpart);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    mpz_class r = partitions_max_part(n, maxpart - 1) + partitions_max_part(n - maxpart, maxpart);
    memo[key] = r;
    return r;
}

/* Number of partitions of n where every part carries one of `colors`
 * colors. A part size p used with multiplicity m contributes
 * binom(m + colors - 1, colors - 1) color multisets. */
inline mpz_class colored_partitions(int n, int colors) {
    std::vector<mpz_class> f(static_cast<size_t>(n) + 1);
    f[0] = 1;
    for (int p = 1; p <= n; ++p) {
        std::vector<mpz_class> g(static_cast<size_t>(n) + 1);
        for (int r = 0; r <= n; ++r) {
            if (f[r] == 0) continue;
            for (int m = 0; r + p * m <= n; ++m) {
                mpz_class ways;
                mpz_bin_uiui(ways.get_mpz_t(), static_cast<unsigned long>(m + colors - 1),
                             static_cast<unsigned long>(colors - 1));
                g[r + p * m] += f[r] * ways;
            }
        }
        f = g;
    }
    return f[static_cast<size_t>(n)];
}

/* Coefficients of sum_{n=-R..R} eps_b(n) q^{b n(n+1)/2 - n} over a fixed
 * wide window, with no adaptive cutoff logic. */
inline std::vector<long> theta_sum_naive(int b, int order) {
    std::vector<long> c(static_cast<size_t>(order) + 1, 0);
    const long long R = 4 * (order + 2) + 8;
    for (long long n = -R; n <= R; ++n) {
        long long e = static_cast<long long>(b) * n * (n + 1) / 2 - n;
        if (e < 0 || e > order) continue;
        long long eps;
        if (b % 2 == 1)
            eps = ((n % 2 + 2) % 2 == 0) ? 1 : -1;
        else
            eps = (n >= 0) ? 1 : -1;
        c[static_cast<size_t>(e)] += static_cast<long>(eps);
    }
    return c;
}

} // namespace oracles
