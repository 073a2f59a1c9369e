#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "qtails/errors.hpp"

namespace qtails {

/* Element of Z[[q]] modulo q^(N+1): a dense vector of exact integer
 * coefficients for q^0..q^N. "Order N" means N+1 stored coefficients.
 * Binary operations truncate to the smaller operand order, so equality
 * up to the common order is always well defined. */
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order) {
        if (order < 0) throw Error("series order must be >= 0");
        coeffs_.resize(static_cast<size_t>(order) + 1);
    }

    static TruncatedSeries one(int order) {
        TruncatedSeries s(order);
        s.coeffs_[0] = 1;
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const mpz_class& operator[](long long i) const { return coeffs_[static_cast<size_t>(i)]; }
    mpz_class& coeff_ref(long long i) { return coeffs_[static_cast<size_t>(i)]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r(order());
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
        return r;
    }

    /* In-place multiply by (1 - q^p). */
    void mul_one_minus_power(long long p) {
        if (p <= 0) throw Error("mul_one_minus_power: power must be positive");
        for (long long i = order(); i >= p; --i)
            coeffs_[static_cast<size_t>(i)] -= coeffs_[static_cast<size_t>(i - p)];
    }

    /* In-place multiply by 1/(1 - q^p) = 1 + q^p + q^2p + ... */
    void mul_geometric(long long p) {
        if (p <= 0) throw Error("mul_geometric: power must be positive");
        for (long long i = p; i <= order(); ++i)
            coeffs_[static_cast<size_t>(i)] += coeffs_[static_cast<size_t>(i - p)];
    }

    /* this += (-1)^negate * q^shift * x, reading x only up to order()-shift. */
    void add_shifted(const TruncatedSeries& x, long long shift, bool negate) {
        long long top = std::min<long long>(order() - shift, x.order());
        for (long long i = 0; i <= top; ++i) {
            if (negate)
                coeffs_[static_cast<size_t>(i + shift)] -= x.coeffs_[static_cast<size_t>(i)];
            else
                coeffs_[static_cast<size_t>(i + shift)] += x.coeffs_[static_cast<size_t>(i)];
        }
    }

private:
    std::vector<mpz_class> coeffs_;
};

inline TruncatedSeries add(const TruncatedSeries& x, const TruncatedSeries& y) {
    TruncatedSeries r(std::min(x.order(), y.order()));
    for (long long i = 0; i <= r.order(); ++i) r.coeff_ref(i) = x[i] + y[i];
    return r;
}

inline TruncatedSeries sub(const TruncatedSeries& x, const TruncatedSeries& y) {
    TruncatedSeries r(std::min(x.order(), y.order()));
    for (long long i = 0; i <= r.order(); ++i) r.coeff_ref(i) = x[i] - y[i];
    return r;
}

/* Cauchy product, truncated to min(order(x), order(y)). Quadratic cost. */
inline TruncatedSeries mul(const TruncatedSeries& x, const TruncatedSeries& y) {
    TruncatedSeries r(std::min(x.order(), y.order()));
    const long long n = r.order();
    for (long long i = 0; i <= n; ++i) {
        if (x[i] == 0) continue;
        for (long long j = 0; j + i <= n; ++j) {
            if (y[j] == 0) continue;
            mpz_addmul(r.coeff_ref(i + j).get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
        }
    }
    return r;
}

inline TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y) { return add(x, y); }
inline TruncatedSeries operator-(const TruncatedSeries& x, const TruncatedSeries& y) { return sub(x, y); }
inline TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y) { return mul(x, y); }

/* Multiplicative inverse modulo q^(N+1); the constant term must be a unit
 * of Z, i.e. +1 or -1. */
inline TruncatedSeries invert(const TruncatedSeries& x) {
    if (x[0] != 1 && x[0] != -1)
        throw NonUnitConstantTerm("invert: constant coefficient must be +1 or -1, got " + x[0].get_str());
    const long long n = x.order();
    const bool unit_negative = (x[0] == -1);
    TruncatedSeries y(static_cast<int>(n));
    y.coeff_ref(0) = x[0]; // 1/1 = 1, 1/-1 = -1
    mpz_class acc;
    for (long long i = 1; i <= n; ++i) {
        acc = 0;
        for (long long k = 1; k <= i; ++k) {
            if (x[k] == 0) continue;
            mpz_addmul(acc.get_mpz_t(), x[k].get_mpz_t(), y[i - k].get_mpz_t());
        }
        y.coeff_ref(i) = unit_negative ? acc : -acc;
    }
    return y;
}

inline TruncatedSeries pow(const TruncatedSeries& x, long long e) {
    if (e < 0) return pow(invert(x), -e);
    TruncatedSeries base = x;
    TruncatedSeries r = TruncatedSeries::one(x.order());
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return r;
}

/* Smallest index where the coefficients differ, or nullopt when the two
 * series agree through the common order. */
inline std::optional<long long> first_difference(const TruncatedSeries& x, const TruncatedSeries& y) {
    const long long n = std::min(x.order(), y.order());
    for (long long i = 0; i <= n; ++i)
        if (x[i] != y[i]) return i;
    return std::nullopt;
}

/* (q^j; q)_m = prod_{k=1}^{m} (1 - q^{j+k-1}), truncated at the given order.
 * Factors whose power exceeds the order are 1 modulo q^(order+1). */
inline TruncatedSeries qpoch_finite(long long j, long long m, int order) {
    if (j < 1) throw Error("qpoch_finite: base offset j must be >= 1");
    if (m < 0) throw Error("qpoch_finite: subscript must be >= 0");
    TruncatedSeries r = TruncatedSeries::one(order);
    for (long long k = 1; k <= m; ++k) {
        long long p = j + k - 1;
        if (p > order) break;
        r.mul_one_minus_power(p);
    }
    return r;
}

/* (q^j; q)_inf^c. Negative powers go through invert(); the infinite product
 * is complete once the factor power passes the truncation order. */
inline TruncatedSeries qpoch_infinite_power(long long j, long long c, int order) {
    if (j < 1) throw Error("qpoch_infinite_power: base offset j must be >= 1");
    if (c == 0) return TruncatedSeries::one(order);
    TruncatedSeries base = TruncatedSeries::one(order);
    for (long long p = j; p <= order; ++p) base.mul_one_minus_power(p);
    if (c < 0) base = invert(base);
    return pow(base, c < 0 ? -c : c);
}

/* Subscript b of the bilateral series h_b. */
struct ThetaParams {
    int b;
    explicit ThetaParams(int b_) : b(b_) {
        if (b < 1) throw Error("h_b: subscript b must be >= 1");
    }
};

/* h_b(q) = sum over all integers n of eps_b(n) q^{b n(n+1)/2 - n}, where
 * eps_b(n) = (-1)^n for odd b, and +1 (n >= 0) / -1 (n < 0) for even b.
 * A theta function for odd b, a false theta function for even b. The
 * exponent is increasing in |n| in each direction, so each loop stops at
 * the first exponent past the order. */
inline TruncatedSeries h_series(ThetaParams p, int order) {
    const long long b = p.b;
    TruncatedSeries h(order);
    for (long long n = 0;; ++n) {
        long long e = b * n * (n + 1) / 2 - n;
        if (e > order) break;
        bool neg = (b % 2 == 1) && (n % 2 == 1);
        h.coeff_ref(e) += neg ? -1 : 1;
    }
    for (long long n = -1;; --n) {
        long long e = b * n * (n + 1) / 2 - n;
        if (e > order) break;
        bool neg = (b % 2 == 1) ? (n % 2 != 0) : true;
        h.coeff_ref(e) += neg ? -1 : 1;
    }
    return h;
}

inline TruncatedSeries h_series(int b, int order) { return h_series(ThetaParams(b), order); }

/* Render as readable text, e.g. "1 - q + q^3 - q^6". */
inline std::string to_string(const TruncatedSeries& s) {
    std::string out;
    for (long long i = 0; i <= s.order(); ++i) {
        const mpz_class& c = s[i];
        if (c == 0) continue;
        mpz_class a = c < 0 ? mpz_class(-c) : c;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        if (i == 0) {
            out += a.get_str();
        } else {
            if (a != 1) { out += a.get_str(); out += "*"; }
            out += "q";
            if (i > 1) { out += "^"; out += std::to_string(i); }
        }
    }
    if (out.empty()) out = "0";
    return out;
}

} // namespace qtails
