#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtails/rational.hpp"
#include "qtails/series.hpp"

namespace qtails {

/* Integer linear form sum_i coeff_i x_i + constant over the summation
 * variables; carries Pochhammer subscripts and sign exponents. */
class LinearForm {
public:
    LinearForm() = default;
    explicit LinearForm(long long constant) : constant_(constant) {}

    static LinearForm variable(int i) {
        LinearForm f;
        f.coeffs_[i] = 1;
        return f;
    }

    long long coefficient(int i) const {
        auto it = coeffs_.find(i);
        return it == coeffs_.end() ? 0 : it->second;
    }
    long long constant() const { return constant_; }
    const std::map<int, long long>& coefficients() const { return coeffs_; }

    void set_coefficient(int i, long long c) {
        if (c == 0) coeffs_.erase(i); else coeffs_[i] = c;
    }
    void add_coefficient(int i, long long c) { set_coefficient(i, coefficient(i) + c); }
    void set_constant(long long c) { constant_ = c; }
    void add_constant(long long c) { constant_ += c; }

    bool is_zero() const { return constant_ == 0 && coeffs_.empty(); }
    int max_variable() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

    long long eval(std::span<const long long> x) const {
        long long v = constant_;
        for (const auto& [i, c] : coeffs_) v += c * x[static_cast<size_t>(i)];
        return v;
    }

    bool operator==(const LinearForm&) const = default;

private:
    std::map<int, long long> coeffs_;
    long long constant_ = 0;
};

/* Rational-coefficient quadratic polynomial over the summation variables.
 * Keys of the quadratic map are normalized pairs (i, j) with i <= j; the
 * diagonal entry (i, i) is the coefficient of x_i^2. */
class QuadraticExponent {
public:
    const Rational& quad(int i, int j) const {
        auto it = quad_.find(key(i, j));
        return it == quad_.end() ? zero() : it->second;
    }
    const Rational& linear(int i) const {
        auto it = lin_.find(i);
        return it == lin_.end() ? zero() : it->second;
    }
    const Rational& constant() const { return const_; }

    const std::map<std::pair<int, int>, Rational>& quad_terms() const { return quad_; }
    const std::map<int, Rational>& linear_terms() const { return lin_; }

    void set_quad(int i, int j, Rational c) {
        if (c.is_zero()) quad_.erase(key(i, j)); else quad_[key(i, j)] = c;
    }
    void add_quad(int i, int j, Rational c) { set_quad(i, j, quad(i, j) + c); }
    void set_linear(int i, Rational c) {
        if (c.is_zero()) lin_.erase(i); else lin_[i] = c;
    }
    void add_linear(int i, Rational c) { set_linear(i, linear(i) + c); }
    void set_constant(Rational c) { const_ = c; }
    void add_constant(Rational c) { const_ += c; }

    int max_variable() const {
        int m = -1;
        if (!lin_.empty()) m = std::max(m, lin_.rbegin()->first);
        if (!quad_.empty())
            for (const auto& [k, c] : quad_) m = std::max(m, k.second);
        return m;
    }

    Rational eval(std::span<const long long> x) const {
        Rational v = const_;
        for (const auto& [i, c] : lin_) v += c * Rational(x[static_cast<size_t>(i)]);
        for (const auto& [k, c] : quad_)
            v += c * Rational(x[static_cast<size_t>(k.first)] * x[static_cast<size_t>(k.second)]);
        return v;
    }

    bool operator==(const QuadraticExponent&) const = default;

private:
    static std::pair<int, int> key(int i, int j) { return i <= j ? std::pair{i, j} : std::pair{j, i}; }
    static const Rational& zero() {
        static const Rational z;
        return z;
    }

    std::map<std::pair<int, int>, Rational> quad_;
    std::map<int, Rational> lin_;
    Rational const_;
};

/* One nested multisum: sum over x in Z_{>=0}^nvars of
 *   (-1)^{sign(x)} q^{exponent(x)} prod (q)_{num(x)} / prod (q)_{den(x)},
 * where any Pochhammer subscript < 0 makes the whole term vanish. */
struct MultisumSpec {
    int nvars = 0;
    QuadraticExponent exponent;
    LinearForm sign;
    std::vector<LinearForm> numerator_pochhammers;
    std::vector<LinearForm> denominator_pochhammers;

    bool operator==(const MultisumSpec&) const = default;
};

struct EnumerationStats {
    std::uint64_t points_visited = 0;
    std::uint64_t points_contributing = 0;
    std::chrono::microseconds elapsed{0};
};

/* True iff the exponent takes integer values on every non-negative integer
 * point. The finite basis check (values at 0, e_i, 2e_i, e_i + e_j) is
 * equivalent: it pins the constant, then l_i + q_ii and 2 q_ii, then every
 * cross coefficient, and f(x) = c + sum x_i(l_i + q_ii) + 2 q_ii C(x_i,2)
 * + sum q_ij x_i x_j is then manifestly integral. */
inline bool integrality_check(const QuadraticExponent& e) {
    if (!e.constant().is_integer()) return false;
    std::vector<int> vars;
    for (const auto& [i, c] : e.linear_terms()) vars.push_back(i);
    for (const auto& [k, c] : e.quad_terms()) {
        vars.push_back(k.first);
        vars.push_back(k.second);
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (int i : vars) {
        Rational at_one = e.constant() + e.linear(i) + e.quad(i, i);
        Rational at_two = e.constant() + Rational(2) * e.linear(i) + Rational(4) * e.quad(i, i);
        if (!at_one.is_integer() || !at_two.is_integer()) return false;
    }
    for (const auto& [k, c] : e.quad_terms()) {
        auto [i, j] = k;
        if (i == j) continue;
        Rational v = e.constant() + e.linear(i) + e.linear(j) + e.quad(i, i) + e.quad(j, j) + c;
        if (!v.is_integer()) return false;
    }
    return true;
}

enum class VarStrategy { monotone, diagonal_bounded };

/* Classify every variable for the enumeration: "monotone" variables have a
 * non-decreasing exponent contribution, "diagonal-bounded" ones dip first
 * (negative linear part) and need a positive diagonal to come back up. */
inline std::vector<VarStrategy> strategy_check(const MultisumSpec& s) {
    for (const auto& [k, c] : s.exponent.quad_terms())
        if (k.first != k.second && c < Rational(0))
            throw Error("negative cross coefficient between variables " + std::to_string(k.first) +
                        " and " + std::to_string(k.second));
    std::vector<VarStrategy> out;
    out.reserve(static_cast<size_t>(s.nvars));
    for (int i = 0; i < s.nvars; ++i) {
        const Rational& q = s.exponent.quad(i, i);
        const Rational& l = s.exponent.linear(i);
        if (q >= Rational(0) && l >= Rational(0)) {
            out.push_back(VarStrategy::monotone);
        } else if (q > Rational(0)) {
            out.push_back(VarStrategy::diagonal_bounded);
        } else {
            throw UnboundedVariable("variable " + std::to_string(i) +
                                    ": exponent decreases without a positive diagonal term");
        }
    }
    return out;
}

/* Load-time spec invariants: integer Pochhammer subscripts within range,
 * non-negative cross coefficients, integral exponent values, and exponent
 * growth in every variable (a positive diagonal or linear part, or failing
 * that a positive cross tie to a variable that has one). */
inline void validate_spec(const MultisumSpec& s) {
    auto check_range = [&](int v, const char* where) {
        if (v >= s.nvars)
            throw Error(std::string(where) + " references variable index " + std::to_string(v) +
                        " outside nvars=" + std::to_string(s.nvars));
    };
    auto check_linform = [&](const LinearForm& f, const char* where) {
        check_range(f.max_variable(), where);
        if (!f.coefficients().empty() && f.coefficients().begin()->first < 0)
            throw Error(std::string(where) + " references a negative variable index");
    };
    check_linform(s.sign, "sign form");
    check_range(s.exponent.max_variable(), "exponent");
    for (const auto& [k, c] : s.exponent.quad_terms())
        if (k.first < 0) throw Error("exponent references a negative variable index");
    for (const auto& [i, c] : s.exponent.linear_terms())
        if (i < 0) throw Error("exponent references a negative variable index");
    for (const auto& f : s.numerator_pochhammers) check_linform(f, "numerator subscript");
    for (const auto& f : s.denominator_pochhammers) check_linform(f, "denominator subscript");

    if (!integrality_check(s.exponent))
        throw Error("exponent is not integer-valued on the lattice");
    strategy_check(s);

    std::vector<bool> grows(static_cast<size_t>(s.nvars), false);
    for (int i = 0; i < s.nvars; ++i)
        grows[static_cast<size_t>(i)] =
            s.exponent.quad(i, i) > Rational(0) || s.exponent.linear(i) > Rational(0);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [k, c] : s.exponent.quad_terms()) {
            if (k.first == k.second || !(c > Rational(0))) continue;
            auto [i, j] = k;
            if (grows[static_cast<size_t>(i)] && !grows[static_cast<size_t>(j)]) {
                grows[static_cast<size_t>(j)] = true;
                changed = true;
            } else if (grows[static_cast<size_t>(j)] && !grows[static_cast<size_t>(i)]) {
                grows[static_cast<size_t>(i)] = true;
                changed = true;
            }
        }
    }
    for (int i = 0; i < s.nvars; ++i)
        if (!grows[static_cast<size_t>(i)])
            throw Error("variable " + std::to_string(i) + " has no exponent growth");
}

/* Incrementally built (q)_m and 1/(q)_m tables at a fixed truncation order.
 * Subscripts clamp at the order: (q)_m is stationary modulo q^(order+1)
 * once m >= order. The inverse chain multiplies by the geometric series in
 * q^(m+1), so each extension costs O(order). */
class PochhammerCache {
public:
    explicit PochhammerCache(int order) : order_(order) {
        finite_.push_back(TruncatedSeries::one(order));
        inverse_.push_back(TruncatedSeries::one(order));
    }

    const TruncatedSeries& finite(long long m) {
        m = clamp(m);
        while (static_cast<long long>(finite_.size()) <= m) {
            TruncatedSeries next = finite_.back();
            next.mul_one_minus_power(static_cast<long long>(finite_.size()));
            finite_.push_back(std::move(next));
        }
        return finite_[static_cast<size_t>(m)];
    }

    const TruncatedSeries& inverse(long long m) {
        m = clamp(m);
        while (static_cast<long long>(inverse_.size()) <= m) {
            TruncatedSeries next = inverse_.back();
            next.mul_geometric(static_cast<long long>(inverse_.size()));
            inverse_.push_back(std::move(next));
        }
        return inverse_[static_cast<size_t>(m)];
    }

private:
    long long clamp(long long m) const {
        if (m < 0) throw Error("Pochhammer cache queried with negative subscript");
        return std::min<long long>(m, order_);
    }

    int order_;
    std::vector<TruncatedSeries> finite_;
    std::vector<TruncatedSeries> inverse_;
};

/* The exact series contribution of a single lattice point, truncated at
 * `order`; the zero series when any Pochhammer subscript is negative. */
inline TruncatedSeries term_series(const MultisumSpec& s, std::span<const long long> point, int order) {
    TruncatedSeries out(order);
    std::vector<long long> num_subs, den_subs;
    for (const auto& f : s.numerator_pochhammers) {
        long long v = f.eval(point);
        if (v < 0) return out;
        num_subs.push_back(v);
    }
    for (const auto& f : s.denominator_pochhammers) {
        long long v = f.eval(point);
        if (v < 0) return out;
        den_subs.push_back(v);
    }
    Rational e = s.exponent.eval(point);
    if (!e.is_integer())
        throw Error("non-integer exponent " + e.str() + " at a lattice point");
    long long shift = e.num();
    if (shift > order) return out;
    if (shift < 0)
        throw Error("negative exponent " + e.str() + " at a contributing lattice point");
    const int inner = order - static_cast<int>(shift);
    TruncatedSeries prod = TruncatedSeries::one(inner);
    for (long long m : num_subs) prod = mul(prod, qpoch_finite(1, m, inner));
    for (long long m : den_subs) prod = mul(prod, invert(qpoch_finite(1, std::min<long long>(m, inner), inner)));
    bool negate = (s.sign.eval(point) % 2 + 2) % 2 == 1;
    out.add_shifted(prod, shift, negate);
    return out;
}

namespace detail {

inline long long ceil_div(long long a, long long b) {
    // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

/* dst[0..len] = (a*b)[0..len]; dst may hold stale data beyond len. */
inline void mul_prefix(TruncatedSeries& dst, const TruncatedSeries& a, const TruncatedSeries& b, int len) {
    for (long long i = 0; i <= len; ++i) dst.coeff_ref(i) = 0;
    for (long long i = 0; i <= len; ++i) {
        if (a[i] == 0) continue;
        for (long long j = 0; i + j <= len; ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(dst.coeff_ref(i + j).get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
}

struct CompiledFactor {
    bool numerator = false;
    long long constant = 0;
    std::vector<std::pair<int, long long>> terms; // (variable, coefficient)
};

/* Exponent data scaled by the common denominator D so every branch bound
 * is plain integer arithmetic: a term contributes iff D*exponent <= D*N. */
struct CompiledSpec {
    int n = 0;
    long long scale = 1;
    long long dconst = 0;
    std::vector<long long> dquad;      // D * quad(i,i)
    std::vector<long long> dlin;       // D * linear(i)
    std::vector<long long> dcross;     // n*n symmetric matrix of D * cross coefficients
    std::vector<long long> sign_coeff;
    long long sign_const = 0;
    std::vector<CompiledFactor> factors;
    std::vector<std::vector<int>> ready; // ready[d]: factors evaluable once x_d is set
    std::vector<int> const_factors;
    std::vector<long long> static_min; // D * min_{v>=0} (quad v^2 + lin v) per variable
    std::vector<long long> suffix_min; // size n+1

    long long cross(int i, int j) const { return dcross[static_cast<size_t>(i) * n + j]; }
};

inline CompiledSpec compile_spec(const MultisumSpec& s) {
    CompiledSpec cs;
    cs.n = s.nvars;
    long long d = 1;
    for (const auto& [k, c] : s.exponent.quad_terms()) d = std::lcm(d, c.den());
    for (const auto& [i, c] : s.exponent.linear_terms()) d = std::lcm(d, c.den());
    d = std::lcm(d, s.exponent.constant().den());
    cs.scale = d;
    auto scaled = [&](const Rational& r) { return r.num() * (d / r.den()); };
    cs.dconst = scaled(s.exponent.constant());
    cs.dquad.assign(static_cast<size_t>(cs.n), 0);
    cs.dlin.assign(static_cast<size_t>(cs.n), 0);
    cs.dcross.assign(static_cast<size_t>(cs.n) * cs.n, 0);
    for (int i = 0; i < cs.n; ++i) {
        cs.dquad[static_cast<size_t>(i)] = scaled(s.exponent.quad(i, i));
        cs.dlin[static_cast<size_t>(i)] = scaled(s.exponent.linear(i));
    }
    for (const auto& [k, c] : s.exponent.quad_terms()) {
        auto [i, j] = k;
        if (i == j) continue;
        long long v = scaled(c);
        cs.dcross[static_cast<size_t>(i) * cs.n + j] = v;
        cs.dcross[static_cast<size_t>(j) * cs.n + i] = v;
    }
    cs.sign_coeff.assign(static_cast<size_t>(cs.n), 0);
    for (const auto& [i, c] : s.sign.coefficients()) cs.sign_coeff[static_cast<size_t>(i)] = c;
    cs.sign_const = s.sign.constant();

    cs.ready.assign(static_cast<size_t>(cs.n), {});
    auto add_factor = [&](const LinearForm& f, bool numerator) {
        CompiledFactor cf;
        cf.numerator = numerator;
        cf.constant = f.constant();
        for (const auto& [i, c] : f.coefficients()) cf.terms.emplace_back(i, c);
        int idx = static_cast<int>(cs.factors.size());
        int rd = f.max_variable();
        cs.factors.push_back(std::move(cf));
        if (rd < 0)
            cs.const_factors.push_back(idx);
        else
            cs.ready[static_cast<size_t>(rd)].push_back(idx);
    };
    for (const auto& f : s.numerator_pochhammers) add_factor(f, true);
    for (const auto& f : s.denominator_pochhammers) add_factor(f, false);

    cs.static_min.assign(static_cast<size_t>(cs.n), 0);
    for (int i = 0; i < cs.n; ++i) {
        long long dq = cs.dquad[static_cast<size_t>(i)];
        long long dl = cs.dlin[static_cast<size_t>(i)];
        long long best = 0;
        if (dq > 0 && dl < 0) {
            long long v = (-dl) / (2 * dq);
            for (long long cand : {v, v + 1}) {
                if (cand < 0) continue;
                best = std::min(best, dq * cand * cand + dl * cand);
            }
        }
        cs.static_min[static_cast<size_t>(i)] = best;
    }
    cs.suffix_min.assign(static_cast<size_t>(cs.n) + 1, 0);
    for (int i = cs.n - 1; i >= 0; --i)
        cs.suffix_min[static_cast<size_t>(i)] =
            cs.suffix_min[static_cast<size_t>(i) + 1] + cs.static_min[static_cast<size_t>(i)];
    return cs;
}

/* Per-variable iteration ceilings for enumeration without the branch
 * bound: the largest v whose own contribution plus every other variable's
 * minimum still fits under the order. */
inline std::vector<long long> univariate_box(const CompiledSpec& cs, int order) {
    std::vector<long long> box(static_cast<size_t>(cs.n), -1);
    const long long dn = cs.scale * order;
    for (int i = 0; i < cs.n; ++i) {
        long long rest = cs.dconst + cs.suffix_min[0] - cs.static_min[static_cast<size_t>(i)];
        long long dq = cs.dquad[static_cast<size_t>(i)];
        long long dl = cs.dlin[static_cast<size_t>(i)];
        for (long long v = 0;; ++v) {
            long long contrib = dq * v * v + dl * v;
            if (contrib + rest <= dn) {
                box[static_cast<size_t>(i)] = v;
            } else if (dq * (2 * v + 1) + dl >= 0) {
                break; // contribution is non-decreasing from here on
            }
            if (dq == 0 && dl == 0)
                throw UnboundedVariable("variable " + std::to_string(i) +
                                        " has a constant exponent contribution");
        }
    }
    return box;
}

class Enumerator {
public:
    Enumerator(const CompiledSpec& cs, int order, bool prune)
        : cs_(cs), order_(order), prune_(prune), dn_(cs.scale * order), cache_(order),
          acc_(order), x_(static_cast<size_t>(cs.n), 0),
          curlin_(static_cast<size_t>(cs.n + 1) * std::max(cs.n, 1), 0) {
        for (int d = 0; d < cs_.n; ++d) {
            scratch_a_.emplace_back(order);
            scratch_b_.emplace_back(order);
        }
        if (!prune_) box_ = univariate_box(cs_, order_);
    }

    std::pair<TruncatedSeries, EnumerationStats> run() {
        auto t0 = std::chrono::steady_clock::now();
        TruncatedSeries root = TruncatedSeries::one(order_);
        bool dead = false;
        for (int fi : cs_.const_factors) {
            const auto& f = cs_.factors[static_cast<size_t>(fi)];
            if (f.constant < 0) { dead = true; break; }
            root = mul(root, f.numerator ? cache_.finite(f.constant) : cache_.inverse(f.constant));
        }
        if (!dead) {
            for (int i = 0; i < cs_.n; ++i) curlin_[static_cast<size_t>(i)] = cs_.dlin[static_cast<size_t>(i)];
            descend(0, cs_.dconst, cs_.sign_const, root, order_);
        }
        stats_.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
            std::chrono::steady_clock::now() - t0);
        return {std::move(acc_), stats_};
    }

private:
    long long* row(int depth) { return curlin_.data() + static_cast<size_t>(depth) * cs_.n; }

    void descend(int depth, long long dexp, long long parity, const TruncatedSeries& partial, int plen) {
        const long long d = cs_.scale;
        if (depth == cs_.n) {
            ++stats_.points_visited;
            if (dexp % d != 0)
                throw Error("non-integer exponent reached during enumeration");
            long long e = dexp / d;
            if (e > order_) return; // only reachable with pruning disabled
            if (e < 0)
                throw Error("negative exponent at a contributing lattice point");
            acc_.add_shifted(partial, e, (parity % 2 + 2) % 2 == 1);
            ++stats_.points_contributing;
            return;
        }
        const long long dq = cs_.dquad[static_cast<size_t>(depth)];
        long long* cur = row(depth);
        long long* nxt = row(depth + 1);
        for (int i = depth + 1; i < cs_.n; ++i) nxt[i] = cur[i];
        const long long lin_d = cur[depth];
        const long long rest = cs_.suffix_min[static_cast<size_t>(depth) + 1];
        const auto& ready = cs_.ready[static_cast<size_t>(depth)];
        for (long long v = 0;; ++v) {
            if (v > 0)
                for (int i = depth + 1; i < cs_.n; ++i) nxt[i] += cs_.cross(depth, i);
            const long long contrib = dq * v * v + lin_d * v;
            const long long bound = dexp + contrib + rest;
            bool feasible;
            if (prune_) {
                feasible = bound <= dn_;
                if (!feasible) {
                    if (dq * (2 * v + 1) + lin_d >= 0) break; // non-decreasing from here
                    continue;
                }
                if (dq == 0 && lin_d == 0)
                    throw UnboundedVariable(
                        "variable " + std::to_string(depth) +
                        " has a constant exponent contribution on this branch");
            } else {
                if (v > box_[static_cast<size_t>(depth)]) break;
                feasible = true;
            }
            x_[static_cast<size_t>(depth)] = v;
            int child_len = static_cast<int>(order_ - ceil_div(bound, d));
            child_len = std::min(child_len, plen);
            if (child_len < 0) child_len = 0;
            const TruncatedSeries* child = &partial;
            bool dead = false;
            if (!ready.empty()) {
                const TruncatedSeries* src = &partial;
                TruncatedSeries* dst = &scratch_a_[static_cast<size_t>(depth)];
                for (int fi : ready) {
                    const auto& f = cs_.factors[static_cast<size_t>(fi)];
                    long long sub = f.constant;
                    for (const auto& [vi, c] : f.terms) sub += c * x_[static_cast<size_t>(vi)];
                    if (sub < 0) { dead = true; break; }
                    const TruncatedSeries& fs = f.numerator ? cache_.finite(sub) : cache_.inverse(sub);
                    mul_prefix(*dst, *src, fs, child_len);
                    src = dst;
                    dst = (dst == &scratch_a_[static_cast<size_t>(depth)])
                              ? &scratch_b_[static_cast<size_t>(depth)]
                              : &scratch_a_[static_cast<size_t>(depth)];
                }
                child = src;
            }
            if (!dead)
                descend(depth + 1, dexp + contrib, parity + cs_.sign_coeff[static_cast<size_t>(depth)] * v,
                        *child, child_len);
        }
    }

    const CompiledSpec& cs_;
    int order_;
    bool prune_;
    long long dn_;
    PochhammerCache cache_;
    TruncatedSeries acc_;
    EnumerationStats stats_;
    std::vector<long long> x_;
    std::vector<long long> curlin_;
    std::vector<long long> box_;
    std::vector<TruncatedSeries> scratch_a_, scratch_b_;
};

} // namespace detail

struct EvalOptions {
    bool prune = true;
};

/* Exact truncated evaluation by depth-first enumeration. A branch is cut
 * once the exponent of the fixed prefix plus the remaining variables'
 * univariate minima exceeds the order; partial Pochhammer products are
 * carried down the tree and re-truncated as the bound tightens. */
inline std::pair<TruncatedSeries, EnumerationStats> evaluate(const MultisumSpec& s, int order,
                                                             const EvalOptions& opts = {}) {
    validate_spec(s);
    detail::CompiledSpec cs = detail::compile_spec(s);
    detail::Enumerator en(cs, order, opts.prune);
    return en.run();
}

/* Iteration box big enough to hold every term with exponent <= order. */
inline std::vector<long long> naive_box(const MultisumSpec& s, int order) {
    validate_spec(s);
    return detail::univariate_box(detail::compile_spec(s), order);
}

/* Plain nested-loop oracle evaluator: no pruning, no shared partial
 * products, one term_series call per lattice point. */
inline TruncatedSeries evaluate_naive(const MultisumSpec& s, int order, std::span<const long long> box) {
    TruncatedSeries acc(order);
    std::vector<long long> point(static_cast<size_t>(s.nvars), 0);
    for (const long long b : box)
        if (b < 0) return acc; // some variable admits no value at all
    for (;;) {
        acc.add_shifted(term_series(s, point, order), 0, false);
        int i = 0;
        for (; i < s.nvars; ++i) {
            if (point[static_cast<size_t>(i)] < box[static_cast<size_t>(i)]) {
                ++point[static_cast<size_t>(i)];
                break;
            }
            point[static_cast<size_t>(i)] = 0;
        }
        if (i == s.nvars) break;
    }
    return acc;
}

inline TruncatedSeries evaluate_naive(const MultisumSpec& s, int order) {
    auto box = naive_box(s, order);
    return evaluate_naive(s, order, box);
}

} // namespace qtails
