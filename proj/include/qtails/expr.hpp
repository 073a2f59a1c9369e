#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qtails/multisum.hpp"
#include "qtails/series.hpp"

namespace qtails {

class SeriesExpr;
using ExprPtr = std::shared_ptr<const SeriesExpr>;

struct OneNode {};
struct HFunc {
    int b;
};
struct EtaPower {
    int j; // (q^j; q)_inf
    int c; // power, any integer
};
struct MultisumNode {
    MultisumSpec spec;
    std::vector<std::string> var_names;
};
struct ProductNode {
    std::vector<ExprPtr> factors;
};

inline std::vector<std::string> default_var_names(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        if (n <= 26)
            names.push_back(std::string(1, static_cast<char>('a' + i)));
        else
            names.push_back("x" + std::to_string(i + 1));
    }
    return names;
}

/* Immutable expression tree: products of theta blocks h_b, eta powers
 * (q^j;q)_inf^c and multisums. Shared subtrees are fine; nodes never
 * change after construction. */
class SeriesExpr {
public:
    using Node = std::variant<OneNode, HFunc, EtaPower, MultisumNode, ProductNode>;

    static ExprPtr one() { return wrap(OneNode{}); }

    static ExprPtr h(int b) {
        if (b < 1) throw Error("h(b): subscript must be >= 1");
        return wrap(HFunc{b});
    }

    static ExprPtr eta(int j, int c) {
        if (j < 1) throw Error("eta(j): base offset must be >= 1");
        return wrap(EtaPower{j, c});
    }

    static ExprPtr multisum(MultisumSpec spec, std::vector<std::string> var_names = {}) {
        if (var_names.empty()) var_names = default_var_names(spec.nvars);
        if (static_cast<int>(var_names.size()) != spec.nvars)
            throw Error("multisum: variable name count does not match nvars");
        for (size_t i = 0; i < var_names.size(); ++i) {
            const std::string& n = var_names[i];
            bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
            for (char ch : n)
                ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
            if (!ok) throw Error("multisum: invalid variable name '" + n + "'");
            for (size_t k = 0; k < i; ++k)
                if (var_names[k] == n) throw Error("multisum: duplicate variable name '" + n + "'");
        }
        validate_spec(spec);
        return wrap(MultisumNode{std::move(spec), std::move(var_names)});
    }

    /* n-ary product; nested products are flattened and a singleton list
     * collapses to its only factor. */
    static ExprPtr product(std::vector<ExprPtr> factors) {
        std::vector<ExprPtr> flat;
        for (auto& f : factors) {
            if (!f) throw Error("product: null factor");
            if (const auto* p = std::get_if<ProductNode>(&f->node()))
                flat.insert(flat.end(), p->factors.begin(), p->factors.end());
            else
                flat.push_back(std::move(f));
        }
        if (flat.empty()) return one();
        if (flat.size() == 1) return flat[0];
        return wrap(ProductNode{std::move(flat)});
    }

    const Node& node() const { return node_; }

    bool equals(const SeriesExpr& o) const {
        if (node_.index() != o.node_.index()) return false;
        if (std::holds_alternative<OneNode>(node_)) return true;
        if (const auto* a = std::get_if<HFunc>(&node_))
            return a->b == std::get<HFunc>(o.node_).b;
        if (const auto* a = std::get_if<EtaPower>(&node_)) {
            const auto& b = std::get<EtaPower>(o.node_);
            return a->j == b.j && a->c == b.c;
        }
        if (const auto* a = std::get_if<MultisumNode>(&node_)) {
            const auto& b = std::get<MultisumNode>(o.node_);
            return a->spec == b.spec && a->var_names == b.var_names;
        }
        const auto& a = std::get<ProductNode>(node_);
        const auto& b = std::get<ProductNode>(o.node_);
        if (a.factors.size() != b.factors.size()) return false;
        for (size_t i = 0; i < a.factors.size(); ++i)
            if (!a.factors[i]->equals(*b.factors[i])) return false;
        return true;
    }

private:
    static ExprPtr wrap(Node n) {
        return std::shared_ptr<const SeriesExpr>(new SeriesExpr(std::move(n)));
    }
    explicit SeriesExpr(Node n) : node_(std::move(n)) {}

    Node node_;
};

inline bool operator==(const SeriesExpr& a, const SeriesExpr& b) { return a.equals(b); }

/* One stated identity between two expressions. `corrected` entries carry
 * the original text of the repaired fragment. */
struct Identity {
    std::string name;
    ExprPtr lhs;
    ExprPtr rhs;
    std::string source;
    bool corrected = false;
    std::string original_text;
};

/* Recursive evaluation at a fixed truncation order. Multisum enumeration
 * statistics are accumulated into *stats when given. */
inline TruncatedSeries eval_expr(const SeriesExpr& e, int order, EnumerationStats* stats = nullptr) {
    if (std::holds_alternative<OneNode>(e.node())) return TruncatedSeries::one(order);
    if (const auto* hf = std::get_if<HFunc>(&e.node())) return h_series(hf->b, order);
    if (const auto* ep = std::get_if<EtaPower>(&e.node()))
        return qpoch_infinite_power(ep->j, ep->c, order);
    if (const auto* ms = std::get_if<MultisumNode>(&e.node())) {
        auto [value, st] = evaluate(ms->spec, order);
        if (stats) {
            stats->points_visited += st.points_visited;
            stats->points_contributing += st.points_contributing;
            stats->elapsed += st.elapsed;
        }
        return value;
    }
    const auto& prod = std::get<ProductNode>(e.node());
    TruncatedSeries acc = TruncatedSeries::one(order);
    for (const auto& f : prod.factors) acc = mul(acc, eval_expr(*f, order, stats));
    return acc;
}

namespace detail {

inline void append_signed_term(std::string& out, const Rational& coeff, const std::string& monomial) {
    Rational a = coeff.num() < 0 ? -coeff : coeff;
    if (out.empty())
        out += coeff.num() < 0 ? "-" : "";
    else
        out += coeff.num() < 0 ? " - " : " + ";
    if (monomial.empty()) {
        out += a.str();
    } else {
        if (!(a == Rational(1))) { out += a.str(); out += "*"; }
        out += monomial;
    }
}

inline std::string print_linform(const LinearForm& f, const std::vector<std::string>& names) {
    std::string out;
    for (const auto& [i, c] : f.coefficients())
        append_signed_term(out, Rational(c), names[static_cast<size_t>(i)]);
    if (f.constant() != 0 || out.empty()) append_signed_term(out, Rational(f.constant()), "");
    return out;
}

inline std::string print_qpoly(const QuadraticExponent& e, const std::vector<std::string>& names) {
    std::string out;
    for (const auto& [k, c] : e.quad_terms()) {
        auto [i, j] = k;
        std::string mono = (i == j) ? names[static_cast<size_t>(i)] + "^2"
                                    : names[static_cast<size_t>(i)] + "*" + names[static_cast<size_t>(j)];
        append_signed_term(out, c, mono);
    }
    for (const auto& [i, c] : e.linear_terms())
        append_signed_term(out, c, names[static_cast<size_t>(i)]);
    if (!e.constant().is_zero() || out.empty()) append_signed_term(out, e.constant(), "");
    return out;
}

} // namespace detail

/* Canonical text form; parse_expression() of the result reproduces the
 * tree exactly. */
inline std::string pretty_print(const SeriesExpr& e) {
    if (std::holds_alternative<OneNode>(e.node())) return "1";
    if (const auto* hf = std::get_if<HFunc>(&e.node()))
        return "h(" + std::to_string(hf->b) + ")";
    if (const auto* ep = std::get_if<EtaPower>(&e.node())) {
        std::string base = ep->j == 1 ? "eta" : "eta(" + std::to_string(ep->j) + ")";
        if (ep->c == 1) return base;
        return base + "^" + std::to_string(ep->c);
    }
    if (const auto* ms = std::get_if<MultisumNode>(&e.node())) {
        const auto& names = ms->var_names;
        std::string out = "sum{ vars:";
        for (const auto& n : names) { out += " "; out += n; }
        out += ";";
        if (!ms->spec.sign.is_zero())
            out += " sign: " + detail::print_linform(ms->spec.sign, names) + ";";
        out += " exp: " + detail::print_qpoly(ms->spec.exponent, names) + ";";
        auto join = [&](const std::vector<LinearForm>& fs) {
            std::string s;
            for (size_t i = 0; i < fs.size(); ++i) {
                if (i) s += ", ";
                s += detail::print_linform(fs[i], names);
            }
            return s;
        };
        if (!ms->spec.numerator_pochhammers.empty())
            out += " num: " + join(ms->spec.numerator_pochhammers) + ";";
        out += " den: " + join(ms->spec.denominator_pochhammers) + ";";
        out += " }";
        return out;
    }
    const auto& prod = std::get<ProductNode>(e.node());
    std::string out;
    for (size_t i = 0; i < prod.factors.size(); ++i) {
        if (i) out += " * ";
        out += pretty_print(*prod.factors[i]);
    }
    return out;
}

inline std::string print_identity(const Identity& id) {
    return "identity \"" + id.name + "\":\n  " + pretty_print(*id.lhs) + "\n  == " +
           pretty_print(*id.rhs) + ";\n";
}

} // namespace qtails
