#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qtails/expr.hpp"
#include "qtails/parser.hpp"

namespace qtails {

/* The multisum attached to a knot record: eta^eta_power * sum equals the
 * theta product (empty product = 1). `mirror` marks sums that compute the
 * tail of the mirror knot -K rather than K. */
struct KnotSum {
    bool mirror = false;
    int eta_power = 0;
    std::optional<std::vector<int>> product; // h-subscripts; nullopt when no product form is known
    ExprPtr sum;
    std::string identity_name; // empty when the sum is a definition only
};

/* One table row: the tail products for K and -K (nullopt = unknown), the
 * crossing count, and the knot's multisum when the catalog has one. */
struct CatalogEntry {
    std::string knot;
    int crossings = 0;
    std::optional<std::vector<int>> tail_product;
    std::optional<std::vector<int>> mirror_tail_product;
    std::optional<KnotSum> multisum;
    std::string corrected_note; // original text of a repaired fragment
};

struct HelperFamily {
    std::string id;
    std::string parameter_domain;
};

namespace detail {

/* Knot-sum identities, stated as eta-power times multisum equated to a
 * theta product. Two fragments are repaired relative to their printed
 * sources and flagged in the catalog: S_8_13 (h(3h+1)/2 term) and
 * S_10_19 (d*k term). */
inline const char* knot_identities_qid() {
    return R"qid(
identity "7_2":
  eta^7 * sum{ vars: a b c d e f g;
    exp: 3*a^2 + 2*a + b^2 + b*g + a*c + a*d + a*e + a*f + a*g
         + c*d + d*e + e*f + f*g + c + d + e + f + g;
    den: a, b, c, d, e, f, g, b+g, a+c, a+d, a+e, a+f, a+g; }
  == h(6);

identity "S_5_1":
  eta^5 * sum{ vars: a b c d e; sign: a;
    exp: a*(5*a+3)/2 + a*b + a*c + a*d + a*e + b*c + c*d + d*e + b + c + d + e;
    den: a, b, c, d, e, a+b, a+c, a+d, a+e; }
  == h(5);

identity "S_6_2":
  eta^5 * sum{ vars: a b c d e f; sign: e;
    exp: 2*f^2 + f + e*(3*e+1)/2 + a*b + a*f + b*c + b*f + c*d + c*e + c*f + d*e
         + a + b + c + d;
    den: a, b, c, d, e, f, a+f, b+f, c+e, c+f, d+e; }
  == h(4);

identity "S_7_1":
  eta^7 * sum{ vars: a b c d e f g; sign: a;
    exp: a*(7*a+5)/2 + a*b + a*c + a*d + a*e + a*f + a*g + b*c + c*d + d*e + e*f + f*g
         + b + c + d + e + f + g;
    den: a, b, c, d, e, f, g, a+b, a+c, a+d, a+e, a+f, a+g; }
  == h(7);

identity "S_7_4":
  eta^7 * sum{ vars: a b c d e f g;
    exp: 2*f^2 + f + 2*g^2 + g + a*b + a*g + b*c + b*g + c*d + c*f + c*g + d*e + d*f + e*f
         + a + b + c + d + e;
    den: a, b, c, d, e, f, g, a+g, b+g, c+f, c+g, d+f, e+f; }
  == h(4) * h(4);

identity "S_7_7":
  eta^4 * sum{ vars: a b c d e f g; sign: e+f+g;
    exp: 3/2*e^2 + e/2 + 3/2*f^2 + f/2 + 3/2*g^2 + g/2
         + a*b + a*d + a*e + a*f + b*f + c*d + c*g + d*e + d*g + a + b + c + d;
    den: a, b, c, d, e, f, g, a+e, d+e, a+f, b+f, c+g, d+g; }
  == 1;

identity "S_8_2":
  eta^7 * sum{ vars: a b c d e f g h; sign: b;
    exp: 3*a^2 + 2*a + b*(3*b+1)/2 + a*d + a*e + a*f + a*g + a*h + b*c + b*d
         + c*d + d*e + e*f + f*g + g*h + c + d + e + f + g + h;
    den: a, b, c, d, e, f, g, h, b+c, b+d, a+d, a+e, a+f, a+g, a+h; }
  == h(6);

identity "S_-8_4":
  eta^8 * sum{ vars: a b c d e f g h; sign: g;
    exp: g*(5*g+3)/2 + h*(2*h+1) + a*b + a*h + b*c + b*h + c*d + c*g + c*h
         + d*e + d*g + e*f + e*g + f*g + a + b + c + d + e + f;
    den: a, b, c, d, e, f, g, h, a+h, b+h, c+g, c+h, d+g, e+g, f+g; }
  == h(4) * h(5);

identity "S_8_7":
  eta^7 * sum{ vars: a b c d e g h i; sign: h+i;
    exp: i*(5*i+3)/2 + h*(3*h+1)/2 + g^2 + a*b + a*g + a*h + b*c + b*h + b*i
         + c*d + c*i + d*e + d*i + e*i + a + b + c + d + e;
    den: a, b, c, d, e, g, h, i, a+g, a+h, b+h, b+i, c+i, d+i, e+i; }
  == h(5);

identity "S_8_13":
  eta^6 * sum{ vars: a c d e f g h i; sign: g+h;
    exp: g*(3*g+1)/2 + h*(3*h+1)/2 + i*(2*i+1) + a*f + a*g + c*i + c*d + d*e + d*i
         + e*f + e*h + e*i + f*h + f*g + a + c + d + e + f;
    den: a, c, d, e, f, g, h, i, a+g, c+i, d+i, e+i, e+h, f+h, f+g; }
  == h(4);

identity "S_-9_5":
  eta^9 * sum{ vars: a b c d e f g h j;
    exp: h*(2*h+1) + j*(3*j+2) + a*b + a*g + a*h + a*j + b*c + b*h + c*h
         + d*e + d*j + e*f + e*j + f*g + f*j + g*j + a + b + c + d + e + f + g;
    den: a, b, c, d, e, f, g, h, j, a+h, a+j, b+h, c+h, d+j, e+j, f+j, g+j; }
  == h(4) * h(6);

identity "S_9_14":
  eta^7 * sum{ vars: a b c d e g h i j; sign: h+i+j;
    exp: h*(3*h+1)/2 + i*(3*i+1)/2 + j*(5*j+3)/2 + a*b + a*g + a*h + a*i
         + b*c + b*i + b*j + c*d + c*j + d*e + d*j + e*j + g*h + a + b + c + d + e + g;
    den: a, b, c, d, e, g, h, i, j, a+h, a+i, b+i, b+j, c+j, d+j, e+j, g+h; }
  == h(5);

identity "S_-9_17":
  eta^7 * sum{ vars: a b c d e f h i j; sign: h+i+j;
    exp: h*(3*h+1)/2 + i*(5*i+3)/2 + j*(3*j+1)/2 + a*b + a*j + b*c + b*i + b*j
         + c*d + c*i + d*e + d*i + e*f + e*h + e*i + f*h + a + b + c + d + e + f;
    den: a, b, c, d, e, f, h, i, j, a+j, b+i, b+j, c+i, d+i, e+h, e+i, f+h; }
  == h(5);

identity "S_-9_20":
  eta^8 * sum{ vars: a b c d e f h i j; sign: h;
    exp: h*(3*h+1)/2 + i*(2*i+1) + j*(2*j+1) + a*b + a*h + b*c + b*h + b*i
         + c*d + c*i + d*e + d*i + d*j + e*f + e*j + f*j + a + b + c + d + e + f;
    den: a, b, c, d, e, f, h, i, j, a+h, b+h, b+i, c+i, d+i, d+j, e+j, f+j; }
  == h(4) * h(4);

identity "S_-9_27":
  eta^7 * sum{ vars: a b c d e f g h i; sign: f+h;
    exp: f*(3*f+1)/2 + g*(2*g+1) + h*(3*h+1)/2 + i^2 + a*b + a*f + b*c + b*f + b*g
         + c*d + c*g + d*e + d*g + d*h + e*h + e*i + a + b + c + d + e;
    den: a, b, c, d, e, f, g, h, i, a+f, b+f, b+g, c+g, d+g, d+h, e+h, e+i; }
  == h(4);

identity "S_9_31":
  eta^5 * sum{ vars: a b c e f g h i j; sign: g+h+i+j;
    exp: g*(3*g+1)/2 + h*(3*h+1)/2 + i*(3*i+1)/2 + j*(3*j+1)/2 + a*b + a*f + a*g + a*j
         + b*c + b*g + b*h + c*h + e*f + e*i + f*i + f*j + a + b + c + e + f;
    den: a, b, c, e, f, g, h, i, j, a+g, a+j, b+g, b+h, c+h, e+i, f+i, f+j; }
  == 1;

identity "S_10_5":
  eta^9 * sum{ vars: a b c d e f g i j k; sign: j+k;
    exp: j*(3*j+1)/2 + k*(7*k+5)/2 + i^2 + a*b + a*i + a*j + b*c + b*j + b*k
         + c*d + c*k + d*e + d*k + e*f + e*k + f*g + f*k + g*k
         + a + b + c + d + e + f + g;
    den: a, b, c, d, e, f, g, i, j, k, a+i, a+j, b+j, b+k, c+k, d+k, e+k, f+k, g+k; }
  == h(7);

identity "S_-10_8":
  eta^10 * sum{ vars: a b c d e f g h i k; sign: i;
    exp: i*(5*i+3)/2 + k*(3*k+2) + a*b + a*e + a*i + a*k + b*c + b*i + c*d + c*i + d*i
         + e*f + e*k + f*g + f*k + g*h + g*k + h*k
         + a + b + c + d + e + f + g + h;
    den: a, b, c, d, e, f, g, h, i, k, a+i, a+k, b+i, c+i, d+i, e+k, f+k, g+k, h+k; }
  == h(5) * h(6);

identity "S_10_10":
  eta^8 * sum{ vars: a c d e f g h i j k; sign: i+j;
    exp: i*(3*i+1)/2 + j*(3*j+1)/2 + k*(3*k+2) + a*h + a*i + c*d + c*k + d*e + d*k
         + e*f + e*k + f*g + f*k + g*h + g*j + g*k + h*i + h*j
         + a + c + d + e + f + g + h;
    den: a, c, d, e, f, g, h, i, j, k, a+i, c+k, d+k, e+k, f+k, g+k, g+j, h+j, h+i; }
  == h(6);

identity "S_10_15":
  eta^10 * sum{ vars: a b c d e g h i j k; sign: i+j;
    exp: i*(5*i+3)/2 + j*(5*j+3)/2 + k^2 + a*b + a*h + a*i + b*c + b*i + b*j
         + c*d + c*j + d*e + d*j + e*j + g*h + g*i + g*k + h*i
         + a + b + c + d + e + g + h;
    den: a, b, c, d, e, g, h, i, j, k, a+i, b+i, b+j, c+j, d+j, e+j, g+i, g+k, h+i; }
  == h(5) * h(5);

identity "S_10_19":
  eta^9 * sum{ vars: a c d e f g h i j k; sign: j+k;
    exp: i*(2*i+1) + j*(3*j+1)/2 + k*(5*k+3)/2 + a*h + a*i + c*d + c*k + d*e + d*k
         + e*f + e*k + f*g + f*k + f*j + g*h + g*i + g*j + h*i
         + a + c + d + e + f + g + h;
    den: a, c, d, e, f, g, h, i, j, k, a+i, c+k, d+k, e+k, f+k, f+j, g+j, g+i, h+i; }
  == h(4) * h(5);

identity "S_10_26":
  eta^9 * sum{ vars: a b c e f g h i j k; sign: i;
    exp: h*(2*h+1) + i*(3*i+1)/2 + j^2 + k*(2*k+1) + a*b + a*g + a*h + a*i
         + b*c + b*h + c*h + e*f + e*k + f*g + f*k + g*i + g*j + g*k
         + a + b + c + e + f + g;
    den: a, b, c, e, f, g, h, i, j, k, a+h, a+i, b+h, c+h, e+k, f+k, g+i, g+j, g+k; }
  == h(4) * h(4);

identity "S_10_28":
  eta^9 * sum{ vars: a b d e f g h i j k; sign: i+j;
    exp: i*(3*i+1)/2 + j*(5*j+3)/2 + k*(2*k+1) + a*b + a*h + a*i + a*j + b*i
         + d*e + d*k + e*f + e*k + f*g + f*j + f*k + g*h + g*j + h*j
         + a + b + d + e + f + g + h;
    den: a, b, d, e, f, g, h, i, j, k, a+i, a+j, b+i, d+k, e+k, f+j, f+k, g+j, h+j; }
  == h(4) * h(5);

identity "S_10_44":
  eta^7 * sum{ vars: a b c e f g h i j k; sign: h+j+k;
    exp: h*(3*h+1)/2 + i*(2*i+1) + j*(3*j+1)/2 + k*(3*k+1)/2 + a*b + a*g + a*i + a*j
         + b*c + b*j + b*k + c*k + e*f + e*h + f*g + f*h + f*i + g*i
         + a + b + c + e + f + g;
    den: a, b, c, e, f, g, h, i, j, k, a+i, a+j, b+j, b+k, c+k, e+h, f+h, f+i, g+i; }
  == h(4);
)qid";
}

/* The two-variable sum giving the tail of the knot with eight crossings
 * and no known product form. */
inline const char* phi_8_5_sum_text() {
    return "sum{ vars: a b; exp: a^2 + a + b^2 + b; num: a+b; den: a, a, b, b; }";
}

/* Tail product tables: knot | product(K) | product(-K). "?" marks unknown
 * cells; the literal "1" is encoded downstream as h2 (h_2 = 1). */
inline const char* tail_table_text() {
    return R"tbl(
7_2|h6|?
8_5|?|?
8_6|h3 h4|h5
8_7|h3 h5|h3^2
8_8|h3 h5|h3^2
8_9|h3 h4|h3 h4
8_10|?|h3^2
8_11|h3 h4|h3 h4
8_12|h3 h4|h3 h4
8_13|h3^2 h4|h3^2
8_14|h3 h4|h3^3
8_15|h3^3|?
8_16|?|?
8_17|?|?
8_18|?|?
9_1|h9|1
9_2|h8|h3
9_3|h7|h4
9_4|h6|h5
9_5|h3|h4 h6
9_6|h3 h6|h4
9_7|h3 h4|h6
9_8|h3 h6|h3^2
9_9|h4 h5|h4
9_10|h4^2|h5
9_11|h4 h5|h3^2
9_12|h3 h4|h3 h5
9_13|h4^2|h3 h4
9_14|h3^2 h5|h3^2
9_15|h3 h4|h3 h5
9_16|h4|?
9_17|h3^2|h3^2 h5
9_18|h3 h4|h4^2
9_19|h3 h5|h3^3
9_20|h3^2|h3 h4^2
9_21|h3 h4|h3^2 h4
9_22|?|h3^2
9_23|h4^2|h3^3
9_24|?|?
9_25|h3^3|?
9_26|h3^2 h4|h3^3
9_27|h3^3|h3^2 h4
9_28|?|?
9_29|?|?
9_30|h3^3|?
9_31|h3^4|h3^3
9_32|?|?
9_33|?|?
9_34|?|?
9_35|?|h3
9_36|?|h3^2
9_37|h3^3|?
9_38|?|?
9_39|?|?
9_40|?|?
9_41|?|?
10_1|h9|h3
10_2|?|h3
10_3|h7|h5
10_4|?|h3
10_5|h3 h7|h3^2
10_6|h3 h6|h5
10_7|h3 h6|h3 h4
10_8|h3|h5 h6
10_9|h3 h6|h3 h4
10_10|h3^2 h6|h3^2
10_11|h4 h5|h5
10_12|h3 h5|h3 h5
10_13|h4 h5|h3 h4
10_14|h3^2 h5|h3 h4
10_15|h5^2|h3^2
10_16|h4 h5|h3 h4
10_17|?|h3 h5
10_18|h3^2 h5|h3 h4
10_19|h3 h4 h5|h3^2
10_20|h7|h3 h4
10_21|h3 h6|h3 h4
10_22|h3 h4|h4 h5
10_23|h3 h5|h3^2 h4
10_24|h4 h5|h3 h4
10_25|h3 h4^2|h3 h4
10_26|h3 h4^2|h3 h4
10_27|h3 h5|h3^2 h4
10_28|h3 h4 h5|h3^2
10_29|h3 h4^2|h3 h4
10_30|h3 h4^2|h3^3
10_31|h3 h5|h3^2 h4
10_32|?|h3^3
10_33|?|h3^2 h4
10_34|h3 h7|h3^2
10_35|h3 h6|h3 h4
10_36|h3 h6|h3^3
10_37|h3 h5|h3 h5
10_38|?|h3^3
10_39|h3 h4|h3^2 h5
10_40|?|h3^2 h4
10_41|h3 h4^2|h3^3
10_42|h3^2 h4|?
10_43|h3^2 h4|h3^2 h4
10_44|h3^3 h4|h3^4
10_45|h3^4|h3^4
10_46|?|h3
10_47|?|h3^2
10_48|?|h3 h5
10_49|?|h3^2 h5
10_50|?|h3 h4
10_51|?|h3^2 h4
10_52|?|h3^3
10_53|?|h3^3
10_54|?|h3^2
10_55|?|h3^3
10_56|?|h3 h4
10_57|?|h3^2 h4
10_58|?|h3^3
10_59|?|h3^3
10_60|?|h3^3
10_61|?|h3
10_62|?|h3^2
10_63|?|h3 h4
10_64|?|h3 h4
10_65|?|h3^2 h4
10_66|?|?
10_67|?|h3^3
10_68|?|h3^2
10_69|?|?
10_70|?|h3 h4
10_71|?|h3^2 h4
10_72|h3 h4|?
10_73|?|h3^2 h4
10_74|?|h3 h4
10_75|?|?
10_76|?|h5
10_77|?|h3 h5
10_78|?|?
)tbl";
}

/* Which knot each stated sum belongs to: identity name, eta power of the
 * stated form, product subscripts, mirror flag, repaired fragment. */
struct KnotSumRow {
    const char* knot;
    const char* identity;
    int eta_power;
    std::vector<int> product;
    bool mirror;
    const char* corrected;
};

inline const std::vector<KnotSumRow>& knot_sum_rows() {
    static const std::vector<KnotSumRow> rows = {
        {"7_2", "7_2", 7, {6}, false, ""},
        {"8_7", "S_8_7", 7, {5}, false, ""},
        {"8_13", "S_8_13", 6, {4}, false, "(3h+1)/2"},
        {"9_5", "S_-9_5", 9, {4, 6}, true, ""},
        {"9_14", "S_9_14", 7, {5}, false, ""},
        {"9_17", "S_-9_17", 7, {5}, true, ""},
        {"9_20", "S_-9_20", 8, {4, 4}, true, ""},
        {"9_27", "S_-9_27", 7, {4}, true, ""},
        {"9_31", "S_9_31", 5, {}, false, ""},
        {"10_5", "S_10_5", 9, {7}, false, ""},
        {"10_8", "S_-10_8", 10, {5, 6}, true, ""},
        {"10_10", "S_10_10", 8, {6}, false, ""},
        {"10_15", "S_10_15", 10, {5, 5}, false, ""},
        {"10_19", "S_10_19", 9, {4, 5}, false, "dek"},
        {"10_26", "S_10_26", 9, {4, 4}, false, ""},
        {"10_28", "S_10_28", 9, {4, 5}, false, ""},
        {"10_44", "S_10_44", 7, {4}, false, ""},
    };
    return rows;
}

inline std::optional<std::vector<int>> parse_product_cell(const std::string& cell) {
    if (cell == "?") return std::nullopt;
    std::vector<int> out;
    if (cell == "1") {
        out.push_back(2); // h_2 = 1 keeps the representation uniform
        return out;
    }
    std::istringstream in(cell);
    std::string tok;
    while (in >> tok) {
        size_t caret = tok.find('^');
        int b = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
        int power = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
        for (int i = 0; i < power; ++i) out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline ExprPtr product_of_h(const std::vector<int>& bs) {
    std::vector<ExprPtr> fs;
    for (int b : bs) fs.push_back(SeriesExpr::h(b));
    return SeriesExpr::product(std::move(fs));
}

inline Identity make_e1(int j) {
    MultisumSpec s;
    s.nvars = 1;
    s.exponent.set_linear(0, j);
    s.denominator_pochhammers = {LinearForm::variable(0)};
    Identity id;
    id.name = "e1_j" + std::to_string(j);
    id.source = "helper:e1";
    id.lhs = SeriesExpr::multisum(std::move(s), {"n"});
    id.rhs = SeriesExpr::eta(j, -1);
    return id;
}

inline Identity make_e2(int j) {
    MultisumSpec s;
    s.nvars = 1;
    s.exponent.set_quad(0, 0, Rational(1, 2));
    s.exponent.set_linear(0, Rational(2 * j - 1, 2));
    s.sign = LinearForm::variable(0);
    s.denominator_pochhammers = {LinearForm::variable(0)};
    Identity id;
    id.name = "e2_j" + std::to_string(j);
    id.source = "helper:e2";
    id.lhs = SeriesExpr::multisum(std::move(s), {"n"});
    id.rhs = SeriesExpr::eta(j, 1);
    return id;
}

inline Identity make_andy(long long a) {
    MultisumSpec s;
    s.nvars = 1;
    s.exponent.set_quad(0, 0, 1);
    s.exponent.set_linear(0, Rational(a));
    LinearForm shifted = LinearForm::variable(0);
    shifted.set_constant(a);
    s.denominator_pochhammers = {LinearForm::variable(0), shifted};
    Identity id;
    id.name = "andy_A" + std::to_string(a);
    id.source = "helper:andy";
    id.lhs = SeriesExpr::multisum(std::move(s), {"n"});
    id.rhs = SeriesExpr::eta(1, -1);
    return id;
}

inline Identity make_double() {
    MultisumSpec s;
    s.nvars = 2; // m n
    s.exponent.set_quad(0, 0, 1);
    s.exponent.set_linear(0, 1);
    s.exponent.set_quad(0, 1, 1);
    s.exponent.set_quad(1, 1, Rational(1, 2));
    s.exponent.set_linear(1, Rational(1, 2));
    s.sign = LinearForm::variable(1);
    s.denominator_pochhammers = {LinearForm::variable(0), LinearForm::variable(1)};
    Identity id;
    id.name = "double";
    id.source = "helper:double";
    id.lhs = SeriesExpr::multisum(std::move(s), {"m", "n"});
    id.rhs = SeriesExpr::h(4);
    return id;
}

inline Identity make_triple() {
    MultisumSpec s;
    s.nvars = 3; // l m n
    s.exponent.set_quad(0, 0, Rational(3, 2));
    s.exponent.set_linear(0, Rational(3, 2));
    s.exponent.set_quad(1, 1, 1);
    s.exponent.set_linear(1, 1);
    s.exponent.set_quad(2, 2, Rational(1, 2));
    s.exponent.set_linear(2, Rational(1, 2));
    s.exponent.set_quad(0, 1, 2);
    s.exponent.set_quad(0, 2, 1);
    s.exponent.set_quad(1, 2, 1);
    s.sign = LinearForm::variable(0);
    s.sign.add_coefficient(2, 1);
    s.denominator_pochhammers = {LinearForm::variable(0), LinearForm::variable(1),
                                 LinearForm::variable(2)};
    Identity id;
    id.name = "triple";
    id.source = "helper:triple";
    id.lhs = SeriesExpr::multisum(std::move(s), {"l", "m", "n"});
    id.rhs = SeriesExpr::h(5);
    return id;
}

/* The n-fold Durfee-style reduction: a one-variable sum with parameters
 * c_1..c_{n-1} equals 1/(q)_inf times an (n-2)-variable sum. */
inline Identity make_key(int n, const std::vector<long long>& c) {
    if (n <= 2 || static_cast<int>(c.size()) != n - 1)
        throw Error("key family needs n > 2 and n-1 parameters");
    long long csum = 0;
    for (long long ck : c) {
        if (ck < 0) throw Error("key family is only verified for c_k >= 0");
        csum += ck;
    }

    MultisumSpec lhs;
    lhs.nvars = 1;
    lhs.exponent.set_quad(0, 0, Rational(n, 2));
    lhs.exponent.set_linear(0, Rational(n, 2) - 1 + Rational(csum));
    lhs.sign.set_coefficient(0, n);
    lhs.denominator_pochhammers.push_back(LinearForm::variable(0));
    for (int k = 1; k <= n - 1; ++k) {
        LinearForm f = LinearForm::variable(0);
        f.set_constant(c[static_cast<size_t>(k - 1)]);
        lhs.denominator_pochhammers.push_back(f);
    }

    MultisumSpec rhs;
    rhs.nvars = n - 2; // i_1 .. i_{n-2}
    for (int k = 1; k <= n - 2; ++k) {
        // (1/2) I_k (1 + I_k) with I_k = i_1 + ... + i_k
        for (int j = 0; j < k; ++j) {
            rhs.exponent.add_linear(j, Rational(1, 2));
            rhs.sign.add_coefficient(j, 1);
            for (int l = j; l < k; ++l)
                rhs.exponent.add_quad(j, l, j == l ? Rational(1, 2) : Rational(1));
        }
    }
    for (int k = 2; k <= n - 1; ++k)
        for (int j = 0; j < k - 1; ++j)
            rhs.exponent.add_linear(j, Rational(c[static_cast<size_t>(k - 1)]));
    for (int k = 1; k <= n - 2; ++k)
        rhs.denominator_pochhammers.push_back(LinearForm::variable(k - 1));
    for (int k = 1; k <= n - 2; ++k) {
        LinearForm f(c[static_cast<size_t>(k - 1)]);
        for (int j = 0; j < k; ++j) f.set_coefficient(j, 1);
        rhs.denominator_pochhammers.push_back(f);
    }
    std::vector<std::string> rhs_names;
    for (int k = 1; k <= n - 2; ++k) rhs_names.push_back("i" + std::to_string(k));

    Identity id;
    std::string cs;
    for (long long ck : c) cs += std::to_string(ck);
    id.name = "key_n" + std::to_string(n) + "_c" + cs;
    id.source = "helper:key";
    id.lhs = SeriesExpr::multisum(std::move(lhs), {"a"});
    id.rhs = SeriesExpr::product(
        {SeriesExpr::eta(1, -1), SeriesExpr::multisum(std::move(rhs), std::move(rhs_names))});
    return id;
}

class Catalog {
public:
    static const Catalog& instance() {
        static const Catalog cat;
        return cat;
    }

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const std::vector<Identity>& identities() const { return identities_; }

    const CatalogEntry& get(const std::string& name) const {
        std::string key = name;
        if (!key.empty() && key[0] == '-') key = key.substr(1);
        auto it = by_name_.find(key);
        if (it == by_name_.end()) throw UnknownKnot(name);
        return entries_[it->second];
    }

    const Identity* find_identity(const std::string& name) const {
        auto it = identity_index_.find(name);
        return it == identity_index_.end() ? nullptr : &identities_[it->second];
    }

private:
    Catalog() {
        identities_ = parse_identity_file(knot_identities_qid());
        for (auto& id : identities_) id.source = "knot-sum";
        for (const auto& row : knot_sum_rows()) {
            if (row.corrected[0] == '\0') continue;
            for (auto& id : identities_)
                if (id.name == row.identity) {
                    id.corrected = true;
                    id.original_text = row.corrected;
                }
        }
        for (int j = 1; j <= 5; ++j) identities_.push_back(make_e1(j));
        for (int j = 1; j <= 5; ++j) identities_.push_back(make_e2(j));
        for (long long a = -3; a <= 3; ++a) identities_.push_back(make_andy(a));
        identities_.push_back(make_double());
        identities_.push_back(make_triple());
        for (int n = 3; n <= 5; ++n) {
            std::vector<long long> c(static_cast<size_t>(n - 1), 0);
            for (;;) {
                identities_.push_back(make_key(n, c));
                int k = 0;
                for (; k < n - 1; ++k) {
                    if (c[static_cast<size_t>(k)] < 2) {
                        ++c[static_cast<size_t>(k)];
                        break;
                    }
                    c[static_cast<size_t>(k)] = 0;
                }
                if (k == n - 1) break;
            }
        }
        for (size_t i = 0; i < identities_.size(); ++i)
            identity_index_[identities_[i].name] = i;

        std::istringstream table(tail_table_text());
        std::string line;
        while (std::getline(table, line)) {
            if (line.empty()) continue;
            size_t p1 = line.find('|');
            size_t p2 = line.find('|', p1 + 1);
            CatalogEntry e;
            e.knot = line.substr(0, p1);
            e.crossings = std::stoi(e.knot.substr(0, e.knot.find('_')));
            e.tail_product = parse_product_cell(line.substr(p1 + 1, p2 - p1 - 1));
            e.mirror_tail_product = parse_product_cell(line.substr(p2 + 1));
            by_name_[e.knot] = entries_.size();
            entries_.push_back(std::move(e));
        }

        for (const auto& row : knot_sum_rows()) {
            CatalogEntry& e = entries_[by_name_.at(row.knot)];
            KnotSum ks;
            ks.mirror = row.mirror;
            ks.eta_power = row.eta_power;
            ks.identity_name = row.identity;
            if (row.identity[0] != '\0') ks.product = row.product;
            const Identity* id = find_identity(row.identity);
            if (!id) throw Error("catalog bug: missing identity " + std::string(row.identity));
            const auto* prod = std::get_if<ProductNode>(&id->lhs->node());
            if (!prod) throw Error("catalog bug: identity lhs is not eta * sum");
            ks.sum = prod->factors.back();
            e.multisum = std::move(ks);
            e.corrected_note = row.corrected;
        }
        {
            CatalogEntry& e = entries_[by_name_.at("8_5")];
            KnotSum ks;
            ks.mirror = false;
            ks.eta_power = 2;
            ks.sum = parse_expression(phi_8_5_sum_text());
            e.multisum = std::move(ks);
        }
    }

    std::vector<Identity> identities_;
    std::vector<CatalogEntry> entries_;
    std::map<std::string, size_t> by_name_;
    std::map<std::string, size_t> identity_index_;
};

} // namespace detail

inline const CatalogEntry& get_entry(const std::string& name) {
    return detail::Catalog::instance().get(name);
}

inline const std::vector<CatalogEntry>& catalog_entries() {
    return detail::Catalog::instance().entries();
}

/* The full verifiable set: the stated knot-sum identities plus the helper
 * families instantiated over their default parameter grids. */
inline const std::vector<Identity>& builtin_identities() {
    return detail::Catalog::instance().identities();
}

inline const Identity* find_identity(const std::string& name) {
    return detail::Catalog::instance().find_identity(name);
}

inline std::vector<HelperFamily> helper_families() {
    return {
        {"e1", "t = q^j, j >= 1"},
        {"e2", "t = q^j, j >= 1"},
        {"andy", "A in Z"},
        {"double", "none"},
        {"triple", "none"},
        {"key", "n > 2, c_k >= 0"},
    };
}

inline Identity e1_identity(int j) { return detail::make_e1(j); }
inline Identity e2_identity(int j) { return detail::make_e2(j); }
inline Identity andy_identity(long long a) { return detail::make_andy(a); }
inline Identity double_identity() { return detail::make_double(); }
inline Identity triple_identity() { return detail::make_triple(); }
inline Identity key_identity(int n, const std::vector<long long>& c) { return detail::make_key(n, c); }

/* The tail expression eta^c * S for a knot (or its mirror) whose sum the
 * catalog carries; this is the hunt target for that knot. */
inline ExprPtr tail_expression(const CatalogEntry& e) {
    if (!e.multisum)
        throw UnknownKnot(e.knot + " (no stated multisum)");
    return SeriesExpr::product({SeriesExpr::eta(1, e.crossings), e.multisum->sum});
}

struct HuntMatch {
    int eta_exponent = 0;
    std::vector<int> h_factors; // ascending subscripts
    bool operator==(const HuntMatch&) const = default;
};

/* Exhaustive search for (q)_inf^e * prod h_{b_i} matching the target
 * through its full order; first_difference cuts each comparison at the
 * first mismatching coefficient. */
inline std::vector<HuntMatch> hunt(const TruncatedSeries& target, int max_factors, int max_b,
                                   int eta_min, int eta_max) {
    const int order = target.order();
    std::vector<TruncatedSeries> hs;
    hs.push_back(TruncatedSeries::one(order)); // unused slot for b = 0
    for (int b = 1; b <= max_b; ++b) hs.push_back(h_series(b, order));

    std::vector<HuntMatch> out;
    std::vector<int> factors;
    for (int e = eta_min; e <= eta_max; ++e) {
        TruncatedSeries base = qpoch_infinite_power(1, e, order);
        factors.clear();
        auto rec = [&](auto&& self, const TruncatedSeries& prod, int min_b) -> void {
            if (!first_difference(prod, target)) {
                HuntMatch m;
                m.eta_exponent = e;
                m.h_factors = factors;
                out.push_back(m);
            }
            if (static_cast<int>(factors.size()) == max_factors) return;
            for (int b = min_b; b <= max_b; ++b) {
                factors.push_back(b);
                self(self, mul(prod, hs[static_cast<size_t>(b)]), b);
                factors.pop_back();
            }
        };
        rec(rec, base, 1);
    }
    return out;
}

/* Export every catalog identity in .qid form; parsing the result back and
 * re-verifying it must reproduce the same reports. */
inline std::string catalog_to_qid() {
    std::string out = "# qtails catalog export\n\n";
    for (const auto& id : builtin_identities()) {
        out += print_identity(id);
        out += "\n";
    }
    return out;
}

} // namespace qtails
