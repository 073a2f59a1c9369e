#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qtails/catalog.hpp"
#include "qtails/expr.hpp"

namespace qtails {

enum class VerifyStatus { verified, mismatch, correction_suspect, error };

inline const char* to_string(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::verified: return "verified";
        case VerifyStatus::mismatch: return "mismatch";
        case VerifyStatus::correction_suspect: return "correction-suspect";
        case VerifyStatus::error: return "error";
    }
    return "?";
}

struct VerificationReport {
    std::string name;
    int order = 0;
    VerifyStatus status = VerifyStatus::error;
    std::optional<long long> first_mismatch;
    std::optional<std::string> lhs_coefficient;
    std::optional<std::string> rhs_coefficient;
    std::uint64_t points_visited = 0;
    std::int64_t elapsed_ms = 0;
};

/* Both sides are evaluated exactly at the order and compared coefficient
 * by coefficient; a corrected entry that fails is reported as
 * correction-suspect rather than a plain mismatch. */
inline VerificationReport verify_identity(const Identity& id, int order) {
    VerificationReport r;
    r.name = id.name;
    r.order = order;
    auto t0 = std::chrono::steady_clock::now();
    try {
        EnumerationStats stats;
        TruncatedSeries lhs = eval_expr(*id.lhs, order, &stats);
        TruncatedSeries rhs = eval_expr(*id.rhs, order, &stats);
        r.points_visited = stats.points_visited;
        if (auto fd = first_difference(lhs, rhs)) {
            r.status = id.corrected ? VerifyStatus::correction_suspect : VerifyStatus::mismatch;
            r.first_mismatch = *fd;
            r.lhs_coefficient = lhs[*fd].get_str();
            r.rhs_coefficient = rhs[*fd].get_str();
        } else {
            r.status = VerifyStatus::verified;
        }
    } catch (const Error&) {
        r.status = VerifyStatus::error;
    }
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    return r;
}

/* Default truncation order: 20 for identities containing a multisum in 8
 * or more variables, 30 otherwise. */
inline int default_order(const Identity& id) {
    int widest = 0;
    auto scan = [&](const SeriesExpr& e, auto&& self) -> void {
        if (const auto* ms = std::get_if<MultisumNode>(&e.node()))
            widest = std::max(widest, ms->spec.nvars);
        else if (const auto* p = std::get_if<ProductNode>(&e.node()))
            for (const auto& f : p->factors) self(*f, self);
    };
    scan(*id.lhs, scan);
    scan(*id.rhs, scan);
    return widest >= 8 ? 20 : 30;
}

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
    j = nlohmann::json{{"name", r.name},
                       {"order", r.order},
                       {"status", to_string(r.status)},
                       {"points_visited", r.points_visited},
                       {"elapsed_ms", r.elapsed_ms}};
    if (r.first_mismatch) j["first_mismatch"] = *r.first_mismatch;
    if (r.lhs_coefficient) j["lhs_coefficient"] = *r.lhs_coefficient;
    if (r.rhs_coefficient) j["rhs_coefficient"] = *r.rhs_coefficient;
}

inline void from_json(const nlohmann::json& j, VerificationReport& r) {
    j.at("name").get_to(r.name);
    j.at("order").get_to(r.order);
    std::string status = j.at("status").get<std::string>();
    if (status == "verified") r.status = VerifyStatus::verified;
    else if (status == "mismatch") r.status = VerifyStatus::mismatch;
    else if (status == "correction-suspect") r.status = VerifyStatus::correction_suspect;
    else if (status == "error") r.status = VerifyStatus::error;
    else throw Error("unknown report status: " + status);
    j.at("points_visited").get_to(r.points_visited);
    j.at("elapsed_ms").get_to(r.elapsed_ms);
    if (j.contains("first_mismatch")) r.first_mismatch = j.at("first_mismatch").get<long long>();
    if (j.contains("lhs_coefficient")) r.lhs_coefficient = j.at("lhs_coefficient").get<std::string>();
    if (j.contains("rhs_coefficient")) r.rhs_coefficient = j.at("rhs_coefficient").get<std::string>();
}

inline std::string reports_to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(r);
    return arr.dump(2) + "\n";
}

inline std::vector<VerificationReport> reports_from_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    std::vector<VerificationReport> out;
    for (const auto& item : arr) out.push_back(item.get<VerificationReport>());
    return out;
}

/* Reports identical up to timing: the comparison every determinism and
 * round-trip check uses. */
inline bool reports_equal_modulo_time(const VerificationReport& a, const VerificationReport& b) {
    return a.name == b.name && a.order == b.order && a.status == b.status &&
           a.first_mismatch == b.first_mismatch && a.lhs_coefficient == b.lhs_coefficient &&
           a.rhs_coefficient == b.rhs_coefficient && a.points_visited == b.points_visited;
}

} // namespace qtails
