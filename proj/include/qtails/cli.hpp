#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtails/catalog.hpp"
#include "qtails/verify.hpp"

namespace qtails::cli {

namespace detail {

inline std::string format_product(const std::optional<std::vector<int>>& p) {
    if (!p) return "?";
    if (p->empty()) return "1";
    std::string out;
    for (size_t i = 0; i < p->size();) {
        size_t j = i;
        while (j < p->size() && (*p)[j] == (*p)[i]) ++j;
        if (!out.empty()) out += " ";
        out += "h" + std::to_string((*p)[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

inline void print_report(const VerificationReport& r, std::ostream& out) {
    out << r.name << ": " << to_string(r.status) << " (order " << r.order;
    if (r.first_mismatch)
        out << ", first mismatch at q^" << *r.first_mismatch << ": lhs " << *r.lhs_coefficient
            << ", rhs " << *r.rhs_coefficient;
    out << ", " << r.points_visited << " points, " << r.elapsed_ms << " ms)\n";
}

inline int verify_and_report(const std::vector<const Identity*>& ids, int order,
                             const std::string& report_path, std::ostream& out, std::ostream& err) {
    std::vector<VerificationReport> reports;
    bool all_ok = true;
    for (const Identity* id : ids) {
        int n = order > 0 ? order : default_order(*id);
        VerificationReport r = verify_identity(*id, n);
        print_report(r, out);
        all_ok = all_ok && r.status == VerifyStatus::verified;
        reports.push_back(std::move(r));
    }
    if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!f) {
            err << "cannot write report to " << report_path << "\n";
            return 2;
        }
        f << reports_to_json(reports);
    }
    out << (all_ok ? "all verified" : "FAILURES present") << " (" << reports.size()
        << " identities)\n";
    return all_ok ? 0 : 1;
}

inline TruncatedSeries hunt_target(const std::string& id_name, const std::string& expr_text,
                                   int order) {
    if (!id_name.empty()) {
        const CatalogEntry& e = get_entry(id_name);
        return eval_expr(*tail_expression(e), order);
    }
    return eval_expr(*parse_expression(expr_text), order);
}

} // namespace detail

/* Front end: verify | eval | hunt | list | check. Returns 0 when every
 * requested verification succeeded, 1 on a mismatch or runtime failure,
 * 2 on usage or parse errors. */
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact q-series engine for knot-tail identities"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "verify built-in identities");
    std::string verify_id;
    bool verify_all = false;
    int verify_order = 0;
    std::string report_path;
    verify->add_option("--id", verify_id, "identity name");
    verify->add_flag("--all", verify_all, "verify the whole catalog");
    verify->add_option("--order", verify_order, "truncation order (default: per identity)");
    verify->add_option("--report", report_path, "write a JSON report to this path");

    auto* eval = app.add_subcommand("eval", "evaluate an expression");
    std::string eval_expr_text;
    int eval_order = 30;
    eval->add_option("expr", eval_expr_text, "expression text")->required();
    eval->add_option("--order", eval_order, "truncation order");

    auto* hunt_cmd = app.add_subcommand("hunt", "search for a matching theta product");
    std::string hunt_id, hunt_expr;
    int hunt_order = 30, hunt_max_factors = 3, hunt_max_b = 10, hunt_eta_min = -3, hunt_eta_max = 3;
    hunt_cmd->add_option("--id", hunt_id, "knot whose stated tail sum is the target");
    hunt_cmd->add_option("--expr", hunt_expr, "expression whose value is the target");
    hunt_cmd->add_option("--order", hunt_order, "truncation order");
    hunt_cmd->add_option("--max-factors", hunt_max_factors, "max number of h factors");
    hunt_cmd->add_option("--max-b", hunt_max_b, "max theta subscript");
    hunt_cmd->add_option("--eta-min", hunt_eta_min, "smallest eta exponent");
    hunt_cmd->add_option("--eta-max", hunt_eta_max, "largest eta exponent");

    auto* list = app.add_subcommand("list", "list catalog entries and identities");
    std::string export_path;
    list->add_option("--export", export_path, "write the identity catalog as a .qid file");

    auto* check = app.add_subcommand("check", "verify identities from a .qid file");
    std::string check_file;
    int check_order = 0;
    check->add_option("file", check_file, ".qid file")->required();
    check->add_option("--order", check_order, "truncation order (default: per identity)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }
    for (int n : {verify_order, eval_order, hunt_order, check_order})
        if (n < 0) {
            err << "--order must be >= 0\n";
            return 2;
        }

    try {
        if (verify->parsed()) {
            if (verify_all == !verify_id.empty()) { // exactly one of --id / --all
                err << "verify needs exactly one of --id NAME or --all\n";
                return 2;
            }
            std::vector<const Identity*> ids;
            if (verify_all) {
                for (const auto& id : builtin_identities()) ids.push_back(&id);
            } else {
                const Identity* id = find_identity(verify_id);
                if (!id) {
                    err << "unknown identity: " << verify_id << "\n";
                    return 2;
                }
                ids.push_back(id);
            }
            return detail::verify_and_report(ids, verify_order, report_path, out, err);
        }

        if (eval->parsed()) {
            try {
                auto value = eval_expr(*parse_expression(eval_expr_text), eval_order);
                out << to_string(value) << "\n";
                return 0;
            } catch (const SyntaxError& e) {
                err << e.what() << "\n";
                return 2;
            }
        }

        if (hunt_cmd->parsed()) {
            if (hunt_id.empty() == hunt_expr.empty()) {
                err << "hunt needs exactly one of --id NAME or --expr EXPR\n";
                return 2;
            }
            TruncatedSeries target(0);
            try {
                target = detail::hunt_target(hunt_id, hunt_expr, hunt_order);
            } catch (const SyntaxError& e) {
                err << e.what() << "\n";
                return 2;
            } catch (const UnknownKnot& e) {
                err << e.what() << "\n";
                return 2;
            }
            auto matches = hunt(target, hunt_max_factors, hunt_max_b, hunt_eta_min, hunt_eta_max);
            if (matches.empty()) {
                out << "no product match through order " << hunt_order << "\n";
            } else {
                for (const auto& m : matches) {
                    std::string line;
                    if (m.eta_exponent != 0)
                        line = "eta^" + std::to_string(m.eta_exponent);
                    for (int b : m.h_factors) {
                        if (!line.empty()) line += " * ";
                        line += "h(" + std::to_string(b) + ")";
                    }
                    if (line.empty()) line = "1";
                    out << line << "\n";
                }
            }
            return 0;
        }

        if (list->parsed()) {
            out << "knot entries (tail products; ? = unknown):\n";
            for (const auto& e : catalog_entries()) {
                out << "  " << e.knot << ": " << detail::format_product(e.tail_product) << " | "
                    << detail::format_product(e.mirror_tail_product);
                if (e.multisum)
                    out << "  [sum: " << (e.multisum->identity_name.empty()
                                              ? "definition only"
                                              : e.multisum->identity_name)
                        << "]";
                out << "\n";
            }
            out << "identities: " << builtin_identities().size() << "\n";
            for (const auto& id : builtin_identities()) out << "  " << id.name << "\n";
            if (!export_path.empty()) {
                std::ofstream f(export_path);
                if (!f) {
                    err << "cannot write " << export_path << "\n";
                    return 2;
                }
                f << catalog_to_qid();
                out << "catalog written to " << export_path << "\n";
            }
            return 0;
        }

        if (check->parsed()) {
            std::ifstream f(check_file);
            if (!f) {
                err << "cannot read " << check_file << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << f.rdbuf();
            std::vector<Identity> ids;
            try {
                ids = parse_identity_file(buf.str());
            } catch (const SyntaxError& e) {
                err << check_file << ": " << e.what() << "\n";
                return 2;
            } catch (const DuplicateName& e) {
                err << check_file << ": " << e.what() << "\n";
                return 2;
            }
            std::vector<const Identity*> ptrs;
            for (const auto& id : ids) ptrs.push_back(&id);
            return detail::verify_and_report(ptrs, check_order, "", out, err);
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }
    err << "no subcommand\n";
    return 2;
}

} // namespace qtails::cli
