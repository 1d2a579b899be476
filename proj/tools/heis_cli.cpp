// heis: command-line surface for the library. Subcommands operate on
// group literals ("Z/4 x Z/2") and JSON files (see README); every
// structure the CLI emits can be fed back in. Exit status: 0 for
// success/true, 1 for false or a verification failure, 2 for malformed
// input or a budget violation.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "heis/heis.hpp"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInputError = 2;

int cmd_check(const std::string& literal) {
    heis::FiniteAbelianGroup k = heis::parse_group(literal);
    if (heis::exists_nondegenerate(k)) {
        std::cout << "yes: invariant factors pair up (" << heis::group_literal(k) << ")\n";
        return kExitTrue;
    }
    std::cout << "no: invariant factors do not pair up\n";
    return kExitFalse;
}

int cmd_enumerate(const std::string& literal, bool nondegenerate) {
    heis::FiniteAbelianGroup g = heis::parse_group(literal);
    heis::u64 count = heis::form_count(g);
    if (count > heis::exhaustive_bound())
        throw heis::BoundExceeded("form search space " + std::to_string(count) + " exceeds the exhaustive bound");
    for (heis::u64 idx = 0; idx < count; ++idx) {
        heis::AlternatingForm f = heis::form_at_index(g, idx);
        if (nondegenerate && !heis::is_nondegenerate(f)) continue;
        std::cout << heis::form_to_json(f).dump() << "\n";
    }
    return kExitTrue;
}

int cmd_reduce(const std::string& path) {
    heis::AlternatingForm f = heis::load_form_file(path);
    try {
        heis::Decomposition d = heis::symplectic_reduce(f);
        std::cout << heis::decomposition_to_json(d).dump(2) << "\n";
        return kExitTrue;
    } catch (const heis::DegenerateForm& e) {
        std::cerr << "error: form is degenerate; radical witness (";
        for (std::size_t i = 0; i < e.witness.coeffs().size(); ++i) std::cerr << (i ? "," : "") << e.witness.coeff(i);
        std::cerr << ")\n";
        return kExitFalse;
    }
}

int cmd_verify(const std::string& form_path, const std::string& decomp_path) {
    heis::AlternatingForm f = heis::load_form_file(form_path);
    heis::Decomposition d = heis::load_decomposition_file(decomp_path, f.group());
    heis::VerifyResult r = heis::verify_decomposition(f, d);
    if (r) {
        std::cout << "ok: decomposition verified\n";
        return kExitTrue;
    }
    std::cout << "FAIL: decomposition identity violated";
    if (r.counterexample) {
        auto& [u, v] = *r.counterexample;
        std::cout << " at u=(";
        for (std::size_t i = 0; i < u.coeffs().size(); ++i) std::cout << (i ? "," : "") << u.coeff(i);
        std::cout << "), v=(";
        for (std::size_t i = 0; i < v.coeffs().size(); ++i) std::cout << (i ? "," : "") << v.coeff(i);
        std::cout << ")";
    }
    std::cout << "\n";
    return kExitFalse;
}

int cmd_construct(const std::string& path) {
    heis::AlternatingForm f = heis::load_form_file(path);
    try {
        heis::HeisenbergGroup g = heis::from_form(f);
        nlohmann::json stats;
        for (const auto& [ord, cnt] : heis::element_order_statistics(g)) stats[std::to_string(ord)] = cnt;
        nlohmann::json out{{"order", g.order()},
                           {"center_order", heis::center_size(g)},
                           {"exponent", heis::group_exponent(g)},
                           {"order_statistics", stats}};
        std::cout << out.dump(2) << "\n";
        return kExitTrue;
    } catch (const heis::DegenerateForm&) {
        std::cerr << "error: form is degenerate, no Heisenberg group to construct\n";
        return kExitFalse;
    }
}

int cmd_classify(heis::i64 order) {
    std::cout << heis::classification_to_json(heis::classify_heisenberg(order)).dump(2) << "\n";
    return kExitTrue;
}

int cmd_weyl(const std::string& literal) {
    heis::FiniteAbelianGroup a = heis::parse_group(literal);
    heis::WeylOperators w = heis::weyl_operators(a);
    heis::WeylReport rep = heis::verify_weyl_relations(w);
    std::cout << heis::weyl_report_to_json(rep).dump(2) << "\n";
    return rep.ok() ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact classification toolkit for finite Heisenberg groups"};
    app.require_subcommand(1);

    std::string group_literal, form_path, decomp_path;
    bool nondegenerate = false;
    heis::i64 order = 1;

    auto* check = app.add_subcommand("check", "does the group admit a non-degenerate alternating form?");
    check->add_option("group", group_literal, "group literal, e.g. \"Z/4 x Z/2\"")->required();

    auto* enumerate = app.add_subcommand("enumerate", "stream admissible forms on a group as JSON lines");
    enumerate->add_option("group", group_literal, "group literal")->required();
    enumerate->add_flag("--nondegenerate", nondegenerate, "only non-degenerate forms");

    auto* reduce = app.add_subcommand("reduce", "symplectic decomposition of a form file");
    reduce->add_option("form", form_path, "form file (JSON), or - for stdin")->required();

    auto* verify = app.add_subcommand("verify", "check a decomposition against its form");
    verify->add_option("form", form_path, "form file (JSON)")->required();
    verify->add_option("decomposition", decomp_path, "decomposition file (JSON)")->required();

    auto* construct = app.add_subcommand("construct", "build the Heisenberg group of a form, print a summary");
    construct->add_option("form", form_path, "form file (JSON), or - for stdin")->required();

    auto* classify = app.add_subcommand("classify", "count Heisenberg groups with phase-space order n^2");
    classify->add_option("--order", order, "the n in |A| = n")->required();

    auto* weyl = app.add_subcommand("weyl", "build and verify Weyl operators over a group");
    weyl->add_option("group", group_literal, "group literal for A")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(group_literal);
        if (enumerate->parsed()) return cmd_enumerate(group_literal, nondegenerate);
        if (reduce->parsed()) return cmd_reduce(form_path);
        if (verify->parsed()) return cmd_verify(form_path, decomp_path);
        if (construct->parsed()) return cmd_construct(form_path);
        if (classify->parsed()) return cmd_classify(order);
        if (weyl->parsed()) return cmd_weyl(group_literal);
    } catch (const heis::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const heis::BoundExceeded& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const heis::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFalse;
    }
    return kExitInputError;
}
