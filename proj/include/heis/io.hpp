#pragma once

// JSON (de)serialization for the file formats the CLI speaks:
//   form file:           {"group": "Z/2 x Z/2", "q": [[0,1],[1,0]]}
//   decomposition file:  {"base": "Z/2", "phi": [[...]], "trace": [...]}
//   trace record:        {"kind": "scale"|"swap"|"shear", "i", "j", "sigma"}
// Indices are 0-based. Loaders reject malformed input with a diagnostic
// naming the offending token or entry.

#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "heis/classify.hpp"
#include "heis/error.hpp"
#include "heis/form.hpp"
#include "heis/group.hpp"
#include "heis/hom.hpp"
#include "heis/reduction.hpp"
#include "heis/weyl.hpp"

namespace heis {

using json = nlohmann::json;

inline std::vector<std::vector<i64>> int_matrix_from_json(const json& j, const std::string& name) {
    if (!j.is_array()) throw ParseError(name + ": expected an array of arrays of integers");
    std::vector<std::vector<i64>> m;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array()) throw ParseError(name + ": row " + std::to_string(i) + " is not an array");
        std::vector<i64> row;
        for (std::size_t k = 0; k < j[i].size(); ++k) {
            if (!j[i][k].is_number_integer()) throw ParseError(name + ": entry (" + std::to_string(i) + "," + std::to_string(k) + ") is not an integer");
            row.push_back(j[i][k].get<i64>());
        }
        m.push_back(std::move(row));
    }
    return m;
}

// ---- forms ----------------------------------------------------------------

inline json form_to_json(const AlternatingForm& f) {
    return json{{"group", group_literal(f.group())}, {"q", f.matrix()}};
}

inline AlternatingForm form_from_json(const json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("q")) throw ParseError("form: expected an object with \"group\" and \"q\"");
    if (!j["group"].is_string()) throw ParseError("form: \"group\" must be a string literal like \"Z/4 x Z/2\"");
    FiniteAbelianGroup g = parse_group(j["group"].get<std::string>());
    return AlternatingForm::make(std::move(g), int_matrix_from_json(j["q"], "form matrix \"q\""));
}

inline json parse_json_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(what + ": not valid JSON");
    return j;
}

inline std::string read_file_or_stdin(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open file: " + path);
        buf << in.rdbuf();
    }
    return buf.str();
}

inline AlternatingForm load_form_file(const std::string& path) {
    try {
        return form_from_json(parse_json_text(read_file_or_stdin(path), "form file " + path));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError("form file " + path + ": " + e.what());
    }
}

// ---- decompositions -------------------------------------------------------

inline json op_to_json(const ElementaryOp& op) {
    const char* kind = op.kind == ElementaryOp::Kind::Scale ? "scale" : op.kind == ElementaryOp::Kind::Swap ? "swap" : "shear";
    return json{{"kind", kind}, {"i", op.i}, {"j", op.j}, {"sigma", op.sigma}};
}

inline ElementaryOp op_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("i") || !j.contains("j") || !j.contains("sigma"))
        throw ParseError("trace record: expected {kind, i, j, sigma}");
    std::string kind = j["kind"].get<std::string>();
    ElementaryOp op;
    if (kind == "scale")
        op.kind = ElementaryOp::Kind::Scale;
    else if (kind == "swap")
        op.kind = ElementaryOp::Kind::Swap;
    else if (kind == "shear")
        op.kind = ElementaryOp::Kind::Shear;
    else
        throw ParseError("trace record: unknown kind \"" + kind + "\"");
    op.i = j["i"].get<std::size_t>();
    op.j = j["j"].get<std::size_t>();
    op.sigma = j["sigma"].get<i64>();
    return op;
}

inline json decomposition_to_json(const Decomposition& d) {
    json trace = json::array();
    for (const ElementaryOp& op : d.trace) trace.push_back(op_to_json(op));
    return json{{"base", group_literal(d.base)}, {"phi", d.phi.entries()}, {"trace", trace}};
}

// The phase group K is carried by the form file, not the decomposition
// file, so it is supplied by the caller.
inline Decomposition decomposition_from_json(const json& j, const FiniteAbelianGroup& k) {
    if (!j.is_object() || !j.contains("base") || !j.contains("phi") || !j.contains("trace"))
        throw ParseError("decomposition: expected an object with \"base\", \"phi\", \"trace\"");
    Decomposition d{parse_group(j["base"].get<std::string>()),
                    HomMatrix::make(FiniteAbelianGroup{}, FiniteAbelianGroup{}, {}), {}};
    d.phi = HomMatrix::make(product_with_dual(d.base), k, int_matrix_from_json(j["phi"], "decomposition \"phi\""));
    if (!j["trace"].is_array()) throw ParseError("decomposition: \"trace\" must be an array");
    for (const json& rec : j["trace"]) d.trace.push_back(op_from_json(rec));
    return d;
}

inline Decomposition load_decomposition_file(const std::string& path, const FiniteAbelianGroup& k) {
    try {
        return decomposition_from_json(parse_json_text(read_file_or_stdin(path), "decomposition file " + path), k);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError("decomposition file " + path + ": " + e.what());
    }
}

// ---- reports --------------------------------------------------------------

inline json weyl_report_to_json(const WeylReport& r) {
    json failures = json::array();
    for (const WeylFailure& f : r.failures) failures.push_back(json{{"what", f.what}, {"deviation", f.deviation}});
    return json{{"max_deviation", r.max_deviation},
                {"unitarity_ok", r.unitarity_ok},
                {"commutant_dimension", r.commutant_dimension},
                {"failures", failures}};
}

inline json classification_to_json(const ClassificationRecord& r) {
    json groups = json::array();
    for (const FiniteAbelianGroup& g : r.phase_groups) groups.push_back(group_literal(g));
    return json{{"order_n", r.order_n}, {"phase_groups", groups}, {"count", r.count}};
}

}  // namespace heis
