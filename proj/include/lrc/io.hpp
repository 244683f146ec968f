#pragma once

// JSON exchange format for fields, codes and locality certificates.
// Symbols are integer-encoded field elements throughout.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lrc/code.hpp"
#include "lrc/lrc.hpp"

namespace lrc {

using Json = nlohmann::ordered_json;

inline Json field_to_json(const Field& f) {
    return Json{{"p", f.p()}, {"m", f.m()}, {"modulus", f.modulus()}};
}

inline Field field_from_json(const Json& j) {
    try {
        const auto p = j.at("p").get<std::uint32_t>();
        const auto m = j.at("m").get<std::uint32_t>();
        if (!j.contains("modulus")) return Field::make(p, m);
        return Field::with_modulus(p, m, j.at("modulus").get<std::vector<std::uint32_t>>());
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad field JSON: ") + e.what());
    }
}

inline Json distance_to_json(const DistanceKnowledge& d) {
    return Json{{"lower", d.lower}, {"upper", d.upper}, {"exact", d.exact()}, {"lower_by", d.lower_by}, {"upper_by", d.upper_by}};
}

inline Json code_to_json(const LinearCode& C) {
    return Json{{"field", field_to_json(C.field())}, {"n", C.n()},          {"k", C.k()},
                {"G", C.G().to_rows()},                {"H", C.H().to_rows()}, {"distance", distance_to_json(C.distance())}};
}

namespace detail {

inline MatrixGF matrix_from_json(const Field& f, const Json& rows, std::size_t n) {
    auto r = rows.get<std::vector<std::vector<Elem>>>();
    for (const auto& row : r) {
        if (row.size() != n) throw ParseError("matrix row has wrong length");
        for (auto x : row)
            if (x >= f.q()) throw ParseError("matrix symbol out of range");
    }
    return MatrixGF::from_rows(f, r, n);
}

}  // namespace detail

/// Loads a code; the stored distance interval is kept only when `keep_distance`.
inline LinearCode code_from_json(const Json& j, bool keep_distance = true) {
    try {
        const Field f = field_from_json(j.at("field"));
        const auto n = j.at("n").get<std::size_t>();
        const MatrixGF G = detail::matrix_from_json(f, j.at("G"), n);
        const MatrixGF H = detail::matrix_from_json(f, j.at("H"), n);
        if (j.contains("k") && j.at("k").get<std::size_t>() != G.rows()) throw ParseError("k does not match G");
        std::optional<DistanceKnowledge> d;
        if (keep_distance && j.contains("distance")) {
            const auto& dj = j.at("distance");
            d = DistanceKnowledge{dj.at("lower").get<std::size_t>(), dj.at("upper").get<std::size_t>(),
                                  dj.value("lower_by", std::string("file")), dj.value("upper_by", std::string("file"))};
        }
        return LinearCode::from_pair(G, H, d);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad code JSON: ") + e.what());
    }
}

inline Json certificate_to_json(const LocalityCertificate& c) {
    return Json{{"r", c.r}, {"disjoint", c.disjoint}, {"words", c.words}};
}

inline LocalityCertificate certificate_from_json(const Json& j) {
    try {
        LocalityCertificate c;
        c.r = j.at("r").get<std::size_t>();
        c.disjoint = j.value("disjoint", false);
        c.words = j.at("words").get<std::vector<std::vector<Elem>>>();
        return c;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad certificate JSON: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
}

/// Word with exactly one erased symbol, written as '?'.
struct ErasedWord {
    std::vector<Elem> word;
    std::size_t erased = 0;
};

/// Symbols are separated by whitespace, commas or brackets.
inline ErasedWord parse_erased_word(std::string text, const Field& f) {
    for (auto& c : text)
        if (c == ',' || c == '[' || c == ']') c = ' ';
    std::istringstream in(text);
    std::string tok;
    ErasedWord out;
    std::optional<std::size_t> pos;
    while (in >> tok) {
        if (tok == "?") {
            if (pos) throw ParseError("word has more than one erasure");
            pos = out.word.size();
            out.word.push_back(0);
            continue;
        }
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &used);
        } catch (const std::exception&) {
            throw ParseError("bad symbol: " + tok);
        }
        if (used != tok.size() || v >= f.q()) throw ParseError("bad symbol: " + tok);
        out.word.push_back(static_cast<Elem>(v));
    }
    if (!pos) throw ParseError("word has no erasure");
    out.erased = *pos;
    return out;
}

}  // namespace lrc
