#pragma once

// Construction recipes: prefix calls such as
//   concat(spc(5,gf(2)), ext_rs(gf(16),17,15))
// or the equivalent JSON object {"op": "concat", "inner": {...}, "outer": {...}}.

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lrc/construct.hpp"
#include "lrc/io.hpp"

namespace lrc {

struct RecipeNode {
    std::string op;  // empty for a number
    long long number = 0;
    std::vector<RecipeNode> args;

    bool is_number() const { return op.empty(); }

    std::string to_string() const {
        if (is_number()) return std::to_string(number);
        std::string s = op + "(";
        for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i].to_string();
        return s + ")";
    }
};

namespace detail {

struct OpInfo {
    std::string name;
    std::vector<std::string> params;
};

inline const std::vector<OpInfo>& op_table() {
    static const std::vector<OpInfo> ops = {
        {"gf", {"q"}},
        {"spc", {"n", "field"}},
        {"repetition", {"n", "field"}},
        {"rs", {"field", "n", "k"}},
        {"ext_rs", {"field", "n", "k"}},
        {"rs_locality", {"field", "m", "t"}},
        {"hamming_ext", {"t"}},
        {"golay", {}},
        {"concat", {"inner", "outer"}},
        {"extend_zero", {"code"}},
        {"puncture", {"code"}},
        {"shorten", {"code", "t", "s"}},
        {"lengthen", {"code", "r"}},
        {"lengthen_hamming", {"t", "r"}},
        {"lengthen_rs", {"field", "n", "r", "d"}},
    };
    return ops;
}

inline std::string canonical_op(const std::string& name) {
    static const std::map<std::string, std::string> alias = {
        {"concatenate", "concat"},       {"extended_rs", "ext_rs"},     {"rs_with_locality", "rs_locality"},
        {"golay_ext", "golay"},          {"rep", "repetition"},         {"puncture_parity", "puncture"},
        {"shorten_recovery", "shorten"}, {"field", "gf"}};
    const auto it = alias.find(name);
    return it == alias.end() ? name : it->second;
}

inline const OpInfo& op_info(const std::string& name) {
    for (const auto& o : op_table())
        if (o.name == name) return o;
    throw ParseError("unknown recipe operation: " + name);
}

class RecipeParser {
public:
    explicit RecipeParser(const std::string& s) : s_(s) {}

    RecipeNode parse() {
        RecipeNode n = expr();
        skip();
        if (i_ != s_.size()) fail("trailing input");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("recipe: " + what + " at offset " + std::to_string(i_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    RecipeNode expr() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        RecipeNode n;
        if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            if (j - i_ > 15) fail("number too large");
            n.number = std::stoll(s_.substr(i_, j - i_));
            i_ = j;
            return n;
        }
        if (!std::isalpha(static_cast<unsigned char>(s_[i_]))) fail("expected a name or number");
        std::size_t j = i_;
        while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
        n.op = s_.substr(i_, j - i_);
        i_ = j;
        if (!eat('(')) fail("expected '(' after " + n.op);
        if (!eat(')')) {
            do n.args.push_back(expr());
            while (eat(','));
            if (!eat(')')) fail("expected ')'");
        }
        return n;
    }

    std::string s_;
    std::size_t i_ = 0;
};

}  // namespace detail

inline RecipeNode parse_recipe(const std::string& text) { return detail::RecipeParser(text).parse(); }

/// JSON recipe: a number, a mini-language string, or {"op": ..., <named params>}.
inline RecipeNode recipe_from_json(const Json& j) {
    if (j.is_number_integer()) return RecipeNode{"", j.get<long long>(), {}};
    if (j.is_string()) return parse_recipe(j.get<std::string>());
    if (!j.is_object() || !j.contains("op") || !j.at("op").is_string()) throw ParseError("recipe JSON node needs an \"op\"");
    RecipeNode n;
    n.op = detail::canonical_op(j.at("op").get<std::string>());
    const auto& info = detail::op_info(n.op);
    for (const auto& p : info.params) {
        if (!j.contains(p)) throw ParseError("recipe op " + n.op + " is missing \"" + p + "\"");
        n.args.push_back(recipe_from_json(j.at(p)));
    }
    for (const auto& [key, _] : j.items())
        if (key != "op" && std::find(info.params.begin(), info.params.end(), key) == info.params.end())
            throw ParseError("recipe op " + n.op + " has unknown key \"" + key + "\"");
    return n;
}

/// Reads either a JSON recipe or a mini-language recipe from text.
inline RecipeNode parse_recipe_any(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return recipe_from_json(parse_json(text));
    return parse_recipe(text);
}

/// A constructed code with everything known about it.
struct Artifact {
    std::string recipe;
    LinearCode code;
    std::optional<LocalityCertificate> certificate;
    std::optional<Concatenation> concatenation;
    /// A codeword of minimum weight, when one is known.
    std::optional<std::vector<Elem>> witness;

    bool is_lrc() const { return certificate.has_value(); }
    LocallyRepairableCode lrc() const {
        if (!certificate) throw PreconditionError(recipe + " has no locality certificate");
        return LocallyRepairableCode(code, *certificate);
    }
    std::string params() const { return is_lrc() ? lrc().params() : code.params(); }
};

namespace detail {

using Value = std::variant<long long, Field, Artifact>;

inline Artifact from_lrc(const std::string& recipe, const LocallyRepairableCode& L) {
    return Artifact{recipe, L.code(), L.certificate(), std::nullopt, std::nullopt};
}

class Evaluator {
public:
    explicit Evaluator(const CertifyBudget& b) : budget_(b) {}

    Value eval(const RecipeNode& n) {
        if (n.is_number()) return n.number;
        const std::string op = canonical_op(n.op);
        const auto& info = op_info(op);
        if (n.args.size() != info.params.size())
            throw ParseError(op + " takes " + std::to_string(info.params.size()) + " arguments, got " +
                             std::to_string(n.args.size()));
        std::vector<Value> a;
        for (const auto& x : n.args) a.push_back(eval(x));
        const std::string text = n.to_string();

        if (op == "gf") return Field::of_order(count(a[0], "q"));
        if (op == "spc") return from_lrc(text, spc(count(a[0], "n"), field(a[1])));
        if (op == "repetition") return from_lrc(text, repetition(count(a[0], "n"), field(a[1])));
        if (op == "rs") {
            const Field f = field(a[0]);
            return Artifact{text, rs(f, first_points(f, count(a[1], "n")), count(a[2], "k")), {}, {}, {}};
        }
        if (op == "ext_rs") return Artifact{text, extended_rs(field(a[0]), count(a[1], "n"), count(a[2], "k")), {}, {}, {}};
        if (op == "rs_locality") return from_lrc(text, rs_with_locality(field(a[0]), count(a[1], "m"), count(a[2], "t")));
        if (op == "hamming_ext") return Artifact{text, hamming_ext(static_cast<unsigned>(count(a[0], "t"))), {}, {}, {}};
        if (op == "golay") return from_lrc(text, golay_ext());
        if (op == "concat") {
            const Artifact& in = artifact(a[0]);
            auto cc = concatenate(in.lrc(), artifact(a[1]).code);
            Artifact out = from_lrc(text, cc.code);
            auto w = concat_weight_probe(cc);
            if (!w.word.empty()) {
                out.code = out.code.with_distance(out.code.distance().with_upper(w.weight, "concat-probe"));
                if (out.code.distance().exact()) out.witness = w.word;
            }
            out.concatenation = cc;
            return out;
        }
        if (op == "extend_zero") {
            const Artifact& in = artifact(a[0]);
            Artifact out = from_lrc(text, extend_zero(in.lrc()));
            if (in.witness) {
                out.witness = *in.witness;
                out.witness->push_back(0);
            }
            return out;
        }
        if (op == "puncture") {
            const Artifact& in = artifact(a[0]);
            auto res = puncture_parity(in.lrc(), in.witness, budget_);
            Artifact out = from_lrc(text, res.code);
            // rule (ii) keeps the distance, so the shortened witness stays minimal
            if (res.witness && in.code.distance().exact()) out.witness = res.witness;
            return out;
        }
        if (op == "shorten") return from_lrc(text, shorten_recovery(artifact(a[0]).lrc(), count(a[1], "t"), count(a[2], "s")));
        if (op == "lengthen") return from_lrc(text, lengthen(artifact(a[0]).code, count(a[1], "r")));
        if (op == "lengthen_hamming")
            return from_lrc(text, lengthen_hamming(static_cast<unsigned>(count(a[0], "t")), count(a[1], "r")));
        if (op == "lengthen_rs")
            return from_lrc(text, lengthen_rs(field(a[0]), count(a[1], "n"), count(a[2], "r"), count(a[3], "d")));
        throw ParseError("unhandled recipe operation: " + op);
    }

private:
    static std::size_t count(const Value& v, const char* what) {
        if (const auto* x = std::get_if<long long>(&v)) return static_cast<std::size_t>(*x);
        throw ParseError(std::string("argument ") + what + " must be a number");
    }
    static const Field& field(const Value& v) {
        if (const auto* f = std::get_if<Field>(&v)) return *f;
        throw ParseError("argument must be a field, e.g. gf(16)");
    }
    static const Artifact& artifact(const Value& v) {
        if (const auto* c = std::get_if<Artifact>(&v)) return *c;
        throw ParseError("argument must be a code");
    }

    CertifyBudget budget_;
};

}  // namespace detail

inline Artifact build(const RecipeNode& recipe, const CertifyBudget& budget = {}) {
    auto v = detail::Evaluator(budget).eval(recipe);
    if (auto* a = std::get_if<Artifact>(&v)) return std::move(*a);
    throw ParseError("recipe does not produce a code: " + recipe.to_string());
}

inline Artifact build(const std::string& recipe, const CertifyBudget& budget = {}) {
    return build(parse_recipe_any(recipe), budget);
}

}  // namespace lrc
