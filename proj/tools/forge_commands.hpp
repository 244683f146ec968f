#pragma once

// lrc_forge subcommands. Kept apart from main() so tests can drive them in-process.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lrc/bounds.hpp"
#include "lrc/tables.hpp"

namespace forge {

using namespace lrc;

enum Exit : int { ok = 0, failed = 1, parse = 2, precondition = 3, inconclusive = 4, bad_certificate = 5, inconsistent = 6 };

struct Options {
    unsigned workers = 1;
    std::uint64_t seed = 1;
    std::uint64_t budget_subsets = kDefaultSubsetBudget;
    std::uint64_t budget_codewords = std::uint64_t{1} << 24;
    std::uint64_t budget_hunt = 50'000'000;
    std::size_t probe_iterations = 0;

    CertifyBudget certify() const {
        CertifyBudget b;
        b.codewords = budget_codewords;
        b.subsets = budget_subsets;
        b.hunt = budget_hunt;
        b.workers = workers;
        b.probe_iterations = probe_iterations;
        b.seed = seed;
        return b;
    }
    LocalityBudget locality() const { return {budget_codewords, budget_subsets, workers}; }
};

inline unsigned default_workers() {
    if (const char* env = std::getenv("LRC_FORGE_WORKERS")) {
        try {
            const auto v = std::stoul(env);
            if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

inline std::string summary(const Artifact& a) {
    std::ostringstream s;
    const auto& d = a.code.distance();
    s << "recipe: " << a.recipe << "\n";
    s << "parameters: " << a.params() << "\n";
    s << "n = " << a.code.n() << ", k = " << a.code.k() << ", q = " << a.code.field().q() << "\n";
    s << "distance: " << d.lower << " <= d <= " << d.upper << " (lower by " << d.lower_by << ", upper by " << d.upper_by
      << ")\n";
    if (a.certificate) {
        const auto L = a.lrc();
        s << "locality: r = " << L.r() << ", " << a.certificate->words.size() << " certificate words"
          << (a.certificate->disjoint ? ", disjoint" : "") << "\n";
        s << "singleton-optimal: " << to_string(is_singleton_optimal(L)) << "\n";
        s << "dimension-optimal: " << to_string(is_dimension_optimal(L)) << "\n";
    } else {
        s << "locality: no certificate\n";
    }
    return s.str();
}

inline int cmd_construct(const std::string& recipe_text, const std::string& prefix, const Options& o, std::ostream& out) {
    const Artifact a = build(recipe_text, o.certify());
    write_file(prefix + ".code.json", code_to_json(a.code).dump(1) + "\n");
    if (a.certificate) write_file(prefix + ".cert.json", certificate_to_json(*a.certificate).dump(1) + "\n");
    out << summary(a);
    out << "wrote " << prefix << ".code.json" << (a.certificate ? " and " + prefix + ".cert.json" : std::string()) << "\n";
    return ok;
}

struct VerifyFlags {
    bool distance_exact = false;
    bool locality = false;
    bool optimal = false;
};

inline int cmd_verify(const std::string& code_path, const std::string& cert_path, const VerifyFlags& flags, const Options& o,
                      std::ostream& out) {
    // stored distance claims are not trusted
    const LinearCode C = code_from_json(parse_json(read_file(code_path)), false);
    std::optional<LocalityCertificate> cert;
    if (!cert_path.empty()) cert = certificate_from_json(parse_json(read_file(cert_path)));
    Json report = Json::object();
    report["code"] = {{"n", C.n()}, {"k", C.k()}, {"q", C.field().q()}};
    bool any_fail = false, any_inconclusive = false, bad_cert = false;

    if (cert) {
        const auto chk = verify_certificate(C, *cert);
        report["certificate"] = {{"status", chk ? "pass" : "fail"}, {"r", cert->r}, {"disjoint", cert->disjoint}};
        if (!chk) {
            report["certificate"]["violation"] = chk.violation;
            bad_cert = true;
        }
    } else if (flags.locality || flags.optimal) {
        throw PreconditionError("--locality and --optimal need a certificate file");
    }

    if (flags.locality && cert && !bad_cert) {
        Json loc = {{"status", "pass"}, {"r", cert->r}, {"method", "certificate"}};
        report["locality"] = loc;
    } else if (flags.locality) {
        report["locality"] = {{"status", "fail"}};
    }

    DistanceKnowledge K = C.distance();
    if (flags.distance_exact || flags.optimal) {
        K = distance_certify(C, o.certify());
        if (cert && !bad_cert) K = K.with_lower(2, "locality");
    }
    if (flags.distance_exact) {
        report["distance"] = distance_to_json(K);
        report["distance"]["status"] = K.exact() ? "pass" : "inconclusive";
        if (!K.exact()) any_inconclusive = true;
    }
    if (flags.optimal && cert && !bad_cert) {
        const auto L = LocallyRepairableCode(C, *cert).with_distance(K);
        const auto s = is_singleton_optimal(L), d = is_dimension_optimal(L);
        std::string status = "fail";
        if (s == Verdict::yes || d == Verdict::yes)
            status = "pass";
        else if (s == Verdict::unknown || d == Verdict::unknown)
            status = "inconclusive";
        report["optimal"] = {{"status", status},
                             {"singleton_optimal", to_string(s)},
                             {"dimension_optimal", to_string(d)},
                             {"azd_bound", C.field().q() == 2 ? Json(azd_bound(static_cast<long long>(C.n()),
                                                                               static_cast<long long>(L.r())))
                                                              : Json(nullptr)},
                             {"singleton_type_bound", singleton_type_bound(static_cast<long long>(C.n()),
                                                                           static_cast<long long>(C.k()),
                                                                           static_cast<long long>(L.r()))}};
        if (status == "fail") any_fail = true;
        if (status == "inconclusive") any_inconclusive = true;
    }
    const char* overall = bad_cert ? "invalid-certificate" : any_fail ? "fail" : any_inconclusive ? "inconclusive" : "pass";
    report["result"] = overall;
    out << report.dump(2) << "\n";
    if (bad_cert) return bad_certificate;
    if (any_fail) return failed;
    if (any_inconclusive) return inconclusive;
    return ok;
}

inline int cmd_tables(const std::string& which, bool timing, const Options& o, std::ostream& out) {
    const auto rows = manifest_rows(which);
    std::size_t passed = 0;
    for (const auto& e : rows) {
        RowResult r;
        try {
            r = verify_row(e, o.certify());
        } catch (const Error& ex) {
            r.entry = e;
            r.failures.push_back(std::string("construction failed: ") + ex.what());
        }
        passed += r.pass;
        out << describe(r);
        if (timing) out << "  (" << format12(r.seconds) << " s)";
        out << "\n";
    }
    out << passed << "/" << rows.size() << " rows pass\n";
    return passed == rows.size() ? ok : failed;
}

struct BoundQuery {
    std::string name;
    long long n = 0, k = 0, d = 0, r = 1;
    std::uint64_t q = 2;
    double x = 0, delta = 0;
    std::uint64_t m = 0, t = 0;
    std::optional<double> ihara;
    std::string kind;
};

inline CurveParams curve_params(const BoundQuery& b) {
    CurveParams p;
    p.q = b.q;
    p.r = static_cast<std::uint64_t>(b.r);
    p.m = b.m;
    p.t = b.t;
    p.ihara = b.ihara;
    return p;
}

inline int cmd_bounds(const BoundQuery& b, std::ostream& out) {
    const auto need = [](bool okv, const char* what) {
        if (!okv) throw PreconditionError(what);
    };
    if (b.name == "azd") {
        need(b.n >= 1 && b.r >= 1, "azd needs --n >= 1 and --r >= 1");
        out << azd_bound(b.n, b.r) << "\n";
    } else if (b.name == "singleton") {
        need(b.n >= 1 && b.k >= 1 && b.r >= 1, "singleton needs --n, --k, --r >= 1");
        out << singleton_type_bound(b.n, b.k, b.r) << "\n";
    } else if (b.name == "cm") {
        out << cm_bound(b.n, b.d, b.r) << "\n";
    } else if (b.name == "entropy") {
        out << format12(entropy_q(static_cast<double>(b.q), b.x)) << "\n";
    } else if (b.name == "gv_h") {
        out << format12(gv_h(static_cast<double>(b.r), b.x, static_cast<double>(b.q))) << "\n";
    } else if (b.name == "gv") {
        out << format12(gv_lrc_rate(static_cast<double>(b.r), b.delta, static_cast<double>(b.q))) << "\n";
    } else if (b.name == "zyablov") {
        out << format12(zyablov_lrc(static_cast<double>(b.r), b.delta, static_cast<double>(b.q))) << "\n";
    } else if (b.name == "rate") {
        const auto kind = parse_curve_kind(b.kind);
        const auto P = curve_params(b);
        out << format12(rate_line(kind, P, b.delta)) << " (raw " << format12(rate_line_raw(kind, P, b.delta)) << ")\n";
    } else {
        throw ParseError("unknown bound: " + b.name + " (azd, singleton, cm, entropy, gv_h, gv, zyablov, rate)");
    }
    return ok;
}

inline int cmd_curve(const BoundQuery& b, double from, double to, double step, const std::string& path, const Options& o,
                     std::ostream& out) {
    CurveSpec spec;
    spec.kind = parse_curve_kind(b.kind);
    spec.params = curve_params(b);
    spec.from = from;
    spec.to = to;
    spec.step = step;
    const auto csv = curve_csv(spec, curve_emit(spec, o.workers));
    if (path.empty() || path == "-")
        out << csv;
    else
        write_file(path, csv);
    return ok;
}

inline int cmd_repair(const std::string& code_path, const std::string& cert_path, const std::string& word_text,
                      std::ostream& out) {
    const LinearCode C = code_from_json(parse_json(read_file(code_path)), false);
    const auto cert = certificate_from_json(parse_json(read_file(cert_path)));
    const LocallyRepairableCode L(C, cert);
    const auto w = parse_erased_word(word_text, C.field());
    if (w.word.size() != C.n()) throw ParseError("word has " + std::to_string(w.word.size()) + " symbols, code length is " +
                                                 std::to_string(C.n()));
    const auto res = repair_erasure(L, w.word, w.erased);
    out << "erased position: " << w.erased << "\n";
    out << "recovered symbol: " << res.value << "\n";
    out << "recovery set:";
    for (auto j : res.recovery_set) out << " " << j;
    out << "\n";
    out << "certificate word: " << res.word_index << "\n";
    out << "relation: " << res.relation << "\n";
    return ok;
}

inline int cmd_export(const std::string& source, const std::string& what, const std::string& path, const Options& o,
                      std::ostream& out) {
    std::optional<Artifact> a;
    std::optional<LinearCode> C;
    // a file argument is read as code JSON, anything else as a recipe
    if (source.size() > 5 && source.substr(source.size() - 5) == ".json") {
        C = code_from_json(parse_json(read_file(source)));
    } else {
        a = build(source, o.certify());
        C = a->code;
    }
    std::string text;
    if (what == "G")
        text = to_text(C->G());
    else if (what == "H")
        text = to_text(C->H());
    else if (what == "code")
        text = code_to_json(*C).dump(1) + "\n";
    else if (what == "cert") {
        if (!a || !a->certificate) throw PreconditionError("certificate export needs a recipe that yields a certificate");
        text = certificate_to_json(*a->certificate).dump(1) + "\n";
    } else
        throw ParseError("unknown export format: " + what + " (G, H, code, cert)");
    if (path.empty() || path == "-")
        out << text;
    else
        write_file(path, text);
    return ok;
}

inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return parse;
    if (dynamic_cast<const InvalidCertificate*>(&e)) return bad_certificate;
    if (dynamic_cast<const InconsistentWord*>(&e)) return inconsistent;
    if (dynamic_cast<const PreconditionError*>(&e) || dynamic_cast<const TrivialCodeError*>(&e) ||
        dynamic_cast<const FieldMismatch*>(&e))
        return precondition;
    return failed;
}

/// Full command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"lrc_forge: construct, verify and bound locally repairable codes"};
    app.require_subcommand(1);
    Options o;
    o.workers = default_workers();
    app.add_option("--workers", o.workers, "worker threads (default: LRC_FORGE_WORKERS or 1)")->check(CLI::Range(1u, 1024u));
    app.add_option("--seed", o.seed, "seed for randomized probes");
    app.add_option("--budget-subsets", o.budget_subsets, "column subsets examined per search");
    app.add_option("--budget-codewords", o.budget_codewords, "codewords enumerated before switching to column search");
    app.add_option("--budget-hunt", o.budget_hunt, "subsets tried when hunting for a minimum-weight word");
    app.add_option("--probe-iterations", o.probe_iterations, "random information-set probes for an upper bound");

    std::function<int()> action;

    auto* construct = app.add_subcommand("construct", "build a code from a recipe and write its files");
    std::string recipe, recipe_file, prefix = "lrc";
    construct->add_option("recipe", recipe, "recipe, e.g. \"concat(spc(5,gf(2)),ext_rs(gf(16),17,15))\"");
    construct->add_option("-f,--recipe-file", recipe_file, "JSON or mini-language recipe file");
    construct->add_option("-o,--out", prefix, "output prefix (writes PREFIX.code.json and PREFIX.cert.json)");
    construct->callback([&] {
        action = [&] {
            if (recipe.empty() == recipe_file.empty()) throw ParseError("give exactly one of a recipe or --recipe-file");
            return cmd_construct(recipe.empty() ? read_file(recipe_file) : recipe, prefix, o, out);
        };
    });

    auto* verify = app.add_subcommand("verify", "check a code (and certificate) file");
    std::string code_path, cert_path;
    VerifyFlags vf;
    verify->add_option("--code", code_path, "code JSON")->required();
    verify->add_option("--cert", cert_path, "certificate JSON");
    verify->add_flag("--distance-exact", vf.distance_exact, "pin the minimum distance within budget");
    verify->add_flag("--locality", vf.locality, "check the locality certificate");
    verify->add_flag("--optimal", vf.optimal, "Singleton-type and AZD optimality verdicts");
    verify->callback([&] { action = [&] { return cmd_verify(code_path, cert_path, vf, o, out); }; });

    auto* tables = app.add_subcommand("tables", "rebuild and check the built-in table manifest");
    std::string which = "all";
    bool timing = false;
    tables->add_option("which", which, "I, II, III, remark, example or all")
        ->check(CLI::IsMember({"I", "II", "III", "remark", "example", "all"}));
    tables->add_flag("--timing", timing, "print per-row wall time");
    tables->callback([&] { action = [&] { return cmd_tables(which, timing, o, out); }; });

    BoundQuery bq;
    auto add_bound_options = [&](CLI::App* sub) {
        sub->add_option("--n", bq.n);
        sub->add_option("--k", bq.k);
        sub->add_option("--d", bq.d);
        sub->add_option("--r", bq.r);
        sub->add_option("--q", bq.q);
        sub->add_option("--x", bq.x);
        sub->add_option("--delta", bq.delta);
        sub->add_option("--m", bq.m);
        sub->add_option("--t", bq.t);
        sub->add_option("--ihara", bq.ihara, "lower bound on A(.) for non-square arguments");
        sub->add_option("--kind", bq.kind, "rate line kind");
    };
    auto* bounds = app.add_subcommand("bounds", "evaluate a single bound");
    bounds->add_option("name", bq.name, "azd, singleton, cm, entropy, gv_h, gv, zyablov or rate")->required();
    add_bound_options(bounds);
    bounds->callback([&] { action = [&] { return cmd_bounds(bq, out); }; });

    auto* curve = app.add_subcommand("curve", "emit a rate curve as CSV");
    double from = 0, to = 0.5, step = 0.001;
    std::string curve_out;
    add_bound_options(curve);
    curve->add_option("--from", from);
    curve->add_option("--to", to);
    curve->add_option("--step", step);
    curve->add_option("-o,--out", curve_out, "CSV path (default stdout)");
    curve->callback([&] {
        action = [&] {
            if (bq.kind.empty()) throw ParseError("curve needs --kind");
            return cmd_curve(bq, from, to, step, curve_out, o, out);
        };
    });

    auto* repair = app.add_subcommand("repair", "recover one erased symbol");
    std::string word_text, word_file;
    repair->add_option("--code", code_path, "code JSON")->required();
    repair->add_option("--cert", cert_path, "certificate JSON")->required();
    repair->add_option("--word", word_text, "word with one '?', e.g. \"1 1 0 ? 0\"");
    repair->add_option("--word-file", word_file, "file holding the word");
    repair->callback([&] {
        action = [&] {
            if (word_text.empty() == word_file.empty()) throw ParseError("give exactly one of --word or --word-file");
            return cmd_repair(code_path, cert_path, word_text.empty() ? read_file(word_file) : word_text, out);
        };
    });

    auto* exp = app.add_subcommand("export", "write G, H, code JSON or certificate of a recipe or code file");
    std::string source, what = "code", export_out;
    exp->add_option("source", source, "recipe or code JSON file")->required();
    exp->add_option("--format", what, "G, H, code or cert");
    exp->add_option("-o,--out", export_out, "output path (default stdout)");
    exp->callback([&] { action = [&] { return cmd_export(source, what, export_out, o, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << "\n";
        return parse;
    }
    try {
        return action ? action() : ok;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace forge
