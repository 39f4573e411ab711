#pragma once

// Command-line surface. Exit codes: 0 success / criterion holds, 1
// mathematical negative (not nef, criterion fails, a replayed assertion
// fails), 2 input error (parse failure, validation failure, malformed
// arguments, or data outside the log-Kodaira-one range).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "logsurf/bundled.hpp"
#include "logsurf/catalog.hpp"
#include "logsurf/report.hpp"

namespace logsurf::cli {

struct Outcome {
    int exit_code = 0;
    std::string output;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string qdiv_string(const SurfaceModel&, const QDivisor& d) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, q] : d.terms) { // name order, deterministic
        os << (first ? "" : " + ");
        if (q != 1) os << "(" << to_string(q) << ")";
        os << name;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

inline std::string class_string(const DivisorClass& c) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) os << (i ? "," : "") << to_string(c.coeffs[i]);
    os << ")";
    return os.str();
}

inline std::string twig_string(const SurfaceModel& m, const Twig& t) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < t.components.size(); ++i) {
        os << (i ? "," : "") << t.components[i];
    }
    os << "] type=[";
    for (std::size_t i = 0; i < t.components.size(); ++i) {
        Rational a = -m.lattice.self_intersection(m.curve(t.components[i]).cls);
        os << (i ? "," : "") << to_string(a);
    }
    os << "] at " << t.attachment;
    return os.str();
}

inline std::string fibration_string(const FibrationData& d) {
    std::ostringstream os;
    os << "g=" << d.g << " t=" << d.t << " horiz=" << to_string(d.horizontal_type) << " fibers=";
    for (std::size_t i = 0; i < d.fibers.size(); ++i) {
        os << (i ? "," : "") << "(" << d.fibers[i].branch_count << ","
           << d.fibers[i].multiplicity.str() << ")";
    }
    return os.str();
}

inline FibrationData parse_inline_fibration(const std::vector<std::string>& tokens) {
    std::optional<long long> g, t;
    std::optional<HorizontalType> type;
    std::optional<std::string> fiber_spec;
    for (const auto& tok : tokens) {
        if (tok.rfind("g=", 0) == 0) g = std::stoll(tok.substr(2));
        else if (tok.rfind("t=", 0) == 0) t = std::stoll(tok.substr(2));
        else if (tok.rfind("horiz=", 0) == 0) {
            std::string h = tok.substr(6);
            if (h == "2sec") type = HorizontalType::TwoSections;
            else if (h == "sep") type = HorizontalType::IrreducibleSeparable;
            else if (h == "insep") type = HorizontalType::IrreducibleInseparable;
            else throw Error("horiz must be 2sec|sep|insep");
        } else if (tok.rfind("fibers=", 0) == 0) {
            fiber_spec = tok.substr(7);
        } else {
            throw Error("unknown fibration token '" + tok + "'");
        }
    }
    if (!g || !t || !type || !fiber_spec)
        throw Error("fibration data needs g=, t=, horiz= and fibers=");
    std::vector<BoundaryFiberDatum> fibers;
    std::string spec = *fiber_spec;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        if (spec[pos] == ',') { ++pos; continue; }
        if (spec[pos] != '(') throw Error("fibers: expected '(' in '" + spec + "'");
        auto close = spec.find(')', pos);
        if (close == std::string::npos) throw Error("fibers: missing ')'");
        std::string body = spec.substr(pos + 1, close - pos - 1);
        auto comma = body.find(',');
        if (comma == std::string::npos) throw Error("fibers: expected (b,m)");
        int b = std::stoi(body.substr(0, comma));
        std::string ms = body.substr(comma + 1);
        Multiplicity mult = (ms == "inf") ? Multiplicity::inf() : Multiplicity::of(std::stoll(ms));
        fibers.push_back(BoundaryFiberDatum::make(b, mult));
        pos = close + 1;
    }
    return FibrationData::make(*g, *t, *type, std::move(fibers));
}

} // namespace detail

inline const char* kUsage =
    "usage: logsurf <command> [args] [--format json]\n"
    "\n"
    "commands:\n"
    "  validate <model.lsm>             check the model file and report violations\n"
    "  peel <model.lsm>                 maximal admissible twigs, bark and D#\n"
    "  kappa <model.lsm>                log-Kodaira class of the pair\n"
    "  zariski <model.lsm>              Zariski decomposition of K + D\n"
    "  mbound <data|model args> --m M   evaluate the fibration criterion at M\n"
    "  mbound <data|model args> --threshold\n"
    "                                   least M with the criterion true for all m >= M\n"
    "  verify-theorem --m M             per-case verification of the global bound\n"
    "  examples <name>                  replay a bundled model and assert its facts\n"
    "                                   (example-3-2, prop-4-1, prop-4-2)\n"
    "\n"
    "inline fibration data: g=<int> t=<int> horiz=<2sec|sep|insep> fibers=(b,m),...\n"
    "model-based fibration data: --model <file> --horizontal A,B --horiz <type>\n"
    "  --group C1,C2,... (repeatable) --genus G [--branch-points N]\n"
    "environment: LOGSURF_EXAMPLES_DIR overrides the bundled model directory\n";

inline Outcome run(std::vector<std::string> args) {
    Report rep;
    bool json = false;
    for (auto it = args.begin(); it != args.end();) {
        if (*it == "--format") {
            if (std::next(it) == args.end()) return {2, "missing --format value\n"};
            auto val = std::next(it);
            if (*val == "json") json = true;
            else if (*val != "text") return {2, "unknown format '" + *val + "'\n"};
            it = args.erase(it, std::next(val));
        } else {
            ++it;
        }
    }
    auto finish = [&](int code) -> Outcome {
        rep.exit_code = code;
        return {code, json ? rep.render_json() : rep.render_text()};
    };

    if (args.empty() || args[0] == "help" || args[0] == "--help" || args[0] == "-h")
        return {args.empty() ? 2 : 0, kUsage};
    std::string cmd = args[0];
    args.erase(args.begin());
    rep.command = cmd;

    try {
        if (cmd == "validate") {
            if (args.size() != 1) throw Error("validate needs exactly one model file");
            rep.input = args[0];
            std::string text = detail::read_file(args[0]);
            rep.digest = fnv1a_digest(text);
            SurfaceModel m;
            try {
                m = load_model(text);
            } catch (const ParseError& e) {
                rep.field("state", "parse-error");
                rep.field("error", e.what());
                return finish(2);
            }
            auto viol = validate(m);
            rep.field("curves", std::to_string(m.curves.size()));
            rep.field("rank", std::to_string(m.lattice.rank()));
            rep.field("state", viol.empty() ? "valid" : "invalid");
            for (const auto& v : viol) rep.field("violation", v.rule + ": " + v.detail);
            if (viol.empty())
                rep.claim("every tracked curve satisfies adjunction and the boundary meets the "
                          "simple-normal-crossing pairwise conditions");
            return finish(viol.empty() ? 0 : 2);
        }

        if (cmd == "peel" || cmd == "kappa" || cmd == "zariski") {
            if (args.size() != 1) throw Error(cmd + " needs exactly one model file");
            rep.input = args[0];
            std::string text = detail::read_file(args[0]);
            rep.digest = fnv1a_digest(text);
            SurfaceModel m = load_model(text);
            require_valid(m);
            if (cmd == "peel") {
                PeelingResult peel = compute_bark(m);
                for (const auto& t : peel.twigs) rep.field("twig", detail::twig_string(m, t));
                rep.field("dsharp", detail::qdiv_string(m, peel.dsharp));
                rep.field("bark", detail::qdiv_string(m, peel.bark));
                rep.claim("D# + Bk(D) = D with bark coefficients in (0,1)");
                rep.claim("(K + D#) . Z = 0 for every twig component Z");
                return finish(0);
            }
            ZariskiData z = zariski(m);
            if (!z.minimal_log.empty()) {
                std::ostringstream os;
                for (std::size_t i = 0; i < z.minimal_log.size(); ++i)
                    os << (i ? "," : "") << z.minimal_log[i];
                rep.field("minimalization", os.str());
            }
            if (cmd == "kappa") {
                rep.field("kappa", to_string(z.kappa));
                rep.field("nef_self_intersection", to_string(z.nef_self_intersection));
                for (const auto& [n, p] : z.nef_violators)
                    rep.field("violator", n + " (pairing " + to_string(p) + ")");
                if (z.kappa == Kappa::One)
                    rep.claim("K + D# is nef on tracked curves with (K + D#)^2 = 0 and class != 0");
                return finish(z.kappa == Kappa::NotNefOnTracked ? 1 : 0);
            }
            rep.field("nef_class", detail::class_string(z.nef_class));
            rep.field("nef_part", "K + " + detail::qdiv_string(z.model, z.dsharp));
            rep.field("negative_part", detail::qdiv_string(z.model, z.negative_part));
            rep.field("nef_self_intersection", to_string(z.nef_self_intersection));
            rep.field("kappa", to_string(z.kappa));
            for (const auto& [n, p] : z.nef_violators)
                rep.field("violator", n + " (pairing " + to_string(p) + ")");
            rep.claim("nef part + negative part = class(K + D)");
            rep.claim("the nef part is orthogonal to every component of the negative part");
            rep.claim("the negative part has negative definite support");
            return finish(z.kappa == Kappa::NotNefOnTracked ? 1 : 0);
        }

        if (cmd == "mbound") {
            std::optional<long long> at_m;
            bool want_threshold = false;
            std::optional<std::string> model_path;
            FiberAssignment fa;
            std::vector<std::string> inline_tokens;
            for (std::size_t i = 0; i < args.size(); ++i) {
                const std::string& a = args[i];
                auto next = [&](const char* what) {
                    if (i + 1 >= args.size()) throw Error(std::string("missing value for ") + what);
                    return args[++i];
                };
                if (a == "--m") at_m = std::stoll(next("--m"));
                else if (a == "--threshold") want_threshold = true;
                else if (a == "--model") model_path = next("--model");
                else if (a == "--horizontal") {
                    fa.horizontal.clear();
                    std::istringstream is(next("--horizontal"));
                    std::string part;
                    while (std::getline(is, part, ',')) fa.horizontal.push_back(part);
                } else if (a == "--horiz") {
                    std::string h = next("--horiz");
                    if (h == "2sec") fa.horizontal_type = HorizontalType::TwoSections;
                    else if (h == "sep") fa.horizontal_type = HorizontalType::IrreducibleSeparable;
                    else if (h == "insep") fa.horizontal_type = HorizontalType::IrreducibleInseparable;
                    else throw Error("--horiz must be 2sec|sep|insep");
                } else if (a == "--group") {
                    std::vector<std::string> grp;
                    std::istringstream is(next("--group"));
                    std::string part;
                    while (std::getline(is, part, ',')) grp.push_back(part);
                    fa.fiber_groups.push_back(std::move(grp));
                } else if (a == "--genus") fa.base_genus = std::stoll(next("--genus"));
                else if (a == "--branch-points") fa.branch_points = std::stoll(next("--branch-points"));
                else inline_tokens.push_back(a);
            }
            if (!at_m && !want_threshold) throw Error("mbound needs --m <M> or --threshold");

            FibrationData data;
            if (model_path) {
                rep.input = *model_path;
                std::string text = detail::read_file(*model_path);
                rep.digest = fnv1a_digest(text);
                SurfaceModel m = load_model(text);
                ExtractionResult ex = extract_fibration_data(m, fa);
                data = ex.data;
            } else {
                data = detail::parse_inline_fibration(inline_tokens);
            }
            rep.field("data", detail::fibration_string(data));
            std::ostringstream ds;
            for (std::size_t i = 0; i < data.fibers.size(); ++i)
                ds << (i ? "," : "") << to_string(data.fibers[i].d);
            rep.field("d", ds.str());
            rep.field("eps", to_string(data.eps()));
            if (!data.kodaira_one_condition()) {
                rep.field("error", "not log Kodaira dimension one: 2g - 2 + t + sum d_i <= 0");
                return finish(2);
            }
            int code = 0;
            if (at_m) {
                Integer deg = delta_m_degree(data, *at_m);
                bool ok = fibration_criterion(data, *at_m);
                rep.field("m", std::to_string(*at_m));
                rep.field("deg_delta_m", deg.str());
                rep.field("required", std::to_string(2 * data.g + 1));
                rep.field("criterion", ok ? "holds" : "fails");
                if (!ok) code = 1;
            }
            if (want_threshold) {
                ThresholdResult t = fibration_threshold(data);
                rep.field("threshold", std::to_string(t.threshold));
                rep.field("horizon", std::to_string(t.horizon));
                rep.claim("the criterion holds for every m >= threshold and fails at threshold - 1 "
                          "when threshold > 1");
            }
            return finish(code);
        }

        if (cmd == "verify-theorem") {
            std::optional<long long> at_m;
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (args[i] == "--m" && i + 1 < args.size()) at_m = std::stoll(args[++i]);
                else throw Error("verify-theorem takes --m <M>");
            }
            if (!at_m) throw Error("verify-theorem needs --m <M>");
            VerificationReport vr = verify_global_bound(*at_m);
            rep.field("m", std::to_string(vr.m));
            for (const auto& c : vr.cases) {
                std::string line;
                if (c.impossible) line = "impossible (vacuously holds)";
                else if (c.holds) line = "holds";
                else
                    line = "FAILS witness{" + detail::fibration_string(*c.witness) +
                           "} deg=" + c.witness_degree.str();
                rep.field("case " + c.case_id, line);
            }
            rep.field("cases", std::to_string(vr.cases.size()));
            rep.field("all_hold", vr.all_hold ? "yes" : "no");
            if (vr.all_hold)
                rep.claim("m(2g - 2 + t) + sum floor(m d_i) >= 2g + 1 for every admissible "
                          "configuration at this m");
            return finish(vr.all_hold ? 0 : 1);
        }

        if (cmd == "examples") {
            if (args.size() != 1) throw Error("examples needs a name");
            const BundledExample& e = bundled_example(args[0]);
            rep.input = e.name;
            std::string text = bundled_example_text(e);
            rep.digest = fnv1a_digest(text);
            SurfaceModel m = load_model(text);
            int failures = 0;
            auto check = [&](const std::string& what, bool ok) {
                rep.field("assert", what + (ok ? ": ok" : ": FAILED"));
                if (ok) rep.claim(what);
                else ++failures;
            };

            check("model validates", validate(m).empty());
            ZariskiData z = zariski(m);
            check("pair is almost minimal as given", z.minimal_log.empty());
            check("kappa = 1", z.kappa == Kappa::One);
            check("(K + D#)^2 = 0", z.nef_self_intersection == 0);

            ExtractionResult ex = extract_fibration_data(m, e.assignment);
            rep.field("data", detail::fibration_string(ex.data));
            rep.field("dsharp", detail::qdiv_string(m, z.dsharp));
            Rational eps = ex.data.eps();
            check("class(K + D#) = (2g - 2 + t + sum d_i) x fiber class",
                  z.nef_class == eps * ex.fiber_class);

            if (e.name == "example-3-2") {
                QDivisor want;
                want.set("H1", 1); want.set("H2", 1); want.set("F1", 1);
                want.set("D1", Rational(2, 3)); want.set("D2", Rational(2, 3));
                want.set("D3", Rational(1, 3));
                want.set("D4", Rational(1, 2)); want.set("D5", Rational(1, 2));
                check("D# = H1 + H2 + F1 + (2/3)(D1 + D2) + (1/3)D3 + (1/2)(D4 + D5)",
                      z.dsharp == want);
                check("class(K + D#) = (1/6) x fiber class",
                      z.nef_class == Rational(1, 6) * ex.fiber_class);
                check("d = (1, 2/3, 1/2)",
                      ex.data.fibers.size() == 3 && ex.data.fibers[0].d == 1 &&
                          ex.data.fibers[1].d == Rational(2, 3) && ex.data.fibers[2].d == Rational(1, 2));
                check("deg delta_7 = 0", delta_m_degree(ex.data, 7) == 0);
                check("deg delta_8 = 1", delta_m_degree(ex.data, 8) == 1);
                check("floor(7(K + D#)) has class 0", floor_multiple_class(ex, 7).is_zero());
                check("threshold = 8", fibration_threshold(ex.data).threshold == 8);
            } else if (e.name == "prop-4-1") {
                QDivisor want;
                want.set("H", 1);
                want.set("D1", Rational(2, 3)); want.set("D2", Rational(2, 3));
                want.set("D3", Rational(1, 3));
                want.set("D4", Rational(1, 2)); want.set("D5", Rational(1, 2));
                check("D# = H + (2/3)(D1 + D2) + (1/3)D3 + (1/2)(D4 + D5)", z.dsharp == want);
                check("t = 1 (half of two branch points)", ex.data.t == 1);
                check("d = (2/3, 1/2)",
                      ex.data.fibers.size() == 2 && ex.data.fibers[0].d == Rational(2, 3) &&
                          ex.data.fibers[1].d == Rational(1, 2));
                QDivisor L;
                L.set("F", 6); L.set("G1", 6); L.set("G2", 6);
                L.set("D1", 1); L.set("D2", 3); L.set("D3", 1); L.set("D4", 1); L.set("D5", 1);
                check("L = 6(F + G1 + G2) + D1 + 3D2 + D3 + D4 + D5 is an ample witness",
                      ample_witness_check(m, L));
                check("deg delta_7 = 0", delta_m_degree(ex.data, 7) == 0);
                check("threshold = 8", fibration_threshold(ex.data).threshold == 8);
            } else if (e.name == "prop-4-2") {
                QDivisor want;
                want.set("H", 1); want.set("E1", 1);
                want.set("D1", Rational(1, 2)); want.set("D2", Rational(1, 2));
                check("D# = H + E1 + (1/2)(D1 + D2)", z.dsharp == want);
                check("d = (1/2) with a one-point fiber",
                      ex.data.fibers.size() == 1 && ex.data.fibers[0].d == Rational(1, 2) &&
                          ex.data.fibers[0].branch_count == 1);
                check("class(K + D#) = (1/2) x fiber class",
                      z.nef_class == Rational(1, 2) * ex.fiber_class);
                check("deg delta_5 = 2", delta_m_degree(ex.data, 5) == 2);
                check("floor(5(K + D#)) has class 2 x fiber",
                      floor_multiple_class(ex, 5) == Rational(2) * ex.fiber_class);
                check("threshold = 6", fibration_threshold(ex.data).threshold == 6);
            }
            rep.field("failures", std::to_string(failures));
            return finish(failures == 0 ? 0 : 1);
        }

        rep.field("error", "unknown command '" + cmd + "'");
        return finish(2);
    } catch (const ParseError& e) {
        rep.field("error", e.what());
        return finish(2);
    } catch (const Error& e) {
        rep.field("error", e.what());
        return finish(2);
    } catch (const std::exception& e) {
        rep.field("error", e.what());
        return finish(2);
    }
}

inline int main_impl(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    Outcome out = run(std::move(args));
    std::cout << out.output;
    return out.exit_code;
}

} // namespace logsurf::cli
