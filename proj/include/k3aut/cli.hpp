#pragma once

#include "k3aut/gluing.hpp"
#include "k3aut/isometry.hpp"
#include "k3aut/lattice.hpp"
#include "k3aut/pell.hpp"
#include "k3aut/report.hpp"
#include "k3aut/roots.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace k3aut::cli {

using Json = nlohmann::ordered_json;

enum class Format { text, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMismatch = 2;

struct CommandRequest {
    std::string subcommand;
    std::optional<Integer> d;
    std::optional<Integer> D;
    std::optional<Integer> N;
    std::optional<Integer> bound;
    std::optional<Integer> count;
    std::optional<Mat2> matrix;
    Format format = Format::text;
};

struct CommandResult {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

class usage_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"pell",       "lattice",   "roots", "cone",
                                                "isometries", "decompose", "aut",   "verify"};
    return names;
}

inline std::optional<Integer> parse_integer(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size() || !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                                      [](unsigned char c) { return std::isdigit(c); }))
        return std::nullopt;
    return Integer(s[0] == '+' ? s.substr(1) : s);
}

inline std::optional<Mat2> parse_matrix(const std::string& s) {
    std::vector<Integer> entries;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto v = parse_integer(item);
        if (!v) return std::nullopt;
        entries.push_back(*v);
    }
    if (entries.size() != 4 || s.empty() || s.back() == ',') return std::nullopt;
    return Mat2{entries[0], entries[1], entries[2], entries[3]};
}

namespace detail {

inline Json vec_json(const Vec2& v) { return Json::array({v.x.str(), v.y.str()}); }

inline Json mat_json(const Mat2& m) {
    return Json::array({Json::array({m.m00.str(), m.m01.str()}), Json::array({m.m10.str(), m.m11.str()})});
}

inline Json rational_vec_json(const RationalVec2& g) {
    return Json::array({fraction_string(g.x, g.den), fraction_string(g.y, g.den)});
}

inline const Integer& require(const std::optional<Integer>& v, const char* flag) {
    if (!v) throw usage_error(std::string("missing required option ") + flag);
    return *v;
}

inline const Integer& require_positive(const std::optional<Integer>& v, const char* flag) {
    const Integer& x = require(v, flag);
    if (x < 1) throw usage_error(std::string(flag) + " must be >= 1, got " + x.str());
    return x;
}

// Largest value accepted where an option drives an exhaustive scan or a loop count.
inline unsigned small_count(const Integer& v, const char* flag, unsigned limit) {
    if (v > limit) throw usage_error(std::string(flag) + " must be <= " + std::to_string(limit));
    return v.convert_to<unsigned>();
}

struct Output {
    Json result = Json::object();
    std::vector<std::string> lines;
    std::vector<std::string> warnings;
    int exit_code = kExitOk;
};

inline Output run_pell(const CommandRequest& req) {
    Output o;
    Integer D;
    int N = -4;
    if (req.D) {
        D = *req.D;
    } else if (req.d) {
        const Integer& d = require_positive(req.d, "--d");
        D = d * d + 4;
    } else {
        throw usage_error("pell needs --D or --d");
    }
    if (req.N) {
        if (*req.N != -4 && *req.N != -1 && *req.N != 1 && *req.N != 4)
            throw usage_error("--N must be one of -4, -1, 1, 4");
        N = req.N->convert_to<int>();
    }
    unsigned count = req.count ? small_count(require_positive(req.count, "--count"), "--count", 1000) : 5;
    std::vector<PellSolution> sols = pell_solutions(D, N, count);

    Json arr = Json::array();
    o.lines.push_back("a^2 - " + D.str() + " b^2 = " + std::to_string(N));
    for (const PellSolution& s : sols) {
        arr.push_back(Json::array({s.a().str(), s.b().str()}));
        o.lines.push_back(to_string(s));
    }
    if (sols.empty()) o.lines.push_back("no solutions");
    o.result["D"] = D.str();
    o.result["N"] = std::to_string(N);
    o.result["solutions"] = arr;
    return o;
}

inline Output run_lattice(const CommandRequest& req) {
    Output o;
    const Integer& d = require_positive(req.d, "--d");
    Gram2 Q = gram_for_degree(d);
    Signature sig = signature(Q);
    SmithForm snf = smith_normal_form(Q);
    DiscriminantGroup grp = discriminant_group(Q);

    o.result["gram"] = mat_json(Q.matrix());
    o.result["discriminant"] = discriminant(Q).str();
    o.result["signature"] = Json::array({std::to_string(sig.positive), std::to_string(sig.negative)});
    o.result["smith"] = Json::array({snf.d1.str(), snf.d2.str()});
    Json gens = Json::array();
    std::vector<std::string> gen_text;
    for (const RationalVec2& g : grp.generators) {
        gens.push_back(rational_vec_json(g));
        gen_text.push_back(to_string(g));
    }
    o.result["discriminant_group"] = {{"order", grp.order.str()},
                                      {"cyclic", grp.is_cyclic()},
                                      {"factors", Json::array({grp.cyclic_factors[0].str(), grp.cyclic_factors[1].str()})},
                                      {"generators", gens}};

    o.lines.push_back("gram " + to_string(Q));
    o.lines.push_back("discriminant " + discriminant(Q).str());
    o.lines.push_back("signature (" + std::to_string(sig.positive) + "," + std::to_string(sig.negative) + ")");
    o.lines.push_back("smith (" + snf.d1.str() + "," + snf.d2.str() + ")");
    o.lines.push_back("discriminant group order " + grp.order.str() + (grp.is_cyclic() ? " cyclic" : " non-cyclic") +
                      " factors (" + grp.cyclic_factors[0].str() + "," + grp.cyclic_factors[1].str() +
                      ") generators " + k3aut::detail::join(gen_text));
    return o;
}

inline Output run_roots(const CommandRequest& req) {
    Output o;
    const Integer& d = require_positive(req.d, "--d");
    Integer bound = req.bound ? require_positive(req.bound, "--bound") : Integer(40);
    small_count(bound, "--bound", 1000000);
    const bool odd = d % 2 == 1;
    if (!odd) o.warnings.push_back("d is even: effectivity flags are not computed");

    Json arr = Json::array();
    o.lines.push_back("roots of x^2 + " + d.str() + "xy - y^2 = -1 with |x|,|y| <= " + bound.str());
    for (const Vec2& r : roots_by_scan(d, bound)) {
        Json e = {{"v", vec_json(r)}};
        std::string line = to_string(r);
        if (odd) {
            Root c = classify_root(d, r);
            e["effective"] = c.effective;
            e["irreducible"] = c.irreducible;
            line += std::string(c.effective ? " effective" : "") + (c.irreducible ? " irreducible" : "");
        }
        arr.push_back(e);
        o.lines.push_back(line);
    }
    o.result["d"] = d.str();
    o.result["bound"] = bound.str();
    o.result["roots"] = arr;
    return o;
}

inline Output run_cone(const CommandRequest& req) {
    Output o;
    const Integer& d = require_positive(req.d, "--d");
    Chamber ch = kahler_chamber(d);
    auto inequality = [](const Vec2& n) {
        std::string s = n.x.str() + "x";
        s += n.y < 0 ? " - " + (-n.y).str() + "y" : " + " + n.y.str() + "y";
        return s + " > 0";
    };
    o.result["walls"] = Json::array({vec_json(ch.wall_u), vec_json(ch.wall_w)});
    o.result["normals"] = Json::array({vec_json(ch.normal_u), vec_json(ch.normal_w)});
    o.result["rays"] = Json::array({vec_json(ch.ray_u), vec_json(ch.ray_w)});
    o.result["interior_point"] = vec_json(ch.interior_point);
    o.result["inequalities"] = Json::array({inequality(ch.normal_u), inequality(ch.normal_w)});

    o.lines.push_back("walls " + to_string(ch.wall_u) + " " + to_string(ch.wall_w));
    o.lines.push_back("normals " + to_string(ch.normal_u) + " " + to_string(ch.normal_w));
    o.lines.push_back("rays " + to_string(ch.ray_u) + " " + to_string(ch.ray_w));
    o.lines.push_back("interior point " + to_string(ch.interior_point));
    o.lines.push_back("chamber: " + inequality(ch.normal_u) + " and " + inequality(ch.normal_w));
    return o;
}

inline Output run_isometries(const CommandRequest& req) {
    Output o;
    const Integer& d = require_positive(req.d, "--d");
    Integer bound = req.bound ? require_positive(req.bound, "--bound") : Integer(12);
    small_count(bound, "--bound", 1000);
    const bool odd = d % 2 == 1;
    if (!odd) o.warnings.push_back("d is even: word decompositions are not computed");

    Json arr = Json::array();
    std::vector<Isometry2> isos = brute_isometries(gram_for_degree(d), bound);
    o.lines.push_back(std::to_string(isos.size()) + " isometries with entries in [-" + bound.str() + "," +
                      bound.str() + "]");
    for (const Isometry2& m : isos) {
        Json e = {{"matrix", mat_json(m.matrix())}, {"det", std::to_string(m.det())}};
        std::string line = to_string(m.matrix()) + " det " + std::to_string(m.det());
        if (odd) {
            SignedWord w = to_signed_word(d, decompose(d, m));
            e["word"] = to_string(w);
            line += " word " + to_string(w);
        }
        arr.push_back(e);
        o.lines.push_back(line);
    }
    o.result["d"] = d.str();
    o.result["bound"] = bound.str();
    o.result["isometries"] = arr;
    if (odd) {
        GroupReport gr = group_report(d, bound);
        o.result["structure"] = gr.structure;
        o.lines.push_back("structure " + gr.structure + " (p = S0+, q = S0-)");
    }
    return o;
}

inline Output run_decompose(const CommandRequest& req) {
    Output o;
    const Integer& d = require_positive(req.d, "--d");
    if (!req.matrix) throw usage_error("missing required option --matrix");
    WordDecomposition w = decompose(d, *req.matrix);
    SignedWord sw = to_signed_word(d, w);
    Json letters = Json::array();
    std::vector<std::string> names;
    for (Wall l : w.letters) {
        letters.push_back(to_string(l));
        names.push_back(to_string(l));
    }
    o.result["matrix"] = mat_json(*req.matrix);
    o.result["sign"] = std::to_string(w.sign);
    o.result["letters"] = letters;
    o.result["residual"] = to_string(w.residual);
    o.result["word"] = to_string(sw);

    o.lines.push_back("matrix " + to_string(*req.matrix));
    o.lines.push_back("sign " + std::to_string(w.sign));
    o.lines.push_back("letters " + (names.empty() ? std::string("(none)") : k3aut::detail::join(names, " ")));
    o.lines.push_back("residual " + std::string(to_string(w.residual)));
    o.lines.push_back("word " + to_string(sw));
    return o;
}

inline Output run_aut(const CommandRequest& req) {
    Output o;
    const Integer& d = require_positive(req.d, "--d");
    SurfaceAutGroup g = surface_aut_group(d);
    if (!g.within_theorem_scope)
        o.warnings.push_back("d = " + d.str() + " is even: computed best-effort, outside the odd-degree theorem");
    Json elems = Json::array();
    for (const GluedElement& e : g.elements)
        elems.push_back({{"matrix", mat_json(e.isometry.matrix())}, {"epsilon", std::to_string(e.epsilon)}});
    o.result["d"] = d.str();
    o.result["order"] = std::to_string(g.order);
    o.result["generator"] = mat_json(g.generator.matrix());
    o.result["epsilon"] = std::to_string(g.epsilon);
    o.result["within_theorem_scope"] = g.within_theorem_scope;
    o.result["elements"] = elems;

    o.lines.push_back("order " + std::to_string(g.order));
    o.lines.push_back("generator " + to_string(g.generator.matrix()));
    o.lines.push_back("epsilon " + std::to_string(g.epsilon));
    o.lines.push_back(std::string("within theorem scope ") + (g.within_theorem_scope ? "yes" : "no"));
    return o;
}

inline Output run_verify(const CommandRequest& req) {
    Output o;
    const Integer& d = require_positive(req.d, "--d");
    VerificationReport rep = verify(d);
    if (rep.scope_warning) o.warnings.push_back(*rep.scope_warning);
    Json checks = Json::array();
    o.lines.push_back("verify d=" + d.str());
    for (const Check& c : rep.checks) {
        checks.push_back({{"name", c.name}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
        o.lines.push_back(std::string(c.pass ? "[PASS] " : "[FAIL] ") + c.name + ": expected " + c.expected +
                          "; computed " + c.computed);
    }
    o.lines.push_back(std::string("overall: ") + (rep.overall ? "PASS" : "FAIL"));
    o.result["d"] = d.str();
    o.result["checks"] = checks;
    o.result["overall"] = rep.overall;
    o.exit_code = rep.overall ? kExitOk : kExitMismatch;
    return o;
}

inline Json parameters_json(const CommandRequest& req) {
    Json p = Json::object();
    auto put = [&](const char* k, const std::optional<Integer>& v) {
        if (v) p[k] = v->str();
    };
    put("d", req.d);
    put("D", req.D);
    put("N", req.N);
    put("bound", req.bound);
    put("count", req.count);
    if (req.matrix) p["matrix"] = mat_json(*req.matrix);
    p["format"] = req.format == Format::json ? "json" : "text";
    return p;
}

}  // namespace detail

/// Dispatches a parsed request. Exit 0 on success, 1 on usage or domain errors,
/// 2 when a verification check fails.
inline CommandResult run(const CommandRequest& req) {
    using namespace detail;
    static const std::map<std::string, Output (*)(const CommandRequest&)> table{
        {"pell", run_pell},       {"lattice", run_lattice},       {"roots", run_roots},
        {"cone", run_cone},       {"isometries", run_isometries}, {"decompose", run_decompose},
        {"aut", run_aut},         {"verify", run_verify},
    };
    CommandResult res;
    auto it = table.find(req.subcommand);
    if (it == table.end()) {
        res.exit_code = kExitUsage;
        res.err = "unknown subcommand '" + req.subcommand + "'\n";
        return res;
    }
    Output o;
    try {
        o = it->second(req);
    } catch (const usage_error& e) {
        res.exit_code = kExitUsage;
        res.err = std::string("usage error: ") + e.what() + "\n";
        return res;
    } catch (const k3aut::domain_error& e) {
        res.exit_code = kExitUsage;
        res.err = std::string("domain error: ") + e.what() + "\n";
        return res;
    }
    res.exit_code = o.exit_code;
    if (req.format == Format::json) {
        Json doc = Json::object();
        doc["subcommand"] = req.subcommand;
        doc["parameters"] = parameters_json(req);
        doc["result"] = o.result;
        doc["warnings"] = o.warnings;
        res.out = doc.dump(2) + "\n";
    } else {
        for (const std::string& w : o.warnings) res.out += "warning: " + w + "\n";
        for (const std::string& l : o.lines) res.out += l + "\n";
    }
    return res;
}

/// Parses command-line arguments (without the program name) and runs the request.
inline CommandResult run_cli(const std::vector<std::string>& args, const std::string& program = "k3aut") {
    CLI::App app{"Exact lattice computations for the Neron-Severi lattices L_d = [[2,d],[d,-2]]", program};
    app.require_subcommand(1, 1);

    std::map<std::string, std::string> raw;
    std::string format = "text";
    struct Flags {
        std::vector<std::string> names;
        const char* help;
    };
    const std::map<std::string, Flags> per_command{
        {"pell", {{"--D", "--d", "--N", "--count"}, "solutions of a^2 - D b^2 = N"}},
        {"lattice", {{"--d"}, "Gram form, invariants and discriminant group of L_d"}},
        {"roots", {{"--d", "--bound"}, "(-2)-vectors of L_d in a box"}},
        {"cone", {{"--d"}, "Kahler chamber of L_d"}},
        {"isometries", {{"--d", "--bound"}, "isometries of L_d with bounded entries"}},
        {"decompose", {{"--d", "--matrix"}, "chamber-walk word of an isometry"}},
        {"aut", {{"--d"}, "chamber-preserving isometries that glue with +-I"}},
        {"verify", {{"--d"}, "full verification report for L_d"}},
    };
    const std::map<std::string, const char*> flag_help{
        {"--d", "degree d >= 1"},        {"--D", "positive nonsquare D"},
        {"--N", "one of -4, -1, 1, 4"},  {"--bound", "box bound >= 1"},
        {"--count", "number of items"},  {"--matrix", "row-major entries a,b,c,e"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const std::string& name : subcommands()) {
        const Flags& f = per_command.at(name);
        CLI::App* sc = app.add_subcommand(name, f.help);
        for (const std::string& flag : f.names) sc->add_option(flag, raw[name + flag], flag_help.at(flag));
        sc->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
        subs[name] = sc;
    }

    CommandResult res;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        res.out = app.help();
        return res;
    } catch (const CLI::ParseError& e) {
        res.exit_code = kExitUsage;
        res.err = std::string("usage error: ") + e.what() + "\n" + app.help();
        return res;
    }

    CommandRequest req;
    for (const auto& [name, sc] : subs)
        if (sc->parsed()) req.subcommand = name;
    req.format = format == "json" ? Format::json : Format::text;

    const Flags& f = per_command.at(req.subcommand);
    for (const std::string& flag : f.names) {
        CLI::Option* opt = subs[req.subcommand]->get_option(flag);
        if (opt->count() == 0) continue;
        const std::string& value = raw[req.subcommand + flag];
        if (flag == "--matrix") {
            req.matrix = parse_matrix(value);
            if (!req.matrix) {
                res.exit_code = kExitUsage;
                res.err = "usage error: --matrix expects four comma-separated integers, got '" + value + "'\n";
                return res;
            }
            continue;
        }
        auto v = parse_integer(value);
        if (!v) {
            res.exit_code = kExitUsage;
            res.err = "usage error: " + flag + " expects an integer, got '" + value + "'\n";
            return res;
        }
        if (flag == "--d") req.d = v;
        if (flag == "--D") req.D = v;
        if (flag == "--N") req.N = v;
        if (flag == "--bound") req.bound = v;
        if (flag == "--count") req.count = v;
    }
    return run(req);
}

}  // namespace k3aut::cli
