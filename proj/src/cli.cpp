#include "parapot/cli.hpp"

#include "parapot/catalog.hpp"
#include "parapot/claws.hpp"
#include "parapot/darboux.hpp"
#include "parapot/frame.hpp"
#include "parapot/report.hpp"
#include "parapot/symmetry.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace parapot {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string eq_file, alphas, seeds, op, apply, tr, name, mu, P;
    int level = -1;
    unsigned k = 0;
    bool json = false, timing = false, backward = false;
    uint64_t seed = 0;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

ParabolicEquation load_equation(const std::string& path) {
    if (path.empty()) throw UsageError("--eq FILE is required");
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read equation file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_equation(ss.str());
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

Expr parse_input(const std::string& text, const std::string& what) {
    try {
        return Expr::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(what + ": " + e.what());
    }
}

FunctionTuple parse_tuple(const std::string& list, const std::string& what) {
    if (trim(list).empty()) throw UsageError(what + " is required");
    FunctionTuple out;
    for (const auto& s : split_tuple(list)) out.push_back(parse_input(s, what));
    return out;
}

PointOperator parse_op(const std::string& text) {
    if (trim(text).empty()) throw UsageError("--op is required");
    try {
        return PointOperator::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--op: ") + e.what());
    }
}

void input_tuple(Report& r, const std::string& key, const FunctionTuple& fs) {
    for (size_t i = 0; i < fs.size(); ++i) r.input(key + "[" + std::to_string(i + 1) + "]", fs[i]);
}

std::string idx(const std::string& key, size_t i) { return key + "[" + std::to_string(i) + "]"; }

// ---------------------------------------------------------------- handlers

Report cmd_adjoint(const Options& o) {
    Report r;
    auto eq = load_equation(o.eq_file);
    r.input("eq", eq);
    auto adj = adjoint(eq);
    r.output("adjoint", adj);
    r.check("adjoint is an involution", same_equation(adjoint(adj), eq));
    return r;
}

Report cmd_claw(const Options& o, const std::string& mode) {
    Report r;
    auto eq = load_equation(o.eq_file);
    auto alphas = parse_tuple(o.alphas, "--alphas");
    r.input("eq", eq);
    input_tuple(r, "alpha", alphas);
    EquivalenceTransformation tr;
    if (mode == "transform") {
        auto parts = split_tuple(o.tr);
        if (parts.size() < 3 || parts.size() > 4) throw UsageError("--tr expects \"T; X; U1\" or \"T; X; U1; U0\"");
        tr = {parse_input(parts[0], "--tr"), parse_input(parts[1], "--tr"), parse_input(parts[2], "--tr"),
              parts.size() == 4 ? parse_input(parts[3], "--tr") : Expr()};
        r.input("tr", tr.str());
        auto image = apply_equivalence(eq, tr);
        r.output("image", image);
        for (size_t i = 0; i < alphas.size(); ++i) {
            Expr a = transform_characteristic(eq, alphas[i], tr);
            r.output(idx("alpha~", i + 1), a);
            r.check(zero_check(idx("image characteristic", i + 1), characteristic_residual(image, a)));
        }
        return r;
    }
    for (size_t i = 0; i < alphas.size(); ++i) {
        Expr res = characteristic_residual(eq, alphas[i]);
        r.check(zero_check(idx("characteristic", i + 1), res));
        if (!res.is_zero()) continue;
        auto cv = canonical_conserved_vector(eq, alphas[i]);
        if (mode == "cv") {
            r.output(idx("F", i + 1), cv.F);
            r.output(idx("G", i + 1), cv.G);
        }
        r.check(zero_check(idx("divergence", i + 1), divergence_residual(cv, eq)));
    }
    return r;
}

Report cmd_darboux(const Options& o, const std::string& mode) {
    Report r;
    auto eq = load_equation(o.eq_file);
    auto psis = parse_tuple(o.seeds, "--seeds");
    r.input("eq", eq);
    input_tuple(r, "psi", psis);
    if (mode != "dual" && psis.size() != 1) throw UsageError("darboux " + mode + " takes exactly one seed; use crum");
    auto seed = DarbouxSeed::make(eq, psis);
    if (mode == "apply") {
        if (o.apply.empty()) throw UsageError("--apply is required");
        Expr w = parse_input(o.apply, "--apply");
        r.input("w", w);
        Expr img = dt_apply(psis[0], w);
        r.output("image", img);
        auto target = crum_target_equation(seed);
        r.check(zero_check("w solves the source", apply_operator(eq, w)));
        r.check(zero_check("image solves the target", apply_operator(target, img)));
    } else if (mode == "target") {
        r.output("target", dt_target_equation(seed));
        r.check("elimination agrees with the closed form", true);
    } else {
        auto target = crum_target_equation(seed);
        auto duals = dual_characteristics(seed);
        r.output("target", target);
        for (size_t i = 0; i < duals.size(); ++i) {
            r.output(idx("dual", i + 1), duals[i]);
            r.check(zero_check(idx("dual characteristic", i + 1), characteristic_residual(target, duals[i])));
        }
    }
    return r;
}

Report cmd_crum(const Options& o) {
    Report r;
    auto eq = load_equation(o.eq_file);
    auto psis = parse_tuple(o.seeds, "--seeds");
    r.input("eq", eq);
    input_tuple(r, "psi", psis);
    auto seed = DarbouxSeed::make(eq, psis);
    auto target = crum_target_equation(seed);
    r.output("target", target);
    r.check("closed form agrees with iterated elimination", same_equation(target, crum_target_iterated(seed)));
    if (!o.apply.empty()) {
        Expr w = parse_input(o.apply, "--apply");
        r.input("w", w);
        Expr img = crum_apply(seed, w);
        r.output("image", img);
        r.check(zero_check("w solves the source", apply_operator(eq, w)));
        r.check(zero_check("image solves the target", apply_operator(target, img)));
        r.check(zero_check("Wronskian ratio equals composed single steps", img - crum_apply_stepwise(psis, w)));
    }
    for (size_t i = 0; i < psis.size(); ++i)
        r.check(zero_check(idx("seed maps to zero", i + 1), crum_apply(seed, psis[i])));
    return r;
}

Report cmd_frame(const Options& o, const std::string& mode) {
    Report r;
    auto eq = load_equation(o.eq_file);
    auto alphas = parse_tuple(o.alphas, "--alphas");
    r.input("eq", eq);
    input_tuple(r, "alpha", alphas);
    auto fr = build_frame(eq, alphas);
    const size_t p = fr.p();
    if (o.level > static_cast<int>(p)) throw UsageError("--level exceeds the number of characteristics");
    for (size_t s = 0; s <= p; ++s) {
        if (o.level >= 0 && s != static_cast<size_t>(o.level)) continue;
        std::string l = std::to_string(s);
        r.output("W^" + l, fr.W(static_cast<int>(s)));
        if (s >= 1) {
            r.output("H^" + l, fr.H[s]);
            r.output("G^" + l, fr.G[s]);
        }
        auto lev = modified_potential_equation(fr, s);
        r.output("level^" + l, lev);
        if (lev.is_reduced_form()) r.output("V^" + l, lev.V());
        if (s == 0) continue;
        const auto& ws = w_solutions(fr, s);
        for (size_t i = 0; i < ws.size(); ++i) r.output("w^" + l + "," + std::to_string(i + 1), ws[i]);
    }
    r.check(mode == "check" ? frame_consistency(fr, o.seed) : frame_invariant_checks(fr));
    return r;
}

Report cmd_symmetry(const Options& o, const std::string& mode) {
    Report r;
    auto eq = load_equation(o.eq_file);
    r.input("eq", eq);
    if (mode == "check") {
        auto Q = parse_op(o.op);
        r.input("op", Q.str());
        Expr res = invariance_residual(eq, Q);
        r.output("residual", res);
        r.check(zero_check("invariance", res));
        return r;
    }
    auto alphas = parse_tuple(o.alphas, "--alphas");
    input_tuple(r, "alpha", alphas);
    if (mode == "prolong") {
        auto Q = parse_op(o.op);
        r.input("op", Q.str());
        ProlongedOperator P;
        if (alphas.size() == 1) {
            r.output("potential equation", simplest_potential_equation(eq, alphas[0]));
            P = prolong_simplest(Q, eq, alphas[0]);
        } else {
            auto fr = build_frame(eq, alphas);
            r.output("potential equation", p_level_potential_equation(fr));
            P = prolong_frame(Q, fr);
        }
        r.output("prolonged", P.str());
        r.output("eta", P.eta);
        for (size_t i = 0; i < P.thetas.size(); ++i) r.output(idx("theta", i + 1), P.thetas[i]);
        r.output("pure potential", is_pure_potential(P, 0) ? "yes" : "no");
        r.check("system invariance", true);
        return r;
    }
    auto rep = potential_symmetry_report(eq, alphas);
    r.output("level equation", rep.level_equation);
    r.output("case", to_string(rep.tag));
    for (size_t i = 0; i < rep.psis.size(); ++i) r.output(idx("psi", i + 1), rep.psis[i]);
    for (const auto& v : rep.verdicts) {
        r.output("operator " + v.name, v.op.str());
        r.output("strict " + v.name, v.strict ? "yes" : "no");
        if (v.strict) r.output("prolonged " + v.name, v.prolonged);
    }
    if (!rep.note.empty()) r.output("note", rep.note);
    if (rep.tag == CaseTag::unknown)
        r.output("limitation", "V is matched structurally; no equivalence normalization is attempted");
    r.output("summary", rep.summary());
    return r;
}

Report cmd_catalog(const Options& o, const std::string& mode) {
    Report r;
    if (mode == "heatpoly") {
        r.input("k", std::to_string(o.k));
        r.input("backward", o.backward ? "yes" : "no");
        Expr P = o.backward ? backward_heat_polynomial(o.k) : heat_polynomial(o.k);
        r.output("P", P);
        ParabolicEquation eq = heat_equation();
        r.check(zero_check(o.backward ? "solves the backward heat equation" : "solves the heat equation",
                           o.backward ? characteristic_residual(eq, P) : apply_operator(eq, P)));
    } else if (mode == "ladder") {
        Expr mu = parse_input(o.mu.empty() ? "0" : o.mu, "--mu");
        r.input("mu", mu);
        r.input("k", std::to_string(o.k));
        auto eq = mu_equation(mu);
        auto tuple = pi_ladder_tuple(mu, o.k);
        for (unsigned i = 0; i <= o.k; ++i) {
            r.output("phi^" + std::to_string(i) + ",1", tuple[2 * i]);
            r.output("phi^" + std::to_string(i) + ",2", tuple[2 * i + 1]);
        }
        for (size_t i = 0; i < tuple.size(); ++i)
            r.check(zero_check(idx("solves the equation", i + 1), apply_operator(eq, tuple[i])));
        Expr W = wronskian(tuple);
        r.output("wronskian", W);
        r.check("Wronskian is a nonzero constant", W.as_rational().has_value() && !W.is_zero(), W.str());
    } else if (mode == "fixture") {
        if (o.name.empty()) throw UsageError("--name is required (one of heat-p1, heat-p2, fp-x)");
        auto fx = fixture(o.name);
        r.input("name", fx.name);
        r.output("source", fx.source);
        r.output("eq", fx.equation);
        r.output("alpha", fx.alpha);
        r.output("potential equation", fx.potential_equation);
        for (size_t i = 0; i < fx.operators.size(); ++i) {
            r.output(idx("op", i + 1), fx.operators[i].op.str());
            r.output(idx("prolonged", i + 1), fx.operators[i].prolonged.str());
        }
        r.check("fixture re-verified", true);
    } else {
        Expr P = parse_input(o.P.empty() ? "0" : o.P, "--P");
        auto psis = parse_tuple(o.seeds, "--seeds");
        r.input("P", P);
        input_tuple(r, "psi", psis);
        Expr V = potential_V_from_seeds(P, psis);
        r.output("V", V);
        auto target = crum_target_equation(DarbouxSeed::make(ParabolicEquation::reduced(P), psis));
        r.check(zero_check("crum target has C = -V", target.C + V));
    }
    return r;
}

}  // namespace

std::vector<std::string> split_tuple(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ';');) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"parapot: potential symmetries and conservation laws of linear parabolic equations"};
    app.require_subcommand(1);
    Options o;
    std::function<Report()> action;
    std::string command;

    auto common = [&](CLI::App* c) {
        c->add_flag("--json", o.json, "machine-readable report");
        c->add_flag("--timing", o.timing, "include wall time in the report");
        c->add_option("--seed", o.seed, "numeric-oracle seed")->default_val(0);
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, std::function<Report()> fn) {
        CLI::App* c = parent->add_subcommand(name, desc);
        common(c);
        std::string full = parent == &app ? name : parent->get_name() + " " + name;
        c->callback([&, fn, full] {
            action = fn;
            command = full;
        });
        return c;
    };
    auto group = [&](const std::string& name, const std::string& desc) {
        CLI::App* g = app.add_subcommand(name, desc);
        g->require_subcommand(1);
        return g;
    };

    auto* c = leaf(&app, "adjoint", "adjoint equation", [&] { return cmd_adjoint(o); });
    c->add_option("--eq", o.eq_file, "equation file")->required();

    auto* claw = group("claw", "conservation laws");
    for (std::string m : {"verify", "cv", "transform"}) {
        c = leaf(claw, m, "characteristics and conserved vectors", [&, m] { return cmd_claw(o, m); });
        c->add_option("--eq", o.eq_file)->required();
        c->add_option("--alphas", o.alphas, "characteristics, ';'-separated")->required();
        if (m == "transform") c->add_option("--tr", o.tr, "\"T; X; U1\"")->required();
    }

    auto* dar = group("darboux", "Darboux transformations");
    for (std::string m : {"apply", "target", "dual"}) {
        c = leaf(dar, m, "single or dual Darboux transformation", [&, m] { return cmd_darboux(o, m); });
        c->add_option("--eq", o.eq_file)->required();
        c->add_option("--seeds", o.seeds, "seed solutions, ';'-separated")->required();
        if (m == "apply") c->add_option("--apply", o.apply, "solution to transform")->required();
    }

    c = leaf(&app, "crum", "multiple Darboux transformation", [&] { return cmd_crum(o); });
    c->add_option("--eq", o.eq_file)->required();
    c->add_option("--seeds", o.seeds)->required();
    c->add_option("--apply", o.apply, "solution to transform");

    auto* fr = group("frame", "potential frames");
    for (std::string m : {"build", "check"}) {
        c = leaf(fr, m, "build a potential frame", [&, m] { return cmd_frame(o, m); });
        c->add_option("--eq", o.eq_file)->required();
        c->add_option("--alphas", o.alphas)->required();
        c->add_option("--level", o.level, "report a single level");
    }

    auto* sy = group("symmetry", "Lie and potential symmetries");
    c = leaf(sy, "check", "invariance check", [&] { return cmd_symmetry(o, "check"); });
    c->add_option("--eq", o.eq_file)->required();
    c->add_option("--op", o.op, "tau*Dt + xi*Dx + (zeta1*w + zeta0)*Dw")->required();
    c = leaf(sy, "prolong", "prolong to the potential system", [&] { return cmd_symmetry(o, "prolong"); });
    c->add_option("--eq", o.eq_file)->required();
    c->add_option("--alphas", o.alphas)->required();
    c->add_option("--op", o.op)->required();
    c = leaf(sy, "potsym", "pure potential symmetry report", [&] { return cmd_symmetry(o, "potsym"); });
    c->add_option("--eq", o.eq_file)->required();
    c->add_option("--alphas", o.alphas)->required();

    auto* cat = group("catalog", "solution families and fixtures");
    c = leaf(cat, "heatpoly", "heat polynomial P_k", [&] { return cmd_catalog(o, "heatpoly"); });
    c->add_option("--k", o.k)->required();
    c->add_flag("--backward", o.backward, "P_k(-t, x)");
    c = leaf(cat, "ladder", "Pi ladder of the mu/x^2 equation", [&] { return cmd_catalog(o, "ladder"); });
    c->add_option("--mu", o.mu)->required();
    c->add_option("--k", o.k);
    c = leaf(cat, "fixture", "load and verify a fixture", [&] { return cmd_catalog(o, "fixture"); });
    c->add_option("--name", o.name)->required();
    c = leaf(cat, "make-v", "potential from seed solutions", [&] { return cmd_catalog(o, "make-v"); });
    c->add_option("--P", o.P, "stationary potential P(x)");
    c->add_option("--seeds", o.seeds)->required();

    std::vector<std::string> argv_s{"parapot"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_s) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!action) {
        err << "usage error: no command\n";
        return kExitUsage;
    }

    set_oracle_seed(o.seed);
    Report rep;
    auto start = std::chrono::steady_clock::now();
    try {
        rep = action();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    rep.command = command;
    if (o.timing)
        rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << (o.json ? rep.json() : rep.text());
    return rep.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace parapot
