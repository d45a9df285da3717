#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pirep/catalog.hpp"
#include "pirep/equivalence.hpp"
#include "pirep/identity.hpp"
#include "pirep/io.hpp"
#include "pirep/verifier.hpp"

using namespace pirep;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// rational, E(N), E(N)^k and sums of rational multiples of those
Cyc parse_cyc(const std::string& text) {
    if (!text.empty() && text[0] == '{') return cyc_from_json(json::parse(text));
    Cyc total;
    size_t i = 0;
    auto ws = [&] {
        while (i < text.size() && text[i] == ' ') ++i;
    };
    auto number = [&]() -> Rational {
        size_t j = i;
        while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
        if (j == i) throw UsageError("bad cyclotomic value: " + text);
        std::string t = text.substr(i, j - i);
        i = j;
        return Rational(t);
    };
    auto integer = [&]() -> int64_t {
        size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) throw UsageError("bad cyclotomic value: " + text);
        int64_t v = std::stoll(text.substr(i, j - i));
        i = j;
        return v;
    };
    bool first = true;
    while (true) {
        ws();
        if (i >= text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            ws();
        } else if (!first) {
            throw UsageError("bad cyclotomic value: " + text);
        }
        first = false;
        Cyc term(sign);
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            term = term * Cyc(number());
            ws();
            if (i < text.size() && text[i] == '*') ++i;
            ws();
        }
        if (text.compare(i, 2, "E(") == 0) {
            i += 2;
            int N = int(integer());
            if (i >= text.size() || text[i] != ')') throw UsageError("bad cyclotomic value: " + text);
            ++i;
            int64_t k = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                bool neg = i < text.size() && text[i] == '-';
                if (neg) ++i;
                k = integer() * (neg ? -1 : 1);
            }
            term = term * Cyc::root_of_unity(N, k);
        }
        total += term;
    }
    return total;
}

std::vector<int> labels_to_elements(const FiniteGroup& G, const std::string& list) {
    std::vector<int> out;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int found = -1;
        for (int g = 0; g < G.order(); ++g)
            if (G.label(g) == tok) found = g;
        if (found < 0) throw UsageError("unknown element label '" + tok + "'");
        out.push_back(found);
    }
    return out;
}

std::string command_echo(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
    return s;
}

void emit(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

struct BuildArgs {
    std::string family, rep, group, u, emit = "streamed", out, xi;
    int m = 0, n = 0, i = 0, t = 0, l = 1, sign = 1, k = 0;
    bool printed_range = false, maximal = false, adams = false;
    std::vector<std::string> words, blocks;
};

RepPtr need_rep(const BuildArgs& a) {
    if (a.rep.empty()) throw UsageError("family '" + a.family + "' needs --rep");
    return resolve_rep(a.rep);
}

int need(int v, const char* flag, const std::string& family) {
    if (v <= 0) throw UsageError("family '" + family + "' needs a positive " + flag);
    return v;
}

IdentityDoc build_doc(const BuildArgs& a) {
    const std::string& f = a.family;
    if (f == "guard") return guard_C(need(a.m, "--m", f));
    if (f == "psi") return psi(need(a.m, "--m", f));
    if (f == "theta") return theta(need(a.m, "--m", f));
    if (f == "character") return character_identity(*need_rep(a));
    if (f == "dimension") return dimension_identity(need(a.m, "--m", f), need(a.n, "--n", f));
    if (f == "dimension-alt") return dimension_identity_alt(need(a.m, "--m", f), need(a.n, "--n", f));
    if (f == "range") {
        if (a.xi.empty()) throw UsageError("family 'range' needs --xi");
        return range_identity(*need_rep(a), parse_cyc(a.xi));
    }
    if (f == "level-set") return level_set_identity(*need_rep(a), a.i);
    if (f == "class") return class_identity(*need_rep(a), a.adams);
    if (f == "s4-separating") {
        if (a.sign != 1 && a.sign != -1) throw UsageError("--sign must be 1 or -1");
        return s4_separating_identity(a.sign);
    }
    if (f == "fixed-point") return fixed_point_identity(*need_rep(a), a.i);
    if (f == "cayley-hamilton") return cayley_hamilton_identity(need(a.m, "--m", f), need(a.n, "--n", f));
    if (f == "sigma") return sigma_identity(*need_rep(a), need(a.i, "--i", f));
    if (f == "special-unitary") return su_identity(*need_rep(a));
    if (f == "spectrum") return spectrum_identity(*need_rep(a));
    if (f == "spectrum-level") return spectrum_level_identity(*need_rep(a), a.i);
    if (f == "gassmann") return gassmann_identity(*need_rep(a), a.i);
    if (f == "central-series") return central_series_gassmann_identity(*need_rep(a), a.t, a.i);
    if (f == "minimal-poly") return minimal_poly_identity(*need_rep(a), a.maximal);
    if (f == "central-partition") {
        auto r = need_rep(a);
        const auto& G = *r->group();
        std::vector<std::vector<int>> part;
        std::vector<char> used(static_cast<size_t>(G.order()), 0);
        for (auto& b : a.blocks) {
            part.push_back(labels_to_elements(G, b));
            for (int g : part.back()) {
                if (used[g]) throw UsageError("blocks overlap");
                used[g] = 1;
            }
        }
        std::vector<int> rest;
        for (int g = 0; g < G.order(); ++g)
            if (!used[g]) rest.push_back(g);
        if (!rest.empty()) part.push_back(rest);
        return central_partition_identity(*r, part);
    }
    if (f == "probability") {
        if (a.u.empty()) throw UsageError("family 'probability' needs --u");
        return probability_identity(parse_expr(a.u), need(a.t, "--t", f), need(a.m, "--m", f));
    }
    if (f == "central-laurent") return central_laurent(need(a.m, "--m", f));
    if (f == "gamma-sep") {
        if (a.group.empty()) throw UsageError("family 'gamma-sep' needs --group gamma:m,n,r");
        std::string g = a.group.rfind("catalog:", 0) == 0 ? a.group.substr(8) : a.group;
        if (g.rfind("gamma:", 0) != 0) throw UsageError("--group must be gamma:m,n,r");
        int m = 0, n = 0, r = 0;
        if (std::sscanf(g.c_str() + 6, "%d,%d,%d", &m, &n, &r) != 3) throw UsageError("--group must be gamma:m,n,r");
        return gamma_d_separating_identity(gamma_d(m, n, r), a.l, a.printed_range);
    }
    if (f == "disjunctive") {
        if (a.words.empty()) throw UsageError("family 'disjunctive' needs --word");
        std::vector<Expr> w;
        for (auto& s : a.words) w.push_back(parse_expr(s));
        return disjunctive_identity(w);
    }
    if (f == "standard") return standard_identity(need(a.k, "--k", f));
    if (f == "s2") return s2_identity();
    if (f == "sl2-trace") return sl2_trace_identity();
    throw UsageError("unknown family '" + f + "'");
}

const std::vector<std::string> kFamilies = {
    "guard", "psi", "theta", "character", "dimension", "dimension-alt", "range", "level-set", "class",
    "s4-separating", "fixed-point", "cayley-hamilton", "sigma", "special-unitary", "spectrum",
    "spectrum-level", "gassmann", "central-series", "minimal-poly", "central-partition", "probability",
    "central-laurent", "gamma-sep", "disjunctive", "standard", "s2", "sl2-trace"};

json catalog_listing() {
    json out = json::array();
    for (auto& name : catalog_names()) {
        auto cg = catalog_group(name);
        out.push_back(json{{"name", name}, {"order", cg.group->order()}, {"reps", cg.rep_order}});
    }
    return out;
}

json catalog_show(const std::string& name, const std::string& rep, bool table) {
    auto cg = resolve_group(name);
    if (!rep.empty()) return rep_to_json(*cg.rep(rep));
    const auto& G = *cg.group;
    json j{{"name", cg.name}, {"order", G.order()}, {"exponent", G.exponent()}};
    json gens = json::array();
    for (int g : cg.gens) gens.push_back(G.label(g));
    j["generators"] = gens;
    json classes = json::array();
    for (auto& c : G.classes().classes) {
        json members = json::array();
        for (int g : c) members.push_back(G.label(g));
        classes.push_back(json{{"size", c.size()}, {"order", G.element_order(c[0])}, {"elements", members}});
    }
    j["classes"] = classes;
    json reps = json::array();
    for (auto& rn : cg.rep_order) {
        auto r = cg.reps.at(rn);
        reps.push_back(json{{"name", rn}, {"dim", r->dim()}, {"irreducible", is_irreducible(*r)},
                            {"unitary", is_unitary(*r)}, {"faithful", is_faithful(*r)}});
    }
    j["reps"] = reps;
    if (table) j["group"] = group_to_json(G);
    return j;
}

bool all_true(const json& j) {
    for (auto& [k, v] : j.items()) {
        if (v.is_boolean() && !v.get<bool>()) return false;
        if (v.is_null()) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pirep: representation identities of finite groups"};
    app.require_subcommand(1);

    BuildArgs b;
    auto* build = app.add_subcommand("build", "build an identity document");
    build->add_option("family", b.family, "identity family")->required();
    build->add_option("--rep", b.rep, "rep reference");
    build->add_option("--group", b.group, "group reference (gamma:m,n,r)");
    build->add_option("--m", b.m);
    build->add_option("--n", b.n);
    build->add_option("--i", b.i);
    build->add_option("--t", b.t);
    build->add_option("--l", b.l);
    build->add_option("--k", b.k);
    build->add_option("--sign", b.sign);
    build->add_option("--xi", b.xi, "character value, e.g. -1, 1/2, 1+E(5)^2");
    build->add_option("--u", b.u, "word, e.g. [x,y]");
    build->add_option("--word", b.words, "disjunct word (repeatable)");
    build->add_option("--block", b.blocks, "comma separated element labels (repeatable)");
    build->add_flag("--printed-range", b.printed_range);
    build->add_flag("--maximal", b.maximal);
    build->add_flag("--adams", b.adams);
    build->add_option("--emit", b.emit)->check(CLI::IsMember({"expanded", "streamed"}));
    build->add_option("-o,--output", b.out);
    build->add_flag_callback("--list-families", [] {
        for (auto& f : kFamilies) std::cout << f << "\n";
        std::exit(0);
    });

    std::string id_file, rep_ref, mode = "auto";
    VerifyOptions vo;
    bool seed_given = false, strict = false, sl2 = false;
    int trials = 1000;
    auto* check = app.add_subcommand("check", "verify an identity document on a rep");
    check->add_option("identity", id_file, "identity document")->required();
    check->add_option("--rep", rep_ref);
    check->add_option("--mode", mode)->check(CLI::IsMember({"auto", "exhaustive", "guarded", "structured", "sampled"}));
    check->add_option_function<uint64_t>("--seed", [&](uint64_t s) {
        vo.seed = s;
        seed_given = true;
    });
    check->add_option("--budget", vo.budget);
    check->add_option("--samples", vo.samples);
    check->add_option("--orderings", vo.orderings);
    check->add_option("--jobs", vo.jobs);
    check->add_flag("--strict", strict);
    check->add_flag("--sl2", sl2, "sample 2x2 determinant one rational matrices");
    check->add_option("--trials", trials);

    std::string ref_a, ref_b;
    int jobs = 1;
    auto* compare = app.add_subcommand("compare", "equivalence predicates for two reps");
    compare->add_option("a", ref_a)->required();
    compare->add_option("b", ref_b)->required();
    compare->add_option("--jobs", jobs);

    std::string exp_name;
    auto* experiment = app.add_subcommand("experiment", "run a sweep over catalog reps");
    experiment->add_option("name", exp_name)->required()->check(CLI::IsMember(experiment_names()));

    std::string cat_name, cat_rep;
    bool cat_table = false;
    auto* catalog = app.add_subcommand("catalog", "list or show catalog groups");
    catalog->require_subcommand(1);
    catalog->add_subcommand("list", "list catalog groups");
    auto* show = catalog->add_subcommand("show", "show a catalog group or rep");
    show->add_option("name", cat_name)->required();
    show->add_option("--rep", cat_rep);
    show->add_flag("--table", cat_table, "include the Cayley table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::string echo = command_echo(argc, argv);
    try {
        if (*build) {
            IdentityDoc d = build_doc(b);
            if (b.emit == "expanded") d = expand_subsets(d);
            emit(doc_to_json(d), b.out);
            return 0;
        }
        if (*check) {
            if (strict && (!seed_given || vo.seed == kDefaultSeed))
                throw UsageError("--strict requires an explicit non-default --seed");
            std::ifstream in(id_file);
            if (!in) throw UsageError("cannot open " + id_file);
            std::stringstream ss;
            ss << in.rdbuf();
            std::string text = ss.str();
            IdentityDoc d = doc_from_json(json::parse(text));
            json report{{"command", echo}, {"artifacts", {{"identity", content_hash(text)}}}};
            bool holds = false;
            if (sl2) {
                auto v = sl2_sample_check(d.expr, trials, vo.seed);
                holds = v.holds;
                report["status"] = v.holds ? "holds" : "fails";
                report["evidence"] = "sampled(" + std::to_string(v.trials) + ", " + std::to_string(v.seed) + ")";
                report["seed"] = v.seed;
                report["timing_ms"] = v.timing_ms;
                if (v.counterexample) {
                    json w;
                    for (auto& [name, M] : *v.counterexample) w[name] = mat_to_json(M);
                    report["witness"] = w;
                }
            } else {
                if (rep_ref.empty()) throw UsageError("check needs --rep or --sl2");
                auto rep = resolve_rep(rep_ref);
                report["artifacts"]["rep"] = content_hash(rep_to_json(*rep).dump());
                auto v = pirep::check(d, rep, mode, vo);
                holds = v.holds;
                report.update(verdict_to_json(v, rep->group()));
            }
            std::cout << report.dump(2) << "\n";
            return holds ? 0 : 1;
        }
        if (*compare) {
            auto a = resolve_rep(ref_a), c = resolve_rep(ref_b);
            auto t0 = std::chrono::steady_clock::now();
            json preds = compare_reps(*a, *c, jobs);
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            json report{{"command", echo}, {"predicates", preds}, {"timing_ms", ms}};
            std::cout << report.dump(2) << "\n";
            return all_true(preds) ? 0 : 1;
        }
        if (*experiment) {
            auto t0 = std::chrono::steady_clock::now();
            json r = run_experiment(exp_name);
            r["command"] = echo;
            r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            std::cout << r.dump(2) << "\n";
            return r["result"]["counterexamples"].empty() ? 0 : 1;
        }
        if (*catalog) {
            if (*show) std::cout << catalog_show(cat_name, cat_rep, cat_table).dump(2) << "\n";
            else std::cout << catalog_listing().dump(2) << "\n";
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
