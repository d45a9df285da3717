#include "pirep/equivalence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "pirep/catalog.hpp"

namespace pirep {

namespace {

int common_level(const Character& a, const Character& b) {
    return int(lcm64(lcm64(a.group->exponent(), b.group->exponent()), lcm64(a.conductor(), b.conductor())));
}

RangeSignature signature_at(const Character& chi, int L) {
    RangeSignature out;
    std::vector<Cyc> vals = chi.values;
    std::sort(vals.begin(), vals.end(), [&](const Cyc& x, const Cyc& y) { return cyc_compare(x, y, L) < 0; });
    for (auto& v : vals) {
        if (!out.empty() && out.back().first == v) ++out.back().second;
        else out.push_back({v, 1});
    }
    return out;
}

bool same_table(const FiniteGroup& a, const FiniteGroup& b) {
    return &a == &b || (a.order() == b.order() && a.table() == b.table());
}

void require_same_group(const Rep& a, const Rep& b) {
    if (!same_table(*a.group(), *b.group())) throw std::invalid_argument("representations live on different groups");
}

template <class T>
bool multiset_equal(std::vector<T> a, std::vector<T> b, const std::function<bool(const T&, const T&)>& less) {
    if (a.size() != b.size()) return false;
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    for (size_t i = 0; i < a.size(); ++i)
        if (less(a[i], b[i]) || less(b[i], a[i])) return false;
    return true;
}

using ClassSpectrum = std::pair<int, Spectrum>;

std::vector<ClassSpectrum> class_spectra(const Rep& r) {
    const auto& cl = r.group()->classes();
    std::vector<ClassSpectrum> out;
    for (size_t i = 0; i < cl.reps.size(); ++i) out.push_back({cl.sizes[i], spectrum(r, cl.reps[i])});
    return out;
}

}  // namespace

RangeSignature range_signature(const Character& chi) {
    return signature_at(chi, int(lcm64(chi.group->exponent(), chi.conductor())));
}

SpectralSignature spectral_signature(const Rep& rep) {
    std::map<Spectrum, int> count;
    for (int g = 0; g < rep.group()->order(); ++g) ++count[spectrum(rep, g)];
    SpectralSignature out;
    for (auto& [s, c] : count) out.push_back({c, s});
    std::stable_sort(out.begin(), out.end(), [](const SpectralBlock& a, const SpectralBlock& b) {
        return a.size > b.size;
    });
    return out;
}

bool range_equal(const Character& a, const Character& b) {
    int L = common_level(a, b);
    auto x = signature_at(a, L), y = signature_at(b, L);
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
        if (!(x[i].first == y[i].first)) return false;
    return true;
}

bool range_signature_equal(const Character& a, const Character& b) {
    int L = common_level(a, b);
    return signature_at(a, L) == signature_at(b, L);
}

bool gassmann_equivalent(const Rep& a, const Rep& b) {
    return a.dim() == b.dim() && a.group()->order() == b.group()->order() &&
           spectral_signature(a) == spectral_signature(b);
}

bool strong_gassmann(const Rep& a, const Rep& b) {
    if (a.dim() != b.dim() || a.group()->order() != b.group()->order()) return false;
    return multiset_equal<ClassSpectrum>(class_spectra(a), class_spectra(b),
                                         [](const ClassSpectrum& x, const ClassSpectrum& y) { return x < y; });
}

bool table_equivalent(const Character& a, const Character& b) {
    if (!same_table(*a.group, *b.group)) throw std::invalid_argument("characters live on different groups");
    int L = common_level(a, b);
    const auto& cl = a.group->classes();
    std::vector<Cyc> x, y;
    for (int r : cl.reps) {
        x.push_back(a(r));
        y.push_back(b(r));
    }
    return multiset_equal<Cyc>(x, y, [&](const Cyc& p, const Cyc& q) { return cyc_compare(p, q, L) < 0; });
}

bool strongly_table_equivalent(const Character& a, const Character& b) {
    if (!same_table(*a.group, *b.group)) throw std::invalid_argument("characters live on different groups");
    int L = common_level(a, b);
    const auto& cl = a.group->classes();
    using P = std::pair<int, Cyc>;
    std::vector<P> x, y;
    for (size_t i = 0; i < cl.reps.size(); ++i) {
        x.push_back({cl.sizes[i], a(cl.reps[i])});
        y.push_back({cl.sizes[i], b(cl.reps[i])});
    }
    return multiset_equal<P>(x, y, [&](const P& p, const P& q) {
        if (p.first != q.first) return p.first < q.first;
        return cyc_compare(p.second, q.second, L) < 0;
    });
}

std::optional<int64_t> galois_conjugate_reps(const Rep& a, const Rep& b) {
    require_same_group(a, b);
    if (a.dim() != b.dim()) return std::nullopt;
    const auto& G = *a.group();
    int e = G.exponent();
    for (int64_t t = 1; t <= std::max(1, e - 1); ++t) {
        if (gcd64(t, e) != 1) continue;
        auto pm = G.power_map(t);
        if (!pm) continue;
        bool ok = true;
        for (int x = 0; x < G.order() && ok; ++x) ok = b.character()(x) == a.character()((*pm)[x]);
        if (ok) return t;
    }
    return std::nullopt;
}

std::optional<std::vector<int>> similar_reps(const Rep& a, const Rep& b, std::vector<int> gens) {
    require_same_group(a, b);
    if (a.dim() != b.dim()) return std::nullopt;
    const auto& G = *a.group();
    if (gens.empty()) gens = G.generators();
    const auto& ca = a.character();
    const auto& cb = b.character();
    int m = G.order(), k = int(gens.size());
    std::vector<std::vector<int>> cands(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int h = 0; h < m; ++h)
            if (G.element_order(h) == G.element_order(gens[i]) && cb(h) == ca(gens[i])) cands[i].push_back(h);
    std::vector<int> img(static_cast<size_t>(k));
    std::optional<std::vector<int>> found;
    std::function<void(int)> rec = [&](int i) {
        if (found) return;
        if (i == k) {
            auto alpha = G.extend_hom(gens, img, G);
            if (!alpha) return;
            std::vector<char> hit(size_t(m), 0);
            for (int x = 0; x < m; ++x) {
                if (hit[(*alpha)[x]]) return;
                hit[(*alpha)[x]] = 1;
            }
            for (int x = 0; x < m; ++x)
                if (!(cb((*alpha)[x]) == ca(x))) return;
            found = alpha;
            return;
        }
        for (int h : cands[i]) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) {
                int gp = G.mul(gens[j], gens[i]), hp = G.mul(img[j], h);
                ok = G.element_order(gp) == G.element_order(hp) && cb(hp) == ca(gp) &&
                     (G.mul(gens[i], gens[j]) == gp) == (G.mul(h, img[j]) == hp);
            }
            if (!ok) continue;
            img[i] = h;
            rec(i + 1);
        }
    };
    rec(0);
    return found;
}

UniformResult uniformly_gassmann(const Rep& a, const Rep& b, int jobs) {
    require_same_group(a, b);
    const auto& G = *a.group();
    auto subs = G.all_subgroups();
    std::vector<char> fail(subs.size(), 0);
    std::exception_ptr err;
    std::mutex mu;
    auto work = [&](size_t lo, size_t step) {
        try {
            for (size_t i = lo; i < subs.size(); i += step) {
                auto ra = restrict_rep(a, subs[i]);
                auto rb = restrict_rep(b, subs[i]);
                fail[i] = !gassmann_equivalent(*ra, *rb);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            if (!err) err = std::current_exception();
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1) work(0, 1);
    else {
        std::vector<std::thread> th;
        for (int j = 0; j < jobs; ++j) th.emplace_back(work, size_t(j), size_t(jobs));
        for (auto& t : th) t.join();
    }
    if (err) std::rethrow_exception(err);
    UniformResult r;
    for (size_t i = 0; i < subs.size(); ++i)
        if (fail[i]) r.failing.push_back(subs[i]);
    std::stable_sort(r.failing.begin(), r.failing.end(), [](const Subgroup& x, const Subgroup& y) {
        if (x.order() != y.order()) return x.order() > y.order();
        return x.elements < y.elements;
    });
    r.equivalent = r.failing.empty();
    return r;
}

json range_signature_json(const RangeSignature& s) {
    json a = json::array();
    for (auto& [v, c] : s) a.push_back(json{{"value", cyc_to_json(v)}, {"count", c}});
    return a;
}

json spectral_signature_json(const SpectralSignature& s) {
    json a = json::array();
    for (auto& b : s) {
        json sp = json::array();
        for (auto& [angle, mult] : b.spectrum) sp.push_back(json{{"angle", angle.str()}, {"multiplicity", mult}});
        a.push_back(json{{"size", b.size}, {"spectrum", sp}});
    }
    return a;
}

json compare_reps(const Rep& a, const Rep& b, int jobs) {
    json j;
    const auto& ca = a.character();
    const auto& cb = b.character();
    bool same = same_table(*a.group(), *b.group());
    j["range_equal"] = range_equal(ca, cb);
    j["range_signature_equal"] = range_signature_equal(ca, cb);
    j["table_equiv"] = same ? json(table_equivalent(ca, cb)) : json(nullptr);
    j["strong_table_equiv"] = same ? json(strongly_table_equivalent(ca, cb)) : json(nullptr);
    j["spectral_signature_equal"] = spectral_signature(a) == spectral_signature(b);
    j["gassmann"] = gassmann_equivalent(a, b);
    j["strong_gassmann"] = strong_gassmann(a, b);
    if (same) {
        auto u = uniformly_gassmann(a, b, jobs);
        j["uniform_gassmann"] = u.equivalent;
        if (!u.equivalent) j["uniform_failing_subgroup"] = u.failing.front().elements;
        auto t = galois_conjugate_reps(a, b);
        j["galois_t"] = t ? json(*t) : json(nullptr);
        auto gens = a.group()->generators();
        auto alpha = similar_reps(a, b, gens);
        if (alpha) {
            json im = json::object();
            for (int g : gens) im[a.group()->label(g)] = a.group()->label((*alpha)[g]);
            j["similar_alpha"] = im;
        } else {
            j["similar_alpha"] = nullptr;
        }
    } else {
        j["uniform_gassmann"] = nullptr;
        j["galois_t"] = nullptr;
        j["similar_alpha"] = nullptr;
    }
    return j;
}

// ---------------------------------------------------------------- experiments

namespace {

struct NamedRep {
    std::string group, name;
    RepPtr rep;
};

std::vector<NamedRep> catalog_irreps(const std::vector<std::string>& groups) {
    std::vector<NamedRep> out;
    for (auto& gname : groups) {
        auto c = catalog_group(gname);
        for (auto& r : c.rep_order) {
            auto rp = c.rep(r);
            if (is_irreducible(*rp)) out.push_back({gname, r, rp});
        }
    }
    return out;
}

template <class F>
json pair_sweep(const std::vector<std::string>& groups, F&& f) {
    auto reps = catalog_irreps(groups);
    json cex = json::array();
    int pairs = 0;
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j) {
            if (reps[i].group != reps[j].group || reps[i].rep->dim() != reps[j].rep->dim()) continue;
            ++pairs;
            if (auto note = f(*reps[i].rep, *reps[j].rep))
                cex.push_back(json{{"group", reps[i].group}, {"a", reps[i].name}, {"b", reps[j].name}, {"note", *note}});
        }
    return json{{"pairs", pairs}, {"counterexamples", cex}};
}

std::vector<std::string> sweep_groups() {
    return {"Z2", "Z3", "Z4", "Z6", "S3", "S4", "S5", "A4", "A5", "Q8", "2T", "H3", "gamma:7,9,2", "wreath:3"};
}

}  // namespace

std::vector<std::string> experiment_names() {
    return {"range-signature", "table-strong", "gassmann-strong", "range-scaling", "pgroup-gassmann"};
}

json run_experiment(const std::string& name) {
    json r{{"experiment", name}};
    if (name == "range-signature") {
        r["statement"] = "same-dimension irreps of a symmetric group: equal range signatures iff equal ranges";
        r["result"] = pair_sweep({"S3", "S4", "S5"}, [](const Rep& a, const Rep& b) -> std::optional<std::string> {
            bool x = range_signature_equal(a.character(), b.character()), y = range_equal(a.character(), b.character());
            if (x != y) return std::string(x ? "signatures equal, ranges differ" : "ranges equal, signatures differ");
            return std::nullopt;
        });
    } else if (name == "table-strong") {
        r["statement"] = "table equivalent irreps are strongly table equivalent";
        r["result"] = pair_sweep(sweep_groups(), [](const Rep& a, const Rep& b) -> std::optional<std::string> {
            if (table_equivalent(a.character(), b.character()) && !strongly_table_equivalent(a.character(), b.character()))
                return std::string("table equivalent but not strongly");
            return std::nullopt;
        });
    } else if (name == "gassmann-strong") {
        r["statement"] = "Gassmann equivalent irreps of one group are strongly Gassmann equivalent";
        r["result"] = pair_sweep(sweep_groups(), [](const Rep& a, const Rep& b) -> std::optional<std::string> {
            if (gassmann_equivalent(a, b) && !strong_gassmann(a, b)) return std::string("Gassmann but not strongly");
            return std::nullopt;
        });
    } else if (name == "range-scaling") {
        r["statement"] = "range(chi1) = q range(chi2) implies q = 1";
        auto reps = catalog_irreps(sweep_groups());
        json cex = json::array();
        int pairs = 0;
        for (auto& a : reps)
            for (auto& b : reps) {
                if (a.group != b.group || &a == &b) continue;
                ++pairs;
                Rational q(a.rep->dim(), b.rep->dim());
                if (q == Rational(1)) continue;
                Character scaled = b.rep->character();
                for (auto& v : scaled.values) v *= Cyc(q);
                if (range_equal(a.rep->character(), scaled))
                    cex.push_back(json{{"group", a.group}, {"a", a.name}, {"b", b.name}, {"q", q.str()}});
            }
        r["result"] = json{{"pairs", pairs}, {"counterexamples", cex}};
    } else if (name == "pgroup-gassmann") {
        r["statement"] = "faithful Gassmann equivalent irreps of a p-group with cyclic center are similar up to Galois";
        r["result"] = pair_sweep({"Q8", "H3", "wreath:3"}, [](const Rep& a, const Rep& b) -> std::optional<std::string> {
            if (!is_faithful(a) || !is_faithful(b) || !gassmann_equivalent(a, b)) return std::nullopt;
            const auto& G = *a.group();
            int e = G.exponent();
            for (int64_t t = 1; t < std::max(2, e); ++t) {
                if (gcd64(t, e) != 1) continue;
                if (similar_reps(*a.galois(t), b)) return std::nullopt;
            }
            return std::string("no Galois twist and automorphism match");
        });
    } else {
        throw std::invalid_argument("unknown experiment " + name);
    }
    return r;
}

}  // namespace pirep
