#include "pirep/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace pirep {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool gram_node(const Node* e) {
    return e->kind == Kind::Prod && e->kids.size() == 2 && e->kids[1]->kind == Kind::Star &&
           e->kids[1]->kids[0] == e->kids[0];
}

// columns form a basis of the column space
Mat colspace(const Mat& A) { return A.transpose().rref().transpose(); }

int ncols(const Mat& A) { return A.rows() == 0 ? 0 : A.cols(); }

Mat hcat(const Mat& a, const Mat& b) {
    int n = a.rows() ? a.rows() : b.rows();
    int ca = ncols(a), cb = ncols(b);
    Mat r(n, ca + cb);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < ca; ++j) r(i, j) = a(i, j);
        for (int j = 0; j < cb; ++j) r(i, ca + j) = b(i, j);
    }
    return r;
}

// smallest subspace containing E stable under the generator images
Mat module_closure(const Mat& E, const Rep& rep, const std::vector<int>& gens) {
    int n = rep.dim();
    Mat B = E;
    while (true) {
        int r = ncols(B);
        if (r == 0 || r == n) return B;
        Mat C = B;
        for (int g : gens) C = hcat(C, rep.image(g) * B);
        Mat nb = colspace(C);
        if (ncols(nb) == r) return B;
        B = nb;
    }
}

int64_t power_capped(int64_t base, size_t k, int64_t cap) {
    int64_t r = 1;
    for (size_t i = 0; i < k; ++i) {
        if (base != 0 && r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

std::string element_label(const GroupPtr& G, int g) { return G ? G->label(g) : std::to_string(g); }

}  // namespace

std::string Evidence::str() const {
    switch (kind) {
        case Exhaustive: return "exhaustive";
        case Guarded: return "guarded";
        case Structured: return "structured";
        case Sampled: return "sampled(" + std::to_string(samples) + ", " + std::to_string(seed) + ")";
    }
    return "";
}

// ---------------------------------------------------------------- decider

Decider::Decider(const IdentityDoc& doc, RepPtr rep, EvalOptions opt)
    : rep_(std::move(rep)), ev_(doc.expr, rep_, opt), opt_(opt) {
    irreducible_ = is_irreducible(*rep_);
    unitary_ = is_unitary(*rep_);
    const Node* root = doc.expr.get();
    std::map<std::string, int> edges;
    for (const Node* n : ev_.nodes())
        for (auto& k : n->kids)
            if (k->kind == Kind::Var) ++edges[k->name];
    std::set<std::string> top;
    if (root->kind == Kind::Prod)
        for (auto& k : root->kids)
            if (k->kind == Kind::Var) {
                auto r = doc.roles.find(k->name);
                if (r != doc.roles.end() && r->second.role == "separator" && edges[k->name] == 1) top.insert(k->name);
            }
    for (auto& v : ev_.vars()) {
        if (top.count(v)) seps_.push_back(v);
        else {
            inputs_.push_back(v);
            input_idx_.push_back(ev_.var_index(v));
        }
    }
    std::vector<Expr> kids = root->kind == Kind::Prod ? root->kids : std::vector<Expr>{doc.expr};
    Segment cur;
    for (auto& k : kids) {
        if (k->kind == Kind::Var && top.count(k->name)) {
            segs_.push_back(std::move(cur));
            seg_sep_.push_back(k->name);
            cur = {};
        } else if (k->kind == Kind::SubsetProd && !k->sep.empty()) {
            if (!cur.parts.empty()) throw std::invalid_argument("separated subset product must follow a separator");
            segs_.push_back(Segment{{Part{k.get(), true}}, 0});
            seg_sep_.push_back("");
        } else {
            cur.parts.push_back(Part{k.get(), false});
        }
    }
    segs_.push_back(std::move(cur));
    seg_sep_.push_back("");
    for (auto& s : segs_)
        for (auto& p : s.parts) s.cost += int64_t(dag_size(Expr(Expr{}, p.node)));
    check_order_.resize(segs_.size());
    std::iota(check_order_.begin(), check_order_.end(), 0);
    std::stable_sort(check_order_.begin(), check_order_.end(),
                     [&](int a, int b) { return segs_[a].cost < segs_[b].cost; });
}

bool Decider::certified(const Node* item) {
    auto gram_ok = [&](const Node* g) {
        if (!gram_node(g)) return false;
        if (unitary_) return true;
        const Value& a = ev_.value(g->kids[0].get());
        const Value& b = ev_.value(g->kids[1].get());
        if (a.is_zero() || b.is_zero()) return true;
        return a.tag == Value::Scalar && b.tag == Value::Scalar && b.s == a.s.conj();
    };
    if (gram_node(item)) return gram_ok(item);
    if (item->kind == Kind::Sum) {
        for (auto& k : item->kids)
            if (!gram_ok(k.get())) return false;
        return true;
    }
    return false;
}

std::optional<Mat> Decider::common_kernel_rep(const Node* sp) {
    std::optional<Mat> first;
    Mat K0;
    for (auto& it : sp->kids) {
        const Value& v = ev_.value(it.get());
        if (v.is_zero()) continue;
        if (!certified(it.get())) return std::nullopt;
        Mat M = ev_.matrix(v);
        Mat K = M.kernel();
        Mat Kc = ncols(K) ? K.transpose().rref() : Mat();
        if (!first) {
            first = M;
            K0 = Kc;
        } else if (!(Kc == K0)) {
            return std::nullopt;
        }
    }
    return first;
}

// decides whether some subset sum of a separated subset product is zero
bool Decider::subset_vanishes(const Node* sp, bool* decided) {
    int N = int(sp->kids.size()), t = sp->t;
    *decided = true;
    if (t > N) return false;
    int zeros = 0;
    bool cert = true;
    for (auto& it : sp->kids) {
        if (ev_.value(it.get()).is_zero()) ++zeros;
        else if (cert && !certified(it.get())) cert = false;
    }
    if (zeros >= t) return true;
    if (cert) return false;
    if (binomial(N, t) > Rational(opt_.subset_limit)) {
        *decided = false;
        return false;
    }
    std::vector<int> S(static_cast<size_t>(t));
    std::iota(S.begin(), S.end(), 0);
    while (true) {
        Mat acc(rep_->dim(), rep_->dim());
        for (int i : S) acc += ev_.matrix(ev_.value(sp->kids[i].get()));
        if (acc.is_zero()) return true;
        int i = t - 1;
        while (i >= 0 && S[i] == N - t + i) --i;
        if (i < 0) break;
        ++S[i];
        for (int j = i + 1; j < t; ++j) S[j] = S[j - 1] + 1;
    }
    return false;
}

bool Decider::segment_zero(const Segment& s) {
    if (s.parts.empty()) return false;
    if (s.parts.size() == 1) {
        const Node* n = s.parts[0].node;
        if (s.parts[0].subset) {
            bool decided;
            bool z = subset_vanishes(n, &decided);
            if (!decided) throw std::length_error("separated subset product too large to decide");
            return z;
        }
        if (n->kind == Kind::SubsetProd) {
            int zeros = 0;
            for (auto& it : n->kids) zeros += ev_.value(it.get()).is_zero();
            if (zeros >= n->t) return true;
            if (n->t > int(n->kids.size())) return false;
            if (common_kernel_rep(n)) return false;
        }
        return ev_.value(n).is_zero();
    }
    for (auto& p : s.parts)
        if (ev_.value(p.node).is_zero()) return true;
    return segment_matrix(s).is_zero();
}

Mat Decider::segment_matrix(const Segment& s) {
    int n = rep_->dim();
    Mat M = Mat::identity(n);
    bool first = true;
    for (auto& p : s.parts) {
        Mat P = ev_.matrix(ev_.value(p.node));
        M = first ? P : M * P;
        first = false;
    }
    return M;
}

std::vector<Decider::Piece> Decider::pieces(std::vector<std::string>* sep_names) {
    std::vector<Piece> out;
    sep_names->clear();
    int n = rep_->dim();
    for (size_t si = 0; si < segs_.size(); ++si) {
        const Segment& s = segs_[si];
        if (s.parts.size() == 1 && s.parts[0].subset) {
            const Node* sp = s.parts[0].node;
            int N = int(sp->kids.size()), t = sp->t;
            if (t <= N) {
                if (binomial(N, t) > Rational(opt_.subset_limit))
                    throw std::length_error("separated subset product too large for witness construction");
                std::vector<int> S(static_cast<size_t>(t));
                std::iota(S.begin(), S.end(), 0);
                while (true) {
                    Mat acc(n, n);
                    for (int i : S) acc += ev_.matrix(ev_.value(sp->kids[i].get()));
                    out.push_back(Piece{acc, true});
                    sep_names->push_back(subset_name(sp->sep, S));
                    int i = t - 1;
                    while (i >= 0 && S[i] == N - t + i) --i;
                    if (i < 0) break;
                    ++S[i];
                    for (int j = i + 1; j < t; ++j) S[j] = S[j - 1] + 1;
                }
            } else {
                out.push_back(Piece{Mat::identity(n), true});
                sep_names->push_back("");
            }
            if (!seg_sep_[si].empty()) {
                out.push_back(Piece{Mat::identity(n), true});
                sep_names->push_back(seg_sep_[si]);
            }
            continue;
        }
        Piece p;
        if (s.parts.size() == 1 && s.parts[0].node->kind == Kind::SubsetProd) {
            const Node* sp = s.parts[0].node;
            int zeros = 0;
            for (auto& it : sp->kids) zeros += ev_.value(it.get()).is_zero();
            if (zeros < sp->t && sp->t <= int(sp->kids.size())) {
                if (auto R = common_kernel_rep(sp)) {
                    p.M = *R;
                    p.exact = false;
                }
            }
        }
        if (p.exact) p.M = segment_matrix(s);
        out.push_back(p);
        sep_names->push_back(seg_sep_[si]);
    }
    // merge pieces not separated from their successor
    std::vector<Piece> merged;
    std::vector<std::string> names;
    for (size_t i = 0; i < out.size(); ++i) {
        if (!merged.empty() && names.back().empty()) {
            merged.back().M = merged.back().M * out[i].M;
            merged.back().exact = merged.back().exact && out[i].exact;
            names.back() = (*sep_names)[i];
        } else {
            merged.push_back(out[i]);
            names.push_back((*sep_names)[i]);
        }
    }
    for (size_t i = 1; i + 1 < merged.size(); ++i)
        if (!merged[i].exact) throw std::length_error("subset product between separators cannot be represented");
    *sep_names = names;
    return merged;
}

bool Decider::vanishes(const std::vector<int>& values) {
    for (size_t i = 0; i < input_idx_.size(); ++i) ev_.set(input_idx_[i], values[i]);
    for (int i : check_order_)
        if (segment_zero(segs_[i])) return true;
    if (irreducible_) return false;
    std::vector<std::string> names;
    auto P = pieces(&names);
    auto gens = rep_->group()->generators();
    Mat E = colspace(P.back().M);
    for (int j = int(P.size()) - 2; j >= 0 && ncols(E); --j) {
        Mat D = module_closure(E, *rep_, gens);
        E = colspace(P[j].M * D);
    }
    return ncols(E) == 0;
}

Assignment Decider::witness() {
    Assignment a;
    for (size_t i = 0; i < inputs_.size(); ++i) a[inputs_[i]] = ev_.get(input_idx_[i]);
    std::vector<std::string> names;
    auto P = pieces(&names);
    int k = int(P.size());
    auto gens = rep_->group()->generators();
    std::vector<Mat> E(static_cast<size_t>(k));
    E[k - 1] = colspace(P[k - 1].M);
    for (int j = k - 2; j >= 0; --j) E[j] = colspace(P[j].M * module_closure(E[j + 1], *rep_, gens));
    Mat M = P[0].M;
    int m = rep_->group()->order();
    for (int j = 1; j < k; ++j) {
        int pick = -1;
        for (int g = 0; g < m && pick < 0; ++g)
            if (ncols(E[j]) && !(M * rep_->image(g) * E[j]).is_zero()) pick = g;
        if (pick < 0) throw std::logic_error("no separator value keeps the product nonzero");
        M = M * rep_->image(pick) * P[j].M;
        if (!names[j - 1].empty()) a[names[j - 1]] = pick;
    }
    if (!names[k - 1].empty()) a[names[k - 1]] = 0;
    for (auto& s : seps_) a.emplace(s, 0);
    return a;
}

// ---------------------------------------------------------------- drivers

namespace {

struct Found {
    int64_t index = -1;
    Assignment witness;
};

// Runs decide over indices [0, count) split into contiguous ranges; the lowest
// failing index wins.
Found run_parallel(const IdentityDoc& doc, const RepPtr& rep, const VerifyOptions& opt, int64_t count,
                   const std::function<void(int64_t, std::vector<int>&)>& gen, int64_t* decided) {
    int jobs = std::max(1, std::min<int>(opt.jobs, int(std::max<int64_t>(1, count))));
    std::atomic<int64_t> best{count};
    std::atomic<int64_t> total{0};
    std::mutex mu;
    Found found;
    std::exception_ptr err;
    auto work = [&](int64_t lo, int64_t hi) {
        try {
            Decider d(doc, rep, opt.eval);
            std::vector<int> vals(d.inputs().size());
            int64_t done = 0;
            for (int64_t i = lo; i < hi && i < best.load(); ++i) {
                gen(i, vals);
                ++done;
                if (!d.vanishes(vals)) {
                    auto w = d.witness();
                    std::lock_guard<std::mutex> lk(mu);
                    if (i < best.load()) {
                        best = i;
                        found = Found{i, std::move(w)};
                    }
                    break;
                }
            }
            total += done;
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            if (!err) err = std::current_exception();
            best = -1;
        }
    };
    if (jobs == 1) {
        work(0, count);
    } else {
        std::vector<std::thread> th;
        int64_t chunk = (count + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            int64_t lo = j * chunk, hi = std::min(count, lo + chunk);
            if (lo < hi) th.emplace_back(work, lo, hi);
        }
        for (auto& t : th) t.join();
    }
    if (err) std::rethrow_exception(err);
    *decided = total.load();
    return found;
}

Verdict finish(Verdict v, const Found& f, int64_t decided, Clock::time_point t0) {
    v.assignments = decided;
    if (f.index >= 0) {
        v.holds = false;
        v.counterexample = f.witness;
    }
    v.timing_ms = ms_since(t0);
    return v;
}

std::vector<std::string> input_names(const IdentityDoc& doc, const RepPtr& rep, const VerifyOptions& opt) {
    Decider d(doc, rep, opt.eval);
    return d.inputs();
}

}  // namespace

Verdict holds_exhaustive(const IdentityDoc& doc, const RepPtr& rep, const VerifyOptions& opt) {
    auto t0 = Clock::now();
    auto inputs = input_names(doc, rep, opt);
    int m = rep->group()->order();
    int64_t count = power_capped(m, inputs.size(), opt.budget);
    if (count > opt.budget)
        throw std::length_error("exhaustive enumeration needs " + std::to_string(m) + "^" +
                                std::to_string(inputs.size()) + " assignments, above the budget");
    size_t k = inputs.size();
    auto gen = [&](int64_t i, std::vector<int>& vals) {
        for (size_t j = k; j-- > 0;) {
            vals[j] = int(i % m);
            i /= m;
        }
    };
    Verdict v;
    v.evidence = Evidence{Evidence::Exhaustive, 0, opt.seed};
    v.seed = opt.seed;
    int64_t decided = 0;
    auto f = run_parallel(doc, rep, opt, count, gen, &decided);
    return finish(v, f, decided, t0);
}

Verdict holds_guarded(const IdentityDoc& doc, const RepPtr& rep, const VerifyOptions& opt) {
    auto t0 = Clock::now();
    auto fams = doc.guard_families();
    if (fams.empty()) throw std::invalid_argument("identity declares no guard roles");
    const auto& G = *rep->group();
    int m = G.order();
    Verdict v;
    v.evidence = Evidence{Evidence::Guarded, 0, opt.seed};
    v.seed = opt.seed;
    for (auto& [name, vars] : fams)
        if (int(vars.size()) > m) {
            v.notes.push_back("guard family " + name + " has " + std::to_string(vars.size()) +
                              " variables, more than |G|; every assignment repeats a value");
            v.timing_ms = ms_since(t0);
            return v;
        }
    auto inputs = input_names(doc, rep, opt);
    std::map<std::string, int> pos;
    for (size_t i = 0; i < inputs.size(); ++i) pos[inputs[i]] = int(i);
    std::vector<int> others;
    std::set<std::string> guarded;
    for (auto& [name, vars] : fams)
        for (auto& x : vars) guarded.insert(x);
    for (size_t i = 0; i < inputs.size(); ++i)
        if (!guarded.count(inputs[i])) others.push_back(int(i));
    int K = opt.orderings;
    std::mt19937_64 rng(opt.seed);
    // per trial: values for the guarded inputs
    std::vector<std::vector<int>> trial_vals(size_t(K) + 1, std::vector<int>(inputs.size(), 0));
    for (int t = 0; t <= K; ++t)
        for (auto& [name, vars] : fams) {
            std::vector<int> perm(static_cast<size_t>(m));
            std::iota(perm.begin(), perm.end(), 0);
            if (t > 0) std::shuffle(perm.begin(), perm.end(), rng);
            for (size_t j = 0; j < vars.size(); ++j) trial_vals[t][pos[vars[j]]] = perm[j];
        }
    int64_t per = power_capped(m, others.size(), opt.budget / (K + 1));
    bool enumerate = per <= opt.budget / (K + 1);
    std::vector<std::vector<int>> samples;
    if (!enumerate) {
        per = opt.samples;
        std::uniform_int_distribution<int> U(0, m - 1);
        samples.assign(size_t(K + 1) * per, std::vector<int>(others.size()));
        for (auto& s : samples)
            for (auto& x : s) x = U(rng);
        v.notes.push_back("non-guard variables sampled: " + std::to_string(per) + " per ordering");
    }
    auto gen = [&](int64_t i, std::vector<int>& vals) {
        int64_t t = i / per, j = i % per;
        vals = trial_vals[t];
        if (enumerate) {
            for (size_t q = others.size(); q-- > 0;) {
                vals[others[q]] = int(j % m);
                j /= m;
            }
        } else {
            const auto& s = samples[size_t(i)];
            for (size_t q = 0; q < others.size(); ++q) vals[others[q]] = s[q];
        }
    };
    int64_t decided = 0;
    auto f = run_parallel(doc, rep, opt, per * (K + 1), gen, &decided);
    return finish(v, f, decided, t0);
}

Verdict holds_sampled(const IdentityDoc& doc, const RepPtr& rep, const VerifyOptions& opt) {
    auto t0 = Clock::now();
    if (opt.samples < 1) throw std::invalid_argument("sample count must be positive");
    auto inputs = input_names(doc, rep, opt);
    int m = rep->group()->order();
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> U(0, m - 1);
    std::vector<std::vector<int>> samples(size_t(opt.samples), std::vector<int>(inputs.size()));
    for (auto& s : samples)
        for (auto& x : s) x = U(rng);
    Verdict v;
    v.evidence = Evidence{Evidence::Sampled, opt.samples, opt.seed};
    v.seed = opt.seed;
    int64_t decided = 0;
    auto f = run_parallel(doc, rep, opt, opt.samples, [&](int64_t i, std::vector<int>& vals) { vals = samples[i]; },
                          &decided);
    return finish(v, f, decided, t0);
}

Verdict holds_structured(const IdentityDoc& doc, const RepPtr& rep, const VerifyOptions& opt) {
    auto t0 = Clock::now();
    if (!doc.has_flag("structured")) throw std::invalid_argument("identity has no structured assignment family");
    const auto& G = *rep->group();
    const auto& cl = G.classes();
    int s = int(cl.classes.size()), m = G.order();
    if (doc.params.value("class_sizes", std::vector<int>{}) != cl.sizes)
        throw std::invalid_argument("class sizes of the representation do not match the identity");
    auto inputs = input_names(doc, rep, opt);
    std::map<std::string, int> pos;
    for (size_t i = 0; i < inputs.size(); ++i) pos[inputs[i]] = int(i);
    // blocks of equal-size classes
    std::vector<std::vector<int>> blocks;
    for (int r = 0; r < s; ++r) {
        if (blocks.empty() || cl.sizes[blocks.back()[0]] != cl.sizes[r]) blocks.push_back({});
        blocks.back().push_back(r);
    }
    int64_t total = 1;
    for (auto& b : blocks)
        for (int i = 2; i <= int(b.size()) && total <= opt.budget; ++i) total *= i;
    std::mt19937_64 rng(opt.seed);
    std::vector<std::vector<int>> perms;  // class of x_r
    Verdict v;
    v.evidence = Evidence{Evidence::Structured, 0, opt.seed};
    v.seed = opt.seed;
    const int64_t cap = 100000;
    if (total <= cap) {
        std::vector<std::vector<int>> cur(blocks);
        std::function<void(size_t, std::vector<int>&)> rec = [&](size_t b, std::vector<int>& p) {
            if (b == blocks.size()) {
                perms.push_back(p);
                return;
            }
            std::vector<int> q = blocks[b];
            do {
                for (size_t i = 0; i < q.size(); ++i) p[blocks[b][i]] = q[i];
                rec(b + 1, p);
            } while (std::next_permutation(q.begin(), q.end()));
        };
        std::vector<int> p(static_cast<size_t>(s));
        rec(0, p);
    } else {
        v.notes.push_back("class permutations sampled");
        for (int64_t i = 0; i < opt.samples; ++i) {
            std::vector<int> p(static_cast<size_t>(s));
            for (auto& b : blocks) {
                std::vector<int> q = b;
                std::shuffle(q.begin(), q.end(), rng);
                for (size_t k = 0; k < q.size(); ++k) p[b[k]] = q[k];
            }
            perms.push_back(p);
        }
    }
    // y with y^-1 x y = g, minimal or random
    auto conjugators = [&](int x, int g) {
        std::vector<int> ys;
        for (int y = 0; y < m; ++y)
            if (G.mul(G.mul(G.inv(y), x), y) == g) ys.push_back(y);
        return ys;
    };
    struct Trial {
        size_t perm;
        bool random;
    };
    std::vector<Trial> trials;
    for (size_t i = 0; i < perms.size(); ++i) trials.push_back({i, false});
    for (int k = 0; k < opt.orderings; ++k) trials.push_back({size_t(rng() % perms.size()), true});
    std::vector<std::vector<int>> vals(trials.size(), std::vector<int>(inputs.size(), 0));
    for (size_t t = 0; t < trials.size(); ++t) {
        const auto& p = perms[trials[t].perm];
        for (int r = 0; r < s; ++r) {
            const auto& C = cl.classes[p[r]];
            int x = trials[t].random ? C[rng() % C.size()] : cl.reps[p[r]];
            std::vector<int> targets = C;
            if (trials[t].random) std::shuffle(targets.begin(), targets.end(), rng);
            auto xn = "x" + std::to_string(r + 1);
            if (pos.count(xn)) vals[t][pos[xn]] = x;
            for (size_t k = 0; k < targets.size(); ++k) {
                auto ys = conjugators(x, targets[k]);
                int y = trials[t].random ? ys[rng() % ys.size()] : ys[0];
                auto yn = "y" + std::to_string(r + 1) + "_" + std::to_string(k + 1);
                if (pos.count(yn)) vals[t][pos[yn]] = y;
            }
        }
    }
    int64_t decided = 0;
    auto f = run_parallel(doc, rep, opt, int64_t(trials.size()),
                          [&](int64_t i, std::vector<int>& out) { out = vals[size_t(i)]; }, &decided);
    return finish(v, f, decided, t0);
}

Verdict check(const IdentityDoc& doc, const RepPtr& rep, const std::string& mode, const VerifyOptions& opt) {
    static const std::set<std::string> modes{"exhaustive", "guarded", "structured", "sampled", "auto"};
    if (!modes.count(mode)) throw std::invalid_argument("unknown verification mode " + mode);
    if (doc.has_flag("vacuous")) {
        Verdict v;
        v.evidence = Evidence{Evidence::Exhaustive, 0, opt.seed};
        v.seed = opt.seed;
        v.notes.push_back("identity holds vacuously");
        return v;
    }
    if (mode == "exhaustive") return holds_exhaustive(doc, rep, opt);
    if (mode == "guarded") return holds_guarded(doc, rep, opt);
    if (mode == "structured") return holds_structured(doc, rep, opt);
    if (mode == "sampled") return holds_sampled(doc, rep, opt);
    if (mode == "auto") {
        if (doc.has_flag("structured")) return holds_structured(doc, rep, opt);
        if (!doc.guard_families().empty()) return holds_guarded(doc, rep, opt);
        auto n = input_names(doc, rep, opt).size();
        if (power_capped(rep->group()->order(), n, opt.budget) <= opt.budget) return holds_exhaustive(doc, rep, opt);
        return holds_sampled(doc, rep, opt);
    }
    throw std::invalid_argument("unknown verification mode " + mode);
}

bool witness_nonzero(const IdentityDoc& doc, const RepPtr& rep, const Assignment& a) {
    EvalOptions o;
    o.short_circuit = false;
    return !evaluate(doc.expr, a, rep, o).is_zero();
}

// ---------------------------------------------------------------- scalar and probabilistic checks

std::optional<Cyc> scalar_check(const Expr& e, const RepPtr& rep, const Assignment& a) {
    return evaluate(e, a, rep).scalar_value();
}

namespace {

// visits every assignment of the free variables of e
template <class F>
int64_t for_all_assignments(Evaluator& ev, int m, int64_t budget, F&& f) {
    size_t k = ev.vars().size();
    int64_t count = power_capped(m, k, budget);
    if (count > budget) throw std::length_error("enumeration exceeds the budget");
    std::vector<int> cur(k, 0);
    for (int64_t i = 0; i < count; ++i) {
        int64_t x = i;
        for (size_t j = k; j-- > 0;) {
            ev.set(int(j), int(x % m));
            x /= m;
        }
        f();
    }
    return count;
}

}  // namespace

Mat expectation(const Expr& u, const RepPtr& rep, int64_t budget) {
    Evaluator ev(u, rep);
    int n = rep->dim();
    Mat acc(n, n);
    int64_t count = for_all_assignments(ev, rep->group()->order(), budget, [&] { acc += ev.root_matrix(); });
    return Cyc(Rational(1, count)) * acc;
}

Rational relation_probability(const Expr& u, const RepPtr& rep, int64_t budget) {
    Evaluator ev(u, rep);
    int64_t zeros = 0;
    int64_t count =
        for_all_assignments(ev, rep->group()->order(), budget, [&] { zeros += ev.root_value().is_zero(); });
    return Rational(zeros, count);
}

Rational relation_probability(const Expr& u, const Expr& v, const RepPtr& rep, int64_t budget) {
    Expr both = gram(u) + gram(v);
    Expr vv = gram(v);
    // evaluate both over the union of variables
    Expr pair = product({both, variable("__sep"), vv});
    Evaluator ev(pair, rep);
    int sep = ev.var_index("__sep");
    int64_t num = 0, den = 0;
    size_t k = ev.vars().size();
    int m = rep->group()->order();
    int64_t count = power_capped(m, k - 1, budget);
    if (count > budget) throw std::length_error("enumeration exceeds the budget");
    std::vector<int> idx;
    for (size_t j = 0; j < k; ++j)
        if (int(j) != sep) idx.push_back(int(j));
    for (int64_t i = 0; i < count; ++i) {
        int64_t x = i;
        for (size_t j = idx.size(); j-- > 0;) {
            ev.set(idx[j], int(x % m));
            x /= m;
        }
        num += ev.value(both.get()).is_zero();
        den += ev.value(vv.get()).is_zero();
    }
    if (den == 0) throw std::domain_error("conditioning relation never vanishes");
    return Rational(num, den);
}

// ---------------------------------------------------------------- SL2

std::vector<Mat> sl2_sample(int count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-10, 10), den(1, 10), len(2, 4);
    std::vector<Mat> out;
    for (int c = 0; c < count; ++c) {
        Mat M = Mat::identity(2);
        int L = len(rng);
        bool upper = rng() & 1;
        for (int i = 0; i < L; ++i, upper = !upper) {
            Mat S = Mat::identity(2);
            Cyc a(Rational(num(rng), den(rng)));
            if (upper) S(0, 1) = a;
            else S(1, 0) = a;
            M = M * S;
        }
        out.push_back(M);
    }
    return out;
}

Mat evaluate_matrices(const Expr& e, const std::map<std::string, Mat>& a) {
    int n = a.empty() ? 1 : a.begin()->second.rows();
    std::unordered_map<const Node*, Mat> memo;
    std::function<Mat(const Node*)> go = [&](const Node* x) -> Mat {
        auto it = memo.find(x);
        if (it != memo.end()) return it->second;
        Mat r;
        switch (x->kind) {
            case Kind::Const: r = Mat::scalar(n, x->value); break;
            case Kind::Var: {
                auto v = a.find(x->name);
                if (v == a.end()) throw std::invalid_argument("assignment misses variable " + x->name);
                r = v->second;
                break;
            }
            case Kind::Inv: r = go(x->kids[0].get()).inverse(); break;
            case Kind::Star: r = go(x->kids[1].get()); break;
            case Kind::Sum:
                r = Mat(n, n);
                for (auto& k : x->kids) r += go(k.get());
                break;
            case Kind::Prod:
                r = Mat::identity(n);
                for (auto& k : x->kids) r = r * go(k.get());
                break;
            case Kind::SubsetProd: throw std::invalid_argument("subset products are not evaluated on matrices");
        }
        memo.emplace(x, r);
        return r;
    };
    return go(e.get());
}

SL2Verdict sl2_sample_check(const Expr& e, int trials, uint64_t seed) {
    auto t0 = Clock::now();
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    auto vars = free_vars(e);
    auto mats = sl2_sample(trials * std::max<int>(1, int(vars.size())), seed);
    SL2Verdict v;
    v.seed = seed;
    size_t q = 0;
    for (int t = 0; t < trials; ++t) {
        std::map<std::string, Mat> a;
        for (auto& x : vars) a[x] = mats[q++];
        if (vars.empty()) a["_"] = Mat::identity(2);
        ++v.trials;
        if (!evaluate_matrices(e, a).is_zero()) {
            a.erase("_");
            v.holds = false;
            v.counterexample = a;
            break;
        }
    }
    v.timing_ms = ms_since(t0);
    return v;
}

json verdict_to_json(const Verdict& v, const GroupPtr& G) {
    json j;
    j["status"] = v.holds ? "holds" : "fails";
    j["evidence"] = v.evidence.str();
    j["seed"] = v.seed;
    if (v.counterexample) {
        json w = json::object();
        for (auto& [k, g] : *v.counterexample) w[k] = json{{"element", g}, {"label", element_label(G, g)}};
        j["witness"] = w;
    }
    j["timing_ms"] = v.timing_ms;
    j["assignments"] = v.assignments;
    if (!v.notes.empty()) j["notes"] = v.notes;
    return j;
}

}  // namespace pirep
