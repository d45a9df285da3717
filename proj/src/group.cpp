#include "pirep/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace pirep {

bool Subgroup::contains(int g) const { return std::binary_search(elements.begin(), elements.end(), g); }

GroupPtr FiniteGroup::from_cayley_table(std::vector<std::vector<int>> table, std::vector<std::string> labels) {
    int m = int(table.size());
    if (m == 0) throw std::invalid_argument("group: empty table");
    auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    G->m_ = m;
    G->table_.resize(size_t(m) * m);
    for (int a = 0; a < m; ++a) {
        if (int(table[a].size()) != m) throw std::invalid_argument("group: table is not square");
        for (int b = 0; b < m; ++b) {
            int v = table[a][b];
            if (v < 0 || v >= m) throw std::invalid_argument("group: table entry out of range");
            G->table_[size_t(a) * m + b] = v;
        }
    }
    G->labels_ = std::move(labels);
    if (!G->labels_.empty() && int(G->labels_.size()) != m) throw std::invalid_argument("group: label count mismatch");
    G->validate();
    return G;
}

void FiniteGroup::validate() const {
    int m = m_;
    auto* self = const_cast<FiniteGroup*>(this);
    // Latin square
    for (int a = 0; a < m; ++a) {
        std::vector<char> row(m, 0), col(m, 0);
        for (int b = 0; b < m; ++b) {
            if (row[mul(a, b)]++) throw std::invalid_argument("group: table is not a Latin square");
            if (col[mul(b, a)]++) throw std::invalid_argument("group: table is not a Latin square");
        }
    }
    for (int a = 0; a < m; ++a)
        if (mul(0, a) != a || mul(a, 0) != a) throw std::invalid_argument("group: element 0 is not the identity");
    self->inv_.assign(m, -1);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (mul(a, b) == 0) {
                if (mul(b, a) != 0) throw std::invalid_argument("group: missing two-sided inverse");
                self->inv_[a] = b;
            }
    for (int a = 0; a < m; ++a)
        if (inv_[a] < 0) throw std::invalid_argument("group: missing inverse");
    if (m <= 512) {
        // Light's test over a generating set of the magma
        std::vector<int> gens;
        std::vector<char> reached(m, 0);
        reached[0] = 1;
        std::vector<int> members{0};
        for (int cand = 1; cand < m; ++cand) {
            if (reached[cand]) continue;
            gens.push_back(cand);
            for (size_t i = 0; i < members.size(); ++i) {
                for (int s : gens) {
                    int y = mul(members[i], s);
                    if (!reached[y]) {
                        reached[y] = 1;
                        members.push_back(y);
                    }
                }
            }
        }
        for (int g : gens)
            for (int x = 0; x < m; ++x) {
                int xg = mul(x, g);
                for (int y = 0; y < m; ++y)
                    if (mul(xg, y) != mul(x, mul(g, y))) throw std::invalid_argument("group: table is not associative");
            }
    }
    self->order_.assign(m, 0);
    for (int a = 0; a < m; ++a) {
        int k = 1, x = a;
        while (x != 0) {
            x = mul(x, a);
            if (++k > m + 1) throw std::invalid_argument("group: element powers never reach the identity");
        }
        self->order_[a] = k;
    }
}

int FiniteGroup::pow(int g, int64_t k) const {
    int o = order_[g];
    k %= o;
    if (k < 0) k += o;
    int r = 0, b = g;
    while (k) {
        if (k & 1) r = mul(r, b);
        b = mul(b, b);
        k >>= 1;
    }
    return r;
}

std::string FiniteGroup::label(int g) const {
    if (!labels_.empty()) return labels_[g];
    return "g" + std::to_string(g);
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(m_, std::vector<int>(m_));
    for (int a = 0; a < m_; ++a)
        for (int b = 0; b < m_; ++b) t[a][b] = mul(a, b);
    return t;
}

std::vector<int> FiniteGroup::order_statistics() const {
    std::set<int> s(order_.begin(), order_.end());
    return {s.begin(), s.end()};
}

int FiniteGroup::exponent() const {
    int64_t e = 1;
    for (int o : order_) e = std::lcm(e, int64_t(o));
    return int(e);
}

const ConjClassList& FiniteGroup::classes() const {
    std::call_once(classes_once_, [this] {
        std::vector<int> cls(m_, -1);
        std::vector<std::vector<int>> raw;
        for (int g = 0; g < m_; ++g) {
            if (cls[g] >= 0) continue;
            std::vector<int> orbit;
            for (int h = 0; h < m_; ++h) {
                int c = conj(h, g);
                if (cls[c] < 0) {
                    cls[c] = int(raw.size());
                    orbit.push_back(c);
                }
            }
            std::sort(orbit.begin(), orbit.end());
            raw.push_back(orbit);
        }
        std::vector<int> idx(raw.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            if (raw[a].size() != raw[b].size()) return raw[a].size() > raw[b].size();
            int oa = order_[raw[a][0]], ob = order_[raw[b][0]];
            if (oa != ob) return oa < ob;
            return raw[a][0] < raw[b][0];
        });
        ConjClassList out;
        out.class_of.assign(m_, -1);
        for (int pos = 0; pos < int(idx.size()); ++pos) {
            const auto& c = raw[idx[pos]];
            out.classes.push_back(c);
            out.sizes.push_back(int(c.size()));
            out.reps.push_back(c[0]);
            for (int g : c) out.class_of[g] = pos;
        }
        classes_ = std::move(out);
    });
    return classes_;
}

bool FiniteGroup::is_abelian() const { return int(classes().classes.size()) == m_; }

Subgroup FiniteGroup::whole() const {
    Subgroup s;
    s.elements.resize(m_);
    std::iota(s.elements.begin(), s.elements.end(), 0);
    return s;
}

Subgroup FiniteGroup::center() const {
    Subgroup s;
    for (int g = 0; g < m_; ++g) {
        bool c = true;
        for (int h = 0; h < m_ && c; ++h) c = mul(g, h) == mul(h, g);
        if (c) s.elements.push_back(g);
    }
    return s;
}

Subgroup FiniteGroup::centralizer(int g) const {
    Subgroup s;
    for (int h = 0; h < m_; ++h)
        if (mul(g, h) == mul(h, g)) s.elements.push_back(h);
    return s;
}

Subgroup FiniteGroup::subgroup_generated(const std::vector<int>& gens) const {
    std::vector<char> in(m_, 0);
    std::vector<int> el{0};
    in[0] = 1;
    for (size_t i = 0; i < el.size(); ++i)
        for (int s : gens) {
            int y = mul(el[i], s);
            if (!in[y]) {
                in[y] = 1;
                el.push_back(y);
            }
        }
    std::sort(el.begin(), el.end());
    return Subgroup{el};
}

std::vector<Subgroup> FiniteGroup::all_subgroups(const GroupLimits& lim) const {
    if (m_ > lim.all_subgroups_max_order)
        throw std::length_error("all_subgroups: group order " + std::to_string(m_) + " exceeds limit " +
                                std::to_string(lim.all_subgroups_max_order));
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> subs;
    auto add = [&](Subgroup s) {
        if (seen.insert(s.elements).second) subs.push_back(std::move(s));
    };
    std::vector<Subgroup> cyclic(m_);
    for (int g = 0; g < m_; ++g) {
        cyclic[g] = subgroup_generated({g});
        add(cyclic[g]);
    }
    for (int a = 0; a < m_; ++a)
        for (int b = a + 1; b < m_; ++b) {
            if (cyclic[a].contains(b) || cyclic[b].contains(a)) continue;
            add(subgroup_generated({a, b}));
        }
    // pairwise joins to a fixpoint
    bool grew = true;
    while (grew) {
        grew = false;
        size_t n = subs.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                const auto& A = subs[i].elements;
                const auto& B = subs[j].elements;
                if (std::includes(A.begin(), A.end(), B.begin(), B.end()) ||
                    std::includes(B.begin(), B.end(), A.begin(), A.end()))
                    continue;
                std::vector<int> gens = A;
                gens.insert(gens.end(), B.begin(), B.end());
                Subgroup s = subgroup_generated(gens);
                if (seen.insert(s.elements).second) {
                    subs.push_back(std::move(s));
                    grew = true;
                }
            }
    }
    std::sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements < b.elements;
    });
    return subs;
}

std::vector<Subgroup> FiniteGroup::upper_central_series() const {
    std::vector<Subgroup> series{trivial()};
    while (true) {
        const Subgroup& z = series.back();
        Subgroup next;
        for (int g = 0; g < m_; ++g) {
            bool central = true;
            for (int h = 0; h < m_ && central; ++h) central = z.contains(commutator(g, h));
            if (central) next.elements.push_back(g);
        }
        if (next == z) break;
        series.push_back(std::move(next));
    }
    return series;
}

bool FiniteGroup::is_normal(const Subgroup& h) const {
    for (int g = 0; g < m_; ++g)
        for (int x : h.elements)
            if (!h.contains(conj(g, x))) return false;
    return true;
}

std::vector<int> FiniteGroup::coset_reps(const Subgroup& h) const {
    std::vector<char> covered(m_, 0);
    std::vector<int> reps;
    for (int g = 0; g < m_; ++g) {
        if (covered[g]) continue;
        reps.push_back(g);
        for (int x : h.elements) covered[mul(g, x)] = 1;
    }
    return reps;
}

GroupPtr FiniteGroup::subgroup_group(const Subgroup& h) const {
    int k = h.order();
    std::vector<int> pos(m_, -1);
    for (int i = 0; i < k; ++i) pos[h.elements[i]] = i;
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            int p = pos[mul(h.elements[i], h.elements[j])];
            if (p < 0) throw std::invalid_argument("subgroup_group: set is not closed");
            t[i][j] = p;
        }
    std::vector<std::string> labels;
    if (!labels_.empty())
        for (int x : h.elements) labels.push_back(labels_[x]);
    return from_cayley_table(std::move(t), std::move(labels));
}

std::vector<int> FiniteGroup::generators() const {
    std::vector<int> gens;
    Subgroup cur = trivial();
    // prefer elements of large order so fewer generators are needed
    std::vector<int> cand(m_);
    std::iota(cand.begin(), cand.end(), 0);
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return order_[a] > order_[b]; });
    while (cur.order() < m_) {
        int best = -1, best_size = cur.order();
        for (int g : cand) {
            if (cur.contains(g)) continue;
            auto tmp = gens;
            tmp.push_back(g);
            int sz = subgroup_generated(tmp).order();
            if (sz > best_size) {
                best = g;
                best_size = sz;
                if (sz == m_) break;
            }
        }
        gens.push_back(best);
        cur = subgroup_generated(gens);
    }
    return gens;
}

std::optional<std::vector<int>> FiniteGroup::extend_hom(const std::vector<int>& gens, const std::vector<int>& images,
                                                        const FiniteGroup& target) const {
    std::vector<int> phi(m_, -1);
    phi[0] = 0;
    std::vector<int> queue{0};
    for (size_t i = 0; i < queue.size(); ++i) {
        int x = queue[i];
        for (size_t s = 0; s < gens.size(); ++s) {
            int y = mul(x, gens[s]);
            int img = target.mul(phi[x], images[s]);
            if (phi[y] < 0) {
                phi[y] = img;
                queue.push_back(y);
            } else if (phi[y] != img) {
                return std::nullopt;
            }
        }
    }
    if (int(queue.size()) != m_) throw std::invalid_argument("extend_hom: generators do not generate the group");
    // closure consistency is necessary; check multiplicativity fully for safety at small order
    for (int a = 0; a < m_; ++a)
        for (size_t s = 0; s < gens.size(); ++s)
            if (phi[mul(a, gens[s])] != target.mul(phi[a], images[s])) return std::nullopt;
    return phi;
}

std::vector<std::vector<int>> FiniteGroup::automorphisms(const std::vector<int>& gens, const GroupLimits& lim) const {
    if (m_ > lim.automorphisms_max_order || int(gens.size()) > lim.automorphisms_max_gens)
        throw std::length_error("automorphisms: limits exceeded (order " + std::to_string(m_) + ", " +
                                std::to_string(gens.size()) + " generators)");
    if (subgroup_generated(gens).order() != m_) throw std::invalid_argument("automorphisms: gens do not generate");
    const auto& cl = classes();
    std::vector<std::vector<int>> cands(gens.size());
    for (size_t s = 0; s < gens.size(); ++s)
        for (int g = 0; g < m_; ++g)
            if (order_[g] == order_[gens[s]] && cl.sizes[cl.class_of[g]] == cl.sizes[cl.class_of[gens[s]]])
                cands[s].push_back(g);
    std::vector<std::vector<int>> out;
    std::vector<int> pick(gens.size(), 0), images(gens.size());
    while (true) {
        for (size_t s = 0; s < gens.size(); ++s) images[s] = cands[s][pick[s]];
        if (auto phi = extend_hom(gens, images, *this)) {
            std::vector<char> hit(m_, 0);
            bool bij = true;
            for (int v : *phi) {
                if (hit[v]) {
                    bij = false;
                    break;
                }
                hit[v] = 1;
            }
            if (bij) out.push_back(std::move(*phi));
        }
        size_t s = 0;
        while (s < gens.size() && ++pick[s] == int(cands[s].size())) pick[s++] = 0;
        if (s == gens.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::vector<int>> FiniteGroup::power_map(int64_t t) const {
    std::vector<int> p(m_);
    std::vector<char> hit(m_, 0);
    bool bij = true;
    for (int g = 0; g < m_; ++g) {
        p[g] = pow(g, t);
        if (hit[p[g]]) bij = false;
        hit[p[g]] = 1;
    }
    if (!bij) return std::nullopt;
    return p;
}

}  // namespace pirep
