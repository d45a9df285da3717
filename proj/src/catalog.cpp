#include "pirep/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace pirep {

namespace {

Cyc z(int N, int64_t k) { return Cyc::root_of_unity(N, k); }

int64_t mod(int64_t a, int64_t m) { return ((a % m) + m) % m; }

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

struct MatClosure {
    std::vector<Mat> elems;
    std::vector<int> gen_index;
    GroupPtr group;
};

MatClosure mat_closure(const std::vector<Mat>& gens, size_t limit = 4096) {
    int n = gens.at(0).rows();
    MatClosure c;
    std::unordered_map<std::string, int> idx;
    auto add = [&](const Mat& M) {
        auto key = M.str();
        auto it = idx.find(key);
        if (it != idx.end()) return it->second;
        if (c.elems.size() >= limit) throw std::length_error("matrix group closure exceeds limit");
        int k = int(c.elems.size());
        idx.emplace(std::move(key), k);
        c.elems.push_back(M);
        return k;
    };
    add(Mat::identity(n));
    for (const auto& g : gens) c.gen_index.push_back(add(g));
    for (size_t i = 0; i < c.elems.size(); ++i)
        for (const auto& g : gens) add(c.elems[i] * g);
    int m = int(c.elems.size());
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) table[a][b] = idx.at((c.elems[a] * c.elems[b]).str());
    c.group = FiniteGroup::from_cayley_table(std::move(table));
    return c;
}

std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int perm_sign(const std::vector<int>& p) {
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

std::string cycle_label(const std::vector<int>& p) {
    std::string s;
    std::vector<char> seen(p.size(), 0);
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == int(i)) continue;
        s += "(";
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = 1;
            if (!first) s += " ";
            s += std::to_string(j + 1);
            first = false;
            j = size_t(p[j]);
        }
        s += ")";
    }
    return s.empty() ? "()" : s;
}

// group of the given permutations (closed under composition, identity first); (pq)(i) = p[q[i]]
GroupPtr perm_group(const std::vector<std::vector<int>>& perms) {
    std::map<std::vector<int>, int> idx;
    for (size_t i = 0; i < perms.size(); ++i) idx[perms[i]] = int(i);
    int m = int(perms.size());
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    std::vector<int> c(perms[0].size());
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            for (size_t i = 0; i < c.size(); ++i) c[i] = perms[a][perms[b][i]];
            table[a][b] = idx.at(c);
        }
    std::vector<std::string> labels;
    for (const auto& p : perms) labels.push_back(cycle_label(p));
    return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
}

Mat mat_pow(const Mat& M, int k) {
    Mat R = Mat::identity(M.rows());
    for (int i = 0; i < k; ++i) R = R * M;
    return R;
}

RepPtr linear_rep(const GroupPtr& G, const std::vector<Cyc>& values, const std::string& name) {
    std::vector<Mat> im;
    for (const auto& v : values) im.push_back(Mat::scalar(1, v));
    return Rep::make(G, std::move(im), name);
}

RepPtr sign_rep(const GroupPtr& G, const std::vector<std::vector<int>>& perms) {
    std::vector<Cyc> v;
    for (const auto& p : perms) v.emplace_back(perm_sign(p));
    return linear_rep(G, v, "sign");
}

Mat s3_rotation() { return Mat::diag({z(3, 1), z(3, 2)}); }
Mat s3_swap() { return Mat::from_rows({{0, 1}, {1, 0}}); }

// (1 + sqrt5)/2 with sqrt5 the quadratic Gauss sum of conductor 5
Cyc golden() {
    Cyc s5 = z(5, 1) - z(5, 2) - z(5, 3) + z(5, 4);
    return (Cyc(1) + s5) * Cyc(Rational(1, 2));
}

}  // namespace

RepPtr CatalogGroup::rep(const std::string& n) const {
    auto it = reps.find(n);
    if (it != reps.end()) return it->second;
    if (factory)
        if (auto r = factory(n)) return r;
    throw std::invalid_argument("unknown rep '" + n + "' of " + name);
}

void CatalogGroup::add(const std::string& n, RepPtr r) {
    if (!reps.count(n)) rep_order.push_back(n);
    reps[n] = std::move(r);
}

RepPtr hom_rep(const GroupPtr& G, const std::vector<int>& gens, const std::vector<Mat>& images,
               const std::string& name) {
    auto C = mat_closure(images);
    auto phi = G->extend_hom(gens, C.gen_index, *C.group);
    if (!phi) throw std::invalid_argument("hom_rep: generator images violate the relations");
    std::vector<Mat> im;
    for (int g = 0; g < G->order(); ++g) im.push_back(C.elems[(*phi)[g]]);
    return Rep::make(G, std::move(im), name, false);
}

RepPtr realize(const GroupPtr& G, const std::vector<Mat>& gens, const std::string& name) {
    auto C = mat_closure(gens);
    const auto& H = *C.group;
    if (G->order() % H.order() != 0) throw std::invalid_argument("realize: image order does not divide |G|");
    auto ggens = G->generators();
    std::vector<std::vector<int>> cands(ggens.size());
    for (size_t s = 0; s < ggens.size(); ++s)
        for (int h = 0; h < H.order(); ++h)
            if (G->element_order(ggens[s]) % H.element_order(h) == 0) cands[s].push_back(h);
    std::vector<int> pick(ggens.size(), 0), images(ggens.size());
    while (true) {
        for (size_t s = 0; s < ggens.size(); ++s) images[s] = cands[s][pick[s]];
        if (H.subgroup_generated(images).order() == H.order())
            if (auto phi = G->extend_hom(ggens, images, H)) {
                std::vector<Mat> im;
                for (int g = 0; g < G->order(); ++g) im.push_back(C.elems[(*phi)[g]]);
                return Rep::make(G, std::move(im), name, false);
            }
        size_t s = 0;
        while (s < ggens.size() && ++pick[s] == int(cands[s].size())) pick[s++] = 0;
        if (s == ggens.size()) break;
    }
    throw std::invalid_argument("realize: no surjective homomorphism onto the matrix group");
}

RepPtr reduced_permutation_rep(const GroupPtr& G, const std::vector<std::vector<int>>& perms,
                               const std::string& name) {
    int k = int(perms.at(0).size());
    std::vector<Mat> im;
    for (const auto& p : perms) {
        Mat M(k - 1, k - 1);
        for (int i = 0; i < k - 1; ++i) {
            if (p[i] != k - 1) M(p[i], i) += Cyc(1);
            if (p[k - 1] != k - 1) M(p[k - 1], i) -= Cyc(1);
        }
        im.push_back(std::move(M));
    }
    return Rep::make(G, std::move(im), name);
}

RepPtr tensor_rep(const Rep& a, const Rep& b, const std::string& name) {
    int da = a.dim(), db = b.dim();
    std::vector<Mat> im;
    for (int g = 0; g < a.group()->order(); ++g) {
        const Mat &A = a.image(g), &B = b.image(g);
        Mat M(da * db, da * db);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j) {
                if (A(i, j).is_zero()) continue;
                for (int k = 0; k < db; ++k)
                    for (int l = 0; l < db; ++l) M(i * db + k, j * db + l) = A(i, j) * B(k, l);
            }
        im.push_back(std::move(M));
    }
    return Rep::make(a.group(), std::move(im), name, false);
}

CatalogGroup cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic: n must be positive");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    std::vector<std::string> labels;
    for (int a = 0; a < n; ++a) {
        labels.push_back(std::to_string(a));
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    }
    CatalogGroup c{"Z" + std::to_string(n), FiniteGroup::from_cayley_table(table, labels), {n > 1 ? 1 : 0}, {}, {}, {}};
    for (int k = 0; k < n; ++k) {
        std::vector<Cyc> v;
        for (int j = 0; j < n; ++j) v.push_back(z(n, int64_t(k) * j));
        c.add("chi" + std::to_string(k), linear_rep(c.group, v, "chi" + std::to_string(k)));
    }
    c.add("regular", regular_rep(c.group));
    return c;
}

CatalogGroup symmetric(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("symmetric: 1 <= n <= 5");
    auto perms = all_perms(n);
    CatalogGroup c;
    c.name = "S" + std::to_string(n);
    c.group = perm_group(perms);
    c.gens = c.group->generators();
    c.add("triv", trivial_rep(c.group));
    if (n >= 2) c.add("sign", sign_rep(c.group, perms));
    if (n == 3) {
        c.add("dim2", realize(c.group, {s3_rotation(), s3_swap()}, "dim2"));
    } else if (n == 4) {
        c.reps.clear();
        c.rep_order.clear();
        c.add("rho1", trivial_rep(c.group));
        c.add("rho2", sign_rep(c.group, perms));
        c.add("rho3", realize(c.group, {s3_rotation(), s3_swap()}, "rho3"));
        Mat rz = Mat::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}});
        Mat cyc = Mat::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
        auto rho4 = realize(c.group, {rz, cyc}, "rho4");
        c.add("rho4", rho4);
        c.add("rho5", tensor_rep(*rho4, *c.rep("rho2"), "rho5"));
    } else if (n == 5) {
        c.add("std", reduced_permutation_rep(c.group, perms, "std"));
        c.add("std_sign", tensor_rep(*c.rep("std"), *c.rep("sign"), "std_sign"));
    }
    if (n >= 2) c.add("perm", permutation_rep(c.group, perms, "perm"));
    if (n <= 4) c.add("regular", regular_rep(c.group));
    return c;
}

CatalogGroup alternating(int n) {
    if (n < 3 || n > 5) throw std::invalid_argument("alternating: 3 <= n <= 5");
    std::vector<std::vector<int>> perms;
    for (auto& p : all_perms(n))
        if (perm_sign(p) == 1) perms.push_back(p);
    CatalogGroup c;
    c.name = "A" + std::to_string(n);
    c.group = perm_group(perms);
    c.gens = c.group->generators();
    c.add("triv", trivial_rep(c.group));
    Mat cyc = Mat::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    if (n == 3) {
        for (int k = 1; k < 3; ++k) {
            std::vector<Cyc> v;
            for (int g = 0; g < 3; ++g) v.push_back(z(3, int64_t(k) * g));
            c.add("chi" + std::to_string(k), linear_rep(c.group, v, "chi" + std::to_string(k)));
        }
    } else if (n == 4) {
        auto w = realize(c.group, {Mat::scalar(1, z(3, 1))}, "omega1");
        c.add("omega1", w);
        auto w2 = w->galois(2);
        c.add("omega2", Rep::make(c.group, w2->images(), "omega2", false));
        c.add("dim3", realize(c.group, {cyc, Mat::diag({1, -1, -1})}, "dim3"));
    } else {
        Cyc phi = golden(), iphi = phi - Cyc(1), h(Rational(1, 2));
        Mat R = Mat::from_rows({{h, -h * phi, h * iphi}, {h * phi, h * iphi, -h}, {h * iphi, h, h * phi}});
        auto d3 = realize(c.group, {cyc, R}, "dim3a");
        c.add("dim3a", d3);
        c.add("dim3b", Rep::make(c.group, d3->galois(2)->images(), "dim3b", false));
        c.add("dim4", reduced_permutation_rep(c.group, perms, "dim4"));
        const auto& G = *c.group;
        std::vector<Subgroup> syl;
        for (int g = 0; g < G.order(); ++g)
            if (G.element_order(g) == 5) {
                auto S = G.subgroup_generated({g});
                if (std::find(syl.begin(), syl.end(), S) == syl.end()) syl.push_back(S);
            }
        std::sort(syl.begin(), syl.end(), [](const Subgroup& a, const Subgroup& b) { return a.elements < b.elements; });
        std::vector<std::vector<int>> act(G.order(), std::vector<int>(syl.size()));
        for (int g = 0; g < G.order(); ++g)
            for (size_t i = 0; i < syl.size(); ++i) {
                std::vector<int> e;
                for (int x : syl[i].elements) e.push_back(G.conj(g, x));
                std::sort(e.begin(), e.end());
                for (size_t j = 0; j < syl.size(); ++j)
                    if (syl[j].elements == e) act[g][i] = int(j);
            }
        c.add("dim5", reduced_permutation_rep(c.group, act, "dim5"));
    }
    c.add("perm", permutation_rep(c.group, perms, "perm"));
    return c;
}

CatalogGroup quaternion() {
    Cyc i = z(4, 1);
    Mat qi = Mat::diag({i, -i}), qj = Mat::from_rows({{0, 1}, {-1, 0}});
    auto C = mat_closure({qi, qj});
    CatalogGroup c;
    c.name = "Q8";
    c.group = C.group;
    c.gens = C.gen_index;
    c.add("triv", trivial_rep(c.group));
    Mat p = Mat::scalar(1, 1), m = Mat::scalar(1, -1);
    c.add("chi_i", hom_rep(c.group, c.gens, {p, m}, "chi_i"));
    c.add("chi_j", hom_rep(c.group, c.gens, {m, p}, "chi_j"));
    c.add("chi_k", hom_rep(c.group, c.gens, {m, m}, "chi_k"));
    c.add("dim2", Rep::make(c.group, C.elems, "dim2", false));
    c.add("regular", regular_rep(c.group));
    return c;
}

CatalogGroup binary_tetrahedral() {
    Cyc i = z(4, 1), h(Rational(1, 2));
    Mat qi = Mat::diag({i, -i}), qj = Mat::from_rows({{0, 1}, {-1, 0}});
    Mat hh = Mat::from_rows({{h * (i - 1), h * (i + 1)}, {h * (i - 1), -h * (i + 1)}});
    auto C = mat_closure({qi, qj, hh});
    CatalogGroup c;
    c.name = "2T";
    c.group = C.group;
    c.gens = C.gen_index;
    c.add("triv", trivial_rep(c.group));
    c.add("dim2", Rep::make(c.group, C.elems, "dim2", false));
    return c;
}

CatalogGroup heisenberg(int p) {
    if (p < 2) throw std::invalid_argument("heisenberg: p must be prime");
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) throw std::invalid_argument("heisenberg: p must be prime");
    int m = p * p * p;
    auto enc = [p](int a, int b, int c) { return (a % p) * p * p + (b % p) * p + (c % p); };
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    std::vector<std::string> labels;
    for (int x = 0; x < m; ++x) {
        int a = x / (p * p), b = (x / p) % p, cc = x % p;
        labels.push_back("(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(cc) + ")");
        for (int y = 0; y < m; ++y) {
            int a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
            table[x][y] = enc(a + a2, b + b2, cc + c2 + a * b2);
        }
    }
    CatalogGroup c;
    c.name = "H" + std::to_string(p);
    c.group = FiniteGroup::from_cayley_table(table, labels);
    c.gens = {enc(1, 0, 0), enc(0, 1, 0)};
    c.add("triv", trivial_rep(c.group));
    for (int zz = 1; zz < p; ++zz) {
        Mat X(p, p), Z(p, p);
        for (int j = 0; j < p; ++j) {
            X((j + 1) % p, j) = Cyc(1);
            Z(j, j) = z(p, -int64_t(zz) * j);
        }
        std::vector<Mat> im;
        for (int x = 0; x < m; ++x) {
            int a = x / (p * p), b = (x / p) % p, cc = x % p;
            im.push_back(z(p, int64_t(zz) * cc) * (mat_pow(Z, b) * mat_pow(X, a)));
        }
        std::string nm = "theta" + std::to_string(zz);
        c.add(nm, Rep::make(c.group, std::move(im), nm));
    }
    for (int s = 0; s < p; ++s)
        for (int t = 0; t < p; ++t) {
            if (s == 0 && t == 0) continue;
            std::vector<Cyc> v;
            for (int x = 0; x < m; ++x) v.push_back(z(p, int64_t(s) * (x / (p * p)) + int64_t(t) * ((x / p) % p)));
            std::string nm = "lin" + std::to_string(s) + "_" + std::to_string(t);
            c.add(nm, linear_rep(c.group, v, nm));
        }
    return c;
}

int GammaGroup::element(int i, int j) const { return int(mod(i, m)) * n + int(mod(j, n)); }

std::vector<std::string> gamma_condition_violations(int m, int n, int r) {
    std::vector<std::string> out;
    if (m < 1 || n < 1) {
        out.push_back("m, n >= 1");
        return out;
    }
    if (gcd64(m, mod(int64_t(r - 1) * n, m)) != 1 && m > 1) out.push_back("(m, (r-1)n) = 1");
    if (gcd64(mod(r, m), m) != 1 && m > 1) {
        out.push_back("r must be a unit mod m");
        return out;
    }
    int d = 1;
    int64_t x = mod(r, m);
    while (x != 1 % m && d <= m) {
        x = mod(x * r, m);
        ++d;
    }
    if (n % d != 0) {
        out.push_back("n = n'd with d the order of r mod m");
        return out;
    }
    int n1 = n / d;
    for (int q = 2; q <= d; ++q)
        if (d % q == 0) {
            bool prime = true;
            for (int f = 2; f * f <= q; ++f)
                if (q % f == 0) prime = false;
            if (prime && n1 % q != 0) out.push_back("n' divisible by every prime divisor of d");
        }
    return out;
}

GammaGroup gamma_d(int m, int n, int r) {
    auto bad = gamma_condition_violations(m, n, r);
    if (!bad.empty()) {
        std::string msg = "gamma_d: violated:";
        for (auto& b : bad) msg += " [" + b + "]";
        throw std::invalid_argument(msg);
    }
    GammaGroup g;
    g.m = m;
    g.n = n;
    g.r = int(mod(r, m));
    g.d = 1;
    for (int64_t x = g.r % m; x != 1 % m; x = x * g.r % m) ++g.d;
    g.n1 = n / g.d;
    std::vector<int64_t> rp(n);
    rp[0] = 1 % m;
    for (int j = 1; j < n; ++j) rp[j] = rp[j - 1] * g.r % m;
    int N = m * n;
    std::vector<std::vector<int>> table(N, std::vector<int>(N));
    std::vector<std::string> labels;
    for (int x = 0; x < N; ++x) {
        int i = x / n, j = x % n;
        labels.push_back("A^" + std::to_string(i) + "B^" + std::to_string(j));
        for (int y = 0; y < N; ++y) {
            int k = y / n, l = y % n;
            table[x][y] = int(mod(i + k * rp[j], m)) * n + (j + l) % n;
        }
    }
    g.group = FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
    g.A = g.element(1 % m, 0);
    g.B = g.element(0, 1 % n);
    return g;
}

RepPtr pi_kl(const GammaGroup& g, int k, int l) {
    if (gcd64(k, g.m) != 1) throw std::invalid_argument("pi_kl: (m, k) = 1 required");
    if (gcd64(l, g.n) != 1) throw std::invalid_argument("pi_kl: (l, n) = 1 required");
    int d = g.d;
    std::vector<Cyc> diag;
    int64_t e = mod(k, g.m);
    for (int s = 0; s < d; ++s) {
        diag.push_back(z(g.m, e));
        e = e * g.r % g.m;
    }
    Mat PA = Mat::diag(diag), PB(d, d);
    for (int s = 0; s + 1 < d; ++s) PB(s, s + 1) = Cyc(1);
    PB(d - 1, 0) = PB(d - 1, 0) + z(g.n1, l);
    std::vector<Mat> Apow{Mat::identity(d)}, Bpow{Mat::identity(d)};
    for (int i = 1; i < g.m; ++i) Apow.push_back(Apow.back() * PA);
    for (int j = 1; j < g.n; ++j) Bpow.push_back(Bpow.back() * PB);
    std::vector<Mat> im;
    for (int x = 0; x < g.group->order(); ++x) im.push_back(Apow[x / g.n] * Bpow[x % g.n]);
    return Rep::make(g.group, std::move(im), "pi_" + std::to_string(k) + "_" + std::to_string(l));
}

CatalogGroup gamma_catalog(int m, int n, int r) {
    auto g = gamma_d(m, n, r);
    CatalogGroup c;
    c.name = "gamma:" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(r);
    c.group = g.group;
    c.gens = {g.A, g.B};
    c.add("triv", trivial_rep(c.group));
    c.add("pi_1_1", pi_kl(g, 1, 1));
    c.factory = [g](const std::string& nm) -> RepPtr {
        int k, l;
        if (std::sscanf(nm.c_str(), "pi_%d_%d", &k, &l) == 2) return pi_kl(g, k, l);
        return nullptr;
    };
    return c;
}

int wreath_element(int p, const std::vector<int>& a, int s) {
    int pp = int(ipow(p, p)), x = 0;
    for (int i = p - 1; i >= 0; --i) x = x * p + int(mod(a[i], p));
    return int(mod(s, p)) * pp + x;
}

GroupPtr wreath(int p) {
    if (p < 3 || p > 5) throw std::invalid_argument("wreath: p in {3, 5}");
    int pp = int(ipow(p, p)), N = pp * p;
    auto dec = [&](int x) {
        std::vector<int> a(p);
        for (int i = 0; i < p; ++i) {
            a[i] = x % p;
            x /= p;
        }
        return a;
    };
    std::vector<std::vector<int>> table(N, std::vector<int>(N));
    std::vector<std::string> labels;
    std::vector<int> c(p);
    for (int x = 0; x < N; ++x) {
        auto a1 = dec(x % pp);
        int s1 = x / pp;
        std::string lab = "(";
        for (int i = 0; i < p; ++i) lab += (i ? "," : "") + std::to_string(a1[i]);
        labels.push_back(lab + ")s^" + std::to_string(s1));
        for (int y = 0; y < N; ++y) {
            auto a2 = dec(y % pp);
            for (int i = 0; i < p; ++i) c[i] = a1[i] + a2[(i + s1) % p];
            table[x][y] = wreath_element(p, c, s1 + y / pp);
        }
    }
    return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
}

Subgroup wreath_base(const GroupPtr& G, int p) {
    int pp = int(ipow(p, p));
    if (G->order() != pp * p) throw std::invalid_argument("wreath_base: not a wreath group");
    Subgroup A;
    for (int x = 0; x < pp; ++x) A.elements.push_back(x);
    return A;
}

std::vector<std::vector<int>> circulant(const std::vector<int>& w, int p) {
    int k = int(w.size());
    std::vector<std::vector<int>> c(k, std::vector<int>(k));
    for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) c[j][l] = int(mod(w[mod(l - j, k)], p));
    return c;
}

bool is_admissible(const std::vector<int>& w, int p) {
    int64_t s = 0;
    for (int x : w) s += x;
    return mod(s, p) != 0;
}

bool circulant_invertible(const std::vector<std::vector<int>>& c, int p) {
    int k = int(c.size());
    auto a = c;
    for (int col = 0, row = 0; col < k; ++col) {
        int piv = -1;
        for (int i = row; i < k; ++i)
            if (mod(a[i][col], p)) {
                piv = i;
                break;
            }
        if (piv < 0) return false;
        std::swap(a[row], a[piv]);
        int64_t inv = 1;
        for (int t = 1; t < p; ++t)
            if (mod(int64_t(a[row][col]) * t, p) == 1) inv = t;
        for (int i = 0; i < k; ++i) {
            if (i == row || !mod(a[i][col], p)) continue;
            int64_t f = mod(a[i][col] * inv, p);
            for (int j = 0; j < k; ++j) a[i][j] = int(mod(a[i][j] - f * a[row][j], p));
        }
        ++row;
    }
    return true;
}

std::vector<int> apply_mod(const std::vector<std::vector<int>>& h, const std::vector<int>& w, int p) {
    std::vector<int> out(h.size());
    for (size_t i = 0; i < h.size(); ++i) {
        int64_t s = 0;
        for (size_t j = 0; j < w.size(); ++j) s += int64_t(h[i][j]) * w[j];
        out[i] = int(mod(s, p));
    }
    return out;
}

WreathForm find_unit_h(int p) {
    using M = std::vector<std::vector<int>>;
    auto mul = [p](const M& a, const M& b) {
        size_t k = a.size();
        M c(k, std::vector<int>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) {
                int64_t s = 0;
                for (size_t l = 0; l < k; ++l) s += int64_t(a[i][l]) * b[l][j];
                c[i][j] = int(mod(s, p));
            }
        return c;
    };
    std::vector<M> shifts;
    for (int i = 0; i < p; ++i) {
        std::vector<int> e(p, 0);
        e[i] = 1;
        shifts.push_back(circulant(e, p));
    }
    std::vector<int> w(p, 0);
    while (true) {
        M h = circulant(w, p);
        if (std::find(shifts.begin(), shifts.end(), h) == shifts.end()) {
            M q = h;
            for (int i = 1; i < p; ++i) q = mul(q, h);
            if (q == shifts[0]) return WreathForm{p, w, h};
        }
        int i = p - 1;
        while (i >= 0 && ++w[i] == p) w[i--] = 0;
        if (i < 0) break;
    }
    throw std::logic_error("find_unit_h: no unit found");
}

RepPtr rho_w(const GroupPtr& G, int p, const std::vector<int>& w) {
    if (int(w.size()) != p) throw std::invalid_argument("rho_w: w must have p coordinates");
    if (!is_admissible(w, p)) throw std::invalid_argument("rho_w: w is not admissible (sum of w_i is 0 mod p)");
    auto A = wreath_base(G, p);
    auto AG = G->subgroup_group(A);
    std::vector<Cyc> v;
    for (int x : A.elements) {
        int64_t s = 0;
        int y = x;
        for (int i = 0; i < p; ++i) {
            s += int64_t(w[i]) * (y % p);
            y /= p;
        }
        v.push_back(z(p, s));
    }
    auto om = linear_rep(AG, v, "omega");
    auto ind = induced_rep(G, A, *om);
    std::string nm = "rho_";
    for (int x : w) nm += std::to_string(mod(x, p));
    return Rep::make(G, ind->images(), nm, false);
}

CatalogGroup wreath_catalog(int p) {
    CatalogGroup c;
    c.name = "wreath:" + std::to_string(p);
    c.group = wreath(p);
    std::vector<int> e0(p, 0);
    e0[0] = 1;
    c.gens = {wreath_element(p, e0, 0), wreath_element(p, std::vector<int>(p, 0), 1)};
    c.add("triv", trivial_rep(c.group));
    auto h = find_unit_h(p);
    c.add("rho_w", rho_w(c.group, p, e0));
    c.add("rho_hw", rho_w(c.group, p, apply_mod(h.circulant, e0, p)));
    c.factory = [G = c.group, p](const std::string& nm) -> RepPtr {
        if (nm.rfind("rho_", 0) != 0 || int(nm.size()) != 4 + p) return nullptr;
        std::vector<int> w;
        for (int i = 0; i < p; ++i) {
            char ch = nm[4 + i];
            if (ch < '0' || ch > '9') return nullptr;
            w.push_back(ch - '0');
        }
        return rho_w(G, p, w);
    };
    return c;
}

GroupPtr elementary_abelian(int p, int m) {
    int N = int(ipow(p, m));
    std::vector<std::vector<int>> table(N, std::vector<int>(N));
    std::vector<std::string> labels;
    for (int x = 0; x < N; ++x) {
        std::string lab = "(";
        for (int i = 0, t = x; i < m; ++i, t /= p) lab += (i ? "," : "") + std::to_string(t % p);
        labels.push_back(lab + ")");
        for (int y = 0; y < N; ++y) {
            int r = 0, pw = 1;
            for (int i = 0, a = x, b = y; i < m; ++i, a /= p, b /= p, pw *= p) r += ((a % p + b % p) % p) * pw;
            table[x][y] = r;
        }
    }
    return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
}

RepPtr abelian_rep(const GroupPtr& G, int p, int m, const std::vector<std::vector<int>>& V) {
    if (G->order() != ipow(p, m)) throw std::invalid_argument("abelian_rep: group is not Z_p^m");
    for (const auto& row : V)
        if (int(row.size()) != m) throw std::invalid_argument("abelian_rep: V must be n x m");
    std::vector<Mat> im;
    for (int x = 0; x < G->order(); ++x) {
        std::vector<int> a(m);
        for (int i = 0, t = x; i < m; ++i, t /= p) a[i] = t % p;
        std::vector<Cyc> d;
        for (const auto& row : V) {
            int64_t s = 0;
            for (int i = 0; i < m; ++i) s += int64_t(row[i]) * a[i];
            d.push_back(z(p, s));
        }
        im.push_back(Mat::diag(d));
    }
    return Rep::make(G, std::move(im), "abelian", false);
}

namespace {

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    size_t i = 0;
    while (i < s.size()) {
        size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        out.push_back(std::stoi(s.substr(i, j - i)));
        i = j + 1;
    }
    return out;
}

}  // namespace

CatalogGroup catalog_group(const std::string& name) {
    auto num = [&](size_t from) {
        std::string t = name.substr(from);
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("unknown catalog group '" + name + "'");
        return std::stoi(t);
    };
    if (name.rfind("gamma:", 0) == 0) {
        auto v = parse_ints(name.substr(6));
        if (v.size() != 3) throw std::invalid_argument("gamma:m,n,r expected");
        return gamma_catalog(v[0], v[1], v[2]);
    }
    if (name.rfind("wreath:", 0) == 0) return wreath_catalog(num(7));
    if (name.rfind("abelian:", 0) == 0) {
        auto v = parse_ints(name.substr(8));
        if (v.size() != 2) throw std::invalid_argument("abelian:p,m expected");
        CatalogGroup c;
        c.name = name;
        c.group = elementary_abelian(v[0], v[1]);
        c.gens = c.group->generators();
        c.add("triv", trivial_rep(c.group));
        std::vector<std::vector<int>> I(v[1], std::vector<int>(v[1], 0));
        for (int i = 0; i < v[1]; ++i) I[i][i] = 1;
        c.add("identity", abelian_rep(c.group, v[0], v[1], I));
        c.add("regular", regular_rep(c.group));
        return c;
    }
    if (name == "Q8") return quaternion();
    if (name == "2T") return binary_tetrahedral();
    if (!name.empty() && (name[0] == 'Z' || name[0] == 'C')) return cyclic(num(1));
    if (!name.empty() && name[0] == 'S') return symmetric(num(1));
    if (!name.empty() && name[0] == 'A') return alternating(num(1));
    if (!name.empty() && name[0] == 'H') return heisenberg(num(1));
    throw std::invalid_argument("unknown catalog group '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"Z2", "Z3", "Z4", "Z6", "S3", "S4", "S5", "A4", "A5", "Q8", "2T", "H3", "gamma:7,9,2", "wreath:3",
            "abelian:3,2"};
}

}  // namespace pirep
