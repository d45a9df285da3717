#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace pirep {

struct Subgroup {
    std::vector<int> elements;  // sorted, contains 0
    int order() const { return int(elements.size()); }
    bool contains(int g) const;
    friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
};

struct ConjClassList {
    std::vector<std::vector<int>> classes;  // each sorted
    std::vector<int> sizes;
    std::vector<int> reps;  // minimal index per class
    std::vector<int> class_of;  // element -> class position
};

struct GroupLimits {
    int all_subgroups_max_order = 200;
    int automorphisms_max_order = 128;
    int automorphisms_max_gens = 3;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
public:
    // table[a][b] = index of a*b; element 0 must be the identity
    static GroupPtr from_cayley_table(std::vector<std::vector<int>> table, std::vector<std::string> labels = {});

    int order() const { return m_; }
    int mul(int a, int b) const { return table_[size_t(a) * m_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int pow(int g, int64_t k) const;
    int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
    int commutator(int a, int b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(int g) const;
    std::vector<std::vector<int>> table() const;

    int element_order(int g) const { return order_[g]; }
    std::vector<int> order_statistics() const;
    int exponent() const;

    const ConjClassList& classes() const;
    bool is_abelian() const;

    Subgroup whole() const;
    Subgroup trivial() const { return Subgroup{{0}}; }
    Subgroup center() const;
    Subgroup centralizer(int g) const;
    Subgroup subgroup_generated(const std::vector<int>& gens) const;
    std::vector<Subgroup> all_subgroups(const GroupLimits& lim = {}) const;
    std::vector<Subgroup> upper_central_series() const;
    bool is_normal(const Subgroup& h) const;
    // left coset representatives (minimal element of each coset gH), ascending
    std::vector<int> coset_reps(const Subgroup& h) const;
    // the subgroup as a standalone table group, elements in sorted order
    GroupPtr subgroup_group(const Subgroup& h) const;

    std::vector<int> generators() const;  // greedy small generating set
    // all automorphisms as permutations; gens must generate the group
    std::vector<std::vector<int>> automorphisms(const std::vector<int>& gens, const GroupLimits& lim = {}) const;
    // extend generator images to a homomorphism into `target`; nullopt if relations fail
    std::optional<std::vector<int>> extend_hom(const std::vector<int>& gens, const std::vector<int>& images,
                                               const FiniteGroup& target) const;
    std::optional<std::vector<int>> power_map(int64_t t) const;

private:
    FiniteGroup() = default;
    void validate() const;

    int m_ = 0;
    std::vector<int> table_;
    std::vector<int> inv_;
    std::vector<int> order_;
    std::vector<std::string> labels_;
    mutable std::once_flag classes_once_;
    mutable ConjClassList classes_;
};

}  // namespace pirep
