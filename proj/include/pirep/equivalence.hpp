#pragma once
#include <optional>
#include <utility>
#include <vector>
#include "pirep/expr.hpp"
#include "pirep/rep.hpp"

namespace pirep {

// (value, |chi^-1(value)|), canonically ordered
using RangeSignature = std::vector<std::pair<Cyc, int>>;
struct SpectralBlock {
    int size = 0;
    Spectrum spectrum;
    friend bool operator==(const SpectralBlock&, const SpectralBlock&) = default;
};
// blocks sorted by size descending, then spectrum
using SpectralSignature = std::vector<SpectralBlock>;

RangeSignature range_signature(const Character& chi);
SpectralSignature spectral_signature(const Rep& rep);
bool range_equal(const Character& a, const Character& b);
bool range_signature_equal(const Character& a, const Character& b);

bool gassmann_equivalent(const Rep& a, const Rep& b);
bool strong_gassmann(const Rep& a, const Rep& b);
bool table_equivalent(const Character& a, const Character& b);
bool strongly_table_equivalent(const Character& a, const Character& b);

// least t coprime to the exponent with chi_b(x) = chi_a(x^t)
std::optional<int64_t> galois_conjugate_reps(const Rep& a, const Rep& b);
// automorphism alpha (as a permutation) with chi_b(alpha(x)) = chi_a(x)
std::optional<std::vector<int>> similar_reps(const Rep& a, const Rep& b, std::vector<int> gens = {});

struct UniformResult {
    bool equivalent = true;
    std::vector<Subgroup> failing;  // by order descending, then elements
};
UniformResult uniformly_gassmann(const Rep& a, const Rep& b, int jobs = 1);

json range_signature_json(const RangeSignature& s);
json spectral_signature_json(const SpectralSignature& s);
// the full predicate record for two reps of one group (cross-group: signatures only)
json compare_reps(const Rep& a, const Rep& b, int jobs = 1);

std::vector<std::string> experiment_names();
json run_experiment(const std::string& name);

}  // namespace pirep
