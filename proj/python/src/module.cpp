#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pirep/catalog.hpp"
#include "pirep/equivalence.hpp"
#include "pirep/identity.hpp"
#include "pirep/io.hpp"
#include "pirep/verifier.hpp"

namespace py = pybind11;
using namespace pirep;

namespace {

// holder for the const shared pointer the library hands out
struct RepHandle {
    RepPtr p;
    const Rep& operator*() const { return *p; }
};

std::vector<std::string> character_strings(const Rep& r) {
    std::vector<std::string> out;
    for (auto& c : r.character().values) out.push_back(c.str());
    return out;
}

VerifyOptions options(int64_t budget, int orderings, int64_t samples, uint64_t seed, int jobs) {
    VerifyOptions o;
    o.budget = budget;
    o.orderings = orderings;
    o.samples = samples;
    o.seed = seed;
    o.jobs = jobs;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact representation identities of finite groups";

    py::class_<RepHandle>(m, "Rep")
        .def_property_readonly("dim", [](const RepHandle& r) { return r.p->dim(); })
        .def_property_readonly("name", [](const RepHandle& r) { return r.p->name(); })
        .def_property_readonly("group_order", [](const RepHandle& r) { return r.p->group()->order(); })
        .def("character", [](const RepHandle& r) { return character_strings(*r); })
        .def("galois", [](const RepHandle& r, int64_t t) { return RepHandle{r.p->galois(t)}; }, py::arg("t"))
        .def("is_irreducible", [](const RepHandle& r) { return is_irreducible(*r); })
        .def("is_unitary", [](const RepHandle& r) { return is_unitary(*r); })
        .def("to_json", [](const RepHandle& r) { return rep_to_json(*r).dump(); })
        .def("__repr__", [](const RepHandle& r) {
            return "<Rep " + r.p->name() + " dim=" + std::to_string(r.p->dim()) + " |G|=" +
                   std::to_string(r.p->group()->order()) + ">";
        });

    py::class_<IdentityDoc>(m, "Identity")
        .def_readonly("family", &IdentityDoc::family)
        .def_readonly("citation", &IdentityDoc::citation)
        .def_readonly("flags", &IdentityDoc::flags)
        .def("to_json", [](const IdentityDoc& d) { return doc_to_json(d).dump(); })
        .def("expression", [](const IdentityDoc& d) { return expr_to_string(d.expr); })
        .def("expand", [](const IdentityDoc& d, int64_t limit) { return expand_subsets(d, limit); },
             py::arg("limit") = 5000);

    m.def("resolve_rep", [](const std::string& ref) { return RepHandle{resolve_rep(ref)}; }, py::arg("ref"));
    m.def("rep_from_json", [](const std::string& s) { return RepHandle{rep_from_json(json::parse(s))}; });
    m.def("identity_from_json", [](const std::string& s) { return doc_from_json(json::parse(s)); });
    m.def("catalog_names", &catalog_names);
    m.def("catalog_reps", [](const std::string& name) { return catalog_group(name).rep_order; });

    m.def("guard", &guard_C, py::arg("m"));
    m.def("psi", &psi, py::arg("m"));
    m.def("theta", &theta, py::arg("m"));
    m.def("character_identity", [](const RepHandle& r) { return character_identity(*r); });
    m.def("dimension_identity", &dimension_identity, py::arg("m"), py::arg("n"));
    m.def("class_identity", [](const RepHandle& r, bool adams) { return class_identity(*r, adams); },
          py::arg("rep"), py::arg("adams") = false);
    m.def("s4_separating_identity", &s4_separating_identity, py::arg("sign"));
    m.def("minimal_poly_identity", [](const RepHandle& r, bool maximal) { return minimal_poly_identity(*r, maximal); },
          py::arg("rep"), py::arg("maximal") = false);
    m.def("gamma_separating_identity",
          [](int mm, int n, int r, int l, bool printed) { return gamma_d_separating_identity(gamma_d(mm, n, r), l, printed); },
          py::arg("m"), py::arg("n"), py::arg("r"), py::arg("l") = 1, py::arg("printed_range") = false);
    m.def("probability_identity",
          [](const std::string& u, int t, int mm) { return probability_identity(parse_expr(u), t, mm); },
          py::arg("u"), py::arg("t"), py::arg("m"));
    m.def("standard_identity", &standard_identity, py::arg("k"));
    m.def("s2_identity", &s2_identity);
    m.def("sl2_trace_identity", &sl2_trace_identity);

    m.def(
        "check",
        [](const IdentityDoc& d, const RepHandle& r, const std::string& mode, int64_t budget, int orderings,
           int64_t samples, uint64_t seed, int jobs) {
            py::gil_scoped_release release;
            auto v = check(d, r.p, mode, options(budget, orderings, samples, seed, jobs));
            return verdict_to_json(v, r.p->group()).dump();
        },
        py::arg("identity"), py::arg("rep"), py::arg("mode") = "auto", py::arg("budget") = 5'000'000,
        py::arg("orderings") = 5, py::arg("samples") = 500, py::arg("seed") = kDefaultSeed, py::arg("jobs") = 1);
    m.def(
        "sl2_check",
        [](const IdentityDoc& d, int trials, uint64_t seed) {
            auto v = sl2_sample_check(d.expr, trials, seed);
            return py::make_tuple(v.holds, v.trials, v.seed);
        },
        py::arg("identity"), py::arg("trials") = 1000, py::arg("seed") = kDefaultSeed);
    m.def(
        "compare", [](const RepHandle& a, const RepHandle& b, int jobs) { return compare_reps(*a, *b, jobs).dump(); },
        py::arg("a"), py::arg("b"), py::arg("jobs") = 1);
    m.def("experiment_names", &experiment_names);
    m.def("run_experiment", [](const std::string& name) { return run_experiment(name).dump(); });
    m.def("relation_probability",
          [](const std::string& u, const RepHandle& r) { return relation_probability(parse_expr(u), r.p).str(); },
          py::arg("u"), py::arg("rep"));
    m.def("galois_conjugate", [](const RepHandle& a, const RepHandle& b) { return galois_conjugate_reps(*a, *b); });
}
