#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kfb/acceptance.hpp"
#include "kfb/braid.hpp"
#include "kfb/constructors.hpp"
#include "kfb/invariants.hpp"
#include "kfb/verifier.hpp"

namespace py = pybind11;
using namespace kfb;

namespace {

// Exact rationals cross the boundary as strings; the python wrapper turns
// them into fractions.Fraction.
std::string rat(const Rational& r) { return rational_str(r); }

py::dict condition_dict(const ConditionReport& rep) {
    py::dict d;
    d["n"] = rep.n;
    d["tau"] = rep.tau;
    d["cond1"] = rep.cond1;
    d["cond2"] = rep.cond2;
    py::list m1, m2;
    for (const auto& [t, m] : rep.cond1_margins) m1.append(py::make_tuple(rat(t), rat(m)));
    for (const auto& [t, m] : rep.cond2_margins) m2.append(py::make_tuple(rat(t), rat(m)));
    d["cond1_margins"] = m1;
    d["cond2_margins"] = m2;
    return d;
}

py::dict region_dict(const RegionReport& rep) {
    py::dict d;
    d["n"] = rep.n;
    d["tau"] = rep.tau;
    d["full_surjective"] = rep.full_surjective;
    d["strict_surjective"] = rep.strict_surjective;
    d["line_restricted_surjective"] = rep.line_restricted_surjective;
    d["lemma_holds"] = rep.lemma_holds();
    if (rep.witness) {
        py::list chain;
        for (const auto& p : rep.witness->chain) {
            py::dict w;
            w["gen"] = p.gen;
            w["u_shift"] = p.u_shift;
            w["i"] = p.i;
            w["j"] = p.j;
            w["on_line"] = p.on_line;
            chain.append(w);
        }
        d["witness"] = chain;
    } else {
        d["witness"] = py::none();
    }
    return d;
}

py::dict verdict_dict(const PropositionVerdict& v) {
    py::dict d;
    switch (v.status) {
        case PropositionVerdict::Status::Pass: d["status"] = "PASS"; break;
        case PropositionVerdict::Status::NotApplicable: d["status"] = "NOT_APPLICABLE"; break;
        default: d["status"] = "CONTRADICTION"; break;
    }
    d["conditions"] = condition_dict(v.conditions);
    d["regions"] = region_dict(v.regions);
    d["ord"] = v.ord;
    d["free_rank"] = v.module.free_rank;
    d["torsion_orders"] = v.module.torsion_orders;
    if (v.vertical_witness) {
        py::dict w;
        w["y"] = v.vertical_witness->y;
        w["x"] = v.vertical_witness->x;
        w["vertical_length"] = v.vertical_witness->vertical_length;
        w["m"] = v.vertical_witness->m;
        d["vertical_witness"] = w;
    } else {
        d["vertical_witness"] = py::none();
    }
    return d;
}

py::dict certificate_dict(const BridgeCertificate& cert) {
    py::dict d;
    d["word"] = braid_str(cert.word);
    d["strands"] = cert.word.strands;
    d["twist_positive"] = cert.twist_positive;
    d["gamma"] = cert.gamma ? py::object(py::str(braid_str(*cert.gamma))) : py::none();
    d["genus"] = cert.genus;
    d["tau"] = cert.tau;
    d["complete"] = cert.complete;
    d["n"] = cert.n;
    d["bridge_upper"] = cert.bridge_upper;
    d["basis"] = cert.basis;
    py::list chain;
    for (const auto& e : cert.chain)
        chain.append(py::make_tuple(e.name, e.value, e.provenance));
    d["chain"] = chain;
    d["complex"] = cert.complex_label ? py::object(py::str(*cert.complex_label)) : py::none();
    d["verdict"] = cert.attached ? py::object(verdict_dict(*cert.attached)) : py::none();
    return d;
}

} // namespace

PYBIND11_MODULE(_kfbridge, m) {
    m.doc() = "filtered knot Floer complexes, torsion order, Upsilon, Garside "
              "normal form, and bridge-index certificates";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ComplexValidationError", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalInconsistency", PyExc_RuntimeError);

    py::class_<FilteredComplex>(m, "Complex")
        .def(py::init<>())
        .def("add_generator", &FilteredComplex::add_generator)
        .def("toggle_arrow",
             py::overload_cast<const std::string&, const std::string&, int>(
                 &FilteredComplex::toggle_arrow))
        .def("set_symmetric", &FilteredComplex::set_symmetric)
        .def_property_readonly("size", &FilteredComplex::size)
        .def_property_readonly("symmetric", &FilteredComplex::symmetric)
        .def("generators",
             [](const FilteredComplex& c) {
                 py::list out;
                 for (const auto& g : c.generators())
                     out.append(py::make_tuple(g.id, g.alexander, g.maslov));
                 return out;
             })
        .def("arrows",
             [](const FilteredComplex& c) {
                 py::list out;
                 for (const auto& a : c.arrows())
                     out.append(py::make_tuple(c.gen(a.source).id, c.gen(a.target).id,
                                               a.u_power));
                 return out;
             })
        .def("__repr__", [](const FilteredComplex& c) {
            return "<Complex with " + std::to_string(c.size()) + " generators>";
        });

    m.def("parse_cfk", py::overload_cast<const std::string&>(&parse_cfk));
    m.def("load_cfk", &load_cfk_file);
    m.def("write_cfk", &write_cfk);
    m.def("validate", [](const FilteredComplex& c) {
        py::list out;
        for (const auto& v : validate(c).violations)
            out.append(py::make_tuple(v.law, v.detail));
        return out;
    });

    m.def("tau", &tau);
    m.def("default_window", &default_window);
    m.def(
        "upsilon_at",
        [](const FilteredComplex& c, const std::string& t, std::optional<int> window) {
            return rat(upsilon_at(c, parse_rational(t), window));
        },
        py::arg("complex"), py::arg("t"), py::arg("window") = py::none());
    m.def(
        "upsilon_pl",
        [](const FilteredComplex& c, std::optional<int> window) {
            py::list out;
            for (const auto& [t, v] : upsilon_pl(c, window).samples)
                out.append(py::make_tuple(rat(t), rat(v)));
            return out;
        },
        py::arg("complex"), py::arg("window") = py::none());
    m.def("hfk_hat", [](const FilteredComplex& c) {
        py::dict out;
        for (const auto& [am, dim] : hfk_hat(c))
            out[py::make_tuple(am.first, am.second)] = dim;
        return out;
    });
    m.def("torsion_order", [](const FilteredComplex& c) {
        TorsionResult t = torsion_order(c);
        py::dict out;
        out["ord"] = t.ord;
        out["free_rank"] = t.module.free_rank;
        out["torsion_orders"] = t.module.torsion_orders;
        return out;
    });
    m.def("reduce", &reduce);

    m.def("torus_alexander", [](int p, int q) {
        py::list out;
        for (const auto& term : torus_alexander(p, q).terms())
            out.append(py::make_tuple(term.exponent, term.sign));
        return out;
    });
    m.def("staircase_from_alexander", [](const std::vector<std::pair<int, int>>& terms) {
        std::vector<AlexTerm> ts;
        for (auto [e, s] : terms) ts.push_back({e, s});
        return staircase_from_alexander(AlexPoly::from_terms(std::move(ts)));
    });
    m.def("staircase_torus", &staircase_torus);
    m.def("tensor_product", &tensor_product);
    m.def("bundled_labels", &bundled_labels);
    m.def("load_bundled", &load_bundled, py::arg("label"), py::arg("data_dir") = "");

    m.def(
        "check_conditions",
        [](const FilteredComplex& c, int n, std::optional<int> window) {
            return condition_dict(check_conditions(c, n, window));
        },
        py::arg("complex"), py::arg("n"), py::arg("window") = py::none());
    m.def(
        "lemma_cycle_witness",
        [](const FilteredComplex& c, int n, std::optional<int> window) {
            return region_dict(lemma_cycle_witness(c, n, window));
        },
        py::arg("complex"), py::arg("n"), py::arg("window") = py::none());
    m.def("long_vertical_differential", [](const FilteredComplex& c, int n) -> py::object {
        auto w = long_vertical_differential(c, n);
        if (!w) return py::none();
        py::dict d;
        d["y"] = w->y;
        d["x"] = w->x;
        d["vertical_length"] = w->vertical_length;
        d["m"] = w->m;
        return d;
    });
    m.def(
        "verify_proposition",
        [](const FilteredComplex& c, int n, std::optional<int> window) {
            return verdict_dict(verify_proposition(c, n, window));
        },
        py::arg("complex"), py::arg("n"), py::arg("window") = py::none());

    m.def("parse_braid", [](const std::string& text) {
        BraidWord b = parse_braid(text);
        return py::make_tuple(b.strands, b.letters);
    });
    m.def("closure_is_knot", [](const std::string& text) {
        return closure_is_knot(parse_braid(text));
    });
    m.def("garside_normal_form", [](const std::string& text) {
        GarsideNF nf = garside_normal_form(parse_braid(text));
        py::list factors;
        for (const auto& f : nf.factors) factors.append(factor_word_str(f));
        py::dict d;
        d["strands"] = nf.strands;
        d["inf"] = nf.inf;
        d["factors"] = factors;
        return d;
    });
    m.def("is_twist_positive", [](const std::string& text) {
        TwistPositivity tp = is_twist_positive(parse_braid(text));
        py::dict d;
        d["twist_positive"] = tp.twist_positive;
        d["inf"] = tp.nf.inf;
        d["gamma"] = tp.gamma ? py::object(py::str(braid_str(*tp.gamma))) : py::none();
        return d;
    });
    m.def("positive_genus_tau", [](const std::string& text) {
        GenusTau gt = positive_genus_tau(parse_braid(text));
        return py::make_tuple(gt.genus, gt.tau);
    });
    m.def("twisted_torus_braid", [](int p, int q, int r, int s) {
        return braid_str(twisted_torus_braid(p, q, r, s));
    });
    m.def(
        "bridge_certificate",
        [](const std::string& text, const std::string& data_dir) {
            return certificate_dict(bridge_certificate(parse_braid(text), data_dir));
        },
        py::arg("word"), py::arg("data_dir") = "");

    m.def(
        "run_acceptance",
        [](const std::string& data_dir) {
            py::list out;
            for (const auto& r : run_acceptance(data_dir))
                out.append(py::make_tuple(r.number, r.name, r.passed, r.detail));
            return out;
        },
        py::arg("data_dir") = "");
}
