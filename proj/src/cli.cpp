#include "kfb/cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kfb/acceptance.hpp"
#include "kfb/braid.hpp"
#include "kfb/constructors.hpp"
#include "kfb/report.hpp"
#include "kfb/verifier.hpp"

namespace kfb {

namespace {

struct Options {
    std::string format = "text";
    bool quiet = false;
    std::string data_dir;
    std::optional<int> window;
};

void emit(const Report& rep, const Options& opt) {
    if (opt.quiet) return;
    std::cout << (opt.format == "json" ? rep.json() : rep.text());
}

std::string pl_str(const PLFunction& pl) {
    std::ostringstream os;
    for (size_t k = 0; k < pl.samples.size(); ++k)
        os << (k ? " " : "") << "(" << pl.samples[k].first << "," << pl.samples[k].second << ")";
    return os.str();
}

std::string nf_str(const GarsideNF& nf) {
    std::ostringstream os;
    os << "D^" << nf.inf;
    for (const auto& f : nf.factors) os << " | " << factor_word_str(f);
    return os.str();
}

std::string chain_str(const BridgeCertificate& cert) {
    std::ostringstream os;
    for (size_t k = 0; k < cert.chain.size(); ++k)
        os << (k ? " <= " : "") << cert.chain[k].value;
    return os.str();
}

std::string verdict_str(PropositionVerdict::Status s) {
    switch (s) {
        case PropositionVerdict::Status::Pass: return "PASS";
        case PropositionVerdict::Status::NotApplicable: return "NOT_APPLICABLE";
        default: return "CONTRADICTION";
    }
}

int cmd_invariants(const std::string& path, const Options& opt) {
    FilteredComplex c = load_cfk_file(path);
    ValidationReport val = validate(c);
    if (!val.ok()) {
        std::cerr << "complex fails validation:\n" << val.summary();
        return 2;
    }
    Report rep("invariants");
    rep.input("complex", path);
    rep.line("generators", std::to_string(c.size()), "trivial");
    rep.line("tau", std::to_string(tau(c)), "computed");
    PLFunction pl = upsilon_pl(c, opt.window);
    rep.line("upsilon_breakpoints", pl_str(pl), "computed");
    TorsionResult tors = torsion_order(c);
    rep.line("ord", std::to_string(tors.ord), "computed");
    std::ostringstream torsion;
    for (size_t k = 0; k < tors.module.torsion_orders.size(); ++k)
        torsion << (k ? "," : "") << tors.module.torsion_orders[k];
    rep.line("torsion_orders", tors.module.torsion_orders.empty() ? "none" : torsion.str(),
             "computed");
    rep.line("free_rank", std::to_string(tors.module.free_rank), "computed");
    for (const auto& [am, dim] : hfk_hat(c)) {
        std::ostringstream key;
        key << "hfk(" << am.first << "," << am.second << ")";
        rep.line(key.str(), std::to_string(dim), "computed");
    }
    emit(rep, opt);
    return 0;
}

void certificate_lines(Report& rep, const BridgeCertificate& cert) {
    rep.line("strands", std::to_string(cert.word.strands), "trivial");
    rep.line("knot_closure", cert.knot ? "yes" : "no", "computed");
    rep.line("normal_form", nf_str(cert.nf), "computed");
    rep.line("twist_positive", cert.twist_positive ? "yes" : "no", "computed");
    if (cert.gamma) rep.line("gamma", braid_str(*cert.gamma), "computed");
    rep.line("genus", std::to_string(cert.genus), "computed");
    rep.line("tau", std::to_string(cert.tau), "computed");
    rep.line("certificate", cert.complete ? "complete" : "bounds-only", "computed");
    if (cert.complete) {
        rep.line("bridge", std::to_string(cert.n),
                 "cited(Juhasz-Miller-Zemke 2020; Feller-Krcatovich 2017)+computed");
        rep.line("braid_index", std::to_string(cert.n),
                 "cited(Franks-Williams 1987; Morton 1986)");
        if (cert.ord_lower_bound)
            rep.line("ord_lower_bound", std::to_string(*cert.ord_lower_bound),
                     "cited(Feller-Krcatovich 2017)+computed");
        rep.line("chain", chain_str(cert), "computed");
    } else {
        rep.line("bridge_upper", std::to_string(cert.bridge_upper), "trivial");
        rep.line("braid_upper", std::to_string(cert.word.strands), "trivial");
        rep.line("ord_bound", "Ord <= bridge - 1 (symbolic)",
                 "cited(Juhasz-Miller-Zemke 2020)");
    }
    rep.line("basis", cert.basis, "computed");
    if (cert.complex_label) {
        rep.line("complex", *cert.complex_label, "computed");
        if (cert.attached) {
            rep.line("complex_verdict", verdict_str(cert.attached->status), "computed");
            rep.line("complex_ord", std::to_string(cert.attached->ord), "computed");
        }
    }
}

int cmd_braid(const std::string& word, const Options& opt) {
    BraidWord b = parse_braid(word);
    Report rep("braid");
    rep.input("word", word);
    if (!b.positive()) {
        rep.line("strands", std::to_string(b.strands), "trivial");
        rep.line("positive", "no", "computed");
        rep.line("knot_closure", closure_is_knot(b) ? "yes" : "no", "computed");
        rep.line("note", "normal form and certificates need a positive word", "trivial");
        emit(rep, opt);
        return 0;
    }
    if (!closure_is_knot(b)) {
        rep.line("strands", std::to_string(b.strands), "trivial");
        rep.line("positive", "yes", "computed");
        rep.line("knot_closure", "no", "computed");
        rep.line("normal_form", nf_str(garside_normal_form(b)), "computed");
        TwistPositivity tp = is_twist_positive(b);
        rep.line("twist_positive", tp.twist_positive ? "yes" : "no", "computed");
        if (tp.gamma) rep.line("gamma", braid_str(*tp.gamma), "computed");
        rep.line("note", "closure is a link; certificates cover knots only", "trivial");
        emit(rep, opt);
        return 0;
    }
    BridgeCertificate cert = bridge_certificate(b, opt.data_dir);
    certificate_lines(rep, cert);
    emit(rep, opt);
    return 0;
}

int cmd_ttk(int p, int q, int r, int s, const Options& opt) {
    BraidWord b = twisted_torus_braid(p, q, r, s);
    Report rep("ttk");
    rep.input("p", std::to_string(p));
    rep.input("q", std::to_string(q));
    rep.input("r", std::to_string(r));
    rep.input("s", std::to_string(s));
    rep.line("word", braid_str(b), "trivial");
    if (!closure_is_knot(b)) {
        rep.line("knot_closure", "no", "computed");
        rep.line("note", "closure is a link; no certificate", "trivial");
        emit(rep, opt);
        return 0;
    }
    BridgeCertificate cert = bridge_certificate(b, opt.data_dir);
    certificate_lines(rep, cert);
    emit(rep, opt);
    return 0;
}

int cmd_verify(const std::string& path, int n, const Options& opt) {
    FilteredComplex c = load_cfk_file(path);
    ValidationReport val = validate(c);
    if (!val.ok()) {
        std::cerr << "complex fails validation:\n" << val.summary();
        return 2;
    }
    PropositionVerdict v = verify_proposition(c, n, opt.window);
    Report rep("verify");
    rep.input("complex", path);
    rep.input("n", std::to_string(n));
    rep.line("tau", std::to_string(v.conditions.tau), "computed");
    rep.line("cond1", v.conditions.cond1 ? "true" : "false", "computed");
    rep.line("cond2", v.conditions.cond2 ? "true" : "false", "computed");
    auto margins = [](const std::vector<std::pair<Rational, Rational>>& ms) {
        std::ostringstream os;
        for (size_t k = 0; k < ms.size(); ++k)
            os << (k ? " " : "") << "t=" << ms[k].first << ":" << ms[k].second;
        return os.str();
    };
    rep.line("cond1_margins", margins(v.conditions.cond1_margins), "computed");
    rep.line("cond2_margins", margins(v.conditions.cond2_margins), "computed");
    rep.line("region_full", v.regions.full_surjective ? "surjective" : "not-surjective",
             "computed");
    rep.line("region_strict", v.regions.strict_surjective ? "surjective" : "not-surjective",
             "computed");
    rep.line("region_line_restricted",
             v.regions.line_restricted_surjective ? "surjective" : "not-surjective", "computed");
    if (v.regions.witness) {
        std::ostringstream os;
        for (const auto& p : v.regions.witness->chain) {
            os << p.gen << "@(" << p.i << "," << p.j << ")";
            if (p.on_line) os << "*";
            os << " ";
        }
        rep.line("witness_cycle", os.str(), "computed");
    }
    if (v.vertical_witness) {
        std::ostringstream os;
        os << "y=" << v.vertical_witness->y << " x=" << v.vertical_witness->x
           << " length=" << v.vertical_witness->vertical_length << " m=" << v.vertical_witness->m;
        rep.line("long_vertical", os.str(), "computed");
    } else {
        rep.line("long_vertical", "none", "computed");
    }
    rep.line("ord", std::to_string(v.ord), "computed");
    rep.line("verdict", verdict_str(v.status), "computed");
    rep.line("simplest_case", simplest_case_configuration(c, n) ? "yes" : "no", "computed");
    emit(rep, opt);
    if (v.status == PropositionVerdict::Status::Contradiction) {
        std::cerr << "proposition contradicted on computed data\n";
        return 3;
    }
    return 0;
}

int cmd_selftest(const Options& opt) {
    auto results = run_acceptance(opt.data_dir);
    Report rep("selftest");
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        if (!opt.quiet)
            std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.number << ": "
                      << r.name << " (" << r.detail << ")\n";
        rep.line("criterion_" + std::to_string(r.number), r.passed ? "pass" : "fail", "computed");
    }
    if (opt.format == "json" && !opt.quiet) std::cout << rep.json();
    return all ? 0 : 3;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"filtered knot Floer complexes, braid normal forms, and bridge-index certificates"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_flag("--quiet", opt.quiet, "suppress the report body");
    app.add_option("--data-dir", opt.data_dir, "bundled complex directory");
    int window = -1;
    auto* wopt = app.add_option("--window", window, "truncation window override");

    std::string complex_path, word;
    int n = 0, p = 0, q = 0, r = 0, s = 0;

    auto* inv = app.add_subcommand("invariants", "tau, upsilon, ord, HFK-hat of a complex");
    inv->fallthrough();
    inv->add_option("--complex", complex_path, "path to a .cfk file")->required();

    auto* braid = app.add_subcommand("braid", "normal form, twist positivity, certificate");
    braid->fallthrough();
    braid->add_option("--word", word, "braid word, e.g. \"B3: 1 2 1 2\"")->required();

    auto* ttk = app.add_subcommand("ttk", "certify a positive twisted torus knot");
    ttk->fallthrough();
    ttk->add_option("--p", p)->required();
    ttk->add_option("--q", q)->required();
    ttk->add_option("--r", r)->required();
    ttk->add_option("--s", s)->required();

    auto* verify = app.add_subcommand("verify", "condition checks, lemma witnesses, verdict");
    verify->fallthrough();
    verify->add_option("--complex", complex_path, "path to a .cfk file")->required();
    verify->add_option("--n", n, "strand-count parameter")->required();

    app.add_subcommand("selftest", "run the bundled acceptance suite")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << e.what() << "\n";
        return 1;
    }
    if (wopt->count() > 0) {
        if (window < 0) {
            std::cerr << "--window must be nonnegative\n";
            return 1;
        }
        opt.window = window;
    }

    try {
        if (inv->parsed()) return cmd_invariants(complex_path, opt);
        if (braid->parsed()) return cmd_braid(word, opt);
        if (ttk->parsed()) return cmd_ttk(p, q, r, s, opt);
        if (verify->parsed()) return cmd_verify(complex_path, n, opt);
        return cmd_selftest(opt);
    } catch (const InternalError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace kfb
