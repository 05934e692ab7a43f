#include "qlr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qlr/error.hpp"
#include "qlr/io.hpp"

namespace qlr::cli {

namespace {

using io::json;

constexpr double kRoundtripTolerance = 1e-12;

struct Options {
    std::string input;
    std::string model;
    std::string context;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    double tol_prob = kProbTolerance;
    double tol_stat = 4.0;
    std::string format = "json";
    std::string out;
    std::string collectives_dir;
    bool with_a_given_b = false;
};

void diagnostic(std::ostream& err, const std::string& kind, const std::string& message,
                const std::string& precondition = {}, const std::string& context = {}) {
    json j{{"error", kind}, {"message", message}};
    if (!precondition.empty()) j["precondition"] = precondition;
    if (!context.empty()) j["context"] = context;
    err << j.dump() << '\n';
}

class Output {
public:
    Output(const Options& opt, std::ostream& fallback) : fallback_(fallback) {
        if (!opt.out.empty()) {
            file_.open(opt.out, std::ios::binary);
            if (!file_) throw SchemaError("cannot write '" + opt.out + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

void emit_json(const Options& opt, std::ostream& out, const json& j) {
    Output o(opt, out);
    o.stream() << j.dump(2) << '\n';
}

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::string complex_text(const json& pair) {
    const double re = pair[0].get<double>();
    const double im = pair[1].get<double>();
    return num(re) + (std::signbit(im) ? " - " : " + ") + num(std::abs(im)) + "i";
}

void require_format(const Options& opt, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (opt.format == f) return;
    throw SchemaError("format '" + opt.format + "' is not available for this command");
}

// ---------------------------------------------------------------- validate

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
    require_format(opt, {"json", "text"});
    const ContextCatalog catalog = io::load_catalog(opt.input);
    const ValidationReport rep = catalog.validate(opt.tol_prob);

    json contexts = json::object();
    for (const auto& [id, d] : catalog.contexts()) {
        const auto r = validate_context_data(d, opt.tol_prob);
        contexts[id] = json{{"delta", r.deltas}, {"balance", r.balance}, {"valid", r.ok()}};
    }
    if (opt.format == "text") {
        Output o(opt, out);
        o.stream() << (rep.ok() ? "valid" : "invalid") << '\n';
        for (const auto& [id, c] : contexts.items())
            o.stream() << id << ": delta = (" << num(c["delta"][0].get<double>()) << ", "
                       << num(c["delta"][1].get<double>()) << ")\n";
        for (const auto& v : rep.violations)
            o.stream() << "violation [" << to_string(v.kind) << "] " << v.context_id << ": " << v.message << '\n';
    } else {
        json vs = json::array();
        for (const auto& v : rep.violations) vs.push_back(io::to_json(v));
        emit_json(opt, out, json{{"valid", rep.ok()}, {"contexts", contexts}, {"violations", vs}});
    }
    if (!rep.ok()) {
        for (const auto& v : rep.violations) diagnostic(err, "validation", v.message, to_string(v.kind), v.context_id);
        return kValidationFailure;
    }
    return kOk;
}

bool validate_or_report(const ContextCatalog& catalog, double tol, std::ostream& err) {
    const ValidationReport rep = catalog.validate(tol);
    for (const auto& v : rep.violations) diagnostic(err, "validation", v.message, to_string(v.kind), v.context_id);
    return rep.ok();
}

// ---------------------------------------------------------------- analyze

json analyze_context(const ContextData& d, double tol) {
    const InterferenceProfile p = classify_context(d, tol);
    json j = io::to_json(p);
    try {
        j["ftp"] = io::to_json(ftp_with_interference(d, p));
    } catch (const RepresentationRefused& e) {
        j["ftp"] = json{{"refused", e.precondition()}};
    }
    if (d.a_given_b) j["symmetry"] = io::to_json(symmetry_diagnostic(d, tol));
    return j;
}

int cmd_analyze(const Options& opt, std::ostream& out, std::ostream& err) {
    require_format(opt, {"json", "text"});
    const ContextCatalog catalog = io::load_catalog(opt.input);
    if (!validate_or_report(catalog, opt.tol_prob, err)) return kValidationFailure;

    json contexts = json::array();
    for (const auto& [id, d] : catalog.contexts()) contexts.push_back(analyze_context(d, opt.tol_prob));

    if (opt.format == "text") {
        Output o(opt, out);
        for (const auto& c : contexts) {
            o.stream() << c["context"].get<std::string>() << ": " << c["classification"].get<std::string>();
            for (const auto& t : c["terms"]) {
                o.stream() << "  lambda=" << (t["lambda"].is_null() ? std::string("undefined") : num(t["lambda"].get<double>()))
                           << " theta=" << num(t["theta"].get<double>());
            }
            o.stream() << '\n';
        }
    } else {
        emit_json(opt, out, json{{"contexts", contexts}});
    }
    return kOk;
}

// ---------------------------------------------------------------- represent

int cmd_represent(const Options& opt, std::ostream& out, std::ostream& err) {
    require_format(opt, {"json", "text"});
    const ContextCatalog catalog = io::load_catalog(opt.input);
    if (!validate_or_report(catalog, opt.tol_prob, err)) return kValidationFailure;

    bool refused = false;
    json contexts = json::array();
    for (const auto& [id, d] : catalog.contexts()) {
        const InterferenceProfile p = classify_context(d, opt.tol_prob);
        json j{{"context", id}, {"classification", to_string(p.classification)}};
        try {
            if (p.classification == Classification::Hyperbolic) {
                const auto amp = construct_hyperbolic_amplitude(d, p);
                j["hyperbolic_amplitude"] = io::to_json(amp);
                j["born_residuals"] = io::to_json(hyperbolic_born_check(amp, d));
            } else {
                const auto amp = construct_amplitude(d, p, opt.tol_prob);
                j["amplitude"] = io::to_json(amp);
                try {
                    const auto ops = construct_operators(d, p, catalog.observables(), opt.tol_prob);
                    j["operators"] = io::to_json(ops);
                    j["born_residuals"] = io::to_json(born_check(amp, ops, d));
                    j["averages"] = io::to_json(averages_and_sum(amp, ops));
                } catch (const RepresentationRefused& e) {
                    refused = true;
                    diagnostic(err, "representation-refused", e.what(), e.precondition(), id);
                    j["operators"] = nullptr;
                    j["operator_incomplete"] = json{{"precondition", e.precondition()}, {"message", e.what()}};
                    json b = json::array();
                    for (Outcome beta : kOutcomes) b.push_back(std::abs(std::norm(amp.components[beta]) - d.pb(beta)));
                    j["born_residuals"] = json{{"b", b}};
                }
            }
        } catch (const RepresentationRefused& e) {
            refused = true;
            j["refusal"] = json{{"precondition", e.precondition()}, {"message", e.what()}};
            diagnostic(err, "representation-refused", e.what(), e.precondition(), id);
        }
        contexts.push_back(std::move(j));
    }

    if (opt.format == "text") {
        Output o(opt, out);
        for (const auto& c : contexts) {
            o.stream() << c["context"].get<std::string>() << ": " << c["classification"].get<std::string>();
            if (c.contains("amplitude")) {
                const auto& comps = c["amplitude"]["components"];
                o.stream() << "  phi = (" << complex_text(comps[0]) << ", " << complex_text(comps[1]) << ")";
                if (c["operators"].is_null())
                    o.stream() << "  operators refused: " << c["operator_incomplete"]["precondition"].get<std::string>();
            } else if (c.contains("hyperbolic_amplitude")) {
                const auto& comps = c["hyperbolic_amplitude"]["components"];
                o.stream() << "  phi = (" << num(comps[0][0].get<double>()) << " + j(" << num(comps[0][1].get<double>())
                           << "), " << num(comps[1][0].get<double>()) << " + j(" << num(comps[1][1].get<double>()) << "))";
            } else {
                o.stream() << "  refused: " << c["refusal"]["precondition"].get<std::string>();
            }
            o.stream() << '\n';
        }
    } else {
        emit_json(opt, out, json{{"contexts", contexts}});
    }
    return refused ? kRepresentationRefused : kOk;
}

// ---------------------------------------------------------------- simulate

void require_simulation_args(const Options& opt) {
    if (opt.model.empty()) throw SchemaError("--model is required");
    if (opt.context.empty()) throw SchemaError("--context is required");
    if (opt.n < 1) throw SchemaError("--n is required and must be positive");
}

std::string collective_name(const Collective& c) {
    std::string name = to_string(c.observable) + "_given_" + c.context_id;
    if (c.filtration) name += "_" + to_string(c.filtration->observable) + std::to_string(c.filtration->outcome);
    for (auto& ch : name)
        if (ch == '/' || ch == ' ') ch = '_';
    return name;
}

std::vector<const Collective*> all_collectives(const CollectiveSet& xs) {
    std::vector<const Collective*> v{&*xs.b, &*xs.a, &*xs.b_after_a[0], &*xs.b_after_a[1]};
    for (const auto& y : xs.a_after_b)
        if (y) v.push_back(&*y);
    return v;
}

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream&) {
    require_format(opt, {"json", "csv", "text"});
    require_simulation_args(opt);
    const EnsembleModel model = io::load_model(opt.model);
    const SimulationRun run = simulate_context(model, opt.context, opt.n, opt.seed, opt.with_a_given_b);
    const auto collectives = all_collectives(run.collectives);

    if (!opt.collectives_dir.empty()) {
        std::filesystem::create_directories(opt.collectives_dir);
        for (const Collective* c : collectives) {
            std::ofstream f(std::filesystem::path(opt.collectives_dir) / (collective_name(*c) + ".txt"), std::ios::binary);
            if (!f) throw SchemaError("cannot write collectives to '" + opt.collectives_dir + "'");
            write_collective(f, *c);
        }
    }

    if (opt.format == "csv") {
        Output o(opt, out);
        o.stream() << "collective,observable,filtration,index,outcome\n";
        for (const Collective* c : collectives) {
            const std::string name = collective_name(*c);
            const std::string filt =
                c->filtration ? to_string(c->filtration->observable) + ":" + std::to_string(c->filtration->outcome) : "";
            for (std::size_t i = 0; i < c->size(); ++i)
                o.stream() << name << ',' << to_string(c->observable) << ',' << filt << ',' << i << ','
                           << static_cast<int>(c->outcomes[i]) << '\n';
        }
        return kOk;
    }

    const ContextData& est = run.estimate.data;
    const ExactContext exact = enumerate_context(model, opt.context);
    json j{{"context", opt.context},
           {"n", opt.n},
           {"seed", opt.seed},
           {"estimated", io::to_json(est)},
           {"standard_errors", io::to_json(run.estimate.se)},
           {"exact", io::to_json(exact.data)}};
    try {
        const InterferenceProfile p = classify_context(est, opt.tol_prob);
        j["profile"] = io::to_json(p);
        json se = json::array();
        for (Outcome beta : kOutcomes) {
            const double s = lambda_standard_error(est, run.estimate.se, beta);
            se.push_back(std::isfinite(s) ? json(s) : json(nullptr));
        }
        j["lambda_standard_error"] = se;
    } catch (const InvalidInput& e) {
        j["profile"] = json{{"error", e.what()}};
    }
    j["exact_profile"] = io::to_json(classify_context(exact.data, opt.tol_prob));
    j["catalog"] = io::to_json(catalog_with_derived_filtrations(est, model.observables));

    if (opt.format == "text") {
        Output o(opt, out);
        o.stream() << "context " << opt.context << " n=" << opt.n << " seed=" << opt.seed << '\n';
        o.stream() << "p_a = (" << num(est.pa(0)) << ", " << num(est.pa(1)) << ")\n";
        o.stream() << "p_b = (" << num(est.pb(0)) << ", " << num(est.pb(1)) << ")\n";
        for (Outcome alpha : kOutcomes)
            o.stream() << "p_b|a" << alpha << " = (" << num(est.b_a(0, alpha)) << ", " << num(est.b_a(1, alpha)) << ")\n";
        if (j["profile"].contains("classification"))
            o.stream() << "classification " << j["profile"]["classification"].get<std::string>() << '\n';
    } else {
        emit_json(opt, out, j);
    }
    return kOk;
}

// ---------------------------------------------------------------- roundtrip

int cmd_roundtrip(const Options& opt, std::ostream& out, std::ostream& err) {
    require_format(opt, {"json", "csv", "text"});
    if (opt.trials < 1) throw SchemaError("--trials must be positive");
    const CounterRng rng(opt.seed);
    ObservablePair spectra;

    struct Row {
        std::size_t trial;
        std::string classification;
        BornResiduals residuals;
        double linearity = 0.0;
    };
    std::vector<Row> rows;
    std::size_t trig = 0;
    std::size_t failures = 0;
    double worst = 0.0;
    for (std::size_t t = 0; t < opt.trials; ++t) {
        RngStream s(rng, stream_id("roundtrip", std::to_string(t)));
        const CVec2 psi = haar_state(s);
        const auto basis = haar_basis(s);
        const ContextData d = quantum_oracle_generate(psi, basis, "trial-" + std::to_string(t));
        const InterferenceProfile p = classify_context(d, opt.tol_prob);
        Row row{t, to_string(p.classification), {}, 0.0};
        try {
            const auto amp = construct_amplitude(d, p, opt.tol_prob);
            const auto ops = construct_operators(d, p, spectra, opt.tol_prob);
            row.residuals = born_check(amp, ops, d);
            row.linearity = averages_and_sum(amp, ops).linearity_residual;
        } catch (const RepresentationRefused& e) {
            row.residuals.b = {1.0, 1.0};
            diagnostic(err, "representation-refused", e.what(), e.precondition(), d.context_id);
        }
        if (p.classification == Classification::Trigonometric) ++trig;
        if (row.residuals.max() > kRoundtripTolerance) ++failures;
        worst = std::max(worst, row.residuals.max());
        rows.push_back(row);
    }

    Output o(opt, out);
    if (opt.format == "csv") {
        o.stream() << "trial,classification,b0,b1,a0,a1,max\n";
        for (const auto& r : rows) {
            o.stream() << r.trial << ',' << r.classification << ',' << num(r.residuals.b[0]) << ','
                       << num(r.residuals.b[1]) << ',' << num(r.residuals.a[0]) << ',' << num(r.residuals.a[1]) << ','
                       << num(r.residuals.max()) << '\n';
        }
    } else if (opt.format == "text") {
        o.stream() << "trials " << opt.trials << " seed " << opt.seed << ": " << (opt.trials - failures) << "/"
                   << opt.trials << " within " << kRoundtripTolerance << ", max residual " << num(worst) << ", "
                   << trig << " trigonometric\n";
    } else {
        o.stream() << json{{"trials", opt.trials},
                           {"seed", opt.seed},
                           {"tolerance", kRoundtripTolerance},
                           {"passed", opt.trials - failures},
                           {"failed", failures},
                           {"trigonometric", trig},
                           {"max_residual", worst}}
                          .dump(2)
                   << '\n';
    }
    return failures == 0 ? kOk : kValidationFailure;
}

// ---------------------------------------------------------------- sumcheck

int cmd_sumcheck(const Options& opt, std::ostream& out, std::ostream& err) {
    require_format(opt, {"json", "text"});
    require_simulation_args(opt);
    const EnsembleModel model = io::load_model(opt.model);
    SumReport rep;
    try {
        rep = sum_observable_comparison(model, opt.context, opt.n, opt.seed, opt.tol_stat);
    } catch (const RepresentationRefused& e) {
        diagnostic(err, "representation-refused", e.what(), e.precondition(), opt.context);
        return kRepresentationRefused;
    }
    if (opt.format == "text") {
        Output o(opt, out);
        o.stream() << "context " << rep.context_id << '\n'
                   << "ontic <a+b>      = " << num(rep.ontic.mean) << " +- " << num(rep.ontic.standard_error) << '\n'
                   << "<a> + <b>        = " << num(rep.marginal_sum) << " +- " << num(rep.marginal_se) << '\n'
                   << "<phi|a+b|phi>    = " << num(rep.quantum.mean_sum_op) << '\n'
                   << "eigenvalues      = " << num(rep.quantum.eigvals_sum_op[0]) << ", "
                   << num(rep.quantum.eigvals_sum_op[1]) << '\n'
                   << "eigen mismatch   = " << num(rep.eigenvalue_mismatch) << '\n'
                   << "averages agree   = " << (rep.agree() ? "yes" : "no") << '\n';
    } else {
        emit_json(opt, out, io::to_json(rep));
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum-like representation of contextual probabilities", "qlr"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol-prob", opt.tol_prob, "tolerance for exact probability tables")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", opt.out, "write the report to a file instead of stdout");
    };
    auto add_simulation = [&](CLI::App* sub) {
        sub->add_option("--model", opt.model, "ensemble model JSON")->required();
        sub->add_option("--context", opt.context, "context id")->required();
        sub->add_option("--n", opt.n, "collective length")->required()->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "random seed")->required();
        sub->add_option("--tol-stat", opt.tol_stat, "statistical tolerance in standard errors")
            ->check(CLI::PositiveNumber);
    };

    auto* validate = app.add_subcommand("validate", "check a context catalog");
    validate->add_option("--input", opt.input, "context catalog JSON")->required();
    add_common(validate);

    auto* analyze = app.add_subcommand("analyze", "interference profile of every context");
    analyze->add_option("--input", opt.input, "context catalog JSON")->required();
    add_common(analyze);

    auto* represent = app.add_subcommand("represent", "amplitudes and operators for every context");
    represent->add_option("--input", opt.input, "context catalog JSON")->required();
    add_common(represent);

    auto* simulate = app.add_subcommand("simulate", "simulate collectives and estimate context data");
    add_simulation(simulate);
    simulate->add_option("--collectives", opt.collectives_dir, "directory for collective files");
    simulate->add_flag("--with-a-given-b", opt.with_a_given_b, "also simulate b-filtrations");
    add_common(simulate);

    auto* roundtrip = app.add_subcommand("roundtrip", "qubit oracle -> representation -> Born residuals");
    roundtrip->add_option("--seed", opt.seed, "random seed")->required();
    roundtrip->add_option("--trials", opt.trials, "number of random states")->check(CLI::PositiveNumber);
    add_common(roundtrip);

    auto* sumcheck = app.add_subcommand("sumcheck", "ontic sum versus operator sum");
    add_simulation(sumcheck);
    add_common(sumcheck);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        diagnostic(err, "usage", e.what());
        return kSchemaError;
    }

    try {
        if (*validate) return cmd_validate(opt, out, err);
        if (*analyze) return cmd_analyze(opt, out, err);
        if (*represent) return cmd_represent(opt, out, err);
        if (*simulate) return cmd_simulate(opt, out, err);
        if (*roundtrip) return cmd_roundtrip(opt, out, err);
        if (*sumcheck) return cmd_sumcheck(opt, out, err);
    } catch (const SchemaError& e) {
        diagnostic(err, "schema", e.what());
        return kSchemaError;
    } catch (const RepresentationRefused& e) {
        diagnostic(err, "representation-refused", e.what(), e.precondition());
        return kRepresentationRefused;
    } catch (const InvalidInput& e) {
        diagnostic(err, "validation", e.what());
        return kValidationFailure;
    } catch (const SimulationError& e) {
        diagnostic(err, "simulation", e.what());
        return kValidationFailure;
    }
    return kSchemaError;
}

}  // namespace qlr::cli
