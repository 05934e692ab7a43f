#include "qlr/io.hpp"

#include <fstream>
#include <sstream>

#include "qlr/error.hpp"

namespace qlr::io {

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw SchemaError(where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(where + " is missing \"" + key + "\"");
    return *it;
}

double parse_real(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_object()) return parse_probability(j, where).value;
    throw SchemaError(where + " must be a number");
}

ProbabilityVector parse_vector(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(where + " must be an array of two probabilities");
    return {parse_probability(j[0], where + "[0]"), parse_probability(j[1], where + "[1]")};
}

TransitionMatrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(where + " must be a 2x2 array");
    return {parse_vector(j[0], where + "[0]"), parse_vector(j[1], where + "[1]")};
}

std::array<std::string, 2> parse_id_pair(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw SchemaError(where + " must be an array of two context ids");
    return {j[0].get<std::string>(), j[1].get<std::string>()};
}

std::array<double, 2> parse_spectrum(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(where + " must be an array of two reals");
    return {parse_real(j[0], where + "[0]"), parse_real(j[1], where + "[1]")};
}

std::array<double, 2> parse_dist2(const json& j, const std::string& where) {
    const auto v = parse_vector(j, where);
    return {v[0].value, v[1].value};
}

Distribution parse_dist(const json& j, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n)
        throw SchemaError(where + " must be an array of " + std::to_string(n) + " probabilities");
    Distribution d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = parse_probability(j[i], where + "[" + std::to_string(i) + "]").value;
    return d;
}

ObservablePair parse_observables(const json& j) {
    ObservablePair o;
    if (auto it = j.find("names"); it != j.end()) {
        if (!it->is_array() || it->size() != 2 || !(*it)[0].is_string() || !(*it)[1].is_string())
            throw SchemaError("observables.names must be an array of two strings");
        o.name_a = (*it)[0].get<std::string>();
        o.name_b = (*it)[1].get<std::string>();
    }
    const json& spectra = field(j, "spectra", "observables");
    if (!spectra.is_array() || spectra.size() != 2) throw SchemaError("observables.spectra must be [[a1,a2],[b1,b2]]");
    o.spectrum_a = parse_spectrum(spectra[0], "observables.spectra[0]");
    o.spectrum_b = parse_spectrum(spectra[1], "observables.spectra[1]");
    try {
        o.check();
    } catch (const InvalidInput& e) {
        throw SchemaError(e.what());
    }
    return o;
}

}  // namespace

Probability parse_probability(const json& j, const std::string& where) {
    if (j.is_number()) return Probability(j.get<double>());
    if (j.is_object()) {
        const json& num = field(j, "num", where);
        const json& den = field(j, "den", where);
        if (!num.is_number_integer() || !den.is_number_integer())
            throw SchemaError(where + " rational needs integer num and den");
        if (den.get<std::int64_t>() == 0) throw SchemaError(where + " rational has zero denominator");
        return Probability(Rational(num.get<std::int64_t>(), den.get<std::int64_t>()));
    }
    throw SchemaError(where + " must be a number or {\"num\":int,\"den\":int}");
}

ContextCatalog parse_catalog(const json& j) {
    if (!j.is_object()) throw SchemaError("catalog must be a JSON object");
    ObservablePair obs = parse_observables(field(j, "observables", "catalog"));

    const json& ctxs = field(j, "contexts", "catalog");
    if (!ctxs.is_array() || ctxs.empty()) throw SchemaError("catalog.contexts must be a non-empty array");
    std::vector<ContextData> contexts;
    for (std::size_t i = 0; i < ctxs.size(); ++i) {
        const std::string where = "contexts[" + std::to_string(i) + "]";
        const json& c = ctxs[i];
        const json& id = field(c, "id", where);
        if (!id.is_string()) throw SchemaError(where + ".id must be a string");
        ContextData d;
        d.context_id = id.get<std::string>();
        d.p_a = parse_vector(field(c, "p_a", where), where + ".p_a");
        d.p_b = parse_vector(field(c, "p_b", where), where + ".p_b");
        d.b_given_a = parse_matrix(field(c, "b_given_a", where), where + ".b_given_a");
        if (auto it = c.find("a_given_b"); it != c.end() && !it->is_null())
            d.a_given_b = parse_matrix(*it, where + ".a_given_b");
        contexts.push_back(std::move(d));
    }

    const json& filt = field(j, "filtrations", "catalog");
    auto alpha = parse_id_pair(field(filt, "alpha", "filtrations"), "filtrations.alpha");
    std::optional<std::array<std::string, 2>> beta;
    if (auto it = filt.find("beta"); it != filt.end() && !it->is_null())
        beta = parse_id_pair(*it, "filtrations.beta");

    try {
        return ContextCatalog(std::move(obs), std::move(contexts), std::move(alpha), std::move(beta));
    } catch (const InvalidInput& e) {
        throw SchemaError(e.what());
    }
}

EnsembleModel parse_model(const json& j) {
    if (!j.is_object()) throw SchemaError("model must be a JSON object");
    EnsembleModel m;
    const json& states = field(j, "states", "model");
    if (!states.is_array() || states.empty()) throw SchemaError("model.states must be a non-empty array");
    for (const auto& s : states) {
        if (!s.is_string()) throw SchemaError("model.states entries must be strings");
        m.states.push_back(s.get<std::string>());
    }
    const std::size_t n = m.states.size();

    const json& prep = field(j, "prepare", "model");
    if (!prep.is_object() || prep.empty()) throw SchemaError("model.prepare must be a non-empty object");
    for (const auto& [ctx, dist] : prep.items()) m.prepare[ctx] = parse_dist(dist, n, "prepare." + ctx);

    auto per_state = [&](const char* key) {
        const json& rows = field(j, key, "model");
        if (!rows.is_array() || rows.size() != n)
            throw SchemaError(std::string("model.") + key + " needs one row per state");
        std::vector<std::array<double, 2>> out;
        for (std::size_t s = 0; s < n; ++s)
            out.push_back(parse_dist2(rows[s], std::string(key) + "[" + std::to_string(s) + "]"));
        return out;
    };
    m.respond_a = per_state("respond_a");
    m.respond_b = per_state("respond_b");

    if (auto it = j.find("disturb_a"); it != j.end() && !it->is_null()) {
        if (!it->is_array() || it->size() != n) throw SchemaError("model.disturb_a needs one entry per state");
        m.disturb_a.resize(n);
        for (std::size_t s = 0; s < n; ++s) {
            const json& pair = (*it)[s];
            const std::string where = "disturb_a[" + std::to_string(s) + "]";
            if (!pair.is_array() || pair.size() != 2) throw SchemaError(where + " needs one kernel per a-outcome");
            for (Outcome alpha : kOutcomes)
                m.disturb_a[s][alpha] = parse_dist(pair[alpha], n, where + "[" + std::to_string(alpha) + "]");
        }
    } else {
        m.disturb_a = EnsembleModel::identity_disturbance(n);
    }

    if (auto it = j.find("observables"); it != j.end()) m.observables = parse_observables(*it);

    try {
        m.check();
    } catch (const InvalidInput& e) {
        throw SchemaError(e.what());
    }
    return m;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
    }
}

ContextCatalog load_catalog(const std::string& path) { return parse_catalog(read_json_file(path)); }
EnsembleModel load_model(const std::string& path) { return parse_model(read_json_file(path)); }

json complex_pair(const cplx& z) { return json::array({z.real(), z.imag()}); }

json to_json(const Probability& p) {
    if (p.exact) return json{{"num", p.exact->num()}, {"den", p.exact->den()}};
    return p.value;
}

namespace {

json vec_json(const ProbabilityVector& v) { return json::array({to_json(v[0]), to_json(v[1])}); }
json mat_json(const TransitionMatrix& m) { return json::array({vec_json(m[0]), vec_json(m[1])}); }

json optional_real(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

json to_json(const ContextData& d) {
    json j{{"id", d.context_id}, {"p_a", vec_json(d.p_a)}, {"p_b", vec_json(d.p_b)}, {"b_given_a", mat_json(d.b_given_a)}};
    if (d.a_given_b) j["a_given_b"] = mat_json(*d.a_given_b);
    return j;
}

json to_json(const ObservablePair& o) {
    return json{{"names", {o.name_a, o.name_b}},
                {"spectra", {{o.spectrum_a[0], o.spectrum_a[1]}, {o.spectrum_b[0], o.spectrum_b[1]}}}};
}

json to_json(const ContextCatalog& c) {
    json ctxs = json::array();
    for (const auto& [id, d] : c.contexts()) ctxs.push_back(to_json(d));
    json filt{{"alpha", c.alpha_filtrations()}};
    if (c.beta_filtrations()) filt["beta"] = *c.beta_filtrations();
    return json{{"observables", to_json(c.observables())}, {"contexts", ctxs}, {"filtrations", filt}};
}

json to_json(const Violation& v) {
    return json{{"kind", to_string(v.kind)},
                {"context", v.context_id},
                {"location", v.location},
                {"value", v.value},
                {"message", v.message}};
}

json to_json(const ValidationReport& r) {
    json vs = json::array();
    for (const auto& v : r.violations) vs.push_back(to_json(v));
    return json{{"valid", r.ok()}, {"violations", vs}, {"delta", r.deltas}, {"balance", r.balance}};
}

json to_json(const InterferenceProfile& p) {
    json terms = json::array();
    for (const auto& t : p.terms) {
        terms.push_back(json{{"delta", t.delta},
                             {"denom", t.denominator},
                             {"lambda", optional_real(t.lambda)},
                             {"theta", t.theta},
                             {"sign", t.sign},
                             {"branch", to_string(t.branch)}});
    }
    json clamps = json::array();
    for (const auto& c : p.clamps) clamps.push_back(json{{"beta", c.beta}, {"original", c.original}, {"clamped", c.clamped}});
    return json{{"context", p.context_id},
                {"classification", to_string(p.classification)},
                {"representable", p.representable},
                {"terms", terms},
                {"lambda", json::array({optional_real(p.terms[0].lambda), optional_real(p.terms[1].lambda)})},
                {"clamp_events", clamps}};
}

json to_json(const FtpReconstruction& r) {
    return json{{"classification", to_string(r.classification)},
                {"reconstructed_p_b", r.reconstructed},
                {"residuals", r.residuals}};
}

json to_json(const SymmetryReport& r) {
    return json{{"b_given_a", {{"classification", to_string(r.b_given_a.classification)},
                               {"lambda", to_json(r.b_given_a)["lambda"]}}},
                {"a_given_b", {{"classification", to_string(r.a_given_b.classification)},
                               {"lambda", to_json(r.a_given_b)["lambda"]}}},
                {"classifications_agree", r.classifications_agree}};
}

json to_json(const ComplexAmplitude& a) {
    return json{{"context", a.context_id},
                {"components", {complex_pair(a.components[0]), complex_pair(a.components[1])}},
                {"phases", a.phases},
                {"gauge_phase", complex_pair(a.gauge)},
                {"convention", kPhaseConvention},
                {"operator_complete", a.operator_complete}};
}

json to_json(const ObservableOperators& o) {
    auto mat = [](const CMat2& m) {
        return json::array({complex_pair(m[0][0]), complex_pair(m[0][1]), complex_pair(m[1][0]), complex_pair(m[1][1])});
    };
    json basis = json::array();
    for (const auto& u : o.a_eigenbasis) basis.push_back({complex_pair(u[0]), complex_pair(u[1])});
    return json{{"a_op", mat(o.a_op)},
                {"b_op", mat(o.b_op)},
                {"layout", "row-major"},
                {"a_eigenbasis", basis},
                {"orthonormality_defect", o.orthonormality_defect},
                {"decomposition_defect", o.decomposition_defect}};
}

json to_json(const BornResiduals& r) { return json{{"b", r.b}, {"a", r.a}, {"max", r.max()}}; }

json to_json(const HyperbolicAmplitude& a) {
    json comps = json::array();
    for (const auto& z : a.components) comps.push_back({z.x, z.y});
    return json{{"context", a.context_id},
                {"algebra", "split-complex"},
                {"components", comps},
                {"signs", a.signs},
                {"thetas", a.thetas}};
}

json to_json(const HyperbolicBornResiduals& r) { return json{{"b", r.b}, {"total", r.total}, {"max", r.max()}}; }

json to_json(const StandardErrors& se) {
    json j{{"p_a", se.p_a}, {"p_b", se.p_b}, {"b_given_a", se.b_given_a}};
    if (se.a_given_b) j["a_given_b"] = *se.a_given_b;
    return j;
}

json to_json(const StabilizationReport& r) {
    json j{{"checkpoints", r.checkpoints},
           {"trajectory", r.trajectory},
           {"terminal", r.terminal},
           {"drift", r.drift},
           {"drift_bound", r.drift_bound},
           {"flagged", r.flagged}};
    if (r.reference) {
        j["reference"] = *r.reference;
        j["envelope_bound"] = r.envelope_bound;
        j["within_envelope"] = r.within_envelope;
        j["envelope_ok"] = r.envelope_ok;
    }
    return j;
}

json to_json(const SumAverages& s) {
    return json{{"mean_a", s.mean_a},
                {"mean_b", s.mean_b},
                {"mean_sum_op", s.mean_sum_op},
                {"eigvals_sum_op", s.eigvals_sum_op},
                {"linearity_residual", s.linearity_residual}};
}

json to_json(const SumReport& r) {
    json support = json::array();
    for (const auto& [v, c] : r.ontic.support) support.push_back({{"value", v}, {"count", c}});
    return json{{"context", r.context_id},
                {"estimated", to_json(r.estimate.data)},
                {"standard_errors", to_json(r.estimate.se)},
                {"regularized", to_json(r.regularized)},
                {"profile", to_json(r.profile)},
                {"ontic", {{"mean", r.ontic.mean}, {"standard_error", r.ontic.standard_error}, {"n", r.ontic.n},
                           {"support", support}}},
                {"marginal", {{"sum_of_means", r.marginal_sum}, {"standard_error", r.marginal_se}}},
                {"quantum", to_json(r.quantum)},
                {"spectral_sums", r.spectral_sums},
                {"eigenvalue_mismatch", r.eigenvalue_mismatch},
                {"z", r.z},
                {"checks", {{"ontic_vs_marginal", r.ontic_vs_marginal_ok},
                            {"marginal_vs_quantum", r.marginal_vs_quantum_ok},
                            {"ontic_vs_quantum", r.ontic_vs_quantum_ok}}},
                {"averages_agree", r.agree()}};
}

}  // namespace qlr::io
