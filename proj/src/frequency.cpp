#include "qlr/frequency.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qlr/error.hpp"

namespace qlr {

std::string to_string(Observable o) { return o == Observable::A ? "a" : "b"; }

double relative_frequency(const Collective& c, Outcome outcome, std::size_t upto) {
    if (upto < 1 || upto > c.size()) {
        throw InvalidInput("relative_frequency: N = " + std::to_string(upto) + " outside [1, " +
                           std::to_string(c.size()) + "]");
    }
    if (outcome > 1) throw InvalidInput("outcome index out of range: " + std::to_string(outcome));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < upto; ++i) hits += c.outcomes[i] == outcome;
    return static_cast<double>(hits) / static_cast<double>(upto);
}

StabilizationReport stabilization_diagnostic(const Collective& c, const std::vector<std::size_t>& checkpoints,
                                             std::optional<std::array<double, 2>> reference, double z) {
    if (c.size() == 0) throw InvalidInput("stabilization_diagnostic: empty collective");
    for (std::size_t k = 0; k < checkpoints.size(); ++k) {
        if (checkpoints[k] < 1 || checkpoints[k] > c.size())
            throw InvalidInput("checkpoint " + std::to_string(checkpoints[k]) + " outside the collective");
        if (k > 0 && checkpoints[k] <= checkpoints[k - 1])
            throw InvalidInput("checkpoints must be strictly increasing");
    }

    StabilizationReport rep;
    rep.checkpoints = checkpoints;
    rep.reference = reference;

    std::size_t hits = 0;
    std::size_t pos = 0;
    for (std::size_t n : checkpoints) {
        for (; pos < n; ++pos) hits += c.outcomes[pos] == 0;
        const double nu = static_cast<double>(hits) / static_cast<double>(n);
        rep.trajectory[0].push_back(nu);
        rep.trajectory[1].push_back(1.0 - nu);
    }
    for (; pos < c.size(); ++pos) hits += c.outcomes[pos] == 0;
    rep.terminal[0] = static_cast<double>(hits) / static_cast<double>(c.size());
    rep.terminal[1] = 1.0 - rep.terminal[0];

    for (std::size_t k = 1; k < checkpoints.size(); ++k) {
        const double drift = std::abs(rep.trajectory[0][k] - rep.trajectory[0][k - 1]);
        const double bound = kDriftFactor / std::sqrt(static_cast<double>(checkpoints[k - 1]));
        rep.drift.push_back(drift);
        rep.drift_bound.push_back(bound);
        if (drift > bound) rep.flagged = true;
    }

    if (reference) {
        const double p = (*reference)[0];
        for (std::size_t k = 0; k < checkpoints.size(); ++k) {
            const double bound = z * std::sqrt(p * (1.0 - p) / static_cast<double>(checkpoints[k]));
            const bool ok = std::abs(rep.trajectory[0][k] - p) <= bound;
            rep.envelope_bound.push_back(bound);
            rep.within_envelope.push_back(ok);
            rep.envelope_ok = rep.envelope_ok && ok;
        }
    }
    return rep;
}

namespace {

struct Tally {
    double nu0 = 0.0;
    double se0 = 0.0;
    std::size_t n = 0;
};

Tally tally(const Collective& c) {
    std::size_t hits = 0;
    for (auto x : c.outcomes) hits += x == 0;
    Tally t;
    t.n = c.size();
    t.nu0 = static_cast<double>(hits) / static_cast<double>(t.n);
    t.se0 = std::sqrt(t.nu0 * (1.0 - t.nu0) / static_cast<double>(t.n));
    return t;
}

const Collective& require(const std::optional<Collective>& c, const std::string& what, Observable obs,
                          const std::optional<Filtration>& filtration, const std::string& context) {
    if (!c) throw InvalidInput("missing collective " + what);
    if (c->size() == 0) throw InvalidInput("empty collective " + what);
    if (c->observable != obs || c->filtration != filtration)
        throw InvalidInput("collective " + what + " is tagged inconsistently");
    if (c->context_id != context)
        throw InvalidInput("collective " + what + " belongs to context '" + c->context_id + "', expected '" +
                           context + "'");
    for (auto x : c->outcomes)
        if (x > 1) throw InvalidInput("collective " + what + " contains outcome index " + std::to_string(x));
    return *c;
}

}  // namespace

EstimatedContext estimate_context_data(const CollectiveSet& xs) {
    if (!xs.b) throw InvalidInput("missing collective x(b/C)");
    const std::string ctx = xs.b->context_id;

    EstimatedContext est;
    est.data.context_id = ctx;
    std::size_t min_n = SIZE_MAX;

    const Tally tb = tally(require(xs.b, "x(b/C)", Observable::B, std::nullopt, ctx));
    est.data.p_b = {tb.nu0, 1.0 - tb.nu0};
    est.se.p_b = {tb.se0, tb.se0};
    min_n = std::min(min_n, tb.n);

    const Tally ta = tally(require(xs.a, "y(a/C)", Observable::A, std::nullopt, ctx));
    est.data.p_a = {ta.nu0, 1.0 - ta.nu0};
    est.se.p_a = {ta.se0, ta.se0};
    min_n = std::min(min_n, ta.n);

    for (Outcome alpha : kOutcomes) {
        const std::string what = "x(b/C_alpha" + std::to_string(alpha) + ")";
        const Tally t = tally(require(xs.b_after_a[alpha], what, Observable::B, Filtration{Observable::A, alpha}, ctx));
        est.data.b_given_a[alpha] = {t.nu0, 1.0 - t.nu0};
        est.se.b_given_a[alpha] = {t.se0, t.se0};
        min_n = std::min(min_n, t.n);
    }

    if (xs.a_after_b[0] || xs.a_after_b[1]) {
        TransitionMatrix m;
        std::array<std::array<double, 2>, 2> se{};
        for (Outcome beta : kOutcomes) {
            const std::string what = "y(a/C_beta" + std::to_string(beta) + ")";
            const Tally t =
                tally(require(xs.a_after_b[beta], what, Observable::A, Filtration{Observable::B, beta}, ctx));
            m[beta] = {t.nu0, 1.0 - t.nu0};
            se[beta] = {t.se0, t.se0};
            min_n = std::min(min_n, t.n);
        }
        est.data.a_given_b = m;
        est.se.a_given_b = se;
    }
    est.min_sample = min_n;
    return est;
}

void write_collective(std::ostream& os, const Collective& c) {
    os << "# observable=" << to_string(c.observable) << " context=" << c.context_id << " seed=" << c.seed
       << " n=" << c.size();
    if (c.filtration) os << " filtration=" << to_string(c.filtration->observable) << ":" << c.filtration->outcome;
    os << '\n';
    for (auto x : c.outcomes) os << static_cast<int>(x) << '\n';
}

Collective read_collective(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# ", 0) != 0)
        throw SchemaError("collective file must start with a '# ' header line");
    Collective c;
    std::optional<std::size_t> n;
    std::istringstream hs(header.substr(2));
    std::string field;
    auto parse_obs = [](const std::string& v) {
        if (v == "a") return Observable::A;
        if (v == "b") return Observable::B;
        throw SchemaError("unknown observable tag '" + v + "'");
    };
    while (hs >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw SchemaError("malformed header field '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::string val = field.substr(eq + 1);
        try {
            if (key == "observable") {
                c.observable = parse_obs(val);
            } else if (key == "context") {
                c.context_id = val;
            } else if (key == "seed") {
                c.seed = std::stoull(val);
            } else if (key == "n") {
                n = std::stoull(val);
            } else if (key == "filtration") {
                const auto colon = val.find(':');
                if (colon == std::string::npos) throw SchemaError("malformed filtration '" + val + "'");
                const auto outcome = std::stoul(val.substr(colon + 1));
                if (outcome > 1) throw SchemaError("filtration outcome out of range");
                c.filtration = Filtration{parse_obs(val.substr(0, colon)), outcome};
            }
        } catch (const std::logic_error&) {
            throw SchemaError("malformed header value in '" + field + "'");
        }
    }
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line != "0" && line != "1") throw SchemaError("collective entry '" + line + "' is not 0 or 1");
        c.outcomes.push_back(static_cast<std::uint8_t>(line[0] - '0'));
    }
    if (n && *n != c.size()) throw SchemaError("collective header announces n=" + std::to_string(*n));
    return c;
}

}  // namespace qlr
