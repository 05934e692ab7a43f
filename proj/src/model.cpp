#include "qlr/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qlr/error.hpp"

namespace qlr {

void ObservablePair::check() const {
    if (spectrum_a[0] == spectrum_a[1])
        throw InvalidInput("spectrum of " + name_a + " must have two distinct values");
    if (spectrum_b[0] == spectrum_b[1])
        throw InvalidInput("spectrum of " + name_b + " must have two distinct values");
    if (!std::isfinite(spectrum_a[0]) || !std::isfinite(spectrum_a[1]) || !std::isfinite(spectrum_b[0]) ||
        !std::isfinite(spectrum_b[1]))
        throw InvalidInput("spectra must be finite");
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Range: return "range";
        case ViolationKind::Normalization: return "normalization";
        case ViolationKind::Balance: return "balance";
        case ViolationKind::FiltrationAxiom: return "filtration-axiom";
        case ViolationKind::FiltrationConsistency: return "filtration-consistency";
        case ViolationKind::MissingContext: return "missing-context";
    }
    return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const noexcept {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const Violation& v) { return v.kind == kind; });
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void check_vector(const ProbabilityVector& v, const std::string& id, const std::string& name, double tol,
                  std::vector<Violation>& out) {
    double sum = 0.0;
    for (Outcome i : kOutcomes) {
        const double x = v[i].value;
        if (!(x >= -tol && x <= 1.0 + tol)) {
            out.push_back({ViolationKind::Range, id, name + "[" + std::to_string(i) + "]", x,
                           name + "[" + std::to_string(i) + "] = " + fmt(x) + " outside [0,1]"});
        }
        sum += x;
    }
    if (!(std::abs(sum - 1.0) <= tol)) {
        out.push_back({ViolationKind::Normalization, id, name, sum, name + " sums to " + fmt(sum)});
    }
}

void check_matrix(const TransitionMatrix& m, const std::string& id, const std::string& name, double tol,
                  std::vector<Violation>& out) {
    for (Outcome r : kOutcomes) check_vector(m[r], id, name + " row " + std::to_string(r), tol, out);
}

bool all_exact(const ContextData& d, Outcome beta) {
    return d.p_b[beta].exact && d.p_a[0].exact && d.p_a[1].exact && d.b_given_a[0][beta].exact &&
           d.b_given_a[1][beta].exact;
}

}  // namespace

double delta(const ContextData& d, Outcome beta) {
    if (beta > 1) throw InvalidInput("outcome index out of range: " + std::to_string(beta));
    if (all_exact(d, beta)) {
        try {
            const Rational r = *d.p_b[beta].exact - (*d.p_a[0].exact * *d.b_given_a[0][beta].exact +
                                                     *d.p_a[1].exact * *d.b_given_a[1][beta].exact);
            return r.to_double();
        } catch (const std::overflow_error&) {
            // fall through to floating point
        }
    }
    return d.pb(beta) - (d.pa(0) * d.b_a(beta, 0) + d.pa(1) * d.b_a(beta, 1));
}

ValidationReport validate_context_data(const ContextData& d, double tolerance) {
    ValidationReport rep;
    check_vector(d.p_a, d.context_id, "p_a", tolerance, rep.violations);
    check_vector(d.p_b, d.context_id, "p_b", tolerance, rep.violations);
    check_matrix(d.b_given_a, d.context_id, "b_given_a", tolerance, rep.violations);
    if (d.a_given_b) check_matrix(*d.a_given_b, d.context_id, "a_given_b", tolerance, rep.violations);

    rep.deltas = {delta(d, 0), delta(d, 1)};
    rep.balance = rep.deltas[0] + rep.deltas[1];
    // The balance identity is a consequence of normalization; it is reported on its
    // own only when the individual normalizations pass but their slack accumulates.
    if (!rep.has(ViolationKind::Normalization) && !rep.has(ViolationKind::Range) &&
        !(std::abs(rep.balance) <= tolerance)) {
        rep.violations.push_back({ViolationKind::Balance, d.context_id, "delta", rep.balance,
                                  "sum of deltas is " + fmt(rep.balance)});
    }
    return rep;
}

bool is_doubly_stochastic(const ContextData& d, double tolerance) {
    for (Outcome beta : kOutcomes) {
        if (!(std::abs(d.b_a(beta, 0) + d.b_a(beta, 1) - 1.0) <= tolerance)) return false;
    }
    return true;
}

ContextCatalog::ContextCatalog(ObservablePair observables, std::vector<ContextData> contexts,
                               std::array<std::string, 2> alpha_filtrations,
                               std::optional<std::array<std::string, 2>> beta_filtrations)
    : observables_(std::move(observables)),
      alpha_filtrations_(std::move(alpha_filtrations)),
      beta_filtrations_(std::move(beta_filtrations)) {
    observables_.check();
    for (auto& c : contexts) {
        std::string id = c.context_id;
        if (id.empty()) throw InvalidInput("context with empty id");
        if (!contexts_.emplace(id, std::move(c)).second) throw InvalidInput("duplicate context id: " + id);
    }
}

const ContextData& ContextCatalog::pi_map(const std::string& context_id) const {
    auto it = contexts_.find(context_id);
    if (it == contexts_.end()) throw InvalidInput("unknown context id: " + context_id);
    return it->second;
}

const ContextData& pi_map(const ContextCatalog& catalog, const std::string& context_id) {
    return catalog.pi_map(context_id);
}

ValidationReport ContextCatalog::validate(double tolerance) const {
    ValidationReport rep;
    for (const auto& [id, d] : contexts_) {
        auto r = validate_context_data(d, tolerance);
        rep.violations.insert(rep.violations.end(), r.violations.begin(), r.violations.end());
    }

    auto check_filtrations = [&](const std::array<std::string, 2>& ids, bool on_a) {
        for (Outcome o : kOutcomes) {
            const std::string& fid = ids[o];
            auto it = contexts_.find(fid);
            const std::string label = std::string(on_a ? "alpha" : "beta") + " filtration " + std::to_string(o);
            if (it == contexts_.end()) {
                rep.violations.push_back({ViolationKind::MissingContext, fid, label, 0.0,
                                          label + " refers to unknown context '" + fid + "'"});
                continue;
            }
            const double p = on_a ? it->second.pa(o) : it->second.pb(o);
            if (!(std::abs(p - 1.0) <= tolerance)) {
                rep.violations.push_back({ViolationKind::FiltrationAxiom, fid, label, p,
                                          label + " assigns probability " + fmt(p) + " to its outcome"});
            }
        }
    };
    check_filtrations(alpha_filtrations_, true);
    if (beta_filtrations_) check_filtrations(*beta_filtrations_, false);

    for (const auto& [id, d] : contexts_) {
        for (Outcome alpha : kOutcomes) {
            auto f = contexts_.find(alpha_filtrations_[alpha]);
            if (f == contexts_.end()) continue;
            for (Outcome beta : kOutcomes) {
                const double row = d.b_a(beta, alpha);
                const double target = f->second.pb(beta);
                if (!(std::abs(row - target) <= tolerance)) {
                    rep.violations.push_back(
                        {ViolationKind::FiltrationConsistency, id,
                         "b_given_a[" + std::to_string(alpha) + "][" + std::to_string(beta) + "]", row,
                         "b_given_a entry " + fmt(row) + " differs from p_b of filtration context '" +
                             f->first + "' (" + fmt(target) + ")"});
                }
            }
        }
        if (beta_filtrations_ && d.a_given_b) {
            for (Outcome beta : kOutcomes) {
                auto f = contexts_.find((*beta_filtrations_)[beta]);
                if (f == contexts_.end()) continue;
                for (Outcome alpha : kOutcomes) {
                    const double row = (*d.a_given_b)[beta][alpha].value;
                    const double target = f->second.pa(alpha);
                    if (!(std::abs(row - target) <= tolerance)) {
                        rep.violations.push_back(
                            {ViolationKind::FiltrationConsistency, id,
                             "a_given_b[" + std::to_string(beta) + "][" + std::to_string(alpha) + "]", row,
                             "a_given_b entry " + fmt(row) + " differs from p_a of filtration context '" +
                                 f->first + "' (" + fmt(target) + ")"});
                    }
                }
            }
        }
    }
    return rep;
}

ContextCatalog catalog_with_derived_filtrations(const ContextData& d, const ObservablePair& observables) {
    std::vector<ContextData> contexts{d};
    std::array<std::string, 2> ids;
    for (Outcome alpha : kOutcomes) {
        ContextData f;
        f.context_id = d.context_id + "/a" + std::to_string(alpha);
        f.p_a = alpha == 0 ? ProbabilityVector{Rational(1), Rational(0)} : ProbabilityVector{Rational(0), Rational(1)};
        f.p_b = d.b_given_a[alpha];
        f.b_given_a = d.b_given_a;
        ids[alpha] = f.context_id;
        contexts.push_back(std::move(f));
    }
    return ContextCatalog(observables, std::move(contexts), ids);
}

}  // namespace qlr
