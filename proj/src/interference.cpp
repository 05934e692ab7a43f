#include "qlr/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qlr/error.hpp"

namespace qlr {

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Trigonometric: return "trigonometric";
        case Classification::Hyperbolic: return "hyperbolic";
        case Classification::MixedHyperTrigonometric: return "mixed-hyper-trigonometric";
        case Classification::Degenerate: return "degenerate";
    }
    return "unknown";
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::Trigonometric: return "trigonometric";
        case Branch::Hyperbolic: return "hyperbolic";
        case Branch::Undefined: return "undefined";
    }
    return "unknown";
}

namespace {

void require_valid(const ContextData& d, double tolerance) {
    const auto rep = validate_context_data(d, tolerance);
    if (!rep.ok()) {
        throw InvalidInput("context '" + d.context_id + "' is not admissible: " + rep.violations.front().message);
    }
}

double factor(const ContextData& d, Outcome alpha, Outcome beta) {
    return std::max(0.0, d.pa(alpha) * d.b_a(beta, alpha));
}

double denominator(const ContextData& d, Outcome beta) {
    return 2.0 * std::sqrt(factor(d, 0, beta)) * std::sqrt(factor(d, 1, beta));
}

InterferenceTerm raw_term(const ContextData& d, Outcome beta, double tolerance) {
    InterferenceTerm t;
    t.delta = delta(d, beta);
    t.denominator = denominator(d, beta);
    if (t.denominator == 0.0) {
        if (std::abs(t.delta) <= tolerance) t.lambda = 0.0;
    } else {
        t.lambda = t.delta / t.denominator;
    }
    return t;
}

void assign_branch(InterferenceTerm& t, std::vector<ClampEvent>& clamps, Outcome beta) {
    if (!t.lambda) {
        t.branch = Branch::Undefined;
        return;
    }
    double lam = *t.lambda;
    const double mag = std::abs(lam);
    if (mag > 1.0 && mag <= 1.0 + kClampTolerance) {
        const double c = lam > 0 ? 1.0 : -1.0;
        clamps.push_back({beta, lam, c});
        lam = c;
        t.lambda = c;
    }
    t.sign = lam < 0 ? -1 : 1;
    if (std::abs(lam) <= 1.0) {
        t.branch = Branch::Trigonometric;
        t.theta = std::acos(lam);
    } else {
        t.branch = Branch::Hyperbolic;
        t.theta = std::acosh(std::abs(lam));
    }
}

InterferenceProfile classify_unchecked(const ContextData& d, double tolerance) {
    InterferenceProfile p;
    p.context_id = d.context_id;
    bool degenerate = false;
    for (Outcome beta : kOutcomes) {
        p.terms[beta] = raw_term(d, beta, tolerance);
        if (p.terms[beta].denominator == 0.0) degenerate = true;
        assign_branch(p.terms[beta], p.clamps, beta);
    }
    auto& t0 = p.terms[0];
    auto& t1 = p.terms[1];

    if (degenerate) {
        p.classification = Classification::Degenerate;
        p.representable = t0.branch == Branch::Trigonometric && t1.branch == Branch::Trigonometric;
        return p;
    }

    if (t0.branch == Branch::Trigonometric && t1.branch == Branch::Trigonometric) {
        p.classification = Classification::Trigonometric;
        p.representable = true;
        return p;
    }
    if (t0.branch == Branch::Hyperbolic && t1.branch == Branch::Hyperbolic) {
        p.classification = Classification::Hyperbolic;
        p.representable = true;
        return p;
    }
    // One hyperbolic term; the other is hyperbolic-compatible only on the boundary.
    auto& other = t0.branch == Branch::Hyperbolic ? t1 : t0;
    if (std::abs(*other.lambda) == 1.0) {
        other.branch = Branch::Hyperbolic;
        other.theta = 0.0;
        p.classification = Classification::Hyperbolic;
        p.representable = true;
        return p;
    }
    p.classification = Classification::MixedHyperTrigonometric;
    p.representable = false;
    return p;
}

}  // namespace

std::optional<double> lambda_coefficient(const ContextData& d, Outcome beta, double tolerance) {
    if (beta > 1) throw InvalidInput("outcome index out of range: " + std::to_string(beta));
    require_valid(d, tolerance);
    return raw_term(d, beta, tolerance).lambda;
}

InterferenceProfile classify_context(const ContextData& d, double tolerance) {
    require_valid(d, tolerance);
    return classify_unchecked(d, tolerance);
}

FtpReconstruction ftp_with_interference(const ContextData& d, double tolerance) {
    return ftp_with_interference(d, classify_context(d, tolerance));
}

FtpReconstruction ftp_with_interference(const ContextData& d, const InterferenceProfile& profile) {
    if (profile.classification == Classification::MixedHyperTrigonometric) {
        throw RepresentationRefused("mixed-classification",
                                    "context '" + d.context_id + "' mixes a trigonometric and a hyperbolic outcome");
    }
    if (!profile.representable) {
        throw RepresentationRefused("degenerate-nonrepresentable",
                                    "context '" + d.context_id + "' has a vanishing denominator with nonzero delta");
    }
    FtpReconstruction r;
    r.classification = profile.classification;
    for (Outcome beta : kOutcomes) {
        const auto& t = profile.terms[beta];
        const double k = t.branch == Branch::Hyperbolic ? t.sign * std::cosh(t.theta) : std::cos(t.theta);
        const double classical = factor(d, 0, beta) + factor(d, 1, beta);
        r.reconstructed[beta] = classical + k * t.denominator;
        r.residuals[beta] = std::abs(r.reconstructed[beta] - d.pb(beta));
    }
    return r;
}

SymmetryReport symmetry_diagnostic(const ContextData& d, double tolerance) {
    if (!d.a_given_b) {
        throw InvalidInput("context '" + d.context_id + "' carries no a_given_b table");
    }
    require_valid(d, tolerance);
    ContextData swapped;
    swapped.context_id = d.context_id;
    swapped.p_a = d.p_b;
    swapped.p_b = d.p_a;
    swapped.b_given_a = *d.a_given_b;
    swapped.a_given_b = d.b_given_a;

    SymmetryReport rep;
    rep.b_given_a = classify_unchecked(d, tolerance);
    rep.a_given_b = classify_unchecked(swapped, tolerance);
    rep.classifications_agree = rep.b_given_a.classification == rep.a_given_b.classification;
    return rep;
}

double lambda_standard_error(const ContextData& d, const StandardErrors& se, Outcome beta) {
    if (beta > 1) throw InvalidInput("outcome index out of range: " + std::to_string(beta));
    const double pa0 = d.pa(0);
    const double pa1 = d.pa(1);
    const double t0 = d.b_a(beta, 0);
    const double t1 = d.b_a(beta, 1);
    const double denom = denominator(d, beta);
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    const double lam = delta(d, beta) / denom;

    const double d_pb = 1.0 / denom;
    const double d_t0 = -pa0 / denom - lam / (2.0 * t0);
    const double d_t1 = -pa1 / denom - lam / (2.0 * t1);
    const double d_pa0 = (t1 - t0) / denom - 0.5 * lam * (1.0 / pa0 - 1.0 / pa1);

    const double var = std::pow(d_pb * se.p_b[beta], 2) + std::pow(d_t0 * se.b_given_a[0][beta], 2) +
                       std::pow(d_t1 * se.b_given_a[1][beta], 2) + std::pow(d_pa0 * se.p_a[0], 2);
    return std::sqrt(var);
}

}  // namespace qlr
