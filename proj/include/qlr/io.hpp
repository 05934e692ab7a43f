#pragma once

// JSON schemas for context catalogs and ensemble models, and JSON export of
// every report the toolkit produces.

#include <string>

#include <json.hpp>

#include "qlr/complex_repr.hpp"
#include "qlr/ensemble.hpp"
#include "qlr/hyperbolic.hpp"
#include "qlr/interference.hpp"
#include "qlr/model.hpp"
#include "qlr/sum_observable.hpp"

namespace qlr::io {

using nlohmann::json;

/// Decimal number or {"num": int, "den": int}. Throws SchemaError.
Probability parse_probability(const json& j, const std::string& where);

ContextCatalog parse_catalog(const json& j);
EnsembleModel parse_model(const json& j);

/// Read and parse a file; SchemaError on I/O or syntax errors.
json read_json_file(const std::string& path);
ContextCatalog load_catalog(const std::string& path);
EnsembleModel load_model(const std::string& path);

json to_json(const Probability& p);
json to_json(const ContextData& d);
json to_json(const ObservablePair& o);
json to_json(const ContextCatalog& c);
json to_json(const Violation& v);
json to_json(const ValidationReport& r);
json to_json(const InterferenceProfile& p);
json to_json(const FtpReconstruction& r);
json to_json(const SymmetryReport& r);
json to_json(const ComplexAmplitude& a);
json to_json(const ObservableOperators& o);
json to_json(const BornResiduals& r);
json to_json(const HyperbolicAmplitude& a);
json to_json(const HyperbolicBornResiduals& r);
json to_json(const StandardErrors& se);
json to_json(const StabilizationReport& r);
json to_json(const SumAverages& s);
json to_json(const SumReport& r);

json complex_pair(const cplx& z);

}  // namespace qlr::io
