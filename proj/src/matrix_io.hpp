#pragma once

#include "birman_schwinger.hpp"
#include "corpus.hpp"
#include "pencil.hpp"
#include "persistence.hpp"
#include "types.hpp"

#include <json.hpp>

#include <string>

namespace pencilpersist {

/// Matrix file schema: {"n": int, "entries": [[re, im], ...]} with exactly
/// n*n row-major entries. Serialization uses shortest round-trip decimals and
/// a fixed key order, so serialize -> parse is the identity.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
ComplexMatrix matrix_from_json_text(const std::string& text);
ComplexMatrix matrix_from_file(const std::string& path);
nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m);
std::string matrix_to_json_text(const ComplexMatrix& m);

nlohmann::ordered_json excset_to_json(const ExceptionalSet& s);
nlohmann::ordered_json report_to_json(const PersistenceReport& r);
nlohmann::ordered_json bs_to_json(const BSReduction& r,
                                  const ToleranceConfig& cfg);
nlohmann::ordered_json cyclicity_to_json(const CyclicityVerdict& c);
nlohmann::ordered_json witness_to_json(const PersistentFamilyWitness& w);
nlohmann::ordered_json corpus_outcome_to_json(const CorpusOutcome& o);
nlohmann::ordered_json hunt_to_json(const HuntResult& h);

}  // namespace pencilpersist
