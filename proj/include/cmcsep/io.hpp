#pragma once

#include <string>

#include <json.hpp>

#include "cmcsep/covariance.hpp"
#include "cmcsep/criteria.hpp"
#include "cmcsep/filtering.hpp"
#include "cmcsep/types.hpp"

namespace cmcsep {

/// On-disk state: {"dims": [dA, dB], "matrix": [[[re, im], ...], ...],
/// "metadata": {...}}. The metadata object is optional and free-form.
struct StateFile {
  Dims dims;
  CMatrix rho;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Parses and validates a state. Every failure is an InputError whose
/// message names the source and the location (line:column for syntax
/// errors, a JSON path such as matrix[2][1] for structural ones).
StateFile parse_state(const std::string& text, const std::string& source = "<input>");
StateFile read_state_file(const std::string& path);

nlohmann::json to_json(const StateFile& state);
void write_state_file(const std::string& path, const StateFile& state);

nlohmann::json matrix_json(const CMatrix& m);
nlohmann::json matrix_json(const RMatrix& m);

nlohmann::json to_json(const BlockCovarianceMatrix& cm);
nlohmann::json to_json(const NormalForm& nf);
nlohmann::json to_json(const SdpVerdict& v);

}  // namespace cmcsep
