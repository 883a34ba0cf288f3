#pragma once

#include <json.hpp>

#include "lyapcert/certify.hpp"
#include "lyapcert/nonexist.hpp"
#include "lyapcert/simulate.hpp"

namespace lyapcert {

/// Report documents. Rationals are strings "p" or "p/q", polynomials use the
/// text format, so every exact value survives a round trip unchanged.
/// The from_json functions throw std::invalid_argument (or ParseError for a
/// bad polynomial) on malformed input.

nlohmann::json to_json(const FormSignDecision& d);
FormSignDecision form_sign_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CertificateReport& r);
CertificateReport certificate_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LinearProgram& lp);
LinearProgram linear_program_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NonexistenceReport& r);
NonexistenceReport nonexistence_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const IntegratorConfig& c);
IntegratorConfig integrator_config_from_json(const nlohmann::json& j, IntegratorConfig base = {});

}  // namespace lyapcert
