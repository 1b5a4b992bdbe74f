#ifndef CUSPIDAL_SCENARIO_IO_HPP
#define CUSPIDAL_SCENARIO_IO_HPP

#include <string>

#include <json.hpp>

#include "cuspidal/coset_pairing.hpp"

namespace cuspidal {

using Json = nlohmann::json;

/** {"conductor": n, "coefficients": ["a0", "a1", ...]} on the power basis of
 * the reduced field. */
Json cyclotomic_to_json(Cyclotomic const &x);
/** Accepts the object form, an integer, or a string such as "-1-E(3)". */
Cyclotomic cyclotomic_from_json(Json const &j);

/** Parses a scenario document. Error("parse-error") with "line N" for syntax
 * errors and for malformed fields (the line of the offending value). */
ScenarioData parse_scenario(std::string const &text);
/** Error("io-error") if the file cannot be read. */
ScenarioData load_scenario(std::string const &path);
Json scenario_to_json(ScenarioData const &d);

/** Conventions every report carries. */
Json conventions_json();
Json verification_to_json(Scenario const &s, VerificationReport const &r);
Json pairing_to_json(Scenario const &s, PairingMatrix const &m);

} // namespace cuspidal

#endif // CUSPIDAL_SCENARIO_IO_HPP
