#pragma once

#include "ssm/diophantine.hpp"
#include "ssm/fourier.hpp"
#include "ssm/ifs.hpp"
#include "ssm/uniqueness.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace ssm {

using Json = nlohmann::json;

// Number-field specification: {"min_poly":[c0,...,cd],
// "root":"largest_real" | {"interval":["lo","hi"]}}.
FieldPtr field_from_json(const Json& j, mpfr_prec_t prec = kDefaultPrec);

// IFS specification; maps carry either exponents {"l":1,...} against a common
// base "r", or raw ratios {"ratio":"1/4",...} handed to common-base detection.
std::variant<Ifs, MultIndepWitness> ifs_from_json(const Json& j,
                                                  mpfr_prec_t prec = kDefaultPrec);
Ifs ifs_from_json_checked(const Json& j, mpfr_prec_t prec = kDefaultPrec);

Json ifs_to_json(const Ifs& ifs);
Json verdict_to_json(const Verdict& v);
Json gamma_to_json(const GammaWitness& w);
Json recovery_to_json(const RecoveryResult& r);
Json liouville_to_json(const std::vector<LiouvilleWitness>& ws, bool exhaustive_note);

// Parses "p/q", decimals, "pi", "pi*q", "[c0,c1,...]" (field coords),
// "root:<c0,...,cd>:<lo>:<hi>" (real algebraic atom), and sums joined by '+'.
RealExpr real_expr_from_string(const std::string& s, const FieldPtr& field);

std::string decay_csv(const std::vector<DecayReport>& rows);
std::string dc_csv(const std::vector<DCRow>& rows);
std::string renewal_csv(const std::vector<Rat>& probs);

// log-log plot of |mu_hat| and both bounds against omega
std::string decay_svg(const std::vector<DecayReport>& rows);

// Minimal structural JSON-schema check (type / required / properties / items /
// enum / oneOf), enough for the shipped schema files.
bool validate_schema(const Json& doc, const Json& schema, std::string* err);

std::string ball_to_decimal(const RealBall& b, int digits = 17);

} // namespace ssm
