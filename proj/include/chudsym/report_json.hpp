#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "chudsym/bound_calc.hpp"
#include "chudsym/chudnovsky_mult.hpp"
#include "chudsym/curve_data.hpp"
#include "chudsym/prime_engine.hpp"

namespace chudsym {

nlohmann::json to_json(const GapPolicy& policy);
nlohmann::json to_json(const GapReport& report);
nlohmann::json to_json(const Gamma0Data& data);
nlohmann::json to_json(const CurveFamilyData& data);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const ComparisonReport& report);
nlohmann::json to_json(const EvalPlan& plan);
nlohmann::json to_json(const VerificationReport& report);

inline const std::vector<std::string>& csv_header() {
    static const std::vector<std::string> header{"p",     "n",      "field",  "method", "value_real", "value_int",
                                                 "valid", "policy", "l_k",    "l_k1",   "genus",      "caveats"};
    return header;
}

// One CSV line (no trailing newline) in csv_header() order.
std::string csv_row(const BoundReport& report);
std::string csv_escape(const std::string& field);

// Indented "key: value" rendering of a JSON document.
std::string render_text(const nlohmann::json& j);

}  // namespace chudsym
