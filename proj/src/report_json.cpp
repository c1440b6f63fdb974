#include "chudsym/report_json.hpp"

#include <sstream>

namespace chudsym {

using nlohmann::json;

json to_json(const GapPolicy& policy) {
    json j;
    j["name"] = policy.name_string();
    j["alpha"] = to_string(policy.alpha);
    j["x_alpha"] = policy.x_alpha.to_string();
    if (policy.name == GapPolicy::Name::Empirical) j["verified_limit"] = policy.verified_limit;
    return j;
}

json to_json(const GapReport& report) {
    json j;
    j["limit"] = report.limit;
    j["alpha"] = to_string(report.alpha);
    j["violations"] = report.violations;
    j["max_gap_seen"] = report.max_gap_seen;
    return j;
}

json to_json(const Gamma0Data& d) {
    return json{{"N", d.N}, {"mu", d.mu}, {"nu2", d.nu2}, {"nu3", d.nu3}, {"nu_inf", d.nu_inf}, {"genus", d.genus}};
}

json to_json(const CurveFamilyData& d) {
    return json{{"family", to_string(d.family)}, {"l", d.l},
                {"N", d.N},
                {"genus", d.genus},
                {"p", d.p},
                {"n1_lower_p2", d.n1_lower_p2},
                {"n1_2n2_lower_p", d.n1_2n2_lower_p}};
}

json to_json(const BoundReport& r) {
    json j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["field"] = to_string(r.field);
    j["method"] = to_string(r.method);
    j["value_real"] = r.value_real;
    j["value_int"] = r.value_int;
    j["valid_unconditional"] = r.valid_unconditional;
    j["policy"] = r.policy ? to_json(*r.policy) : json(nullptr);
    if (r.witnesses) {
        const auto& w = *r.witnesses;
        json checks = json::array();
        for (const auto& c : w.checks) {
            checks.push_back({{"name", c.name}, {"relation", c.relation}, {"passed", c.passed}, {"gating", c.gating}});
        }
        j["witnesses"] = {{"l_k", w.pair.l_k},
                          {"l_k1", w.pair.l_k1},
                          {"threshold", to_string(w.pair.threshold)},
                          {"skipped", w.pair.skipped},
                          {"N", w.curve.N},
                          {"family", to_string(w.curve.family)},
                          {"genus", w.curve.genus},
                          {"n1_lower", r.field == FieldKind::Quadratic ? w.curve.n1_lower_p2 : w.curve.n1_2n2_lower_p},
                          {"checks", checks}};
    } else {
        j["witnesses"] = nullptr;
    }
    j["caveats"] = r.caveats;
    return j;
}

json to_json(const ComparisonReport& r) {
    json j;
    j["p"] = r.p;
    j["n"] = r.n;
    json entries = json::array();
    for (const auto& e : r.entries) {
        json item = to_json(e.report);
        item["best"] = e.best;
        entries.push_back(std::move(item));
    }
    j["entries"] = std::move(entries);
    json asym = json::array();
    for (const auto& a : r.asymptotic) {
        json priors = json::array();
        for (const auto& pb : a.priors) {
            priors.push_back({{"method", to_string(pb.variant)},
                              {"formula", pb.formula},
                              {"coefficient", to_string(pb.coefficient)},
                              {"coefficient_decimal", pb.coefficient.convert_to<double>()},
                              {"beaten", a.new_coefficient < pb.coefficient}});
        }
        asym.push_back({{"field", to_string(a.field)},
                        {"coefficient", to_string(a.new_coefficient)},
                        {"coefficient_decimal", a.new_coefficient.convert_to<double>()},
                        {"priors", priors}});
    }
    j["asymptotic"] = std::move(asym);
    j["infeasible"] = r.infeasible;
    return j;
}

json to_json(const EvalPlan& plan) {
    return json{{"rational_nodes", plan.rational_nodes},
                {"infinity", plan.use_infinity},
                {"deg2_places", plan.deg2_places},
                {"total_degree", plan.total_degree},
                {"cost", plan.cost()}};
}

json to_json(const VerificationReport& r) {
    json j{{"mode", r.exhaustive ? "exhaustive" : "random"},
           {"pairs_checked", r.pairs_checked},
           {"failures", r.failures},
           {"rank", r.rank},
           {"envelope", r.envelope}};
    if (!r.exhaustive) j["seed"] = r.seed;
    return j;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const BoundReport& r) {
    std::vector<std::string> cells;
    cells.push_back(std::to_string(r.p));
    cells.push_back(std::to_string(r.n));
    cells.push_back(to_string(r.field));
    cells.push_back(to_string(r.method));
    cells.push_back(json(r.value_real).dump());
    cells.push_back(std::to_string(r.value_int));
    cells.push_back(r.valid_unconditional ? "true" : "false");
    cells.push_back(r.policy ? r.policy->name_string() : "");
    cells.push_back(r.witnesses ? std::to_string(r.witnesses->pair.l_k) : "");
    cells.push_back(r.witnesses ? std::to_string(r.witnesses->pair.l_k1) : "");
    cells.push_back(r.witnesses ? std::to_string(r.witnesses->curve.genus) : "");
    std::string cav;
    for (std::size_t i = 0; i < r.caveats.size(); ++i) cav += (i ? "; " : "") + r.caveats[i];
    cells.push_back(cav);
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + csv_escape(cells[i]);
    return line;
}

namespace {

void render(const json& j, int indent, std::ostringstream& os) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_structured() && !value.empty()) {
                os << pad << key << ":\n";
                render(value, indent + 1, os);
            } else {
                os << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
            }
        }
    } else if (j.is_array()) {
        bool scalars = true;
        for (const auto& v : j) scalars = scalars && !v.is_structured();
        if (scalars) {
            os << pad << j.dump() << '\n';
            return;
        }
        for (const auto& v : j) {
            os << pad << "-\n";
            render(v, indent + 1, os);
        }
    } else {
        os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

}  // namespace

std::string render_text(const json& j) {
    std::ostringstream os;
    render(j, 0, os);
    return os.str();
}

}  // namespace chudsym
