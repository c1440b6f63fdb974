#include "chudsym/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "chudsym/bound_calc.hpp"
#include "chudsym/chudnovsky_mult.hpp"
#include "chudsym/curve_data.hpp"
#include "chudsym/error.hpp"
#include "chudsym/prime_engine.hpp"
#include "chudsym/report_json.hpp"
#include "chudsym/selftest.hpp"

namespace chudsym::cli {

namespace {

using nlohmann::json;

class UsageError : public Error {
  public:
    explicit UsageError(const std::string& what) : Error("usage", what) {}
};

struct Config {
    std::string format = "json";
    std::uint64_t sieve_limit = PrimeTable::kDefaultLimit;
    std::uint64_t seed = kDefaultSeed;

    std::uint64_t p = 0;
    std::int64_t n = 0;
    std::string field = "p2";
    std::string method = "all";
    std::string policy = "dudek";
    std::string alpha;

    std::string p_set = "5,7,11,13";
    std::string n_range = "100:1000:100";

    std::uint64_t limit = 0;
    bool timing = false;

    std::uint64_t level = 0;
    std::string family;
    std::uint64_t l = 0;

    std::uint64_t q = 0;
    bool allow_deg2 = false;
    std::string emit_tensor;
    std::string verify = "auto";
};

void emit(std::ostream& out, const Config& cfg, const json& j) {
    if (cfg.format == "text") {
        out << render_text(j);
    } else if (cfg.format == "json") {
        out << j.dump(2) << '\n';
    } else {
        throw UsageError("format '" + cfg.format + "' is not available for this command");
    }
}

GapPolicy make_policy(const Config& cfg, const PrimeTable* table) {
    if (cfg.policy == "dudek" || cfg.policy == "bhp") {
        GapPolicy p = cfg.policy == "dudek" ? GapPolicy::dudek() : GapPolicy::bhp();
        if (!cfg.alpha.empty() && parse_rational(cfg.alpha) != p.alpha) {
            throw UsageError("policy " + cfg.policy + " fixes alpha = " + to_string(p.alpha));
        }
        return p;
    }
    if (cfg.policy == "empirical") {
        const Rational alpha = cfg.alpha.empty() ? Rational(2, 3) : parse_rational(cfg.alpha);
        return GapPolicy::empirical(alpha, *table);
    }
    throw UsageError("unknown policy '" + cfg.policy + "'");
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw UsageError("bad list entry '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

struct Range {
    std::int64_t start;
    std::int64_t stop;
    std::int64_t step;
};

Range parse_range(const std::string& s) {
    Range r{};
    char c1 = 0;
    char c2 = 0;
    std::stringstream ss(s);
    if (!(ss >> r.start >> c1 >> r.stop >> c2 >> r.step) || c1 != ':' || c2 != ':' || r.step <= 0 ||
        r.stop < r.start || !ss.eof()) {
        throw UsageError("range must be A:B:STEP with A <= B and STEP > 0, got '" + s + "'");
    }
    return r;
}

int cmd_bound(const Config& cfg, std::ostream& out) {
    const FieldKind field = parse_field(cfg.field);
    if (cfg.method != "closed" && cfg.method != "constructive" && cfg.method != "all") {
        throw UsageError("method must be closed, constructive or all");
    }
    std::optional<PrimeTable> table;
    if (cfg.method != "closed" || cfg.policy == "empirical") table.emplace(cfg.sieve_limit);
    const GapPolicy policy = make_policy(cfg, table ? &*table : nullptr);
    auto closed = [&] {
        return field == FieldKind::Quadratic ? closed_form_quadratic(cfg.p, cfg.n, policy)
                                             : closed_form_prime(cfg.p, cfg.n, policy);
    };
    if (cfg.method == "closed") {
        emit(out, cfg, to_json(closed()));
        return kSuccess;
    }
    if (cfg.method == "constructive") {
        emit(out, cfg, to_json(constructive_bound(*table, cfg.p, cfg.n, field, policy)));
        return kSuccess;
    }
    json reports = json::array();
    json infeasible = json::array();
    reports.push_back(to_json(closed()));
    try {
        reports.push_back(to_json(constructive_bound(*table, cfg.p, cfg.n, field, policy)));
    } catch (const Infeasible& e) {
        infeasible.push_back({{"method", "constructive"}, {"check", e.check()}, {"message", e.what()}});
    }
    emit(out, cfg,
         {{"p", cfg.p}, {"n", cfg.n}, {"field", cfg.field}, {"reports", reports}, {"infeasible", infeasible}});
    return kSuccess;
}

int cmd_table(const Config& cfg, std::ostream& out) {
    const auto primes = parse_list(cfg.p_set);
    const Range range = parse_range(cfg.n_range);
    const PrimeTable table(cfg.sieve_limit);
    const GapPolicy policy = make_policy(cfg, &table);

    std::vector<BoundReport> rows;
    for (auto p : primes) {
        for (std::int64_t n = range.start; n <= range.stop; n += range.step) {
            for (FieldKind field : {FieldKind::Quadratic, FieldKind::Prime}) {
                rows.push_back(field == FieldKind::Quadratic ? closed_form_quadratic(p, n, policy)
                                                             : closed_form_prime(p, n, policy));
                try {
                    rows.push_back(constructive_bound(table, p, n, field, policy));
                } catch (const Infeasible& e) {
                    BoundReport r;
                    r.p = p;
                    r.n = n;
                    r.field = field;
                    r.method = Method::Constructive;
                    r.value_real = 0;
                    r.value_int = 0;
                    r.policy = policy;
                    r.caveats.push_back(std::string("infeasible: ") + e.what());
                    rows.push_back(std::move(r));
                }
                for (Method m : field == FieldKind::Quadratic
                                    ? std::vector<Method>{Method::PriorSquare, Method::PriorPrimeSquare}
                                    : std::vector<Method>{Method::PriorPrimePower, Method::PriorPrime}) {
                    rows.push_back(prior_report(m, p, n));
                }
            }
        }
    }
    if (cfg.format == "csv") {
        const auto& header = csv_header();
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << '\n';
        for (const auto& r : rows) out << csv_row(r) << '\n';
        return kSuccess;
    }
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    emit(out, cfg, {{"rows", arr}});
    return kSuccess;
}

int cmd_gaps(const Config& cfg, std::ostream& out) {
    const Rational alpha = cfg.alpha.empty() ? Rational(2, 3) : parse_rational(cfg.alpha);
    const auto start = std::chrono::steady_clock::now();
    GapReport rep = verify_gaps(cfg.limit, alpha);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    json j = to_json(rep);
    j["runtime_ms"] = cfg.timing ? json(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count())
                                 : json(nullptr);
    emit(out, cfg, j);
    return kSuccess;
}

int cmd_genus(const Config& cfg, std::ostream& out) {
    if (cfg.level != 0) {
        if (!cfg.family.empty()) throw UsageError("--N and --family are mutually exclusive");
        emit(out, cfg, to_json(genus_X0(cfg.level)));
        return kSuccess;
    }
    if (cfg.family.empty()) throw UsageError("genus needs --N or --family with --l and --p");
    if (cfg.family != "11l" && cfg.family != "23l") throw UsageError("family must be 11l or 23l");
    if ((cfg.family == "23l") != (cfg.p == 11)) {
        throw UsageError("family " + cfg.family + " does not match p = " + std::to_string(cfg.p));
    }
    CurveFamilyData d = family_data(cfg.p, cfg.l);
    json j = to_json(d);
    j["gamma0"] = to_json(genus_X0(d.N));
    emit(out, cfg, j);
    return kSuccess;
}

int cmd_mult(const Config& cfg, std::ostream& out) {
    if (cfg.n < 2 || cfg.n > 64) throw UsageError("--n must lie in [2, 64]");
    const auto n = static_cast<unsigned>(cfg.n);
    VerifyOptions opts;
    opts.seed = cfg.seed;
    bool skip_verify = false;
    if (cfg.verify == "exhaustive") {
        if (!exhaustive_feasible(cfg.q, n)) throw UsageError("exhaustive verification needs q^(2n) <= 2^24");
    } else if (cfg.verify.rfind("random:", 0) == 0) {
        try {
            opts.trials = std::stoull(cfg.verify.substr(7));
        } catch (const std::exception&) {
            throw UsageError("bad trial count in '" + cfg.verify + "'");
        }
    } else if (cfg.verify == "none") {
        skip_verify = true;
    } else if (cfg.verify != "auto") {
        throw UsageError("--verify must be exhaustive, random:N, auto or none");
    }

    const FiniteField F = FiniteField::of_order(cfg.q);
    const EvalPlan plan = plan_evaluation(F, n, cfg.allow_deg2);
    const BilinearAlgorithm algo = build_algorithm(F, n, plan);
    json j;
    j["q"] = cfg.q;
    j["n"] = n;
    j["modulus"] = algo.field().modulus();
    j["plan"] = to_json(plan);
    j["rank"] = algo.rank();
    j["seed"] = cfg.seed;
    if (!skip_verify) j["verification"] = to_json(verify(algo, opts));
    if (!cfg.emit_tensor.empty()) {
        std::ofstream f(cfg.emit_tensor);
        if (!f) throw UsageError("cannot write tensor to '" + cfg.emit_tensor + "'");
        f << emit_tensor(algo).dump(2) << '\n';
        j["tensor_path"] = cfg.emit_tensor;
    }
    emit(out, cfg, j);
    return kSuccess;
}

int cmd_compare(const Config& cfg, std::ostream& out) {
    const PrimeTable table(cfg.sieve_limit);
    Config emp = cfg;
    emp.policy = "empirical";
    const GapPolicy closed = GapPolicy::dudek();
    const GapPolicy constructive = make_policy(emp, &table);
    emit(out, cfg, to_json(compare_all(table, cfg.p, cfg.n, closed, constructive)));
    return kSuccess;
}

int cmd_selftest(const Config& cfg, std::ostream& out) {
    const auto results = run_selftest();
    json suites = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        suites.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    emit(out, cfg, {{"passed", all}, {"suites", suites}});
    return all ? kSuccess : kVerification;
}

json error_json(const std::string& reason, const std::string& message) {
    return {{"error", {{"reason", reason}, {"message", message}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
    Config cfg;
    CLI::App app{"Symmetric bilinear multiplication algorithms and uniform rank bounds over finite fields", "chudsym"};
    app.require_subcommand(1);
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "text", "csv"}))
        ->capture_default_str();
    app.add_option("--sieve-limit", cfg.sieve_limit, "Prime table size")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for random verification")->capture_default_str();
    app.fallthrough();

    auto* bound = app.add_subcommand("bound", "Upper bound on the symmetric tensor rank");
    bound->add_option("--p", cfg.p, "Characteristic (prime >= 5)")->required();
    bound->add_option("--n", cfg.n, "Extension degree")->required();
    bound->add_option("--field", cfg.field, "p or p2")->check(CLI::IsMember({"p", "p2"}))->capture_default_str();
    bound->add_option("--method", cfg.method, "closed, constructive or all")->capture_default_str();
    bound->add_option("--policy", cfg.policy, "dudek, bhp or empirical")->capture_default_str();
    bound->add_option("--alpha", cfg.alpha, "Gap exponent c/d (empirical policy)");

    auto* table = app.add_subcommand("table", "Tabulate bounds over a grid of (p, n)");
    table->add_option("--p-set", cfg.p_set, "Comma separated primes")->capture_default_str();
    table->add_option("--n-range", cfg.n_range, "A:B:STEP")->capture_default_str();
    table->add_option("--policy", cfg.policy, "dudek, bhp or empirical")->capture_default_str();
    table->add_option("--alpha", cfg.alpha, "Gap exponent c/d (empirical policy)");

    auto* gaps = app.add_subcommand("gaps", "Primes whose successor gap exceeds l^alpha");
    gaps->add_option("--limit", cfg.limit, "Check primes below this limit")->required();
    gaps->add_option("--alpha", cfg.alpha, "Exponent c/d (default 2/3)");
    gaps->add_flag("--timing", cfg.timing, "Report wall-clock runtime");

    auto* genus = app.add_subcommand("genus", "Genus data of X_0(N)");
    genus->add_option("--N", cfg.level, "Level");
    genus->add_option("--family", cfg.family, "11l or 23l");
    genus->add_option("--l", cfg.l, "Prime level factor");
    genus->add_option("--p", cfg.p, "Reduction characteristic");

    auto* mult = app.add_subcommand("mult", "Build and verify a symmetric multiplication algorithm");
    mult->add_option("--q", cfg.q, "Base field order")->required();
    mult->add_option("--n", cfg.n, "Extension degree")->required();
    mult->add_flag("--allow-deg2", cfg.allow_deg2, "Allow degree-two places");
    mult->add_option("--emit-tensor", cfg.emit_tensor, "Write the decomposition as JSON");
    mult->add_option("--verify", cfg.verify, "exhaustive, random:N, auto or none")->capture_default_str();

    auto* compare = app.add_subcommand("compare", "Compare every applicable bound");
    compare->add_option("--p", cfg.p, "Characteristic (prime >= 5)")->required();
    compare->add_option("--n", cfg.n, "Extension degree")->required();
    compare->add_option("--alpha", cfg.alpha, "Gap exponent for the empirical witness policy");

    auto* selftest = app.add_subcommand("selftest", "Run the invariant suites");

    std::vector<const char*> argv{"chudsym"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        out << error_json("usage", e.what()).dump(2) << '\n';
        return kUsage;
    }

    try {
        if (bound->parsed()) return cmd_bound(cfg, out);
        if (table->parsed()) return cmd_table(cfg, out);
        if (gaps->parsed()) return cmd_gaps(cfg, out);
        if (genus->parsed()) return cmd_genus(cfg, out);
        if (mult->parsed()) return cmd_mult(cfg, out);
        if (compare->parsed()) return cmd_compare(cfg, out);
        if (selftest->parsed()) return cmd_selftest(cfg, out);
    } catch (const Infeasible& e) {
        json j = error_json(e.reason(), e.what());
        j["error"]["check"] = e.check();
        out << j.dump(2) << '\n';
        return kInfeasible;
    } catch (const VerificationFailure& e) {
        json j = error_json(e.reason(), e.what());
        j["error"]["x"] = e.x();
        j["error"]["y"] = e.y();
        out << j.dump(2) << '\n';
        return kVerification;
    } catch (const Error& e) {
        out << error_json(e.reason(), e.what()).dump(2) << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace chudsym::cli
