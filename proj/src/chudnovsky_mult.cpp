#include "chudsym/chudnovsky_mult.hpp"

#include <random>
#include <sstream>

#include "chudsym/error.hpp"
#include "chudsym/numeric.hpp"

namespace chudsym {

namespace {

// The first `count` monic irreducible quadratics in canonical order.
std::vector<Poly> irreducible_quadratics(const FiniteField& F, std::uint64_t count) {
    std::vector<Poly> out;
    const std::uint64_t q = F.order();
    for (Elem c1 = 0; c1 < q && out.size() < count; ++c1) {
        for (Elem c0 = 0; c0 < q && out.size() < count; ++c0) {
            Poly f{c0, c1, 1};
            if (poly::is_irreducible(F, f)) out.push_back(f);
        }
    }
    return out;
}

// x^j mod m for j < count, as columns of a deg(m) x count matrix.
Matrix residue_matrix(const FiniteField& F, const Poly& m, std::size_t count) {
    const auto d = static_cast<std::size_t>(poly::degree(m));
    Matrix r(d, count);
    Poly power{1};
    for (std::size_t j = 0; j < count; ++j) {
        Poly red = poly::mod(F, power, m);
        for (std::size_t i = 0; i < d; ++i) r(i, j) = poly::coeff(red, i);
        power.insert(power.begin(), 0);
    }
    return r;
}

std::string element_string(const FieldElement& e) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < e.coords.size(); ++i) os << (i ? "," : "") << e.coords[i];
    os << ']';
    return os.str();
}

}  // namespace

EvalPlan plan_evaluation(const FiniteField& F, unsigned n, bool allow_deg2) {
    if (n < 2) throw DomainError("extension degree must be at least 2");
    const std::uint64_t q = F.order();
    const std::uint64_t need = 2ULL * n - 1;
    EvalPlan plan;
    plan.q = q;
    plan.n = n;

    std::uint64_t k = 0;  // degree-two places
    if (q + 1 < need) {
        if (!allow_deg2) {
            throw Infeasible("n1", "N1 = q+1 = " + std::to_string(q + 1) + " rational places cannot cover 2n-1 = " +
                                       std::to_string(need) + " (degree-one hypothesis N1 > 2n-2 fails)");
        }
        k = (need - (q + 1) + 1) / 2;
        const std::uint64_t n2 = count_places_rational_ff(q, 2);
        if (k > n2) {
            throw Infeasible("n1_plus_2n2", "N1 + 2 N2 = " + std::to_string(q + 1 + 2 * n2) +
                                                " places cannot cover 2n-1 = " + std::to_string(need) +
                                                " (degree-two hypothesis N1 + 2 N2 > 2n-2 fails)");
        }
    }
    const std::uint64_t rational = need - 2 * k;
    for (Elem a = 0; a < std::min(rational, q); ++a) plan.rational_nodes.push_back(a);
    plan.use_infinity = rational == q + 1;
    plan.deg2_places = irreducible_quadratics(F, k);
    plan.total_degree = static_cast<unsigned>(rational + 2 * k);
    return plan;
}

BilinearAlgorithm::BilinearAlgorithm(ExtensionField field, Matrix forms, Matrix recon,
                                     std::vector<PlaceContribution> ledger)
    : field_(std::move(field)), forms_(std::move(forms)), recon_(std::move(recon)), ledger_(std::move(ledger)) {
    const unsigned n = field_.degree();
    if (forms_.cols() != n || recon_.rows() != n || recon_.cols() != forms_.rows()) {
        throw DomainError("bilinear algorithm matrices have inconsistent shapes");
    }
    std::size_t total = 0;
    for (const auto& c : ledger_) total += c.cost;
    if (total != forms_.rows()) throw DomainError("place ledger does not add up to the rank");
}

bool BilinearAlgorithm::uses_degree_two() const {
    for (const auto& c : ledger_) {
        if (c.kind == PlaceContribution::Kind::DegreeTwo) return true;
    }
    return false;
}

BilinearAlgorithm build_algorithm(const FiniteField& F, unsigned n, const EvalPlan& plan,
                                  std::optional<Poly> modulus) {
    if (plan.n != n || plan.q != F.order()) throw DomainError("plan does not match the field");
    const std::size_t m = 2ULL * n - 1;  // coefficients of a product of two degree < n polynomials
    if (plan.total_degree < m) throw DomainError("plan total degree is below 2n-1");
    for (std::size_t i = 0; i < plan.rational_nodes.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (plan.rational_nodes[i] == plan.rational_nodes[j]) throw DomainError("repeated rational node");
        }
    }
    ExtensionField E = modulus ? ExtensionField(F, n, *modulus) : ExtensionField(F, n);

    // Per slot: rows of the evaluation map on products (eval_rows), operand
    // forms, and how products recombine into evaluations (combine).
    std::vector<std::vector<Elem>> eval_rows;
    std::vector<std::vector<Elem>> form_rows;
    std::vector<std::vector<std::pair<std::size_t, Elem>>> combine;  // per eval row: (product, coeff)
    std::vector<PlaceContribution> ledger;

    for (Elem a : plan.rational_nodes) {
        std::vector<Elem> row(m);
        Elem pw = 1;
        for (std::size_t j = 0; j < m; ++j) {
            row[j] = pw;
            pw = F.mul(pw, a);
        }
        form_rows.emplace_back(row.begin(), row.begin() + n);
        combine.push_back({{form_rows.size() - 1, 1}});
        eval_rows.push_back(std::move(row));
        ledger.push_back({PlaceContribution::Kind::Rational, a, {}, 1});
    }
    if (plan.use_infinity) {
        std::vector<Elem> row(m, 0);
        row[m - 1] = 1;
        std::vector<Elem> form(n, 0);
        form[n - 1] = 1;
        form_rows.push_back(std::move(form));
        combine.push_back({{form_rows.size() - 1, 1}});
        eval_rows.push_back(std::move(row));
        ledger.push_back({PlaceContribution::Kind::Infinity, 0, {}, 1});
    }
    if (!plan.deg2_places.empty()) {
        const EvalPlan sub_plan = plan_evaluation(F, 2, false);
        for (const Poly& pi : plan.deg2_places) {
            if (poly::degree(pi) != 2 || !poly::is_irreducible(F, pi)) {
                throw DomainError("degree-two place " + poly::to_string(pi) + " is not an irreducible quadratic");
            }
            const BilinearAlgorithm sub = build_algorithm(F, 2, sub_plan, pi);
            const Matrix op_residue = residue_matrix(F, pi, n);
            const Matrix prod_residue = residue_matrix(F, pi, m);
            const Matrix forms = multiply(F, sub.forms(), op_residue);  // 3 x n
            const std::size_t first = form_rows.size();
            for (std::size_t i = 0; i < forms.rows(); ++i) {
                form_rows.emplace_back(forms.row(i).begin(), forms.row(i).end());
            }
            for (std::size_t i = 0; i < 2; ++i) {
                eval_rows.emplace_back(prod_residue.row(i).begin(), prod_residue.row(i).end());
                std::vector<std::pair<std::size_t, Elem>> c;
                for (std::size_t j = 0; j < sub.rank(); ++j) c.emplace_back(first + j, sub.recon()(i, j));
                combine.push_back(std::move(c));
            }
            ledger.push_back({PlaceContribution::Kind::DegreeTwo, 0, pi, static_cast<unsigned>(sub.rank())});
        }
    }
    for (std::size_t i = 0; i < plan.deg2_places.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (plan.deg2_places[i] == plan.deg2_places[j]) throw DomainError("repeated degree-two place");
        }
    }

    // First full-rank square subsystem in canonical order.
    std::vector<std::size_t> chosen;
    {
        Matrix acc(0, m);
        for (std::size_t i = 0; i < eval_rows.size() && chosen.size() < m; ++i) {
            std::vector<Elem> data = acc.data();
            data.insert(data.end(), eval_rows[i].begin(), eval_rows[i].end());
            Matrix trial(chosen.size() + 1, m, std::move(data));
            if (rank(F, trial) == chosen.size() + 1) {
                chosen.push_back(i);
                acc = std::move(trial);
            }
        }
        if (chosen.size() < m) throw SingularMatrix(chosen.size());
    }
    const std::size_t r = form_rows.size();
    Matrix eval(m, m);
    Matrix combine_sel(m, r);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) eval(i, j) = eval_rows[chosen[i]][j];
        for (const auto& [prod, c] : combine[chosen[i]]) combine_sel(i, prod) = c;
    }
    const Matrix eval_inv = inverse(F, eval);
    const Matrix reduce = residue_matrix(F, E.modulus(), m);  // n x m
    Matrix recon = multiply(F, multiply(F, reduce, eval_inv), combine_sel);

    Matrix forms(r, n);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < n; ++j) forms(i, j) = form_rows[i][j];
    }
    return BilinearAlgorithm(std::move(E), std::move(forms), std::move(recon), std::move(ledger));
}

FieldElement multiply(const BilinearAlgorithm& algo, const FieldElement& x, const FieldElement& y) {
    const ExtensionField& E = algo.field();
    E.check(x);
    E.check(y);
    const FiniteField& F = E.base();
    std::vector<Elem> ex = apply(F, algo.forms(), x.coords);
    std::vector<Elem> ey = apply(F, algo.forms(), y.coords);
    for (std::size_t i = 0; i < ex.size(); ++i) ex[i] = F.mul(ex[i], ey[i]);
    return FieldElement{apply(F, algo.recon(), ex)};
}

bool exhaustive_feasible(std::uint64_t q, unsigned n) {
    constexpr std::uint64_t kLimit = std::uint64_t{1} << 24U;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < 2 * n; ++i) {
        total *= q;
        if (total > kLimit) return false;
    }
    return true;
}

VerificationReport verify(const BilinearAlgorithm& algo, const VerifyOptions& opts) {
    const ExtensionField& E = algo.field();
    const std::uint64_t q = E.base().order();
    VerificationReport rep;
    rep.rank = algo.rank();
    rep.seed = opts.seed;
    rep.envelope = algo.uses_degree_two() ? 3LL * E.degree() : 2LL * E.degree() - 1;
    rep.exhaustive = exhaustive_feasible(q, E.degree());

    auto check = [&](const FieldElement& x, const FieldElement& y) {
        ++rep.pairs_checked;
        if (multiply(algo, x, y) != E.mul(x, y)) {
            ++rep.failures;
            throw VerificationFailure(element_string(x), element_string(y),
                                      "bilinear algorithm disagrees with reference product at x = " +
                                          element_string(x) + ", y = " + element_string(y));
        }
    };

    if (rep.exhaustive) {
        // Evaluations of every element are computed once; the reference
        // product x*y is M_x y, where column j of M_x is E.mul(x, t^j).
        const FiniteField& F = E.base();
        const std::uint64_t size = E.size();
        const std::size_t n = E.degree();
        const std::size_t r = algo.rank();
        std::vector<FieldElement> all;
        all.reserve(size);
        for (std::uint64_t i = 0; i < size; ++i) all.push_back(E.from_index(i));
        std::vector<Elem> evals(size * r);
        for (std::uint64_t i = 0; i < size; ++i) {
            auto v = apply(F, algo.forms(), all[i].coords);
            std::copy(v.begin(), v.end(), evals.begin() + static_cast<std::ptrdiff_t>(i * r));
        }
        std::vector<FieldElement> basis;
        for (std::size_t j = 0; j < n; ++j) {
            FieldElement b = E.zero();
            b.coords[j] = 1;
            basis.push_back(b);
        }
        const std::vector<Elem>& recon = algo.recon().data();
        const bool lazy = F.is_prime_field() && q < (std::uint64_t{1} << 20U) && r <= 64;
        std::vector<Elem> mx(n * n);
        std::vector<Elem> prod(r);
        for (std::uint64_t i = 0; i < size; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const FieldElement col = E.mul(all[i], basis[j]);
                for (std::size_t k = 0; k < n; ++k) mx[k * n + j] = col.coords[k];
            }
            const Elem* ex = &evals[i * r];
            for (std::uint64_t jdx = 0; jdx < size; ++jdx) {
                const Elem* ey = &evals[jdx * r];
                const auto& y = all[jdx].coords;
                ++rep.pairs_checked;
                for (std::size_t k = 0; k < r; ++k) prod[k] = F.mul(ex[k], ey[k]);
                for (std::size_t k = 0; k < n; ++k) {
                    Elem got = 0;
                    Elem want = 0;
                    if (lazy) {
                        // sums of at most 64 products below 2^40 fit in 64 bits
                        for (std::size_t m = 0; m < r; ++m) got += recon[k * r + m] * prod[m];
                        for (std::size_t m = 0; m < n; ++m) want += mx[k * n + m] * y[m];
                        got %= q;
                        want %= q;
                    } else {
                        for (std::size_t m = 0; m < r; ++m) got = F.add(got, F.mul(recon[k * r + m], prod[m]));
                        for (std::size_t m = 0; m < n; ++m) want = F.add(want, F.mul(mx[k * n + m], y[m]));
                    }
                    if (got != want) {
                        --rep.pairs_checked;
                        check(all[i], all[jdx]);
                    }
                }
            }
        }
        return rep;
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint64_t> coord(0, q - 1);
    auto draw = [&] {
        FieldElement e = E.zero();
        for (auto& c : e.coords) c = coord(rng);
        return e;
    };
    for (std::uint64_t t = 0; t < opts.trials; ++t) {
        FieldElement x = draw();
        FieldElement y = draw();
        check(x, y);
    }
    return rep;
}

namespace {

nlohmann::json matrix_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<Elem>(m.row(i).begin(), m.row(i).end()));
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) throw DomainError("tensor matrix has the wrong row count");
    std::vector<Elem> data;
    data.reserve(rows * cols);
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) throw DomainError("tensor matrix has the wrong column count");
        for (const auto& v : row) data.push_back(v.get<Elem>());
    }
    return Matrix(rows, cols, std::move(data));
}

}  // namespace

nlohmann::json emit_tensor(const BilinearAlgorithm& algo) {
    nlohmann::json j;
    j["q"] = algo.field().base().order();
    j["n"] = algo.field().degree();
    j["modulus"] = algo.field().modulus();
    j["rank"] = algo.rank();
    j["forms"] = matrix_json(algo.forms());
    j["recon"] = matrix_json(algo.recon());
    nlohmann::json ledger = nlohmann::json::array();
    for (const auto& c : algo.ledger()) {
        nlohmann::json e;
        switch (c.kind) {
            case PlaceContribution::Kind::Rational:
                e["kind"] = "rational";
                e["node"] = c.node;
                break;
            case PlaceContribution::Kind::Infinity:
                e["kind"] = "infinity";
                break;
            case PlaceContribution::Kind::DegreeTwo:
                e["kind"] = "degree2";
                e["modulus"] = c.modulus;
                break;
        }
        e["cost"] = c.cost;
        ledger.push_back(std::move(e));
    }
    j["ledger"] = std::move(ledger);
    return j;
}

BilinearAlgorithm parse_tensor(const nlohmann::json& j) {
    try {
        const auto q = j.at("q").get<std::uint64_t>();
        const auto n = j.at("n").get<unsigned>();
        const auto r = j.at("rank").get<std::size_t>();
        FiniteField F = FiniteField::of_order(q);
        ExtensionField E(F, n, j.at("modulus").get<Poly>());
        Matrix forms = matrix_from_json(j.at("forms"), r, n);
        Matrix recon = matrix_from_json(j.at("recon"), n, r);
        for (Elem v : forms.data()) {
            if (!F.contains(v)) throw DomainError("form entry outside the base field");
        }
        for (Elem v : recon.data()) {
            if (!F.contains(v)) throw DomainError("reconstruction entry outside the base field");
        }
        std::vector<PlaceContribution> ledger;
        for (const auto& e : j.at("ledger")) {
            PlaceContribution c;
            const auto kind = e.at("kind").get<std::string>();
            if (kind == "rational") {
                c.kind = PlaceContribution::Kind::Rational;
                c.node = e.at("node").get<Elem>();
            } else if (kind == "infinity") {
                c.kind = PlaceContribution::Kind::Infinity;
            } else if (kind == "degree2") {
                c.kind = PlaceContribution::Kind::DegreeTwo;
                c.modulus = e.at("modulus").get<Poly>();
            } else {
                throw DomainError("unknown ledger entry kind '" + kind + "'");
            }
            c.cost = e.at("cost").get<unsigned>();
            ledger.push_back(std::move(c));
        }
        return BilinearAlgorithm(std::move(E), std::move(forms), std::move(recon), std::move(ledger));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed tensor JSON: ") + e.what());
    }
}

}  // namespace chudsym
