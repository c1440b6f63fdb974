#include "chudsym/ff_core.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "chudsym/error.hpp"
#include "chudsym/numeric.hpp"

namespace chudsym {

namespace {

constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 61U;
constexpr std::uint64_t kMaxExtensionOrder = std::uint64_t{1} << 20U;
constexpr std::uint64_t kMulTableOrder = 256;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    unsigned __int128 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        r *= base;
        if (r > UINT64_MAX) throw DomainError("integer power overflows 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace

FiniteField FiniteField::prime(std::uint64_t p) {
    if (p >= kMaxPrime) throw DomainError("prime modulus must be below 2^61");
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    FiniteField F;
    F.p_ = p;
    F.s_ = 1;
    F.q_ = p;
    F.modulus_ = {0, 1};
    return F;
}

FiniteField FiniteField::of_order(std::uint64_t q) {
    auto pp = prime_power_decompose(q);
    if (pp.p == 0) throw DomainError(std::to_string(q) + " is not a prime power");
    FiniteField Fp = prime(pp.p);
    if (pp.s == 1) return Fp;
    if (q > kMaxExtensionOrder) throw DomainError("extension base fields are limited to q <= 2^20");
    FiniteField F;
    F.p_ = pp.p;
    F.s_ = pp.s;
    F.q_ = q;
    F.modulus_ = find_irreducible(Fp, pp.s);
    if (q <= kMulTableOrder) {
        F.mul_table_.resize(q * q);
        for (Elem a = 0; a < q; ++a) {
            for (Elem b = 0; b < q; ++b) F.mul_table_[a * q + b] = F.mul_slow(a, b);
        }
    }
    return F;
}

std::vector<std::uint64_t> FiniteField::digits(Elem a) const {
    std::vector<std::uint64_t> d(s_);
    for (unsigned i = 0; i < s_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

Elem FiniteField::from_digits(const std::vector<std::uint64_t>& d) const {
    Elem a = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * p_ + *it;
    return a;
}

Elem FiniteField::from_int(std::int64_t v) const noexcept {
    auto p = static_cast<std::int64_t>(p_);
    auto r = v % p;
    if (r < 0) r += p;
    return static_cast<Elem>(r);
}

Elem FiniteField::add(Elem a, Elem b) const noexcept {
    if (s_ == 1) {
        Elem r = a + b;
        return r >= p_ ? r - p_ : r;
    }
    Elem r = 0;
    Elem place = 1;
    for (unsigned i = 0; i < s_; ++i) {
        Elem d = a % p_ + b % p_;
        if (d >= p_) d -= p_;
        r += d * place;
        place *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

Elem FiniteField::neg(Elem a) const noexcept {
    if (s_ == 1) return a == 0 ? 0 : p_ - a;
    Elem r = 0;
    Elem place = 1;
    for (unsigned i = 0; i < s_; ++i) {
        Elem d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * place;
        place *= p_;
        a /= p_;
    }
    return r;
}

Elem FiniteField::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem FiniteField::mul_slow(Elem a, Elem b) const {
    auto da = digits(a);
    auto db = digits(b);
    std::vector<std::uint64_t> prod(2 * s_ - 1, 0);
    for (unsigned i = 0; i < s_; ++i) {
        for (unsigned j = 0; j < s_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    // Reduce with the monic modulus u^s = -(m_0 + ... + m_{s-1} u^{s-1}).
    for (std::size_t k = prod.size(); k-- > s_;) {
        std::uint64_t c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (unsigned i = 0; i < s_; ++i) {
            std::uint64_t sub = c * modulus_[i] % p_;
            prod[k - s_ + i] = (prod[k - s_ + i] + p_ - sub) % p_;
        }
    }
    prod.resize(s_);
    return from_digits(prod);
}

Elem FiniteField::mul(Elem a, Elem b) const noexcept {
    if (s_ == 1) return mulmod(a, b, p_);
    if (!mul_table_.empty()) return mul_table_[a * q_ + b];
    return mul_slow(a, b);
}

Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw DivisionByZero();
    // a^(q-2) by square-and-multiply.
    Elem result = 1;
    Elem base = a;
    std::uint64_t e = q_ - 2;
    while (e != 0) {
        if (e & 1U) result = mul(result, base);
        base = mul(base, base);
        e >>= 1U;
    }
    return result;
}

Elem FiniteField::div(Elem a, Elem b) const { return mul(a, inv(b)); }

namespace poly {

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

long degree(const Poly& f) { return static_cast<long>(f.size()) - 1; }

Elem coeff(const Poly& f, std::size_t i) { return i < f.size() ? f[i] : 0; }

Poly add(const FiniteField& F, const Poly& f, const Poly& g) {
    Poly r(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(coeff(f, i), coeff(g, i));
    trim(r);
    return r;
}

Poly sub(const FiniteField& F, const Poly& f, const Poly& g) {
    Poly r(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(coeff(f, i), coeff(g, i));
    trim(r);
    return r;
}

Poly mul(const FiniteField& F, const Poly& f, const Poly& g) {
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(f[i], g[j]));
    }
    trim(r);
    return r;
}

Poly scale(const FiniteField& F, const Poly& f, Elem c) {
    Poly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = F.mul(f[i], c);
    trim(r);
    return r;
}

void divmod(const FiniteField& F, const Poly& f, const Poly& g, Poly& quot, Poly& rem) {
    if (g.empty()) throw DivisionByZero();
    rem = f;
    trim(rem);
    quot.clear();
    if (rem.size() < g.size()) return;
    quot.assign(rem.size() - g.size() + 1, 0);
    Elem lead_inv = F.inv(g.back());
    while (!rem.empty() && rem.size() >= g.size()) {
        std::size_t shift = rem.size() - g.size();
        Elem c = F.mul(rem.back(), lead_inv);
        quot[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i) {
            rem[shift + i] = F.sub(rem[shift + i], F.mul(c, g[i]));
        }
        trim(rem);
    }
    trim(quot);
}

Poly mod(const FiniteField& F, const Poly& f, const Poly& g) {
    Poly q;
    Poly r;
    divmod(F, f, g, q, r);
    return r;
}

Poly monic_gcd(const FiniteField& F, Poly f, Poly g) {
    trim(f);
    trim(g);
    while (!g.empty()) {
        Poly r = mod(F, f, g);
        f = std::move(g);
        g = std::move(r);
    }
    if (f.empty()) return f;
    return scale(F, f, F.inv(f.back()));
}

Poly powmod(const FiniteField& F, const Poly& base, std::uint64_t e, const Poly& m) {
    Poly result{1};
    result = mod(F, result, m);
    Poly b = mod(F, base, m);
    while (e != 0) {
        if (e & 1U) result = mod(F, mul(F, result, b), m);
        e >>= 1U;
        if (e != 0) b = mod(F, mul(F, b, b), m);
    }
    return result;
}

Elem eval(const FiniteField& F, const Poly& f, Elem x) {
    Elem acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
    return acc;
}

bool is_irreducible(const FiniteField& F, const Poly& f_in) {
    Poly f = f_in;
    trim(f);
    long d = degree(f);
    if (d < 1) return false;
    if (d == 1) return true;
    f = scale(F, f, F.inv(f.back()));
    const std::uint64_t q = F.order();
    const Poly x{0, 1};

    // Rabin: x^(q^d) = x mod f, and gcd(x^(q^(d/r)) - x, f) = 1 for primes r | d.
    std::vector<long> prime_divisors;
    long rest = d;
    for (long r = 2; r * r <= rest; ++r) {
        if (rest % r == 0) {
            prime_divisors.push_back(r);
            while (rest % r == 0) rest /= r;
        }
    }
    if (rest > 1) prime_divisors.push_back(rest);

    std::vector<Poly> frob(static_cast<std::size_t>(d) + 1);
    frob[0] = mod(F, x, f);
    for (long k = 1; k <= d; ++k) frob[k] = powmod(F, frob[k - 1], q, f);
    if (frob[d] != frob[0]) return false;
    for (long r : prime_divisors) {
        Poly h = sub(F, frob[d / r], x);
        if (degree(monic_gcd(F, h, f)) != 0) return false;
    }
    return true;
}

std::string to_string(const Poly& f) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    os << ']';
    return os.str();
}

}  // namespace poly

Poly find_irreducible(const FiniteField& F, unsigned n) {
    if (n == 0) throw DomainError("degree must be at least 1");
    const std::uint64_t q = F.order();
    std::vector<Elem> low(n, 0);
    while (true) {
        Poly f(low.begin(), low.end());
        f.push_back(1);
        if (poly::is_irreducible(F, f)) return f;
        // Next candidate; the constant term is the least significant digit.
        std::size_t i = 0;
        while (i < n && ++low[i] == q) {
            low[i] = 0;
            ++i;
        }
        if (i == n) throw DomainError("no irreducible polynomial found");
    }
}

std::uint64_t count_places_rational_ff(std::uint64_t q, unsigned d) {
    if (d == 0) throw DomainError("place degree must be at least 1");
    if (d == 1) return q + 1;
    // (1/d) sum_{e | d} mobius(e) q^(d/e)
    BigInt total = 0;
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        int mu = 1;
        unsigned m = e;
        for (unsigned r = 2; r * r <= m; ++r) {
            if (m % r == 0) {
                m /= r;
                if (m % r == 0) {
                    mu = 0;
                    break;
                }
                mu = -mu;
            }
        }
        if (mu == 0) continue;
        if (m > 1) mu = -mu;
        BigInt term = ipow(BigInt(q), d / e);
        total += mu > 0 ? term : BigInt(-term);
    }
    total /= d;
    if (total > UINT64_MAX) throw DomainError("place count overflows 64 bits");
    return total.convert_to<std::uint64_t>();
}

ExtensionField::ExtensionField(FiniteField base, unsigned n)
    : base_(std::move(base)), n_(n), modulus_(find_irreducible(base_, n)) {}

ExtensionField::ExtensionField(FiniteField base, unsigned n, Poly modulus)
    : base_(std::move(base)), n_(n), modulus_(std::move(modulus)) {
    poly::trim(modulus_);
    if (n_ == 0) throw DomainError("extension degree must be at least 1");
    if (poly::degree(modulus_) != static_cast<long>(n_)) {
        throw DomainError("modulus degree does not match extension degree");
    }
    if (modulus_.back() != 1) throw DomainError("modulus must be monic");
    for (Elem c : modulus_) {
        if (!base_.contains(c)) throw DomainError("modulus coefficient outside the base field");
    }
    if (!poly::is_irreducible(base_, modulus_)) {
        throw DomainError("modulus " + poly::to_string(modulus_) + " is reducible");
    }
}

FieldElement ExtensionField::zero() const { return FieldElement{std::vector<Elem>(n_, 0)}; }

FieldElement ExtensionField::one() const {
    FieldElement e = zero();
    e.coords[0] = 1;
    return e;
}

FieldElement ExtensionField::element(std::vector<Elem> coords) const {
    FieldElement e{std::move(coords)};
    check(e);
    return e;
}

std::uint64_t ExtensionField::size() const { return checked_pow(base_.order(), n_); }

FieldElement ExtensionField::from_index(std::uint64_t index) const {
    FieldElement e = zero();
    for (unsigned i = 0; i < n_; ++i) {
        e.coords[i] = index % base_.order();
        index /= base_.order();
    }
    return e;
}

void ExtensionField::check(const FieldElement& a) const {
    if (a.coords.size() != n_) {
        throw DomainError("element has " + std::to_string(a.coords.size()) +
                          " coordinates, extension degree is " + std::to_string(n_));
    }
    for (Elem c : a.coords) {
        if (!base_.contains(c)) throw DomainError("coordinate outside the base field");
    }
}

Poly ExtensionField::to_poly(const FieldElement& a) const {
    check(a);
    Poly f = a.coords;
    poly::trim(f);
    return f;
}

FieldElement ExtensionField::from_poly(Poly f) const {
    f.resize(n_, 0);
    return FieldElement{std::move(f)};
}

FieldElement ExtensionField::add(const FieldElement& a, const FieldElement& b) const {
    return from_poly(poly::add(base_, to_poly(a), to_poly(b)));
}

FieldElement ExtensionField::sub(const FieldElement& a, const FieldElement& b) const {
    return from_poly(poly::sub(base_, to_poly(a), to_poly(b)));
}

FieldElement ExtensionField::mul(const FieldElement& a, const FieldElement& b) const {
    return from_poly(poly::mod(base_, poly::mul(base_, to_poly(a), to_poly(b)), modulus_));
}

bool ExtensionField::is_zero(const FieldElement& a) const { return to_poly(a).empty(); }

FieldElement ExtensionField::inv(const FieldElement& a) const {
    // Extended Euclid on (a, Q).
    Poly r0 = modulus_;
    Poly r1 = to_poly(a);
    if (r1.empty()) throw DivisionByZero();
    Poly s0;
    Poly s1{1};
    while (!r1.empty()) {
        Poly quot;
        Poly rem;
        poly::divmod(base_, r0, r1, quot, rem);
        Poly s2 = poly::sub(base_, s0, poly::mul(base_, quot, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant since Q is irreducible.
    Poly result = poly::scale(base_, s0, base_.inv(r0[0]));
    return from_poly(poly::mod(base_, result, modulus_));
}

FieldElement ExtensionField::div(const FieldElement& a, const FieldElement& b) const {
    return mul(a, inv(b));
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DomainError("matrix entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix multiply(const FiniteField& F, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DomainError("matrix shapes do not compose");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Elem aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = F.add(c(i, j), F.mul(aik, b(k, j)));
        }
    }
    return c;
}

std::vector<Elem> apply(const FiniteField& F, const Matrix& a, std::span<const Elem> v) {
    if (a.cols() != v.size()) throw DomainError("matrix/vector shapes do not compose");
    std::vector<Elem> out(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Elem acc = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc = F.add(acc, F.mul(a(i, j), v[j]));
        out[i] = acc;
    }
    return out;
}

Matrix solve_linear(const FiniteField& F, const Matrix& m, const Matrix& rhs) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw DomainError("solve_linear needs a square matrix");
    if (rhs.rows() != n) throw DomainError("right-hand side row count mismatch");
    Matrix a = m;
    Matrix b = rhs;
    const std::size_t k = b.cols();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) throw SingularMatrix(col);
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            for (std::size_t j = 0; j < k; ++j) std::swap(b(pivot, j), b(col, j));
        }
        Elem pinv = F.inv(a(col, col));
        for (std::size_t j = 0; j < n; ++j) a(col, j) = F.mul(a(col, j), pinv);
        for (std::size_t j = 0; j < k; ++j) b(col, j) = F.mul(b(col, j), pinv);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Elem f = a(r, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) a(r, j) = F.sub(a(r, j), F.mul(f, a(col, j)));
            for (std::size_t j = 0; j < k; ++j) b(r, j) = F.sub(b(r, j), F.mul(f, b(col, j)));
        }
    }
    return b;
}

Matrix inverse(const FiniteField& F, const Matrix& m) {
    return solve_linear(F, m, Matrix::identity(m.rows()));
}

std::size_t rank(const FiniteField& F, Matrix m) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t pivot = r;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(r, j));
        Elem pinv = F.inv(m(r, col));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            Elem f = F.mul(m(i, col), pinv);
            if (f == 0) continue;
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
        }
        ++r;
    }
    return r;
}

}  // namespace chudsym
