#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace chudsym {

// An element of F_q stored as its integer code: for q = p^s the code is
// sum a_i p^i where (a_0, ..., a_{s-1}) are the coordinates over F_p.
using Elem = std::uint64_t;

// Polynomial over F_q, low-degree coefficient first. Kept trimmed, so the
// zero polynomial is the empty vector.
using Poly = std::vector<Elem>;

// F_q with q = p^s. For s > 1 the field is F_p[u]/(m) where m is the
// smallest monic irreducible of degree s (see find_irreducible).
class FiniteField {
  public:
    // p must be prime and below 2^61.
    static FiniteField prime(std::uint64_t p);
    // q must be a prime power; extension fields are limited to q <= 2^20.
    static FiniteField of_order(std::uint64_t q);

    std::uint64_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return s_; }
    std::uint64_t order() const noexcept { return q_; }
    bool is_prime_field() const noexcept { return s_ == 1; }
    // Defining polynomial over F_p; {0, 1} (i.e. u) for a prime field.
    const Poly& modulus() const noexcept { return modulus_; }

    Elem zero() const noexcept { return 0; }
    Elem one() const noexcept { return 1; }
    Elem from_int(std::int64_t v) const noexcept;

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    Elem inv(Elem a) const;  // throws DivisionByZero
    Elem div(Elem a, Elem b) const;

    bool contains(Elem a) const noexcept { return a < q_; }

    friend bool operator==(const FiniteField& a, const FiniteField& b) noexcept {
        return a.p_ == b.p_ && a.s_ == b.s_ && a.modulus_ == b.modulus_;
    }

  private:
    FiniteField() = default;

    std::vector<std::uint64_t> digits(Elem a) const;
    Elem from_digits(const std::vector<std::uint64_t>& d) const;
    Elem mul_slow(Elem a, Elem b) const;

    std::uint64_t p_ = 2;
    unsigned s_ = 1;
    std::uint64_t q_ = 2;
    Poly modulus_;
    // Multiplication table, filled for small extension fields.
    std::vector<Elem> mul_table_;
};

namespace poly {

void trim(Poly& f);
// -1 for the zero polynomial.
long degree(const Poly& f);
Elem coeff(const Poly& f, std::size_t i);
Poly add(const FiniteField& F, const Poly& f, const Poly& g);
Poly sub(const FiniteField& F, const Poly& f, const Poly& g);
Poly mul(const FiniteField& F, const Poly& f, const Poly& g);
Poly scale(const FiniteField& F, const Poly& f, Elem c);
// Quotient and remainder; g must be nonzero.
void divmod(const FiniteField& F, const Poly& f, const Poly& g, Poly& quot, Poly& rem);
Poly mod(const FiniteField& F, const Poly& f, const Poly& g);
Poly monic_gcd(const FiniteField& F, Poly f, Poly g);
// base^e mod m.
Poly powmod(const FiniteField& F, const Poly& base, std::uint64_t e, const Poly& m);
Elem eval(const FiniteField& F, const Poly& f, Elem x);
bool is_irreducible(const FiniteField& F, const Poly& f);
std::string to_string(const Poly& f);

}  // namespace poly

// Smallest monic irreducible polynomial of degree n over F_q. Candidates are
// ordered by the integer sum c_i q^i over the non-leading coefficients, so
// the constant term is the least significant digit.
Poly find_irreducible(const FiniteField& F, unsigned n);

// Number of degree-d places of the rational function field F_q(x):
// q + 1 for d = 1, otherwise the number of monic irreducibles of degree d.
std::uint64_t count_places_rational_ff(std::uint64_t q, unsigned d);

struct FieldElement {
    std::vector<Elem> coords;  // low degree first, length = extension degree

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

// F_{q^n} = F_q[t]/(Q) with Q monic irreducible of degree n.
class ExtensionField {
  public:
    // Canonical modulus from find_irreducible.
    ExtensionField(FiniteField base, unsigned n);
    // Explicit modulus; validated monic, irreducible and of degree n.
    ExtensionField(FiniteField base, unsigned n, Poly modulus);

    const FiniteField& base() const noexcept { return base_; }
    unsigned degree() const noexcept { return n_; }
    const Poly& modulus() const noexcept { return modulus_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement element(std::vector<Elem> coords) const;  // validates
    // Bijection between [0, q^n) and elements (coordinate 0 least significant).
    FieldElement from_index(std::uint64_t index) const;
    std::uint64_t size() const;  // q^n; throws when it does not fit in 64 bits

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement div(const FieldElement& a, const FieldElement& b) const;

    bool is_zero(const FieldElement& a) const;
    void check(const FieldElement& a) const;  // throws DomainError on shape mismatch

  private:
    Poly to_poly(const FieldElement& a) const;
    FieldElement from_poly(Poly f) const;

    FiniteField base_;
    unsigned n_;
    Poly modulus_;
};

// Dense row-major matrix over F_q.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Elem>& data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

Matrix multiply(const FiniteField& F, const Matrix& a, const Matrix& b);
std::vector<Elem> apply(const FiniteField& F, const Matrix& a, std::span<const Elem> v);

// Solves M X = rhs by Gauss-Jordan elimination, taking the first nonzero
// entry of each column as pivot. Throws SingularMatrix naming the column.
Matrix solve_linear(const FiniteField& F, const Matrix& m, const Matrix& rhs);
Matrix inverse(const FiniteField& F, const Matrix& m);
std::size_t rank(const FiniteField& F, Matrix m);

}  // namespace chudsym
