#pragma once

#include <stdexcept>
#include <string>

namespace chudsym {

// Every failure carries a short machine-readable reason next to the message.
class Error : public std::runtime_error {
  public:
    Error(std::string reason, const std::string& what)
        : std::runtime_error(what), reason_(std::move(reason)) {}

    const std::string& reason() const noexcept { return reason_; }

  private:
    std::string reason_;
};

class DomainError : public Error {
  public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

class DivisionByZero : public Error {
  public:
    DivisionByZero() : Error("division_by_zero", "division by zero in finite field") {}
};

class SingularMatrix : public Error {
  public:
    explicit SingularMatrix(std::size_t column)
        : Error("singular_matrix", "singular matrix: no pivot in column " + std::to_string(column)),
          column_(column) {}

    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t column_;
};

// A precondition of a construction or bound pipeline does not hold.
class Infeasible : public Error {
  public:
    Infeasible(std::string check, const std::string& what)
        : Error("infeasible", what), check_(std::move(check)) {}

    const std::string& check() const noexcept { return check_; }

  private:
    std::string check_;
};

class VerificationFailure : public Error {
  public:
    VerificationFailure(std::string x, std::string y, const std::string& what)
        : Error("verification_failed", what), x_(std::move(x)), y_(std::move(y)) {}

    const std::string& x() const noexcept { return x_; }
    const std::string& y() const noexcept { return y_; }

  private:
    std::string x_;
    std::string y_;
};

}  // namespace chudsym
