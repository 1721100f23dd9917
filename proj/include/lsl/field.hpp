#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace lsl {

// All failures surface as Error with a stable machine-readable code
// ("FieldMismatch", "DivisionByZero", ...) plus a human message.
struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

enum class FieldKind { Fp, Rational };

// A coefficient field: F_p for a machine-word prime p, or Q.
struct Field {
    FieldKind kind = FieldKind::Rational;
    std::int64_t p = 0;  // modulus, Fp only

    static Field fp(std::int64_t p);  // throws NotPrime / Overflow
    static Field rationals() { return Field{FieldKind::Rational, 0}; }

    bool operator==(const Field&) const = default;
    std::int64_t characteristic() const { return kind == FieldKind::Fp ? p : 0; }
    std::string to_string() const;
};

// Exact field element. Fp values live as residues in [0, p); rationals are
// canonicalized mpq (reduced, positive denominator). No floating point.
class Scalar {
  public:
    Scalar() : field_(Field::rationals()), v_(mpq_class(0)) {}

    static Scalar zero(const Field& f) { return from_int(f, 0); }
    static Scalar one(const Field& f) { return from_int(f, 1); }
    static Scalar from_int(const Field& f, std::int64_t n);
    static Scalar from_mpq(mpq_class q);  // rationals only by construction
    static Scalar from_string(const Field& f, const std::string& s);

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inv() const;                             // throws DivisionByZero
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    // Fp only: the canonical residue in [0, p). Used for enumeration order,
    // lexicographic-least solutions and raster encoding.
    std::int64_t residue() const;
    const mpq_class& rat() const;

    std::string to_string() const;  // "3" or "num/den"

  private:
    Field field_;
    std::variant<std::int64_t, mpq_class> v_;

    void check_same(const Scalar& o) const {
        if (!(field_ == o.field_)) throw Error("FieldMismatch", "operands from different fields");
    }
};

}  // namespace lsl
