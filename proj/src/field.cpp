#include "lsl/field.hpp"

namespace lsl {

static bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d : {2, 3}) {
        if (n % d == 0) return n == d;
    }
    // trial division is plenty for p < 2^31
    for (std::int64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

Field Field::fp(std::int64_t p) {
    if (p >= (std::int64_t{1} << 31)) throw Error("Overflow", "modulus must be < 2^31");
    if (!is_prime_i64(p)) throw Error("NotPrime", "modulus " + std::to_string(p) + " is not prime");
    return Field{FieldKind::Fp, p};
}

std::string Field::to_string() const {
    return kind == FieldKind::Fp ? "F_" + std::to_string(p) : "Q";
}

Scalar Scalar::from_int(const Field& f, std::int64_t n) {
    Scalar s;
    s.field_ = f;
    if (f.kind == FieldKind::Fp) {
        std::int64_t r = n % f.p;
        if (r < 0) r += f.p;
        s.v_ = r;
    } else {
        s.v_ = mpq_class(static_cast<long>(n));
    }
    return s;
}

Scalar Scalar::from_mpq(mpq_class q) {
    q.canonicalize();
    Scalar s;
    s.field_ = Field::rationals();
    s.v_ = std::move(q);
    return s;
}

Scalar Scalar::from_string(const Field& f, const std::string& str) {
    auto parse_int = [](const std::string& t) -> mpz_class {
        if (t.empty()) throw Error("ParseError", "empty scalar literal");
        try {
            return mpz_class(t);
        } catch (const std::invalid_argument&) {
            throw Error("ParseError", "bad scalar literal '" + t + "'");
        }
    };
    mpz_class num, den(1);
    auto slash = str.find('/');
    if (slash == std::string::npos) {
        num = parse_int(str);
    } else {
        num = parse_int(str.substr(0, slash));
        den = parse_int(str.substr(slash + 1));
        if (den == 0) throw Error("DivisionByZero", "zero denominator in '" + str + "'");
    }
    if (f.kind == FieldKind::Rational) return from_mpq(mpq_class(num, den));
    mpz_class p(static_cast<long>(f.p));
    mpz_class nr = num % p;
    if (nr < 0) nr += p;
    Scalar s = from_int(f, nr.get_si());
    if (den != 1) {
        mpz_class dr = den % p;
        if (dr < 0) dr += p;
        s = s * from_int(f, dr.get_si()).inv();
    }
    return s;
}

bool Scalar::is_zero() const {
    if (field_.kind == FieldKind::Fp) return std::get<std::int64_t>(v_) == 0;
    return std::get<mpq_class>(v_) == 0;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!(field_ == o.field_)) return false;
    if (field_.kind == FieldKind::Fp)
        return std::get<std::int64_t>(v_) == std::get<std::int64_t>(o.v_);
    return std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_);
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar r;
    r.field_ = field_;
    if (field_.kind == FieldKind::Fp) {
        std::int64_t v = std::get<std::int64_t>(v_) + std::get<std::int64_t>(o.v_);
        if (v >= field_.p) v -= field_.p;
        r.v_ = v;
    } else {
        r.v_ = mpq_class(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_));
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same(o);
    Scalar r;
    r.field_ = field_;
    if (field_.kind == FieldKind::Fp) {
        std::int64_t v = std::get<std::int64_t>(v_) - std::get<std::int64_t>(o.v_);
        if (v < 0) v += field_.p;
        r.v_ = v;
    } else {
        r.v_ = mpq_class(std::get<mpq_class>(v_) - std::get<mpq_class>(o.v_));
    }
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar r;
    r.field_ = field_;
    if (field_.kind == FieldKind::Fp) {
        // p < 2^31 so the product of residues fits in int64
        r.v_ = (std::get<std::int64_t>(v_) * std::get<std::int64_t>(o.v_)) % field_.p;
    } else {
        r.v_ = mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_));
    }
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r;
    r.field_ = field_;
    if (field_.kind == FieldKind::Fp) {
        std::int64_t v = std::get<std::int64_t>(v_);
        r.v_ = v == 0 ? 0 : field_.p - v;
    } else {
        r.v_ = mpq_class(-std::get<mpq_class>(v_));
    }
    return r;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
    Scalar r;
    r.field_ = field_;
    if (field_.kind == FieldKind::Fp) {
        // extended Euclid on (a, p)
        std::int64_t a = std::get<std::int64_t>(v_), b = field_.p;
        std::int64_t x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b;
            a = b;
            b = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        if (x0 < 0) x0 += field_.p;
        r.v_ = x0;
    } else {
        r.v_ = mpq_class(1 / std::get<mpq_class>(v_));
    }
    return r;
}

std::int64_t Scalar::residue() const {
    if (field_.kind != FieldKind::Fp) throw Error("FieldMismatch", "residue() needs an Fp scalar");
    return std::get<std::int64_t>(v_);
}

const mpq_class& Scalar::rat() const {
    if (field_.kind != FieldKind::Rational) throw Error("FieldMismatch", "rat() needs a rational scalar");
    return std::get<mpq_class>(v_);
}

std::string Scalar::to_string() const {
    if (field_.kind == FieldKind::Fp) return std::to_string(std::get<std::int64_t>(v_));
    return std::get<mpq_class>(v_).get_str();
}

}  // namespace lsl
