#ifndef QHOM_SCALAR_HPP
#define QHOM_SCALAR_HPP

#include <cstdint>
#include <gmpxx.h>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhom {

/// Ground field descriptor: characteristic 0 means the rationals.
struct Field {
    std::uint32_t characteristic = 0;

    friend bool operator==(const Field &, const Field &) = default;

    std::string name() const {
        return characteristic == 0 ? std::string("Q") : "F_" + std::to_string(characteristic);
    }
};

namespace detail {

inline __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline bool fits_i64(__int128 v) {
    // INT64_MIN is excluded so that negation never overflows.
    return v > static_cast<__int128>(std::numeric_limits<std::int64_t>::min()) &&
           v <= static_cast<__int128>(std::numeric_limits<std::int64_t>::max());
}

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace detail

/**
 * Exact rational number.
 *
 * Values whose numerator and denominator fit in 64 bits are stored inline;
 * everything else falls back to a GMP rational. The representation is always
 * canonical: reduced, positive denominator, and demoted to the inline form
 * whenever it fits.
 */
class Rational {
public:
    Rational() = default;
    Rational(long long v) : num_(v) {
        if (v == std::numeric_limits<long long>::min()) set_big(mpq_class(mpz_class(std::to_string(v))));
    }
    Rational(long long n, long long d) { assign128(n, d); }
    explicit Rational(const mpq_class &q) { set_big(q); }

    Rational(const Rational &o) : num_(o.num_), den_(o.den_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational &&) noexcept = default;
    Rational &operator=(const Rational &o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational &operator=(Rational &&) noexcept = default;

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
    bool is_small() const { return !big_; }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
        return q;
    }
    mpz_class numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }
    mpz_class denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

    int sign() const {
        if (big_) return sgn(*big_);
        return (num_ > 0) - (num_ < 0);
    }

    Rational operator-() const {
        if (big_) return Rational(mpq_class(-*big_));
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational &a, const Rational &b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (!a.big_ && !b.big_) {
            Rational r;
            if (a.den_ == 1 && b.den_ == 1) {
                r.assign_int128(static_cast<__int128>(a.num_) + b.num_);
            } else {
                r.assign128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                            static_cast<__int128>(a.den_) * b.den_);
            }
            return r;
        }
        return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    }
    friend Rational operator-(const Rational &a, const Rational &b) { return a + (-b); }
    friend Rational operator*(const Rational &a, const Rational &b) {
        if (a.is_zero() || b.is_zero()) return Rational();
        if (a.is_one()) return b;
        if (b.is_one()) return a;
        if (!a.big_ && !b.big_) {
            Rational r;
            if (a.den_ == 1 && b.den_ == 1)
                r.assign_int128(static_cast<__int128>(a.num_) * b.num_);
            else
                r.assign128(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
            return r;
        }
        return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    }
    friend Rational operator/(const Rational &a, const Rational &b) {
        if (b.is_zero()) throw std::domain_error("rational division by zero");
        if (a.is_zero()) return Rational();
        if (b.is_one()) return a;
        if (!a.big_ && !b.big_) {
            Rational r;
            r.assign128(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
            return r;
        }
        return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
    }
    Rational &operator+=(const Rational &o) { return *this = *this + o; }
    Rational &operator-=(const Rational &o) { return *this = *this - o; }
    Rational &operator*=(const Rational &o) { return *this = *this * o; }
    Rational &operator/=(const Rational &o) { return *this = *this / o; }

    friend bool operator==(const Rational &a, const Rational &b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical form: a big value never equals a small one
    }

    std::string str() const {
        if (big_) return big_->get_str();
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

    Field field() const { return Field{0}; }

private:
    void set_big(mpq_class q) {
        q.canonicalize();
        if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t()) &&
            q.get_num() != mpz_class(std::to_string(std::numeric_limits<long>::min()))) {
            num_ = q.get_num().get_si();
            den_ = q.get_den().get_si();
            big_.reset();
        } else {
            big_ = std::make_unique<mpq_class>(std::move(q));
        }
    }

    static mpz_class to_mpz(__int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        mpz_class hi(static_cast<unsigned long>(u >> 64));
        mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
        mpz_class r = (hi << 64) + lo;
        return neg ? mpz_class(-r) : r;
    }

    void assign_int128(__int128 n) {
        if (detail::fits_i64(n)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = 1;
            big_.reset();
        } else {
            set_big(mpq_class(to_mpz(n)));
        }
    }

    void assign128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = detail::gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (detail::fits_i64(n) && detail::fits_i64(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            big_.reset();
        } else {
            set_big(mpq_class(to_mpz(n), to_mpz(d)));
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

inline bool is_zero(const Rational &r) { return r.is_zero(); }

/**
 * Element of the prime field F_p with p < 2^31.
 *
 * A value built from a plain integer is reduced by the modulus of the
 * innermost active ModulusScope on this thread. Outside any scope it carries
 * no modulus (0) and adopts the modulus of the first operand it meets.
 * Mixing two different nonzero moduli is a logic error and throws.
 */
class PrimeField {
public:
    PrimeField() = default;
    PrimeField(long long v) : PrimeField(v, current_modulus()) {}

    /// Modulus given to integer literals on this thread (0 when no scope is active).
    static std::uint32_t &current_modulus() {
        thread_local std::uint32_t p = 0;
        return p;
    }
    PrimeField(long long v, std::uint32_t p) : p_(p) {
        if (p == 0) {
            raw_ = v;
        } else {
            long long r = v % static_cast<long long>(p);
            raw_ = r < 0 ? r + p : r;
        }
    }

    std::uint32_t modulus() const { return p_; }
    long long value() const { return raw_; }
    bool is_zero() const { return raw_ == 0; }
    bool is_one() const { return raw_ == 1; }

    PrimeField operator-() const { return p_ == 0 ? PrimeField(-raw_) : PrimeField(raw_ == 0 ? 0 : p_ - raw_, p_); }

    friend PrimeField operator+(const PrimeField &a, const PrimeField &b) {
        std::uint32_t p = common(a, b);
        if (p == 0) return PrimeField(checked_add(a.raw_, b.raw_));
        return PrimeField(a.in(p) + b.in(p), p);
    }
    friend PrimeField operator-(const PrimeField &a, const PrimeField &b) { return a + (-b); }
    friend PrimeField operator*(const PrimeField &a, const PrimeField &b) {
        std::uint32_t p = common(a, b);
        if (p == 0) {
            long long r;
            if (__builtin_mul_overflow(a.raw_, b.raw_, &r)) throw std::overflow_error("unreduced integer overflow");
            return PrimeField(r);
        }
        return PrimeField(static_cast<long long>((static_cast<unsigned long long>(a.in(p)) * b.in(p)) % p), p);
    }
    friend PrimeField operator/(const PrimeField &a, const PrimeField &b) {
        std::uint32_t p = common(a, b);
        if (b.is_zero() || (p != 0 && b.in(p) == 0)) throw std::domain_error("division by zero in prime field");
        if (p == 0) {
            if (a.raw_ % b.raw_ != 0) throw std::domain_error("inexact division of unreduced integers");
            return PrimeField(a.raw_ / b.raw_);
        }
        return a * PrimeField(inverse(b.in(p), p), p);
    }
    PrimeField &operator+=(const PrimeField &o) { return *this = *this + o; }
    PrimeField &operator-=(const PrimeField &o) { return *this = *this - o; }
    PrimeField &operator*=(const PrimeField &o) { return *this = *this * o; }
    PrimeField &operator/=(const PrimeField &o) { return *this = *this / o; }

    friend bool operator==(const PrimeField &a, const PrimeField &b) {
        std::uint32_t p = common(a, b);
        if (p == 0) return a.raw_ == b.raw_;
        return a.in(p) == b.in(p);
    }

    std::string str() const { return std::to_string(raw_); }
    friend std::ostream &operator<<(std::ostream &os, const PrimeField &x) { return os << x.str(); }

    Field field() const { return Field{p_}; }

private:
    static std::uint32_t common(const PrimeField &a, const PrimeField &b) {
        if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_) throw std::logic_error("mixing elements of different prime fields");
        return a.p_ != 0 ? a.p_ : b.p_;
    }
    long long in(std::uint32_t p) const {
        if (p_ == p) return raw_;
        long long r = raw_ % static_cast<long long>(p);
        return r < 0 ? r + p : r;
    }
    static long long checked_add(long long a, long long b) {
        long long r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("unreduced integer overflow");
        return r;
    }
    static long long inverse(long long a, std::uint32_t p) {
        long long t = 0, nt = 1, r = p, nr = a;
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        return t < 0 ? t + p : t;
    }

    long long raw_ = 0;
    std::uint32_t p_ = 0;
};

inline bool is_zero(const PrimeField &x) { return x.is_zero(); }

/// Makes integer literals on this thread elements of F_p while alive.
class ModulusScope {
public:
    explicit ModulusScope(std::uint32_t p) : saved_(PrimeField::current_modulus()) { PrimeField::current_modulus() = p; }
    ~ModulusScope() { PrimeField::current_modulus() = saved_; }
    ModulusScope(const ModulusScope &) = delete;
    ModulusScope &operator=(const ModulusScope &) = delete;

private:
    std::uint32_t saved_;
};

template <class S>
concept ExactScalar = requires(const S &a, const S &b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { a == b } -> std::convertible_to<bool>;
    { is_zero(a) } -> std::convertible_to<bool>;
    { a.str() } -> std::convertible_to<std::string>;
    S(1);
};

/// Field-aware construction and parsing for each scalar backend.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool fraction_free = true;

    static void check(Field f) {
        if (f.characteristic != 0) throw std::invalid_argument("rational backend requires characteristic 0");
    }
    static Rational make(long long n, Field f) {
        check(f);
        return Rational(n);
    }
    static Rational make(long long n, long long d, Field f) {
        check(f);
        return Rational(n, d);
    }
    /// Accepts "n" or "n/d" with arbitrary-size integers.
    static std::optional<Rational> parse(std::string_view text, Field f) {
        check(f);
        auto parts = split_fraction(text);
        if (!parts) return std::nullopt;
        mpz_class n, d(1);
        if (n.set_str(std::string(parts->first), 10) != 0) return std::nullopt;
        if (!parts->second.empty() && d.set_str(std::string(parts->second), 10) != 0) return std::nullopt;
        if (d == 0) return std::nullopt;
        return Rational(mpq_class(n, d));
    }

    static std::optional<std::pair<std::string_view, std::string_view>> split_fraction(std::string_view text) {
        auto valid_int = [](std::string_view s, bool allow_sign) {
            if (s.empty()) return false;
            std::size_t i = 0;
            if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
            if (i == s.size()) return false;
            for (; i < s.size(); ++i)
                if (s[i] < '0' || s[i] > '9') return false;
            return true;
        };
        auto slash = text.find('/');
        std::string_view num = text.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view() : text.substr(slash + 1);
        if (!valid_int(num, true)) return std::nullopt;
        if (slash != std::string_view::npos && !valid_int(den, false)) return std::nullopt;
        if (!num.empty() && num[0] == '+') num.remove_prefix(1);
        return std::make_pair(num, den);
    }
};

template <>
struct ScalarTraits<PrimeField> {
    static constexpr bool fraction_free = false;

    static void check(Field f) {
        if (f.characteristic == 0 || f.characteristic >= (1u << 31) || !detail::is_prime(f.characteristic))
            throw std::invalid_argument("prime-field backend requires a prime characteristic below 2^31");
    }
    static PrimeField make(long long n, Field f) {
        check(f);
        return PrimeField(n, f.characteristic);
    }
    static PrimeField make(long long n, long long d, Field f) { return make(n, f) / make(d, f); }
    static std::optional<PrimeField> parse(std::string_view text, Field f) {
        check(f);
        auto parts = ScalarTraits<Rational>::split_fraction(text);
        if (!parts) return std::nullopt;
        mpz_class n, d(1);
        if (n.set_str(std::string(parts->first), 10) != 0) return std::nullopt;
        if (!parts->second.empty() && d.set_str(std::string(parts->second), 10) != 0) return std::nullopt;
        mpz_class p(static_cast<unsigned long>(f.characteristic));
        mpz_class nr = ((n % p) + p) % p, dr = ((d % p) + p) % p;
        if (dr == 0) return std::nullopt;
        return PrimeField(nr.get_si(), f.characteristic) / PrimeField(dr.get_si(), f.characteristic);
    }
};

}  // namespace qhom

#endif  // QHOM_SCALAR_HPP
