#include "cyclelab/scalar.hpp"

#include "cyclelab/error.hpp"

namespace cyclelab {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t reduce_long(long n, std::uint64_t p)
{
    long r = n % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return static_cast<std::uint64_t>(r);
}

thread_local DivisorRecorder* tl_recorder = nullptr;

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = 1, base = a % n, e = d;
        while (e) {
            if (e & 1) x = mulmod(x, base, n);
            base = mulmod(base, base, n);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p)
{
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
    if (new_r == 0) raise(ErrorCode::DivisionByZero, "inverse of zero in F_" + std::to_string(p));
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

Field Field::prime(std::uint64_t p)
{
    if (p >= (1ULL << 31) || !is_prime(p)) raise(ErrorCode::NotPrime, std::to_string(p) + " is not a prime below 2^31");
    return Field(p);
}

std::string Field::to_string() const { return p_ == 0 ? "Q" : "F_" + std::to_string(p_); }

Scalar::Scalar(Field f, long n) : p_(f.characteristic())
{
    if (p_ == 0)
        value_ = mpq_class(n);
    else
        value_ = reduce_long(n, p_);
}

Scalar::Scalar(Field f, const mpq_class& q_in) : p_(f.characteristic())
{
    mpq_class q = q_in;
    q.canonicalize();
    if (p_ == 0) {
        value_ = std::move(q);
        return;
    }
    std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p_);
    if (den == 0) raise(ErrorCode::BadPrime, "denominator of " + q.get_str() + " vanishes mod " + std::to_string(p_));
    std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p_);
    value_ = mulmod(num, mod_inverse(den, p_), p_);
}

bool Scalar::is_zero() const
{
    if (p_ == 0) return sgn(std::get<mpq_class>(value_)) == 0;
    return std::get<std::uint64_t>(value_) == 0;
}

bool Scalar::is_one() const
{
    if (p_ == 0) return std::get<mpq_class>(value_) == 1;
    return std::get<std::uint64_t>(value_) == 1;
}

void Scalar::check_same(const Scalar& o) const
{
    if (p_ != o.p_)
        raise(ErrorCode::MixedContext, "scalar arithmetic mixes " + field().to_string() + " and " + o.field().to_string());
}

Scalar Scalar::inverse() const
{
    if (p_ == 0) {
        const auto& q = std::get<mpq_class>(value_);
        if (sgn(q) == 0) raise(ErrorCode::DivisionByZero, "inverse of zero in Q");
        if (tl_recorder) tl_recorder->record(q);
        mpq_class r;
        mpq_inv(r.get_mpq_t(), q.get_mpq_t());
        Scalar s;
        s.value_ = std::move(r);
        return s;
    }
    return Scalar(mod_inverse(std::get<std::uint64_t>(value_), p_), p_);
}

Scalar Scalar::operator-() const
{
    if (p_ == 0) {
        Scalar s;
        s.value_ = mpq_class(-std::get<mpq_class>(value_));
        return s;
    }
    std::uint64_t r = std::get<std::uint64_t>(value_);
    return Scalar(r == 0 ? 0 : p_ - r, p_);
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    check_same(o);
    if (p_ == 0) {
        std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
    } else {
        auto& r = std::get<std::uint64_t>(value_);
        r += std::get<std::uint64_t>(o.value_);
        if (r >= p_) r -= p_;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    check_same(o);
    if (p_ == 0) {
        std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
    } else {
        auto& r = std::get<std::uint64_t>(value_);
        std::uint64_t b = std::get<std::uint64_t>(o.value_);
        r = r >= b ? r - b : r + p_ - b;
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    check_same(o);
    if (p_ == 0) {
        std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
    } else {
        auto& r = std::get<std::uint64_t>(value_);
        r = r * std::get<std::uint64_t>(o.value_) % p_;
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    check_same(o);
    return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.p_ != b.p_) return false;
    return a.value_ == b.value_;
}

Scalar Scalar::reduce_mod(std::uint64_t p) const
{
    if (p_ != 0) raise(ErrorCode::MixedContext, "reduce_mod expects a rational scalar");
    return Scalar(Field::prime(p), std::get<mpq_class>(value_));
}

std::string Scalar::to_string() const
{
    if (p_ == 0) return std::get<mpq_class>(value_).get_str();
    return std::to_string(std::get<std::uint64_t>(value_));
}

DivisorRecorder::DivisorRecorder(std::vector<std::uint64_t> candidates)
    : candidates_(std::move(candidates)), previous_(tl_recorder)
{
    tl_recorder = this;
}

DivisorRecorder::~DivisorRecorder() { tl_recorder = previous_; }

void DivisorRecorder::record(const mpz_class& value)
{
    if (sgn(value) == 0) return;
    for (std::uint64_t p : candidates_) {
        if (hits_.count(p)) continue;
        if (mpz_divisible_ui_p(value.get_mpz_t(), p)) hits_.insert(p);
    }
    if (previous_) previous_->record(value);
}

void DivisorRecorder::record(const mpq_class& value)
{
    record(value.get_num());
    record(value.get_den());
}

DivisorRecorder* DivisorRecorder::active() { return tl_recorder; }

}  // namespace cyclelab
