#pragma once

#include <mpfr.h>

#include <string>

#include "ddlab/rational.hpp"

namespace ddlab {

// Working precision in bits for newly created BigFloat values (default 256).
int default_precision();
void set_default_precision(int bits);

class PrecisionScope {
public:
    explicit PrecisionScope(int bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    int saved_;
};

// Owning MPFR value, round-to-nearest throughout.
class BigFloat {
public:
    BigFloat();
    BigFloat(long v);
    BigFloat(int v) : BigFloat(static_cast<long>(v)) {}
    explicit BigFloat(double v);
    explicit BigFloat(const Rat& q);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);
    // this -= a * b without a temporary allocation per call.
    void sub_mul(const BigFloat& a, const BigFloat& b);
    void add_mul(const BigFloat& a, const BigFloat& b);

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Scientific notation with `digits` significant digits, e.g. "1.23457e-61".
    std::string str(int digits = 6) const;

private:
    mpfr_t v_;
};

BigFloat operator+(BigFloat a, const BigFloat& b);
BigFloat operator-(BigFloat a, const BigFloat& b);
BigFloat operator*(BigFloat a, const BigFloat& b);
BigFloat operator/(BigFloat a, const BigFloat& b);
BigFloat operator-(BigFloat a);
bool operator<(const BigFloat& a, const BigFloat& b);
bool operator>(const BigFloat& a, const BigFloat& b);
bool operator<=(const BigFloat& a, const BigFloat& b);
bool operator>=(const BigFloat& a, const BigFloat& b);
bool operator==(const BigFloat& a, const BigFloat& b);

BigFloat abs(BigFloat a);
BigFloat sqrt(BigFloat a);
BigFloat max(const BigFloat& a, const BigFloat& b);
// sqrt(q) for q >= 0; the only way irrational frame factors enter.
BigFloat sqrt_rat(const Rat& q);
// 2^e
BigFloat pow2(long e);
// 10^e, correctly rounded
BigFloat pow10(long e);

}  // namespace ddlab
