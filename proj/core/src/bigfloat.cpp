#include "ddlab/bigfloat.hpp"

#include <atomic>
#include <vector>

#include "ddlab/errors.hpp"

namespace ddlab {

namespace {
std::atomic<int> g_precision{256};
}

int default_precision() { return g_precision.load(std::memory_order_relaxed); }

void set_default_precision(int bits) {
    if (bits < 64) throw InputError("precision must be at least 64 bits");
    g_precision.store(bits, std::memory_order_relaxed);
}

PrecisionScope::PrecisionScope(int bits) : saved_(default_precision()) { set_default_precision(bits); }
PrecisionScope::~PrecisionScope() { g_precision.store(saved_, std::memory_order_relaxed); }

BigFloat::BigFloat() {
    mpfr_init2(v_, default_precision());
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v) {
    mpfr_init2(v_, default_precision());
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(double v) {
    mpfr_init2(v_, default_precision());
    mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rat& q) {
    mpfr_init2(v_, default_precision());
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

void BigFloat::sub_mul(const BigFloat& a, const BigFloat& b) {
    // fms computes a*b - this with a single rounding; negate afterwards.
    mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN);
    mpfr_neg(v_, v_, MPFR_RNDN);
}

void BigFloat::add_mul(const BigFloat& a, const BigFloat& b) { mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN); }

std::string BigFloat::str(int digits) const {
    if (mpfr_zero_p(v_)) return "0";
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
BigFloat operator-(BigFloat a) {
    mpfr_neg(a.get(), a.get(), MPFR_RNDN);
    return a;
}
bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }
bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

BigFloat abs(BigFloat a) {
    mpfr_abs(a.get(), a.get(), MPFR_RNDN);
    return a;
}

BigFloat sqrt(BigFloat a) {
    mpfr_sqrt(a.get(), a.get(), MPFR_RNDN);
    return a;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigFloat sqrt_rat(const Rat& q) {
    if (q < 0) throw InputError("sqrt_rat: negative argument");
    return sqrt(BigFloat(q));
}

BigFloat pow2(long e) {
    BigFloat r(1L);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

BigFloat pow10(long e) {
    BigFloat r(10L);
    mpfr_pow_si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

}  // namespace ddlab
