#include "ddlab/rational.hpp"

#include "ddlab/errors.hpp"

namespace ddlab {

Rat parse_rat(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty rational literal");
    s = s.substr(b);
    std::size_t slash = s.find('/');
    auto check_int = [&](const std::string& part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i == part.size()) throw InputError("malformed rational literal '" + s + "'");
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') throw InputError("malformed rational literal '" + s + "'");
    };
    Rat q;
    if (slash == std::string::npos) {
        check_int(s);
        q = Rat(BigInt(s[0] == '+' ? s.substr(1) : s));
    } else {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        check_int(num);
        check_int(den);
        BigInt d(den[0] == '+' ? den.substr(1) : den);
        if (d == 0) throw InputError("zero denominator in '" + s + "'");
        q = Rat(BigInt(num[0] == '+' ? num.substr(1) : num), d);
        q.canonicalize();
    }
    return q;
}

std::string to_string(const Rat& q) { return q.get_str(); }

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(const Rat& s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
Rat dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Rat norm2(const Vec3& a) { return dot(a, a); }
bool is_zero(const Vec3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

BigInt lcm_of_denominators(const Rat* first, std::size_t n) {
    BigInt l = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const BigInt& d = first[i].get_den();
        if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

}  // namespace ddlab
