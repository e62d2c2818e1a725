#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace ddlab {

using Rat = mpq_class;
using BigInt = mpz_class;

using RatVec = std::vector<Rat>;
using Vec3 = std::array<Rat, 3>;

// Accepts "3", "-3", "3/4", "-3/4"; result is canonical.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& q);

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(const Rat& s, const Vec3& a);
Rat dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Rat norm2(const Vec3& a);
bool is_zero(const Vec3& a);

BigInt lcm_of_denominators(const Rat* first, std::size_t n);

}  // namespace ddlab
