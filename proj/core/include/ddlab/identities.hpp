#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddlab/bigfloat.hpp"

namespace ddlab {

// Randomized checks of the vector/matrix calculus identities:
//   skwcurl             skw(curl A) = 1/2 mskw(div A^T - grad tr A)
//   divmskw             div mskw u = -curl u
//   curlgrad            curl(u I) = -mskw grad u
//   trcross             tr(tau x x) = -2 x . vskw tau
//   divdivskw0          div div mskw v = 0
//   tangentialtrace     n x curl v = grad(n . v) - d_n v      (unit n, big-float)
//   rotFdivF            rot_F v = -div_F(n x v)               (unit n, big-float)
//   piRTprop            pi_RT pi_RT = pi_RT, pi_RT = id on RT
//   homogeneouspolyprop x . grad q = k q for q homogeneous of degree k
struct IdentityCheck {
    std::string name;
    std::size_t samples = 0;
    bool exact = true;           // exact arithmetic; residual is 0 or 1
    BigFloat max_residual;       // relative to the largest coefficient
    bool pass = false;           // exact: residual 0; otherwise < 1e-60
};

std::vector<std::string> identity_names();
// Throws InputError for an unknown name.
IdentityCheck check_identity(const std::string& name, std::size_t samples, std::uint64_t seed);
std::vector<IdentityCheck> identity_suite(std::size_t samples = 20, std::uint64_t seed = 1);

}  // namespace ddlab
