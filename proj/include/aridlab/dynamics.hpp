#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "aridlab/dfao.hpp"

namespace aridlab {

/// p(x)/m = sum a_i C(x, i) with a_i the forward differences of p/m at 0.
struct BinomialLift {
    std::vector<mpq_class> poly;  // p coefficients, ascending degree
    long m = 1;
    std::vector<mpq_class> a;  // a_0 .. a_d

    int degree() const { return static_cast<int>(a.size()) - 1; }
};

BinomialLift binomial_lift(const std::vector<mpq_class>& p, long m);

/// Torus skew product T(x_1..x_d) = (x_1 + a_d, x_2 + x_1 + a_{d-1}, ...,
/// x_d + x_{d-1} + a_1) with base point z = (0, ..., 0, a_0); coordinates
/// are exact rationals reduced into [0, 1).
struct SkewSystem {
    int d = 1;
    std::vector<mpq_class> a;  // a_0 .. a_d
};

using TorusPoint = std::vector<mpq_class>;

SkewSystem skew_from_lift(const BinomialLift& lift);
TorusPoint base_point(const SkewSystem& s);
TorusPoint skew_step(const SkewSystem& s, const TorusPoint& x);
/// T^n z by iteration.
TorusPoint orbit(const SkewSystem& s, unsigned long n);
/// (T^n z)_j = z_j + sum_i a_{d-j+i} C(n, i) mod 1, evaluated directly.
TorusPoint closed_form(const SkewSystem& s, const mpz_class& n);

struct OrbitVerifyReport {
    bool ok = true;
    std::optional<unsigned long> first_failure;
    unsigned long checked = 0;
};

/// Exact equality of the iterated orbit and the closed form, all
/// coordinates, for n = 0..N.
OrbitVerifyReport verify_identity(const SkewSystem& s, unsigned long N);

/// Bridge check: for integer-coefficient p, floor(p(n)) = l (mod m) iff
/// the last orbit coordinate lies in [l/m, (l+1)/m).
struct BridgeReport {
    bool ok = true;
    std::optional<unsigned long> first_failure;
    unsigned long checked = 0;
};
BridgeReport verify_mod_bridge(const BinomialLift& lift, unsigned long N);

mpq_class mod1(const mpq_class& q);
mpq_class poly_eval(const std::vector<mpq_class>& p, const mpq_class& x);

}  // namespace aridlab
