#include "aridlab/dynamics.hpp"

namespace aridlab {

mpq_class mod1(const mpq_class& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    mpq_class r = q - mpq_class(f);
    r.canonicalize();
    return r;
}

mpq_class poly_eval(const std::vector<mpq_class>& p, const mpq_class& x) {
    mpq_class v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

BinomialLift binomial_lift(const std::vector<mpq_class>& p, long m) {
    if (p.size() < 2) throw Error("binomial_lift: polynomial degree must be >= 1");
    if (m < 1) throw Error("binomial_lift: modulus must be >= 1");
    BinomialLift lift;
    lift.poly = p;
    lift.m = m;
    const int d = static_cast<int>(p.size()) - 1;
    // forward differences of p(x)/m at 0
    std::vector<mpq_class> row(static_cast<std::size_t>(d) + 1);
    for (int x = 0; x <= d; ++x)
        row[static_cast<std::size_t>(x)] = poly_eval(p, x) / m;
    for (int i = 0; i <= d; ++i) {
        lift.a.push_back(row[0]);
        for (std::size_t j = 0; j + 1 < row.size(); ++j) row[j] = row[j + 1] - row[j];
        row.pop_back();
    }
    // reconstruction identity sanity check at a few extra points
    for (int x = 0; x <= d + 3; ++x) {
        mpq_class lhs = poly_eval(p, x) / m;
        mpq_class rhs = 0;
        mpz_class binom = 1;
        for (int i = 0; i <= d; ++i) {
            if (i > 0) {
                binom *= (x - i + 1);
                binom /= i;
                if (x < i) binom = 0;
            }
            rhs += lift.a[static_cast<std::size_t>(i)] * mpq_class(binom);
        }
        if (lhs != rhs) throw Error("internal: binomial lift reconstruction failed");
    }
    return lift;
}

SkewSystem skew_from_lift(const BinomialLift& lift) {
    SkewSystem s;
    s.d = lift.degree();
    s.a = lift.a;
    return s;
}

TorusPoint base_point(const SkewSystem& s) {
    TorusPoint z(static_cast<std::size_t>(s.d), mpq_class(0));
    z.back() = mod1(s.a[0]);
    return z;
}

TorusPoint skew_step(const SkewSystem& s, const TorusPoint& x) {
    TorusPoint y(static_cast<std::size_t>(s.d));
    for (int j = 1; j <= s.d; ++j) {
        mpq_class v = x[static_cast<std::size_t>(j - 1)] + s.a[static_cast<std::size_t>(s.d - j + 1)];
        if (j > 1) v += x[static_cast<std::size_t>(j - 2)];  // old x_{j-1}
        y[static_cast<std::size_t>(j - 1)] = mod1(v);
    }
    return y;
}

TorusPoint orbit(const SkewSystem& s, unsigned long n) {
    TorusPoint x = base_point(s);
    for (unsigned long i = 0; i < n; ++i) x = skew_step(s, x);
    return x;
}

TorusPoint closed_form(const SkewSystem& s, const mpz_class& n) {
    TorusPoint p(static_cast<std::size_t>(s.d));
    for (int j = 1; j <= s.d; ++j) {
        mpq_class v = j == s.d ? s.a[0] : mpq_class(0);  // z_j
        mpq_class binom = 1;
        for (int i = 1; i <= j; ++i) {
            binom *= mpq_class(n - (i - 1));
            binom /= i;
            v += s.a[static_cast<std::size_t>(s.d - j + i)] * binom;
        }
        p[static_cast<std::size_t>(j - 1)] = mod1(v);
    }
    return p;
}

OrbitVerifyReport verify_identity(const SkewSystem& s, unsigned long N) {
    OrbitVerifyReport report;
    TorusPoint x = base_point(s);
    for (unsigned long n = 0; n <= N; ++n) {
        TorusPoint cf = closed_form(s, mpz_class(n));
        if (x != cf) {
            report.ok = false;
            report.first_failure = n;
            return report;
        }
        ++report.checked;
        x = skew_step(s, x);
    }
    return report;
}

BridgeReport verify_mod_bridge(const BinomialLift& lift, unsigned long N) {
    BridgeReport report;
    SkewSystem s = skew_from_lift(lift);
    TorusPoint x = base_point(s);
    for (unsigned long n = 0; n <= N; ++n) {
        mpq_class pn = poly_eval(lift.poly, mpq_class(n));
        mpz_class floor_pn;
        mpz_fdiv_q(floor_pn.get_mpz_t(), pn.get_num().get_mpz_t(), pn.get_den().get_mpz_t());
        mpz_class l;
        mpz_fdiv_r_ui(l.get_mpz_t(), floor_pn.get_mpz_t(), static_cast<unsigned long>(lift.m));
        const mpq_class& last = x.back();
        mpq_class lo(l, lift.m), hi(l + 1, lift.m);
        lo.canonicalize();
        hi.canonicalize();
        bool in_cell = last >= lo && last < hi;
        if (!in_cell) {
            report.ok = false;
            report.first_failure = n;
            return report;
        }
        ++report.checked;
        x = skew_step(s, x);
    }
    return report;
}

}  // namespace aridlab
