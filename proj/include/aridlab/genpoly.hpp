#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "aridlab/dfao.hpp"

namespace aridlab {

/// Dyadic interval [lo, hi] with directed rounding; every operation returns
/// an enclosure of the true value.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(Interval o);
    ~Interval();

    mpfr_prec_t precision() const { return prec_; }
    static Interval from_rational(const mpq_class& q, mpfr_prec_t prec);
    static Interval sqrt_of_integer(const mpz_class& m, mpfr_prec_t prec);
    static Interval pi(mpfr_prec_t prec);

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    Interval neg() const;
    Interval pow_ui(unsigned long e) const;
    Interval sqrt() const;  // requires hi >= 0; lo clamped at 0
    Interval abs() const;
    static Interval min(const Interval& a, const Interval& b);

    /// floor(lo) when floor(lo) == floor(hi), else nullopt.
    std::optional<mpz_class> resolved_floor() const;
    // Exact dyadic endpoints.
    mpq_class lower() const;
    mpq_class upper() const;
    double midpoint() const;

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
    friend class Value;
};

/// Exact rational or a sound interval enclosure.
class Value {
public:
    /* implicit */ Value(mpq_class q) : exact_(true), q_(std::move(q)), iv_() {}
    /* implicit */ Value(Interval iv)
        : exact_(false), iv_(std::make_shared<Interval>(std::move(iv))) {}

    bool exact() const { return exact_; }
    const mpq_class& rational() const;
    const Interval& interval() const;
    Interval widen(mpfr_prec_t prec) const;  // interval view in either case
    mpq_class lower() const;
    mpq_class upper() const;
    double approx() const;

private:
    bool exact_;
    mpq_class q_;
    std::shared_ptr<const Interval> iv_;
};

struct GenPolyExpr;
using ExprPtr = std::shared_ptr<const GenPolyExpr>;

struct GenPolyExpr {
    enum class Kind {
        integer,    // value
        rational,   // value (p/q)
        sqrt_const, // sqrt_arg: nonsquare integer >= 2
        pi_const,
        phi_const,  // (1 + sqrt(5)) / 2
        variable,   // n
        add, sub, mul,
        power,      // left ^ exponent
        floor_op, frac_op, nint_op, dist_op,
        sqrt_op,    // sqrt of a subexpression (grammar superset)
    };
    Kind kind;
    mpq_class value;
    mpz_class sqrt_arg;
    unsigned long exponent = 0;
    ExprPtr left, right;
};

ExprPtr make_integer(const mpz_class& v);
ExprPtr make_rational(const mpq_class& v);
ExprPtr make_variable();
ExprPtr make_node(GenPolyExpr::Kind kind, ExprPtr left, ExprPtr right = nullptr);
ExprPtr make_power(ExprPtr base, unsigned long e);
ExprPtr make_sqrt_const(const mpz_class& m);
ExprPtr make_pi();
ExprPtr make_phi();

/// Throws ParseError (with position) on malformed input.
ExprPtr parse_expr(const std::string& text);
std::string expr_to_string(const ExprPtr& e);

struct EvalOptions {
    mpfr_prec_t p0 = 64;
    mpfr_prec_t p_max = 4096;
};

struct EvalOutcome {
    Value value;
    mpfr_prec_t precision_used = 0;  // 0: never left the exact-rational path
};

/// Rational subtrees propagate exactly; irrational subtrees evaluate as
/// intervals with floors resolved only when provably constant across the
/// enclosure.  Precision doubles from p0; PrecisionError at p_max.
EvalOutcome eval(const ExprPtr& e, const mpz_class& n, const EvalOptions& opt = {});

/// eval + outermost floor; for integer-valued expressions this is the value.
mpz_class eval_floor(const ExprPtr& e, const mpz_class& n, const EvalOptions& opt = {});

/// Membership test ||inner(n)|| < epsilon(n), decided soundly.  epsilon is
/// either an expression or the power law n^(-c) with rational c > 0 (in the
/// power-law form n = 0 is not a member).
struct SparseGenPolySpec {
    ExprPtr inner;
    ExprPtr epsilon;
    std::optional<mpq_class> power_c;
};
bool sparse_member(const SparseGenPolySpec& spec, const mpz_class& n,
                   const EvalOptions& opt = {});

/// Star discrepancy of {lambda * e(a n) mod 1 : n < N}, from the sorted
/// fractional parts.  Interval-valued points use the lower endpoint (width
/// is at most 2^-p0 after resolution, far below reporting granularity).
double star_discrepancy(const ExprPtr& e, long N, const mpq_class& lambda = 1,
                        long a = 1, const EvalOptions& opt = {});

}  // namespace aridlab
