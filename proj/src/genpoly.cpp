#include "aridlab/genpoly.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace aridlab {

// --- Interval ---------------------------------------------------------------

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(Interval o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::from_rational(const mpq_class& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::sqrt_of_integer(const mpz_class& m, mpfr_prec_t prec) {
    if (m < 0) throw Error("sqrt of negative integer");
    Interval r(prec);
    mpfr_t t;
    mpfr_init2(t, std::max<mpfr_prec_t>(prec, mpz_sizeinbase(m.get_mpz_t(), 2) + 8));
    mpfr_set_z(t, m.get_mpz_t(), MPFR_RNDD);
    mpfr_sqrt(r.lo_, t, MPFR_RNDD);
    mpfr_sqrt(r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator+(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator*(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    const mpfr_srcptr as[2] = {lo_, hi_};
    const mpfr_srcptr bs[2] = {o.lo_, o.hi_};
    bool first = true;
    for (auto a : as)
        for (auto b : bs) {
            mpfr_mul(t, a, b, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, a, b, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval Interval::neg() const {
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::pow_ui(unsigned long e) const {
    Interval r = from_rational(1, prec_);
    Interval base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(hi_) < 0) throw Error("sqrt of negative interval");
    Interval r(prec_);
    if (mpfr_sgn(lo_) < 0)
        mpfr_set_zero(r.lo_, 1);
    else
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::abs() const {
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return neg();
    Interval r(prec_);
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_less_p(r.hi_, hi_)) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::min(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

std::optional<mpz_class> Interval::resolved_floor() const {
    if (!mpfr_number_p(lo_) || !mpfr_number_p(hi_)) return std::nullopt;
    mpz_class flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), lo_, MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), hi_, MPFR_RNDD);
    if (flo == fhi) return flo;
    return std::nullopt;
}

mpq_class Interval::lower() const {
    if (!mpfr_number_p(lo_)) throw Error("interval endpoint not finite");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), lo_);
    return q;
}

mpq_class Interval::upper() const {
    if (!mpfr_number_p(hi_)) throw Error("interval endpoint not finite");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), hi_);
    return q;
}

double Interval::midpoint() const {
    return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2;
}

// --- Value ------------------------------------------------------------------

const mpq_class& Value::rational() const {
    if (!exact_) throw Error("Value::rational on interval value");
    return q_;
}

const Interval& Value::interval() const {
    if (exact_) throw Error("Value::interval on exact value");
    return *iv_;
}

Interval Value::widen(mpfr_prec_t prec) const {
    if (exact_) return Interval::from_rational(q_, prec);
    return *iv_;
}

mpq_class Value::lower() const { return exact_ ? q_ : iv_->lower(); }
mpq_class Value::upper() const { return exact_ ? q_ : iv_->upper(); }
double Value::approx() const { return exact_ ? q_.get_d() : iv_->midpoint(); }

// --- expression construction ------------------------------------------------

namespace {
ExprPtr make_leaf(GenPolyExpr::Kind kind) {
    auto e = std::make_shared<GenPolyExpr>();
    e->kind = kind;
    return e;
}
}  // namespace

ExprPtr make_integer(const mpz_class& v) {
    auto e = std::make_shared<GenPolyExpr>();
    e->kind = GenPolyExpr::Kind::integer;
    e->value = v;
    return e;
}

ExprPtr make_rational(const mpq_class& v) {
    auto e = std::make_shared<GenPolyExpr>();
    e->kind = v.get_den() == 1 ? GenPolyExpr::Kind::integer : GenPolyExpr::Kind::rational;
    e->value = v;
    e->value.canonicalize();
    return e;
}

ExprPtr make_variable() { return make_leaf(GenPolyExpr::Kind::variable); }

ExprPtr make_node(GenPolyExpr::Kind kind, ExprPtr left, ExprPtr right) {
    auto e = std::make_shared<GenPolyExpr>();
    e->kind = kind;
    e->left = std::move(left);
    e->right = std::move(right);
    return e;
}

ExprPtr make_power(ExprPtr base, unsigned long ex) {
    auto e = std::make_shared<GenPolyExpr>();
    e->kind = GenPolyExpr::Kind::power;
    e->left = std::move(base);
    e->exponent = ex;
    return e;
}

ExprPtr make_sqrt_const(const mpz_class& m) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
    if (root * root == m) return make_integer(root);
    auto e = std::make_shared<GenPolyExpr>();
    e->kind = GenPolyExpr::Kind::sqrt_const;
    e->sqrt_arg = m;
    return e;
}

ExprPtr make_pi() { return make_leaf(GenPolyExpr::Kind::pi_const); }
ExprPtr make_phi() { return make_leaf(GenPolyExpr::Kind::phi_const); }

// --- parser -----------------------------------------------------------------

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("expression error at position " + std::to_string(pos) + ": " + msg);
    }
    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool accept(char c) {
        if (peek_is(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    mpz_class parse_uint() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected number");
        return mpz_class(text.substr(start, pos - start));
    }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        return text.substr(start, pos - start);
    }

    ExprPtr parse_expr() {
        skip_ws();
        bool negate = accept('-');
        ExprPtr e = parse_term();
        if (negate) e = make_node(GenPolyExpr::Kind::sub, make_integer(0), e);
        for (;;) {
            if (accept('+'))
                e = make_node(GenPolyExpr::Kind::add, e, parse_term());
            else if (accept('-'))
                e = make_node(GenPolyExpr::Kind::sub, e, parse_term());
            else
                return e;
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        while (accept('*')) e = make_node(GenPolyExpr::Kind::mul, e, parse_factor());
        return e;
    }

    ExprPtr parse_factor() {
        ExprPtr e = parse_atom();
        if (accept('^')) {
            mpz_class ex = parse_uint();
            if (!ex.fits_ulong_p()) fail("exponent too large");
            e = make_power(e, ex.get_ui());
        }
        return e;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num = parse_uint();
            if (accept('/')) {
                mpz_class den = parse_uint();
                if (den == 0) fail("zero denominator");
                return make_rational(mpq_class(num, den));
            }
            return make_integer(num);
        }
        if (c == '(') {
            ++pos;
            ExprPtr e = parse_expr();
            expect(')');
            return e;
        }
        std::string id = parse_ident();
        if (id.empty()) fail("unexpected character");
        if (id == "n") return make_variable();
        if (id == "pi") return make_pi();
        if (id == "phi") return make_phi();
        auto unary = [&](GenPolyExpr::Kind kind) {
            expect('(');
            ExprPtr inner = parse_expr();
            expect(')');
            return make_node(kind, inner);
        };
        if (id == "floor") return unary(GenPolyExpr::Kind::floor_op);
        if (id == "frac") return unary(GenPolyExpr::Kind::frac_op);
        if (id == "nint") return unary(GenPolyExpr::Kind::nint_op);
        if (id == "dist") return unary(GenPolyExpr::Kind::dist_op);
        if (id == "sqrt") {
            expect('(');
            ExprPtr inner = parse_expr();
            expect(')');
            if (inner->kind == GenPolyExpr::Kind::integer && inner->value >= 0)
                return make_sqrt_const(mpz_class(inner->value.get_num()));
            return make_node(GenPolyExpr::Kind::sqrt_op, inner);
        }
        fail("unknown identifier '" + id + "'");
    }
};

std::string q_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

ExprPtr parse_expr(const std::string& text) {
    Parser p(text);
    ExprPtr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

std::string expr_to_string(const ExprPtr& e) {
    using K = GenPolyExpr::Kind;
    switch (e->kind) {
        case K::integer:
        case K::rational: {
            mpq_class q = e->value;
            if (q < 0) return "(" + q_str(q) + ")";
            return q_str(q);
        }
        case K::sqrt_const: return "sqrt(" + e->sqrt_arg.get_str() + ")";
        case K::pi_const: return "pi";
        case K::phi_const: return "phi";
        case K::variable: return "n";
        case K::add: return "(" + expr_to_string(e->left) + " + " + expr_to_string(e->right) + ")";
        case K::sub: return "(" + expr_to_string(e->left) + " - " + expr_to_string(e->right) + ")";
        case K::mul: return expr_to_string(e->left) + "*" + expr_to_string(e->right);
        case K::power:
            return expr_to_string(e->left) + "^" + std::to_string(e->exponent);
        case K::floor_op: return "floor(" + expr_to_string(e->left) + ")";
        case K::frac_op: return "frac(" + expr_to_string(e->left) + ")";
        case K::nint_op: return "nint(" + expr_to_string(e->left) + ")";
        case K::dist_op: return "dist(" + expr_to_string(e->left) + ")";
        case K::sqrt_op: return "sqrt(" + expr_to_string(e->left) + ")";
    }
    throw Error("unreachable expression kind");
}

// --- evaluation -------------------------------------------------------------

namespace {

struct RetryAtHigherPrecision {};

struct EvalCtx {
    mpz_class n;
    mpfr_prec_t prec;
    bool used_interval = false;
};

mpq_class rational_floor(const mpq_class& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return mpq_class(f);
}

Value floor_value(const Value& v) {
    if (v.exact()) return Value(rational_floor(v.rational()));
    auto f = v.interval().resolved_floor();
    if (!f) throw RetryAtHigherPrecision{};
    return Value(mpq_class(*f));
}

Value add_values(const Value& a, const Value& b, EvalCtx& ctx) {
    if (a.exact() && b.exact()) return Value(mpq_class(a.rational() + b.rational()));
    ctx.used_interval = true;
    return Value(a.widen(ctx.prec) + b.widen(ctx.prec));
}

Value sub_values(const Value& a, const Value& b, EvalCtx& ctx) {
    if (a.exact() && b.exact()) return Value(mpq_class(a.rational() - b.rational()));
    ctx.used_interval = true;
    return Value(a.widen(ctx.prec) - b.widen(ctx.prec));
}

Value mul_values(const Value& a, const Value& b, EvalCtx& ctx) {
    if (a.exact() && b.exact()) return Value(mpq_class(a.rational() * b.rational()));
    ctx.used_interval = true;
    return Value(a.widen(ctx.prec) * b.widen(ctx.prec));
}

Value eval_node(const ExprPtr& e, EvalCtx& ctx) {
    using K = GenPolyExpr::Kind;
    switch (e->kind) {
        case K::integer:
        case K::rational: return Value(e->value);
        case K::variable: return Value(mpq_class(ctx.n));
        case K::sqrt_const:
            ctx.used_interval = true;
            return Value(Interval::sqrt_of_integer(e->sqrt_arg, ctx.prec));
        case K::pi_const:
            ctx.used_interval = true;
            return Value(Interval::pi(ctx.prec));
        case K::phi_const: {
            ctx.used_interval = true;
            Interval r = Interval::sqrt_of_integer(5, ctx.prec);
            r = r + Interval::from_rational(1, ctx.prec);
            r = r * Interval::from_rational(mpq_class(1, 2), ctx.prec);
            return Value(r);
        }
        case K::add: return add_values(eval_node(e->left, ctx), eval_node(e->right, ctx), ctx);
        case K::sub: return sub_values(eval_node(e->left, ctx), eval_node(e->right, ctx), ctx);
        case K::mul: return mul_values(eval_node(e->left, ctx), eval_node(e->right, ctx), ctx);
        case K::power: {
            Value b = eval_node(e->left, ctx);
            if (b.exact()) {
                mpq_class r;
                mpz_pow_ui(r.get_num().get_mpz_t(), b.rational().get_num().get_mpz_t(),
                           e->exponent);
                mpz_pow_ui(r.get_den().get_mpz_t(), b.rational().get_den().get_mpz_t(),
                           e->exponent);
                r.canonicalize();
                return Value(r);
            }
            ctx.used_interval = true;
            return Value(b.interval().pow_ui(e->exponent));
        }
        case K::floor_op: return floor_value(eval_node(e->left, ctx));
        case K::frac_op: {
            Value x = eval_node(e->left, ctx);
            return sub_values(x, floor_value(x), ctx);
        }
        case K::nint_op: {
            Value x = eval_node(e->left, ctx);
            Value shifted = add_values(x, Value(mpq_class(1, 2)), ctx);
            return floor_value(shifted);
        }
        case K::dist_op: {
            Value x = eval_node(e->left, ctx);
            Value f = sub_values(x, floor_value(x), ctx);
            Value g = sub_values(Value(mpq_class(1)), f, ctx);
            if (f.exact() && g.exact())
                return f.rational() <= g.rational() ? f : g;
            ctx.used_interval = true;
            return Value(Interval::min(f.widen(ctx.prec), g.widen(ctx.prec)));
        }
        case K::sqrt_op: {
            Value x = eval_node(e->left, ctx);
            if (x.exact()) {
                const mpq_class& q = x.rational();
                if (q < 0) throw Error("sqrt of negative value");
                mpz_class rn, rd;
                mpz_sqrt(rn.get_mpz_t(), q.get_num().get_mpz_t());
                mpz_sqrt(rd.get_mpz_t(), q.get_den().get_mpz_t());
                if (rn * rn == q.get_num() && rd * rd == q.get_den())
                    return Value(mpq_class(rn, rd));
                ctx.used_interval = true;
                return Value(Interval::from_rational(q, ctx.prec).sqrt());
            }
            ctx.used_interval = true;
            return Value(x.interval().sqrt());
        }
    }
    throw Error("unreachable expression kind");
}

}  // namespace

EvalOutcome eval(const ExprPtr& e, const mpz_class& n, const EvalOptions& opt) {
    for (mpfr_prec_t p = opt.p0; p <= opt.p_max; p *= 2) {
        EvalCtx ctx{n, p, false};
        try {
            Value v = eval_node(e, ctx);
            return EvalOutcome{v, ctx.used_interval ? p : 0};
        } catch (const RetryAtHigherPrecision&) {
            continue;
        }
    }
    throw PrecisionError("floor/comparison unresolved at maximum precision for n = " +
                         n.get_str());
}

mpz_class eval_floor(const ExprPtr& e, const mpz_class& n, const EvalOptions& opt) {
    for (mpfr_prec_t p = opt.p0; p <= opt.p_max; p *= 2) {
        EvalCtx ctx{n, p, false};
        try {
            Value v = floor_value(eval_node(e, ctx));
            return mpz_class(v.rational().get_num());
        } catch (const RetryAtHigherPrecision&) {
            continue;
        }
    }
    throw PrecisionError("floor unresolved at maximum precision for n = " + n.get_str());
}

bool sparse_member(const SparseGenPolySpec& spec, const mpz_class& n,
                   const EvalOptions& opt) {
    ExprPtr lhs = make_node(GenPolyExpr::Kind::dist_op, spec.inner);
    if (spec.power_c) {
        // epsilon(n) = n^(-c): compare dist(inner)^q * n^p against 1,
        // with c = p/q in lowest terms
        mpq_class c = *spec.power_c;
        c.canonicalize();
        if (c <= 0) throw Error("sparse_member: power-law exponent must be positive");
        if (!c.get_num().fits_ulong_p() || !c.get_den().fits_ulong_p())
            throw Error("sparse_member: power-law exponent too large");
        if (n == 0) return false;
        unsigned long cp = c.get_num().get_ui(), cq = c.get_den().get_ui();
        mpz_class np;
        mpz_pow_ui(np.get_mpz_t(), n.get_mpz_t(), cp);
        for (mpfr_prec_t p = opt.p0; p <= opt.p_max; p *= 2) {
            EvalCtx ctx{n, p, false};
            try {
                Value a = eval_node(lhs, ctx);
                if (a.exact()) {
                    mpq_class v = a.rational();
                    mpq_class pw = v;
                    for (unsigned long i = 1; i < cq; ++i) pw *= v;
                    return pw * np < 1;
                }
                Interval iv = a.interval().pow_ui(cq) *
                              Interval::from_rational(mpq_class(np), ctx.prec);
                if (iv.upper() < 1) return true;
                if (iv.lower() >= 1) return false;
                throw RetryAtHigherPrecision{};
            } catch (const RetryAtHigherPrecision&) {
                continue;
            }
        }
        throw PrecisionError(
            "threshold comparison unresolved at maximum precision for n = " + n.get_str());
    }
    if (!spec.epsilon) throw Error("sparse_member: no epsilon given");
    for (mpfr_prec_t p = opt.p0; p <= opt.p_max; p *= 2) {
        EvalCtx ctx{n, p, false};
        try {
            Value a = eval_node(lhs, ctx);
            Value b = eval_node(spec.epsilon, ctx);
            if (a.exact() && b.exact()) return a.rational() < b.rational();
            if (a.upper() < b.lower()) return true;
            if (a.lower() >= b.upper()) return false;
            throw RetryAtHigherPrecision{};
        } catch (const RetryAtHigherPrecision&) {
            continue;
        }
    }
    throw PrecisionError("threshold comparison unresolved at maximum precision for n = " +
                         n.get_str());
}

double star_discrepancy(const ExprPtr& e, long N, const mpq_class& lambda, long a,
                        const EvalOptions& opt) {
    if (N < 1) throw Error("star_discrepancy: N must be >= 1");
    ExprPtr wrapped = make_node(GenPolyExpr::Kind::frac_op, make_node(GenPolyExpr::Kind::mul,
                                                                      make_rational(lambda), e));
    std::vector<mpq_class> xs;
    xs.reserve(static_cast<std::size_t>(N));
    for (long i = 0; i < N; ++i) {
        EvalOutcome out = eval(wrapped, mpz_class(a) * i, opt);
        xs.push_back(out.value.lower());
    }
    std::sort(xs.begin(), xs.end());
    mpq_class best = 0;
    for (long i = 0; i < N; ++i) {
        mpq_class up = mpq_class(i + 1, N) - xs[static_cast<std::size_t>(i)];
        mpq_class dn = xs[static_cast<std::size_t>(i)] - mpq_class(i, N);
        if (up > best) best = up;
        if (dn > best) best = dn;
    }
    return best.get_d();
}

}  // namespace aridlab
