#include "qrs/ratfunc.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace qrs {

namespace {

Int int_gcd(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

} // namespace

// ---------------------------------------------------------------------------
// Vars
// ---------------------------------------------------------------------------

std::shared_ptr<const Vars> Vars::make(std::vector<std::string> names) {
    if (names.size() > max_vars)
        throw std::invalid_argument("ratfunc: at most 3 variables supported");
    return std::shared_ptr<const Vars>(new Vars(std::move(names)));
}

bool same_vars(const VarsPtr& a, const VarsPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

// ---------------------------------------------------------------------------
// Mono
// ---------------------------------------------------------------------------

Mono Mono::var(std::size_t i, unsigned e) {
    if (i >= Vars::max_vars) throw std::out_of_range("Mono: variable index");
    if (e > 0xffffu) throw std::overflow_error("Mono: exponent overflow");
    Mono m;
    m.bits_ = (std::uint64_t(e) << shift(i)) | (std::uint64_t(e) << 48);
    return m;
}

Mono Mono::operator*(Mono o) const {
    Mono m;
    m.bits_ = bits_ + o.bits_;
    if (m.degree() < degree() || m.degree() > 0xffffu - 1)
        throw std::overflow_error("Mono: degree overflow");
    return m;
}

bool Mono::divides(Mono o) const {
    for (std::size_t i = 0; i < Vars::max_vars; ++i)
        if (exp(i) > o.exp(i)) return false;
    return true;
}

Mono Mono::operator/(Mono o) const {
    assert(o.divides(*this));
    Mono m;
    m.bits_ = bits_ - o.bits_;
    return m;
}

// ---------------------------------------------------------------------------
// IntPoly
// ---------------------------------------------------------------------------

IntPoly IntPoly::constant(VarsPtr vars, Int c) {
    IntPoly p(std::move(vars));
    if (c != 0) p.terms_.emplace_back(Mono::one(), std::move(c));
    return p;
}

IntPoly IntPoly::variable(VarsPtr vars, std::size_t i) {
    if (!vars || i >= vars->size()) throw std::out_of_range("IntPoly: variable index");
    IntPoly p(std::move(vars));
    p.terms_.emplace_back(Mono::var(i), Int(1));
    return p;
}

IntPoly IntPoly::monomial(VarsPtr vars, Mono m, Int c) {
    IntPoly p(std::move(vars));
    if (c != 0) p.terms_.emplace_back(m, std::move(c));
    return p;
}

bool IntPoly::is_one() const {
    return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

long IntPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return long(terms_.back().first.degree());
}

long IntPoly::degree_in(std::size_t var) const {
    if (terms_.empty()) return -1;
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.exp(var));
    return long(d);
}

const IntPoly::Term& IntPoly::leading() const {
    if (terms_.empty()) throw std::domain_error("IntPoly: leading term of zero");
    return terms_.back();
}

void IntPoly::add_term(Mono m, const Int& c) {
    if (c == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Mono mm) { return t.first < mm; });
    if (it != terms_.end() && it->first == m) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    } else {
        terms_.insert(it, Term(m, c));
    }
}

IntPoly IntPoly::operator-() const {
    IntPoly p(vars_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.emplace_back(t.first, -t.second);
    return p;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    if (!same_vars(vars_, o.vars_) && !is_zero() && !o.is_zero())
        throw std::invalid_argument("IntPoly: mixed variable lists");
    IntPoly p(vars_ ? vars_ : o.vars_);
    p.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
        if (a->first < b->first) p.terms_.push_back(*a++);
        else if (b->first < a->first) p.terms_.push_back(*b++);
        else {
            Int c = a->second + b->second;
            if (c != 0) p.terms_.emplace_back(a->first, std::move(c));
            ++a; ++b;
        }
    }
    p.terms_.insert(p.terms_.end(), a, terms_.end());
    p.terms_.insert(p.terms_.end(), b, o.terms_.end());
    return p;
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::mul_term(Mono m, const Int& c) const {
    IntPoly p(vars_);
    if (c == 0) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.emplace_back(t.first * m, t.second * c);
    return p;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly(vars_ ? vars_ : o.vars_);
    if (!same_vars(vars_, o.vars_))
        throw std::invalid_argument("IntPoly: mixed variable lists");
    if (o.terms_.size() == 1) return mul_term(o.terms_[0].first, o.terms_[0].second);
    if (terms_.size() == 1) return o.mul_term(terms_[0].first, terms_[0].second);
    std::map<std::uint64_t, Int> acc;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_)
            acc[(a.first * b.first).raw()] += a.second * b.second;
    IntPoly p(vars_);
    p.terms_.reserve(acc.size());
    for (auto& kv : acc) {
        if (kv.second == 0) continue;
        p.terms_.emplace_back(Mono::from_raw(kv.first), std::move(kv.second));
    }
    return p;
}

bool IntPoly::operator==(const IntPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second)
            return false;
    return true;
}

IntPoly IntPoly::div_exact(const IntPoly& d) const {
    if (d.is_zero()) throw std::domain_error("IntPoly: division by zero");
    IntPoly rem = *this;
    IntPoly quo(vars_);
    const Mono dm = d.leading().first;
    const Int& dc = d.leading().second;
    while (!rem.is_zero()) {
        const Term& lt = rem.leading();
        if (!dm.divides(lt.first) || lt.second % dc != 0)
            throw std::domain_error("IntPoly: division not exact");
        Mono qm = lt.first / dm;
        Int qc = lt.second / dc;
        quo.add_term(qm, qc);
        rem = rem - d.mul_term(qm, qc);
    }
    return quo;
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& t : terms_) {
        g = int_gcd(g, t.second);
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return *this;
    Int c = content();
    if (leading().second < 0) c = -c;
    if (c == 1) return *this;
    IntPoly p(vars_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.emplace_back(t.first, t.second / c);
    return p;
}

namespace {

// Coefficient of x_var^k viewed as a polynomial in the remaining variables.
IntPoly coeff_in(const IntPoly& p, std::size_t var, unsigned k) {
    IntPoly c(p.vars());
    for (const auto& t : p.terms())
        if (t.first.exp(var) == k)
            c.add_term(t.first / Mono::var(var, k), t.second);
    return c;
}

// gcd of all coefficients of p wrt var (each a polynomial without var).
IntPoly content_in(const IntPoly& p, std::size_t var) {
    IntPoly g(p.vars());
    long d = p.degree_in(var);
    for (long k = 0; k <= d; ++k) {
        IntPoly c = coeff_in(p, var, unsigned(k));
        if (!c.is_zero()) g = IntPoly::gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

IntPoly lc_in(const IntPoly& p, std::size_t var) {
    return coeff_in(p, var, unsigned(p.degree_in(var)));
}

// Pseudo-remainder of p by d in variable var: lc(d)^(deg p - deg d + 1) * p mod d.
IntPoly prem(IntPoly p, const IntPoly& d, std::size_t var) {
    long dd = d.degree_in(var);
    IntPoly ld = lc_in(d, var);
    long e = p.degree_in(var) - dd + 1;
    while (!p.is_zero() && p.degree_in(var) >= dd) {
        long dp = p.degree_in(var);
        IntPoly lp = lc_in(p, var);
        IntPoly shift = lp.mul_term(Mono::var(var, unsigned(dp - dd)), Int(1));
        p = p * ld - d * shift;
        --e;
    }
    for (; e > 0; --e) p = p * ld;
    return p;
}

IntPoly pow_poly(IntPoly p, long e) {
    IntPoly r = IntPoly::constant(p.vars(), 1);
    for (; e > 0; --e) r = r * p;
    return r;
}

// Subresultant PRS gcd of two polynomials, primitive in var.
IntPoly gcd_primitive(IntPoly a, IntPoly b, std::size_t var) {
    if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
    IntPoly g = IntPoly::constant(a.vars(), 1);
    IntPoly h = g;
    while (true) {
        long delta = a.degree_in(var) - b.degree_in(var);
        IntPoly r = prem(a, b, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) return IntPoly::constant(a.vars(), 1);
        a = b;
        b = r.div_exact(g * pow_poly(h, delta));
        g = lc_in(a, var);
        h = (delta == 0) ? h : pow_poly(g, delta).div_exact(pow_poly(h, delta - 1));
    }
    // b / content_in(b, var), then full primitive part
    IntPoly cb = content_in(b, var);
    return b.div_exact(cb).primitive_part();
}

} // namespace

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) {
        if (b.is_zero()) return a;
        return b.leading().second < 0 ? -b : b;
    }
    if (b.is_zero()) return a.leading().second < 0 ? -a : a;

    Int ca = a.content(), cb = b.content();
    Int c = int_gcd(ca, cb);
    IntPoly pa = a.primitive_part(), pb = b.primitive_part();

    // find a variable actually present in either part
    std::size_t var = Vars::max_vars;
    std::size_t nv = a.vars() ? a.vars()->size() : 0;
    for (std::size_t i = 0; i < nv; ++i) {
        if (pa.degree_in(i) > 0 || pb.degree_in(i) > 0) { var = i; break; }
    }
    if (var == Vars::max_vars)
        return IntPoly::constant(a.vars(), c);   // both constants

    IntPoly g;
    if (pa.degree_in(var) == 0) {
        g = IntPoly::gcd(pa, content_in(pb, var));
    } else if (pb.degree_in(var) == 0) {
        g = IntPoly::gcd(content_in(pa, var), pb);
    } else {
        IntPoly conta = content_in(pa, var);
        IntPoly contb = content_in(pb, var);
        IntPoly gc = IntPoly::gcd(conta, contb);
        IntPoly gp = gcd_primitive(pa.div_exact(conta), pb.div_exact(contb), var);
        g = gc * gp;
    }
    g = g.primitive_part();
    return g.mul_term(Mono::one(), c);
}

std::string IntPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Int& c = it->second;
        bool neg = c < 0;
        Int a = neg ? Int(-c) : c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::string mono;
        std::size_t nv = vars_ ? vars_->size() : 0;
        for (std::size_t i = 0; i < nv; ++i) {
            unsigned e = it->first.exp(i);
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_->name(i);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            os << a.str();
        } else {
            if (a != 1) os << a.str() << "*";
            os << mono;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// RatFunc
// ---------------------------------------------------------------------------

RatFunc::RatFunc(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("ratfunc: division by zero");
    reduce_();
}

void RatFunc::reduce_() {
    const VarsPtr& vars = den_.vars() ? den_.vars() : num_.vars();
    if (num_.is_zero()) {
        num_ = IntPoly(vars);
        den_ = IntPoly::constant(vars, 1);
        return;
    }
    if (!den_.is_one()) {
        if (den_.is_monomial()) {
            // fast path: gcd with a monomial is per-variable min exponent + content
            Mono dm = den_.leading().first;
            Mono g = dm;
            for (const auto& t : num_.terms()) {
                Mono n = t.first;
                Mono gg = Mono::one();
                std::size_t nv = vars ? vars->size() : 0;
                for (std::size_t i = 0; i < nv; ++i) {
                    unsigned e = std::min(g.exp(i), n.exp(i));
                    if (e) gg = gg * Mono::var(i, e);
                }
                g = gg;
                if (g.is_one()) break;
            }
            Int ci = int_gcd(num_.content(), den_.leading().second);
            if (!g.is_one() || ci != 1) {
                IntPoly d = IntPoly::monomial(vars, g, ci);
                num_ = num_.div_exact(d);
                den_ = den_.div_exact(d);
            }
        } else {
            IntPoly g = IntPoly::gcd(num_, den_);
            if (!g.is_one()) {
                num_ = num_.div_exact(g);
                den_ = den_.div_exact(g);
            }
        }
    }
    if (den_.leading().second < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RatFunc RatFunc::zero(const VarsPtr& vars) {
    RatFunc f;
    f.num_ = IntPoly(vars);
    f.den_ = IntPoly::constant(vars, 1);
    return f;
}

RatFunc RatFunc::one(const VarsPtr& vars) { return constant(vars, 1); }

RatFunc RatFunc::constant(const VarsPtr& vars, Int c) {
    RatFunc f;
    f.num_ = IntPoly::constant(vars, std::move(c));
    f.den_ = IntPoly::constant(vars, 1);
    return f;
}

RatFunc RatFunc::rational(const VarsPtr& vars, Int num, Int den) {
    return RatFunc(IntPoly::constant(vars, std::move(num)),
                   IntPoly::constant(vars, std::move(den)));
}

RatFunc RatFunc::variable(const VarsPtr& vars, std::size_t i) {
    RatFunc f;
    f.num_ = IntPoly::variable(vars, i);
    f.den_ = IntPoly::constant(vars, 1);
    return f;
}

RatFunc RatFunc::from_poly(IntPoly p) {
    RatFunc f;
    f.den_ = IntPoly::constant(p.vars(), 1);
    f.num_ = std::move(p);
    return f;
}

RatFunc RatFunc::operator-() const {
    RatFunc f;
    f.num_ = -num_;
    f.den_ = den_;
    return f;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (den_.is_one() && o.den_.is_one()) {
        RatFunc f;
        f.num_ = num_ + o.num_;
        f.den_ = den_.vars() ? den_ : o.den_;
        if (f.num_.is_zero()) return zero(f.den_.vars());
        return f;
    }
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return zero(vars() ? vars() : o.vars());
    if (den_.is_one() && o.den_.is_one()) {
        RatFunc f;
        f.num_ = num_ * o.num_;
        f.den_ = den_;
        return f;
    }
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.reciprocal(); }

bool RatFunc::operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

RatFunc RatFunc::reciprocal() const {
    if (is_zero()) throw std::domain_error("ratfunc: division by zero");
    RatFunc f;
    f.num_ = den_;
    f.den_ = num_;
    if (f.den_.leading().second < 0) {
        f.num_ = -f.num_;
        f.den_ = -f.den_;
    }
    return f;
}

RatFunc RatFunc::pow(long long e) const {
    if (e < 0) return reciprocal().pow(-e);
    RatFunc r = one(vars());
    RatFunc base = *this;
    unsigned long long k = (unsigned long long)e;
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

namespace {

bool needs_parens(const std::string& s) {
    return s.find(' ') != std::string::npos || s.find('*') != std::string::npos;
}

} // namespace

std::string RatFunc::to_string() const {
    std::string n = num_.to_string();
    if (den_.is_one()) return n;
    std::string d = den_.to_string();
    if (needs_parens(n)) n = "(" + n + ")";
    if (needs_parens(d)) d = "(" + d + ")";
    return n + "/" + d;
}

// ---------------------------------------------------------------------------
// q-integers, substitution, parsing
// ---------------------------------------------------------------------------

RatFunc q_integer(int n, const RatFunc& v) {
    if (n < 1) throw std::domain_error("q_integer: n must be >= 1");
    RatFunc sum = RatFunc::one(v.vars());
    RatFunc p = RatFunc::one(v.vars());
    for (int k = 1; k < n; ++k) {
        p = p * v;
        sum = sum + p;
    }
    return sum;
}

RatFunc q_factorial(int n, const RatFunc& v) {
    if (n < 1) throw std::domain_error("q_factorial: n must be >= 1");
    RatFunc f = RatFunc::one(v.vars());
    for (int k = 2; k <= n; ++k) f = f * q_integer(k, v);
    return f;
}

namespace {

RatFunc eval_poly(const IntPoly& p, const std::vector<RatFunc>& assignment,
                  const VarsPtr& target) {
    RatFunc acc = RatFunc::zero(target);
    for (const auto& t : p.terms()) {
        RatFunc term = RatFunc::constant(target, t.second);
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            unsigned e = t.first.exp(i);
            if (e) term = term * assignment[i].pow(e);
        }
        acc = acc + term;
    }
    return acc;
}

} // namespace

RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& assignment) {
    std::size_t nv = f.vars() ? f.vars()->size() : 0;
    if (assignment.size() < nv)
        throw std::invalid_argument("substitute: every variable must be assigned");
    VarsPtr target = nv ? assignment[0].vars() : f.vars();
    for (const auto& a : assignment)
        if (!same_vars(a.vars(), target))
            throw std::invalid_argument("substitute: assignment values over mixed fields");
    RatFunc den = eval_poly(f.den(), assignment, target);
    if (den.is_zero()) throw std::domain_error("specialization pole");
    RatFunc num = eval_poly(f.num(), assignment, target);
    return num / den;
}

RatFunc parse_rational(const VarsPtr& vars, const std::string& text) {
    auto pos = text.find('/');
    try {
        if (pos == std::string::npos)
            return RatFunc::constant(vars, Int(text));
        return RatFunc::rational(vars, Int(text.substr(0, pos)), Int(text.substr(pos + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("ratfunc: cannot parse rational '" + text + "'");
    }
}

} // namespace qrs
