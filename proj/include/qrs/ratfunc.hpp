/**
 * @file ratfunc.hpp
 * @brief Exact arithmetic in Q(r,s) / Q(q): integer-coefficient multivariate
 *        polynomials and canonical reduced rational functions.
 *
 * Every scalar coefficient in the library is a RatFunc: a reduced fraction of
 * IntPoly values over a fixed, shared variable list ({r,s}, {q} or none).
 * Canonical form: gcd(num,den)=1 (integer content included), den != 0, den's
 * leading coefficient positive under graded-lex order, zero stored as 0/1.
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qrs {

using Int = boost::multiprecision::cpp_int;

/// Immutable ordered list of variable names, shared by every polynomial of a field.
class Vars {
public:
    static std::shared_ptr<const Vars> make(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    bool operator==(const Vars& o) const { return names_ == o.names_; }

    static constexpr std::size_t max_vars = 3;

private:
    explicit Vars(std::vector<std::string> names) : names_(std::move(names)) {}
    std::vector<std::string> names_;
};

using VarsPtr = std::shared_ptr<const Vars>;

/// Returns true when two polynomials/functions live over the same variable list.
bool same_vars(const VarsPtr& a, const VarsPtr& b);

/// Monomial with up to 3 exponents (16 bits each) packed together with the
/// total degree so that raw integer comparison is graded-lex order, exponent
/// of the first variable ranked first in the tie-break.
class Mono {
public:
    Mono() : bits_(0) {}

    static Mono one() { return Mono(); }
    static Mono var(std::size_t i, unsigned e = 1);

    unsigned exp(std::size_t i) const { return unsigned(bits_ >> shift(i)) & 0xffffu; }
    unsigned degree() const { return unsigned(bits_ >> 48) & 0xffffu; }
    bool is_one() const { return bits_ == 0; }

    Mono operator*(Mono o) const;
    bool divides(Mono o) const;      // this | o
    Mono operator/(Mono o) const;    // requires o.divides(*this)

    bool operator==(Mono o) const { return bits_ == o.bits_; }
    bool operator!=(Mono o) const { return bits_ != o.bits_; }
    bool operator<(Mono o) const { return bits_ < o.bits_; }   // graded-lex

    std::uint64_t raw() const { return bits_; }
    static Mono from_raw(std::uint64_t v) { Mono m; m.bits_ = v; return m; }

private:
    static unsigned shift(std::size_t i) { return 32 - 16 * unsigned(i); }
    std::uint64_t bits_;
};

/// Sparse integer-coefficient polynomial; terms kept sorted graded-lex ascending.
class IntPoly {
public:
    using Term = std::pair<Mono, Int>;

    IntPoly() = default;                       // zero over no particular field
    explicit IntPoly(VarsPtr vars) : vars_(std::move(vars)) {}

    static IntPoly constant(VarsPtr vars, Int c);
    static IntPoly variable(VarsPtr vars, std::size_t i);
    static IntPoly monomial(VarsPtr vars, Mono m, Int c);

    const VarsPtr& vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
    bool is_one() const;
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    long total_degree() const;                 // -1 for zero
    long degree_in(std::size_t var) const;     // -1 for zero
    const Term& leading() const;               // largest monomial; requires nonzero

    IntPoly operator-() const;
    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    bool operator==(const IntPoly& o) const;

    IntPoly mul_term(Mono m, const Int& c) const;
    IntPoly div_exact(const IntPoly& d) const; // throws std::domain_error if not exact

    Int content() const;                       // gcd of |coefficients|, >= 0; 0 for zero
    IntPoly primitive_part() const;            // leading coefficient made positive

    /// Full gcd over Z[vars]: integer content folded in, positive leading coefficient.
    static IntPoly gcd(const IntPoly& a, const IntPoly& b);

    std::string to_string() const;             // graded-lex descending

    /// Mutating builder used by arithmetic: adds c*m, keeps invariants.
    void add_term(Mono m, const Int& c);

private:
    VarsPtr vars_;
    std::vector<Term> terms_;
    friend class RatFunc;
};

/// Canonical reduced fraction of IntPoly over a shared variable list.
class RatFunc {
public:
    RatFunc() : den_(IntPoly::constant(nullptr, 1)) {}   // zero over no particular field

    /// reduce(num, den): the canonical form. Throws on zero denominator.
    RatFunc(IntPoly num, IntPoly den);

    static RatFunc zero(const VarsPtr& vars);
    static RatFunc one(const VarsPtr& vars);
    static RatFunc constant(const VarsPtr& vars, Int c);
    static RatFunc rational(const VarsPtr& vars, Int num, Int den);
    static RatFunc variable(const VarsPtr& vars, std::size_t i);
    static RatFunc from_poly(IntPoly p);

    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }
    const VarsPtr& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;  // throws on zero divisor
    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }

    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc reciprocal() const;                 // throws on zero
    RatFunc pow(long long e) const;             // negative exponents allowed

    /// True when the value is a single monomial with integer coefficient
    /// (denominator 1) — used by renderers to skip parentheses.
    bool is_monomial_over_one() const { return den_.is_one() && num_.term_count() == 1; }

    std::string to_string() const;

private:
    void reduce_();
    IntPoly num_, den_;
};

/// [n]_v = 1 + v + ... + v^{n-1}; n >= 1.
RatFunc q_integer(int n, const RatFunc& v);
/// [n]_v! = [n]_v [n-1]_v ... [1]_v; n >= 1.
RatFunc q_factorial(int n, const RatFunc& v);

/// Substitutes assignment[i] for variable i of f; the values live in a common
/// target field. Throws std::domain_error("specialization pole") when f's
/// denominator vanishes under the substitution.
RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& assignment);

/// Parses "3", "-7/2" into an exact rational over the given field.
RatFunc parse_rational(const VarsPtr& vars, const std::string& text);

} // namespace qrs
