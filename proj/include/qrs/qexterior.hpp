/**
 * @file qexterior.hpp
 * @brief Quantum exterior algebras over the x- and y-variables, the mixed
 *        algebra with the quantum semigroup, and the wedge-form oracles for
 *        determinants, Pfaffians and Hafnians.
 *
 * Exterior monomials are index subsets stored as bitmasks; the coefficient of
 * a product is swap^k where k counts the interleaving inversions, so products
 * merge in one pass instead of pairwise bubble swaps. The a-, x- and y-parts
 * of a mixed term commute with each other.
 */
#pragma once

#include <cstdint>
#include <map>

#include "qrs/genmatrix.hpp"
#include "qrs/ncalg.hpp"
#include "qrs/report.hpp"

namespace qrs {

using IndexMask = std::uint32_t;   // bit (i-1) set <=> index i present

IndexMask mask_of(std::initializer_list<int> indices);
std::vector<int> mask_indices(IndexMask m);

/// Number of pairs (a in m1, b in m2) with a > b.
int interleave_inversions(IndexMask m1, IndexMask m2);

/// Element of A_{r,s} (x) Lambda (x) Lambda': map from (a-word, x-monomial,
/// y-monomial) to coefficients. a-words are kept normal.
class MixedPoly {
public:
    struct Key {
        Word w;
        IndexMask xm = 0, ym = 0;
        bool operator<(const Key& o) const {
            if (WordLess{}(w, o.w)) return true;
            if (WordLess{}(o.w, w)) return false;
            if (xm != o.xm) return xm < o.xm;
            return ym < o.ym;
        }
        bool operator==(const Key& o) const {
            return w == o.w && xm == o.xm && ym == o.ym;
        }
    };
    using TermMap = std::map<Key, RatFunc>;

    MixedPoly() = default;
    explicit MixedPoly(std::shared_ptr<const AlgebraSpec> spec) : spec_(std::move(spec)) {}

    const std::shared_ptr<const AlgebraSpec>& spec() const { return spec_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Key& k, const RatFunc& c);

    MixedPoly operator+(const MixedPoly& o) const;
    MixedPoly operator-(const MixedPoly& o) const;
    MixedPoly scaled(const RatFunc& c) const;
    bool operator==(const MixedPoly& o) const;

    /// NCPoly coefficient of a fixed (x-monomial, y-monomial) pair.
    NCPoly coefficient(IndexMask xm, IndexMask ym, const Algebra& alg) const;

private:
    std::shared_ptr<const AlgebraSpec> spec_;
    TermMap terms_;
};

/// Multiplication engine for MixedPoly over one Algebra. The x- and y-swap
/// factors default to the defining relations (-r and -s^{-1}); the oracles
/// instantiate other factors to realize Pf_v and Hf_q wedges.
class MixedAlgebra {
public:
    explicit MixedAlgebra(const Algebra& alg);
    MixedAlgebra(const Algebra& alg, RatFunc x_swap, RatFunc y_swap);

    const Algebra& algebra() const { return alg_; }

    MixedPoly zero() const { return MixedPoly(alg_.spec_ptr()); }
    MixedPoly one() const;
    MixedPoly from_nc(const NCPoly& p) const;
    MixedPoly x_var(int i) const;
    MixedPoly y_var(int i) const;

    MixedPoly mul(const MixedPoly& a, const MixedPoly& b) const;
    MixedPoly wedge_power(const MixedPoly& base, int k) const;

private:
    const RatFunc& x_swap_pow(int k) const;
    const RatFunc& y_swap_pow(int k) const;
    const Algebra& alg_;
    RatFunc x_swap_, y_swap_;
    mutable std::vector<RatFunc> x_pows_, y_pows_;
};

/// x_wedge / y_wedge on bare monomials: returns {coefficient, merged mask};
/// coefficient zero when the index sets intersect.
std::pair<RatFunc, IndexMask> x_wedge(const Algebra& alg, IndexMask m1, IndexMask m2);
std::pair<RatFunc, IndexMask> y_wedge(const Algebra& alg, IndexMask m1, IndexMask m2);

/// delta_i = sum_j a_ij x_j and partial_i = sum_j a_ji y_j.
MixedPoly delta_form(const Algebra& alg, int i);
MixedPoly partial_form(const Algebra& alg, int i);

enum class DetMode { row, column };

/// Coefficient of the top exterior monomial in delta_1 ^ ... ^ delta_n
/// (row mode) or partial_1 ^ ... ^ partial_n (column mode).
NCPoly det_oracle(const Algebra& alg, DetMode mode);

/// Wedge-power oracle for Pfaffian-like forms: builds the 2-form from the
/// strict upper triangle of B in an exterior algebra with the given swap
/// factor w (e_j ^ e_i = w e_i ^ e_j for i < j), raises it to the n-th power
/// and divides the top coefficient by [n]_{w^4}!.
NCPoly wedge_pfaffian_oracle(const Algebra& alg, const GenMatrix& B, const RatFunc& swap);

enum class PfFlavor { x, y };

/// Paper-facing oracle: x flavor uses swap -v and normalizer [n]_{v^4}!,
/// y flavor uses swap -v^{-1} and normalizer [n]_{v^{-4}}!.
NCPoly pf_oracle(const Algebra& alg, const GenMatrix& B, const RatFunc& v, PfFlavor flavor);

/// Hafnian wedge oracle: swap +q, normalizer [n]_{q^4}!.
NCPoly hf_oracle(const Algebra& alg, const GenMatrix& B, const RatFunc& q);

/// Wedge of the selected delta rows decomposed over basis x-monomials:
/// column subset -> minor determinant. Empty map when a row repeats.
std::map<std::vector<int>, NCPoly> minor_expansion(const Algebra& alg,
                                                   const std::vector<int>& rows);

/// Mechanization of the Phi-form proof: computes wedge^n Phi / [n]_{r/s}!,
/// extracts the top (x,y) coefficient and compares with both det oracles.
Report phi_check(const Algebra& alg);

/// Forward direction of the Manin property: the delta_i satisfy the x-wedge
/// relations and the partial_i the y-wedge relations over the quantum
/// algebra; over the free algebra the residuals must not all vanish.
Report manin_check(const Algebra& alg);

} // namespace qrs
