/**
 * @file ncalg.hpp
 * @brief The two-parameter quantum matrix semigroup as a rewriting system:
 *        noncommutative polynomials in the generators a_ij with normal-form
 *        reduction, the tensor-square algebra, coproduct and counit.
 *
 * A word is NORMAL when its letters are non-decreasing under (copy, row, col)
 * order; repeated letters are allowed. The defining relations are quadratic
 * and homogeneous, so rewriting preserves word length and strictly decreases
 * words in the lexicographic order on equal-length words, which gives
 * termination. Confluence is exercised empirically by the test suite.
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "qrs/ratfunc.hpp"

namespace qrs {

enum class Copy : std::uint8_t { left = 0, right = 1 };

/// One generator occurrence: copy (left/right of the tensor square) and
/// 1-based matrix position. Packs into 16 bits; the packed value order is
/// exactly the letter order (copy, then row, then col).
struct Letter {
    Copy copy;
    int row;
    int col;
};

using LetterCode = char16_t;
using Word = std::u16string;   // sequence of packed letters; SSO for short words

LetterCode encode_letter(const Letter& l);
Letter decode_letter(LetterCode c);
LetterCode make_letter(int row, int col, Copy copy = Copy::left);

/// Canonical word order: by length, then lexicographically.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

bool word_is_normal(const Word& w);

/// Parameter regimes the CLI and verification suite know about.
enum class Regime { generic, q_inverse, q_negative, numeric };

std::string regime_name(Regime r);
Regime regime_from_name(const std::string& s);

enum class Flavor : std::uint8_t { single, tensor_square };
enum class RelationSet : std::uint8_t { quantum, free_algebra };

/// Everything that identifies one algebra: size, parameter values in the
/// ambient coefficient field, single vs tensor-square flavor, and whether
/// the quantum relations apply at all (free_algebra disables rewriting).
struct AlgebraSpec {
    int n = 0;
    RatFunc r, s;
    Flavor flavor = Flavor::single;
    RelationSet relations = RelationSet::quantum;
    bool corrupt_rewrite = false;   // test hook: perturbs one rewrite coefficient

    bool operator==(const AlgebraSpec& o) const;
};

AlgebraSpec make_spec(int n, Regime regime,
                      const std::string& numeric_r = "1",
                      const std::string& numeric_s = "1");

/// Noncommutative polynomial: finite map from words to coefficients.
/// Values produced by Algebra are canonical (every stored word normal).
class NCPoly {
public:
    using TermMap = std::map<Word, RatFunc, WordLess>;

    NCPoly() = default;
    explicit NCPoly(std::shared_ptr<const AlgebraSpec> spec) : spec_(std::move(spec)) {}

    const std::shared_ptr<const AlgebraSpec>& spec() const { return spec_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Coefficient of a word (zero if absent).
    RatFunc coeff(const Word& w) const;

    void add_term(const Word& w, const RatFunc& c);   // merges, drops zeros

    NCPoly operator+(const NCPoly& o) const;
    NCPoly operator-(const NCPoly& o) const;
    NCPoly operator-() const;
    NCPoly scaled(const RatFunc& c) const;
    bool operator==(const NCPoly& o) const;
    bool operator!=(const NCPoly& o) const { return !(*this == o); }

    std::string to_string() const;   // deterministic text rendering

private:
    void check_same_spec(const NCPoly& o) const;
    std::shared_ptr<const AlgebraSpec> spec_;
    TermMap terms_;
};

/// Reduction strategies for the confluence checks. The production path
/// (Algebra::normal_form) is memoized suffix insertion and is tested to agree
/// with all of these.
enum class RewriteStrategy { leftmost, rightmost, random_descent };

/// Bounds for the whole-word normal-form memo cache.
struct CacheLimits {
    std::size_t max_word_length = 10;      // longer words are not cached
    std::size_t max_entries = std::size_t(1) << 22;
};

/// Rewriting engine bound to one AlgebraSpec. Owns the normal-form memo
/// cache; values it returns are immutable. Not thread-safe to share one
/// instance across threads (the cache mutates); distinct instances are
/// independent.
class Algebra {
public:
    explicit Algebra(AlgebraSpec spec, CacheLimits limits = {});

    const AlgebraSpec& spec() const { return *spec_; }
    const std::shared_ptr<const AlgebraSpec>& spec_ptr() const { return spec_; }
    int n() const { return spec_->n; }
    const RatFunc& r() const { return spec_->r; }
    const RatFunc& s() const { return spec_->s; }
    const VarsPtr& field_vars() const { return spec_->r.vars(); }

    RatFunc scalar(Int c) const { return RatFunc::constant(field_vars(), std::move(c)); }
    RatFunc scalar_one() const { return scalar(1); }

    NCPoly zero() const { return NCPoly(spec_); }
    NCPoly unit(const RatFunc& c) const;                 // c * empty word
    NCPoly one() const { return unit(scalar_one()); }
    NCPoly generator(int row, int col, Copy copy = Copy::left) const;
    NCPoly monomial(const Word& w, const RatFunc& c) const;   // normalizes

    /// Normal form of a non-normal adjacent pair x*y as a combination of
    /// smaller two-letter words. Throws std::logic_error on a normal pair.
    NCPoly rewrite_pair(Letter x, Letter y) const;

    /// Memoized normal form of one word.
    NCPoly normal_form(const Word& w) const;

    NCPoly normalize(const NCPoly& p) const;
    NCPoly mul(const NCPoly& a, const NCPoly& b) const;
    NCPoly mul(const std::vector<NCPoly>& factors) const;

    /// Plain worklist normalization with an explicit descent-choice strategy;
    /// no memoization. Used by the confluence checks as independent routes.
    NCPoly normalize_with_strategy(const NCPoly& p, RewriteStrategy st,
                                   std::uint64_t seed = 0) const;

    /// Coproduct a_ij -> sum_k a_ik (x) a_kj extended as an algebra map;
    /// result lives in the tensor-square companion algebra.
    NCPoly coproduct(const NCPoly& p) const;
    const Algebra& tensor_algebra() const;

    /// Counit: a_ij -> Kronecker delta, extended as an algebra map.
    RatFunc counit(const NCPoly& p) const;

    struct CacheStats { std::uint64_t hits = 0, misses = 0, entries = 0; };
    CacheStats cache_stats() const;
    void clear_cache() const;

private:
    using NFPtr = std::shared_ptr<const NCPoly>;
    NFPtr nf_shared(const Word& w) const;
    void rewrite_terms(Letter x, Letter y,
                       LetterCode out[2][2], RatFunc coeff[2], int& count) const;

    std::shared_ptr<const AlgebraSpec> spec_;
    RatFunc coeff_row_swap_;    // a_il a_ik -> r^-1 a_ik a_il
    RatFunc coeff_col_swap_;    // a_jk a_ik -> s a_ik a_jk
    RatFunc coeff_anti_;        // a_jk a_il -> r s a_il a_jk
    RatFunc coeff_correction_;  // a_jl a_ik -> a_ik a_jl - (r-s) a_il a_jk

    CacheLimits cache_limits_;
    mutable std::unordered_map<Word, NFPtr> nf_cache_;
    mutable std::uint64_t cache_hits_ = 0, cache_misses_ = 0;
    mutable std::unique_ptr<Algebra> tensor_;
};

/// Renders one letter: "a11" (single flavor) or "L11"/"R23" (tensor square);
/// bracketed "a[12,3]" once indices pass 9.
std::string letter_name(LetterCode c, Flavor flavor = Flavor::single);

/// JSON-ready word rendering: list of [copy,row,col] triples.
std::vector<std::array<int, 3>> word_triples(const Word& w);

} // namespace qrs
