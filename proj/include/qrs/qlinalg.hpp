/**
 * @file qlinalg.hpp
 * @brief Quantum linear algebra over the two-parameter semigroup:
 *        determinants, permanents, Pfaffians, Hafnians, minors, Laplace
 *        expansions, adjugate and tau-conjugation, the quadratic matrices
 *        B and B', Maya relations, and the identity verifier.
 */
#pragma once

#include <functional>
#include <optional>

#include "qrs/genmatrix.hpp"
#include "qrs/ncalg.hpp"
#include "qrs/report.hpp"

namespace qrs {

// -- permutations -----------------------------------------------------------

/// A permutation as its image list sigma(1..m), 1-based values.
using Permutation = std::vector<int>;

int inversions(const Permutation& sigma);
std::vector<Permutation> all_permutations(int m);
/// sigma(2i-1) < sigma(2i) for every pair.
std::vector<Permutation> enumerate_pi_prime(int m);
/// Additionally sigma(1) < sigma(3) < ... (perfect matchings).
std::vector<Permutation> enumerate_pi(int m);

// -- matrices over the algebra ----------------------------------------------

GenMatrix generator_matrix(const Algebra& alg);
GenMatrix mat_transpose(const GenMatrix& A);
GenMatrix mat_mul(const Algebra& alg, const GenMatrix& A, const GenMatrix& B);
/// Block-diagonal J_v of the given even size: blocks (0 1; -v 0).
GenMatrix jay(const Algebra& alg, const RatFunc& v, int size);

/// Submatrix by 1-based row/column index lists (kept in the given order).
GenMatrix minor_mx(const GenMatrix& M, const std::vector<int>& rows,
                   const std::vector<int>& cols);
/// Rows/cols 1..m with the given ones deleted.
GenMatrix minor_deleting(const GenMatrix& M, int drop_row, int drop_col);

// -- permutation sums ---------------------------------------------------------

/// rdet_r(M) = sum (-r)^{l(sigma)} M(1,sigma 1) ... M(n,sigma n).
NCPoly rdet(const Algebra& alg, const GenMatrix& M);
/// cdet_{s^-1}(M) = sum (-s)^{-l(sigma)} M(sigma 1,1) ... M(sigma n,n).
NCPoly cdet(const Algebra& alg, const GenMatrix& M);
/// per_q(M) = sum q^{l(sigma)} M(sigma 1,1) ... M(sigma n,n) with q = r.
/// Requires a single-parameter field (not generic (r,s)).
NCPoly per_q(const Algebra& alg, const GenMatrix& M);

// -- Laplace expansions, adjugate, tau ----------------------------------------

/// Row Laplace expansion for the fixed row split (rows_first | complement).
NCPoly laplace_row(const Algebra& alg, const GenMatrix& A,
                   const std::vector<int>& rows_first);
NCPoly laplace_col(const Algebra& alg, const GenMatrix& A,
                   const std::vector<int>& cols_first);

/// sum_j (-r)^{j-i} A(i,j) rdet(A with row k and column j deleted); equals
/// rdet(A) delta_{ik}. The _alt form carries the minors on the left.
NCPoly cofactor_row(const Algebra& alg, const GenMatrix& A, int i, int k);
NCPoly cofactor_row_alt(const Algebra& alg, const GenMatrix& A, int i, int k);
/// sum_j (-s)^{i-j} A(j,i) cdet(A with row j and column k deleted).
NCPoly cofactor_col(const Algebra& alg, const GenMatrix& A, int i, int k);
NCPoly cofactor_col_alt(const Algebra& alg, const GenMatrix& A, int i, int k);

/// adj(A)_{ij} = (-1)^{i-j} rdet of A with row j and column i deleted.
GenMatrix adjugate(const Algebra& alg, const GenMatrix& A);
/// Conjugation by diag(v, v^2, ..., v^n): entry (i,j) scaled by v^{j-i}.
GenMatrix tau(const GenMatrix& M, const RatFunc& v);

// -- quadratic matrices and Pfaffian/Hafnian forms ---------------------------

/// B = A^T J_{s^-1} A; requires even algebra size.
GenMatrix build_B(const Algebra& alg);
/// B' = A J_r A^T.
GenMatrix build_Bprime(const Algebra& alg);

/// Core form: (1/[n]_{w^4}!) sum_{Pi'} w^{l(sigma)} b_{sigma(1)sigma(2)} ...
/// Only the strict upper triangle of B is read.
NCPoly pfaffian_like(const Algebra& alg, const GenMatrix& B, const RatFunc& w);
NCPoly pf_full(const Algebra& alg, const GenMatrix& B, const RatFunc& v);
NCPoly hf_full(const Algebra& alg, const GenMatrix& B, const RatFunc& q);

/// Simplified matching sums over Pi; valid on Maya-satisfying entries, but
/// computable on any input.
NCPoly pf_matching(const Algebra& alg, const GenMatrix& B, const RatFunc& q);
NCPoly hf_matching(const Algebra& alg, const GenMatrix& B, const RatFunc& q);
NCPoly pf_recursive(const Algebra& alg, const GenMatrix& B, const RatFunc& q);
NCPoly hf_recursive(const Algebra& alg, const GenMatrix& B, const RatFunc& q);

enum class MayaSign { plus, minus };

/// Normalized residuals of the q-Maya (plus) or (-q)-Maya (minus) relations
/// for every i<j<k<l; empty residuals <=> the relations hold.
std::vector<NCPoly> maya_residuals(const Algebra& alg, const GenMatrix& B,
                                   const RatFunc& q, MayaSign sign);

// -- numeric evaluation --------------------------------------------------------

/// Value of p under generator -> rational substitution; requires the fully
/// commutative specialization r = s = 1.
RatFunc evaluate_numeric(const Algebra& alg, const NCPoly& p,
                         const std::vector<std::vector<RatFunc>>& values);

// -- identity verification -----------------------------------------------------

struct VerifyOptions {
    std::string numeric_r = "1";
    std::string numeric_s = "1";
    bool allow_large = false;     // lifts the n<=4 / 2n<=6 caps
    bool corrupt_engine = false;  // test hook, see AlgebraSpec::corrupt_rewrite
};

/// The closed identity enumeration, in suite order.
const std::vector<std::string>& identity_names();
bool identity_uses_even_size(const std::string& name);
bool identity_supports_regime(const std::string& name, Regime regime);

/// Computes both sides of the named identity at the given size and regime and
/// returns the Report (holds <=> zero residual). Throws std::invalid_argument
/// on unknown names, unsupported sizes, or invalid regime combinations.
Report verify_identity(const std::string& name, int size, Regime regime,
                       const VerifyOptions& opt = {});

/// Builds the engine for a regime; shared by verify_identity, the suite and
/// the CLI.
Algebra make_algebra(int size, Regime regime, const VerifyOptions& opt = {});

} // namespace qrs
