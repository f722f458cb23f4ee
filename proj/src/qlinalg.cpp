#include "qrs/qlinalg.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "qrs/qexterior.hpp"

namespace qrs {

namespace {

long long ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0).count();
}

void require_square(const GenMatrix& M, const char* who) {
    if (!M.square()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

void require_even(const GenMatrix& M, const char* who) {
    require_square(M, who);
    if (M.rows() % 2 != 0)
        throw std::invalid_argument(std::string(who) + ": matrix size must be even");
}

std::vector<int> complement_of(const std::vector<int>& subset, int m) {
    std::vector<int> out;
    for (int i = 1; i <= m; ++i)
        if (std::find(subset.begin(), subset.end(), i) == subset.end()) out.push_back(i);
    return out;
}

// all strictly increasing subsets of 1..m of size t
std::vector<std::vector<int>> subsets_of_size(int m, int t) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        if (int(cur.size()) == t) { out.push_back(cur); return; }
        for (int i = from; i <= m; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

int sum_of(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

} // namespace

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

int inversions(const Permutation& sigma) {
    int inv = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        for (std::size_t j = i + 1; j < sigma.size(); ++j)
            if (sigma[i] > sigma[j]) ++inv;
    return inv;
}

std::vector<Permutation> all_permutations(int m) {
    Permutation p(m);
    std::iota(p.begin(), p.end(), 1);
    std::vector<Permutation> out;
    do out.push_back(p); while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Permutation> enumerate_pi_prime(int m) {
    std::vector<Permutation> out;
    for (auto& p : all_permutations(m)) {
        bool ok = true;
        for (int i = 0; i + 1 < m; i += 2)
            if (p[i] > p[i + 1]) { ok = false; break; }
        if (ok) out.push_back(p);
    }
    return out;
}

std::vector<Permutation> enumerate_pi(int m) {
    std::vector<Permutation> out;
    for (auto& p : enumerate_pi_prime(m)) {
        bool ok = true;
        for (int i = 2; i + 1 < m; i += 2)
            if (p[i - 2] > p[i]) { ok = false; break; }
        if (ok) out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

GenMatrix generator_matrix(const Algebra& alg) {
    GenMatrix A(alg.n(), alg.n(), alg.zero());
    for (int i = 1; i <= alg.n(); ++i)
        for (int j = 1; j <= alg.n(); ++j) A.at(i, j) = alg.generator(i, j);
    return A;
}

GenMatrix mat_transpose(const GenMatrix& A) {
    GenMatrix T(A.cols(), A.rows());
    for (int i = 1; i <= A.rows(); ++i)
        for (int j = 1; j <= A.cols(); ++j) T.at(j, i) = A.at(i, j);
    return T;
}

GenMatrix mat_mul(const Algebra& alg, const GenMatrix& A, const GenMatrix& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
    GenMatrix C(A.rows(), B.cols(), alg.zero());
    for (int i = 1; i <= A.rows(); ++i)
        for (int j = 1; j <= B.cols(); ++j) {
            NCPoly acc = alg.zero();
            for (int k = 1; k <= A.cols(); ++k)
                acc = acc + alg.mul(A.at(i, k), B.at(k, j));
            C.at(i, j) = acc;
        }
    return C;
}

GenMatrix jay(const Algebra& alg, const RatFunc& v, int size) {
    if (size % 2 != 0) throw std::invalid_argument("jay: size must be even");
    GenMatrix J(size, size, alg.zero());
    for (int b = 0; b < size / 2; ++b) {
        J.at(2 * b + 1, 2 * b + 2) = alg.one();
        J.at(2 * b + 2, 2 * b + 1) = alg.unit(-v);
    }
    return J;
}

GenMatrix minor_mx(const GenMatrix& M, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
    GenMatrix S(int(rows.size()), int(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            S.at(int(i) + 1, int(j) + 1) = M.at(rows[i], cols[j]);
    return S;
}

GenMatrix minor_deleting(const GenMatrix& M, int drop_row, int drop_col) {
    std::vector<int> rows, cols;
    for (int i = 1; i <= M.rows(); ++i)
        if (i != drop_row) rows.push_back(i);
    for (int j = 1; j <= M.cols(); ++j)
        if (j != drop_col) cols.push_back(j);
    return minor_mx(M, rows, cols);
}

// ---------------------------------------------------------------------------
// Permutation sums
// ---------------------------------------------------------------------------

NCPoly rdet(const Algebra& alg, const GenMatrix& M) {
    require_square(M, "rdet");
    const int m = M.rows();
    NCPoly sum = alg.zero();
    RatFunc base = -alg.r();
    for (const auto& sigma : all_permutations(m)) {
        NCPoly prod = alg.one();
        for (int i = 1; i <= m; ++i) prod = alg.mul(prod, M.at(i, sigma[i - 1]));
        sum = sum + prod.scaled(base.pow(inversions(sigma)));
    }
    return sum;
}

NCPoly cdet(const Algebra& alg, const GenMatrix& M) {
    require_square(M, "cdet");
    const int m = M.rows();
    NCPoly sum = alg.zero();
    RatFunc base = (-alg.s()).reciprocal();   // (-s)^{-l}
    for (const auto& sigma : all_permutations(m)) {
        NCPoly prod = alg.one();
        for (int i = 1; i <= m; ++i) prod = alg.mul(prod, M.at(sigma[i - 1], i));
        sum = sum + prod.scaled(base.pow(inversions(sigma)));
    }
    return sum;
}

NCPoly per_q(const Algebra& alg, const GenMatrix& M) {
    require_square(M, "per_q");
    if (alg.field_vars() && alg.field_vars()->size() > 1)
        throw std::invalid_argument("per_q: requires a single-parameter regime");
    const int m = M.rows();
    NCPoly sum = alg.zero();
    const RatFunc& q = alg.r();
    for (const auto& sigma : all_permutations(m)) {
        NCPoly prod = alg.one();
        for (int i = 1; i <= m; ++i) prod = alg.mul(prod, M.at(sigma[i - 1], i));
        sum = sum + prod.scaled(q.pow(inversions(sigma)));
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Laplace expansions, adjugate, tau
// ---------------------------------------------------------------------------

namespace {

void check_split(const std::vector<int>& first, int m, const char* who) {
    if (first.empty() || int(first.size()) >= m)
        throw std::invalid_argument(std::string(who) + ": split must be proper");
    for (std::size_t i = 0; i + 1 < first.size(); ++i)
        if (first[i] >= first[i + 1])
            throw std::invalid_argument(std::string(who) + ": split must be increasing");
    if (first.front() < 1 || first.back() > m)
        throw std::invalid_argument(std::string(who) + ": split out of range");
}

} // namespace

NCPoly laplace_row(const Algebra& alg, const GenMatrix& A,
                   const std::vector<int>& rows_first) {
    require_square(A, "laplace_row");
    const int m = A.rows();
    check_split(rows_first, m, "laplace_row");
    std::vector<int> rows_rest = complement_of(rows_first, m);
    const int t = int(rows_first.size());
    NCPoly sum = alg.zero();
    RatFunc base = -alg.r();
    for (const auto& cols_first : subsets_of_size(m, t)) {
        std::vector<int> cols_rest = complement_of(cols_first, m);
        RatFunc coeff = base.pow(sum_of(cols_first) - sum_of(rows_first));
        NCPoly term = alg.mul(rdet(alg, minor_mx(A, rows_first, cols_first)),
                              rdet(alg, minor_mx(A, rows_rest, cols_rest)));
        sum = sum + term.scaled(coeff);
    }
    return sum;
}

NCPoly laplace_col(const Algebra& alg, const GenMatrix& A,
                   const std::vector<int>& cols_first) {
    require_square(A, "laplace_col");
    const int m = A.rows();
    check_split(cols_first, m, "laplace_col");
    std::vector<int> cols_rest = complement_of(cols_first, m);
    const int t = int(cols_first.size());
    NCPoly sum = alg.zero();
    RatFunc base = -alg.s();
    for (const auto& rows_first : subsets_of_size(m, t)) {
        std::vector<int> rows_rest = complement_of(rows_first, m);
        RatFunc coeff = base.pow(sum_of(cols_first) - sum_of(rows_first));
        NCPoly term = alg.mul(cdet(alg, minor_mx(A, rows_first, cols_first)),
                              cdet(alg, minor_mx(A, rows_rest, cols_rest)));
        sum = sum + term.scaled(coeff);
    }
    return sum;
}

NCPoly cofactor_row(const Algebra& alg, const GenMatrix& A, int i, int k) {
    require_square(A, "cofactor_row");
    NCPoly sum = alg.zero();
    RatFunc base = -alg.r();
    for (int j = 1; j <= A.cols(); ++j) {
        NCPoly term = alg.mul(A.at(i, j), rdet(alg, minor_deleting(A, k, j)));
        sum = sum + term.scaled(base.pow(j - i));
    }
    return sum;
}

NCPoly cofactor_row_alt(const Algebra& alg, const GenMatrix& A, int i, int k) {
    require_square(A, "cofactor_row_alt");
    NCPoly sum = alg.zero();
    RatFunc base = -alg.r();
    for (int j = 1; j <= A.cols(); ++j) {
        NCPoly term = alg.mul(rdet(alg, minor_deleting(A, k, j)), A.at(i, j));
        sum = sum + term.scaled(base.pow(i - j));
    }
    return sum;
}

NCPoly cofactor_col(const Algebra& alg, const GenMatrix& A, int i, int k) {
    require_square(A, "cofactor_col");
    NCPoly sum = alg.zero();
    RatFunc base = -alg.s();
    for (int j = 1; j <= A.rows(); ++j) {
        NCPoly term = alg.mul(A.at(j, i), cdet(alg, minor_deleting(A, j, k)));
        sum = sum + term.scaled(base.pow(i - j));
    }
    return sum;
}

NCPoly cofactor_col_alt(const Algebra& alg, const GenMatrix& A, int i, int k) {
    require_square(A, "cofactor_col_alt");
    NCPoly sum = alg.zero();
    RatFunc base = -alg.s();
    for (int j = 1; j <= A.rows(); ++j) {
        NCPoly term = alg.mul(cdet(alg, minor_deleting(A, j, k)), A.at(j, i));
        sum = sum + term.scaled(base.pow(j - i));
    }
    return sum;
}

GenMatrix adjugate(const Algebra& alg, const GenMatrix& A) {
    require_square(A, "adjugate");
    const int m = A.rows();
    GenMatrix out(m, m, alg.zero());
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            NCPoly d = rdet(alg, minor_deleting(A, j, i));
            out.at(i, j) = ((i - j) % 2 == 0) ? d : -d;
        }
    return out;
}

GenMatrix tau(const GenMatrix& M, const RatFunc& v) {
    GenMatrix out = M;
    for (int i = 1; i <= M.rows(); ++i)
        for (int j = 1; j <= M.cols(); ++j)
            out.at(i, j) = M.at(i, j).scaled(v.pow(j - i));
    return out;
}

// ---------------------------------------------------------------------------
// Quadratic matrices, Pfaffians and Hafnians
// ---------------------------------------------------------------------------

GenMatrix build_B(const Algebra& alg) {
    if (alg.n() % 2 != 0) throw std::invalid_argument("build_B: algebra size must be even");
    GenMatrix A = generator_matrix(alg);
    GenMatrix J = jay(alg, alg.s().reciprocal(), alg.n());
    return mat_mul(alg, mat_mul(alg, mat_transpose(A), J), A);
}

GenMatrix build_Bprime(const Algebra& alg) {
    if (alg.n() % 2 != 0) throw std::invalid_argument("build_Bprime: algebra size must be even");
    GenMatrix A = generator_matrix(alg);
    GenMatrix J = jay(alg, alg.r(), alg.n());
    return mat_mul(alg, mat_mul(alg, A, J), mat_transpose(A));
}

NCPoly pfaffian_like(const Algebra& alg, const GenMatrix& B, const RatFunc& w) {
    require_even(B, "pfaffian");
    const int m = B.rows();
    const int half = m / 2;
    NCPoly sum = alg.zero();
    for (const auto& sigma : enumerate_pi_prime(m)) {
        NCPoly prod = alg.one();
        for (int p = 0; p < half; ++p)
            prod = alg.mul(prod, B.at(sigma[2 * p], sigma[2 * p + 1]));
        sum = sum + prod.scaled(w.pow(inversions(sigma)));
    }
    return sum.scaled(q_factorial(half, w.pow(4)).reciprocal());
}

NCPoly pf_full(const Algebra& alg, const GenMatrix& B, const RatFunc& v) {
    return pfaffian_like(alg, B, -v);
}

NCPoly hf_full(const Algebra& alg, const GenMatrix& B, const RatFunc& q) {
    return pfaffian_like(alg, B, q);
}

namespace {

NCPoly matching_sum(const Algebra& alg, const GenMatrix& B, const RatFunc& w) {
    require_even(B, "matching sum");
    const int m = B.rows();
    const int half = m / 2;
    NCPoly sum = alg.zero();
    for (const auto& sigma : enumerate_pi(m)) {
        NCPoly prod = alg.one();
        for (int p = 0; p < half; ++p)
            prod = alg.mul(prod, B.at(sigma[2 * p], sigma[2 * p + 1]));
        sum = sum + prod.scaled(w.pow(inversions(sigma)));
    }
    return sum;
}

NCPoly recursive_sum(const Algebra& alg, const GenMatrix& B, const RatFunc& w,
                     const std::vector<int>& indices) {
    if (indices.empty()) return alg.one();
    if (indices.size() == 2) return B.at(indices[0], indices[1]);
    NCPoly sum = alg.zero();
    const int first = indices[0];
    for (std::size_t j = 1; j < indices.size(); ++j) {
        std::vector<int> rest;
        for (std::size_t k = 1; k < indices.size(); ++k)
            if (k != j) rest.push_back(indices[k]);
        NCPoly term = alg.mul(B.at(first, indices[j]), recursive_sum(alg, B, w, rest));
        sum = sum + term.scaled(w.pow(long(j) - 1));
    }
    return sum;
}

} // namespace

NCPoly pf_matching(const Algebra& alg, const GenMatrix& B, const RatFunc& q) {
    return matching_sum(alg, B, -q);
}

NCPoly hf_matching(const Algebra& alg, const GenMatrix& B, const RatFunc& q) {
    return matching_sum(alg, B, q);
}

NCPoly pf_recursive(const Algebra& alg, const GenMatrix& B, const RatFunc& q) {
    require_even(B, "pf_recursive");
    std::vector<int> idx(B.rows());
    std::iota(idx.begin(), idx.end(), 1);
    return recursive_sum(alg, B, -q, idx);
}

NCPoly hf_recursive(const Algebra& alg, const GenMatrix& B, const RatFunc& q) {
    require_even(B, "hf_recursive");
    std::vector<int> idx(B.rows());
    std::iota(idx.begin(), idx.end(), 1);
    return recursive_sum(alg, B, q, idx);
}

std::vector<NCPoly> maya_residuals(const Algebra& alg, const GenMatrix& B,
                                   const RatFunc& q, MayaSign sign) {
    require_even(B, "maya_residuals");
    const int m = B.rows();
    std::vector<NCPoly> out;
    if (m < 4) return out;
    const RatFunc qi = q.reciprocal();
    const RatFunc s1 = sign == MayaSign::plus ? -q : q;
    const RatFunc s2 = q * q;
    const RatFunc t1 = sign == MayaSign::plus ? -qi : qi;
    const RatFunc t2 = qi * qi;
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            for (int k = j + 1; k <= m; ++k)
                for (int l = k + 1; l <= m; ++l) {
                    NCPoly lhs = alg.mul(B.at(i, j), B.at(k, l)) +
                                 alg.mul(B.at(i, k), B.at(j, l)).scaled(s1) +
                                 alg.mul(B.at(i, l), B.at(j, k)).scaled(s2);
                    NCPoly rhs = alg.mul(B.at(k, l), B.at(i, j)) +
                                 alg.mul(B.at(j, l), B.at(i, k)).scaled(t1) +
                                 alg.mul(B.at(j, k), B.at(i, l)).scaled(t2);
                    out.push_back(lhs - rhs);
                }
    return out;
}

// ---------------------------------------------------------------------------
// Numeric evaluation
// ---------------------------------------------------------------------------

RatFunc evaluate_numeric(const Algebra& alg, const NCPoly& p,
                         const std::vector<std::vector<RatFunc>>& values) {
    if (!alg.r().is_one() || !alg.s().is_one())
        throw std::domain_error("evaluate_numeric: requires the commutative point r = s = 1");
    RatFunc sum = RatFunc::zero(alg.field_vars());
    for (const auto& [w, c] : p.terms()) {
        RatFunc prod = c;
        for (LetterCode lc : w) {
            Letter l = decode_letter(lc);
            prod = prod * values.at(l.row - 1).at(l.col - 1);
        }
        sum += prod;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Identity verification
// ---------------------------------------------------------------------------

const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names = {
        "det_rc_eq", "det_commutation", "laplace", "cramer", "minor_rc",
        "pf_rdet", "pf_cdet", "pf_pf", "maya", "maya_neg",
        "pf_simplified", "pf_recursion", "hf_simplified", "hf_recursion",
        "hf_per", "grouplike", "phi", "manin"};
    return names;
}

bool identity_uses_even_size(const std::string& name) {
    return name == "pf_rdet" || name == "pf_cdet" || name == "pf_pf" ||
           name == "maya" || name == "maya_neg" || name == "pf_simplified" ||
           name == "pf_recursion" || name == "hf_simplified" ||
           name == "hf_recursion" || name == "hf_per";
}

bool identity_supports_regime(const std::string& name, Regime regime) {
    if (name == "hf_per" || name == "hf_simplified" || name == "hf_recursion")
        return regime != Regime::generic;   // needs the single-parameter permanent
    return true;
}

Algebra make_algebra(int size, Regime regime, const VerifyOptions& opt) {
    AlgebraSpec sp = make_spec(size, regime, opt.numeric_r, opt.numeric_s);
    sp.corrupt_rewrite = opt.corrupt_engine;
    return Algebra(sp);
}

namespace {

long long diff_terms(const NCPoly& a, const NCPoly& b) {
    return (long long)(a - b).term_count();
}

long long run_identity(const std::string& name, const Algebra& alg) {
    const int m = alg.n();
    if (name == "det_rc_eq") {
        GenMatrix A = generator_matrix(alg);
        return diff_terms(rdet(alg, A), cdet(alg, A));
    }
    if (name == "det_commutation") {
        GenMatrix A = generator_matrix(alg);
        NCPoly det = rdet(alg, A);
        RatFunc rs = alg.r() * alg.s();
        long long residual = 0;
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j) {
                NCPoly lhs = alg.mul(det, A.at(i, j));
                NCPoly rhs = alg.mul(A.at(i, j), det).scaled(rs.pow(j - i));
                residual += diff_terms(lhs, rhs);
            }
        return residual;
    }
    if (name == "laplace") {
        GenMatrix A = generator_matrix(alg);
        NCPoly det = rdet(alg, A);
        long long residual = 0;
        for (int t = 1; t < m; ++t)
            for (auto& first : subsets_of_size(m, t)) {
                residual += diff_terms(laplace_row(alg, A, first), det);
                residual += diff_terms(laplace_col(alg, A, first), det);
            }
        for (int i = 1; i <= m; ++i)
            for (int k = 1; k <= m; ++k) {
                NCPoly expect = (i == k) ? det : alg.zero();
                residual += diff_terms(cofactor_row(alg, A, i, k), expect);
                residual += diff_terms(cofactor_row_alt(alg, A, i, k), expect);
                residual += diff_terms(cofactor_col(alg, A, i, k), expect);
                residual += diff_terms(cofactor_col_alt(alg, A, i, k), expect);
            }
        return residual;
    }
    if (name == "cramer") {
        GenMatrix A = generator_matrix(alg);
        GenMatrix adj = adjugate(alg, A);
        NCPoly det = rdet(alg, A);
        GenMatrix p1 = mat_mul(alg, tau(A, alg.r()), adj);
        GenMatrix p2 = mat_mul(alg, adj, tau(A, alg.s().reciprocal()));
        GenMatrix p3 = mat_mul(alg, A, tau(adj, alg.r().reciprocal()));
        GenMatrix p4 = mat_mul(alg, tau(adj, alg.s()), A);
        long long residual = 0;
        for (const GenMatrix* P : {&p1, &p2, &p3, &p4})
            for (int i = 1; i <= m; ++i)
                for (int j = 1; j <= m; ++j) {
                    NCPoly expect = (i == j) ? det : alg.zero();
                    residual += diff_terms(P->at(i, j), expect);
                }
        return residual;
    }
    if (name == "minor_rc") {
        GenMatrix A = generator_matrix(alg);
        long long residual = 0;
        for (int t = 1; t <= m; ++t)
            for (auto& rows : subsets_of_size(m, t))
                for (auto& cols : subsets_of_size(m, t)) {
                    GenMatrix sub = minor_mx(A, rows, cols);
                    residual += diff_terms(rdet(alg, sub), cdet(alg, sub));
                }
        return residual;
    }
    if (name == "pf_rdet") {
        GenMatrix A = generator_matrix(alg);
        return diff_terms(pf_full(alg, build_B(alg), alg.r()), rdet(alg, A));
    }
    if (name == "pf_cdet") {
        GenMatrix A = generator_matrix(alg);
        return diff_terms(pf_full(alg, build_Bprime(alg), alg.s().reciprocal()),
                          cdet(alg, A));
    }
    if (name == "pf_pf") {
        return diff_terms(pf_full(alg, build_B(alg), alg.r()),
                          pf_full(alg, build_Bprime(alg), alg.s().reciprocal()));
    }
    if (name == "maya") {
        long long residual = 0;
        for (const auto& res : maya_residuals(alg, build_B(alg), alg.r(), MayaSign::plus))
            residual += (long long)res.term_count();
        return residual;
    }
    if (name == "maya_neg") {
        long long residual = 0;
        for (const auto& res :
             maya_residuals(alg, build_Bprime(alg), alg.r(), MayaSign::minus))
            residual += (long long)res.term_count();
        return residual;
    }
    if (name == "pf_simplified") {
        GenMatrix B = build_B(alg);
        return diff_terms(pf_full(alg, B, alg.r()), pf_matching(alg, B, alg.r()));
    }
    if (name == "pf_recursion") {
        GenMatrix B = build_B(alg);
        return diff_terms(pf_full(alg, B, alg.r()), pf_recursive(alg, B, alg.r()));
    }
    if (name == "hf_simplified") {
        GenMatrix Bp = build_Bprime(alg);
        return diff_terms(hf_full(alg, Bp, alg.r()), hf_matching(alg, Bp, alg.r()));
    }
    if (name == "hf_recursion") {
        GenMatrix Bp = build_Bprime(alg);
        return diff_terms(hf_full(alg, Bp, alg.r()), hf_recursive(alg, Bp, alg.r()));
    }
    if (name == "hf_per") {
        GenMatrix A = generator_matrix(alg);
        return diff_terms(hf_full(alg, build_Bprime(alg), alg.r()), per_q(alg, A));
    }
    if (name == "grouplike") {
        GenMatrix A = generator_matrix(alg);
        NCPoly det = rdet(alg, A);
        const Algebra& T = alg.tensor_algebra();
        GenMatrix L(m, m, T.zero()), R(m, m, T.zero());
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j) {
                L.at(i, j) = T.generator(i, j, Copy::left);
                R.at(i, j) = T.generator(i, j, Copy::right);
            }
        NCPoly lhs = alg.coproduct(det);
        NCPoly rhs = T.mul(rdet(T, L), rdet(T, R));
        return diff_terms(lhs, rhs);
    }
    if (name == "phi") {
        Report rep = phi_check(alg);
        return rep.residual_terms;
    }
    if (name == "manin") {
        Report rep = manin_check(alg);
        return rep.residual_terms;
    }
    throw std::invalid_argument("verify: unknown identity '" + name + "'");
}

} // namespace

Report verify_identity(const std::string& name, int size, Regime regime,
                       const VerifyOptions& opt) {
    const auto& names = identity_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw std::invalid_argument("verify: unknown identity '" + name + "'");
    if (!identity_supports_regime(name, regime))
        throw std::invalid_argument("verify: identity '" + name +
                                    "' is not defined in regime '" + regime_name(regime) + "'");
    const bool even = identity_uses_even_size(name);
    const int cap = opt.allow_large ? (even ? 14 : 15) : (even ? 6 : 4);
    if (size < 1 || size > cap || (even && size % 2 != 0))
        throw std::invalid_argument("verify: unsupported size " + std::to_string(size) +
                                    " for identity '" + name + "'");

    auto t0 = std::chrono::steady_clock::now();
    Algebra alg = make_algebra(size, regime, opt);
    Report rep;
    rep.identity = name;
    rep.size = size;
    rep.regime = regime_name(regime);
    rep.residual_terms = run_identity(name, alg);
    rep.holds = rep.residual_terms == 0;
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

} // namespace qrs
