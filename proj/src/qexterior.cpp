#include "qrs/qexterior.hpp"

#include <bit>
#include <chrono>

namespace qrs {

namespace {

long long ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0).count();
}

} // namespace

IndexMask mask_of(std::initializer_list<int> indices) {
    IndexMask m = 0;
    for (int i : indices) m |= IndexMask(1) << (i - 1);
    return m;
}

std::vector<int> mask_indices(IndexMask m) {
    std::vector<int> out;
    for (int i = 1; m; ++i, m >>= 1)
        if (m & 1) out.push_back(i);
    return out;
}

int interleave_inversions(IndexMask m1, IndexMask m2) {
    int inv = 0;
    while (m2) {
        int b = std::countr_zero(m2);
        m2 &= m2 - 1;
        inv += std::popcount(m1 >> (b + 1));
    }
    return inv;
}

// ---------------------------------------------------------------------------
// MixedPoly
// ---------------------------------------------------------------------------

void MixedPoly::add_term(const Key& k, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MixedPoly MixedPoly::operator+(const MixedPoly& o) const {
    MixedPoly out = *this;
    if (!out.spec_) out.spec_ = o.spec_;
    for (const auto& [k, c] : o.terms_) out.add_term(k, c);
    return out;
}

MixedPoly MixedPoly::operator-(const MixedPoly& o) const {
    MixedPoly out = *this;
    if (!out.spec_) out.spec_ = o.spec_;
    for (const auto& [k, c] : o.terms_) out.add_term(k, -c);
    return out;
}

MixedPoly MixedPoly::scaled(const RatFunc& c) const {
    MixedPoly out(spec_);
    if (c.is_zero()) return out;
    for (const auto& [k, v] : terms_) out.terms_.emplace(k, v * c);
    return out;
}

bool MixedPoly::operator==(const MixedPoly& o) const { return terms_ == o.terms_; }

NCPoly MixedPoly::coefficient(IndexMask xm, IndexMask ym, const Algebra& alg) const {
    NCPoly out = alg.zero();
    for (const auto& [k, c] : terms_)
        if (k.xm == xm && k.ym == ym) out.add_term(k.w, c);
    return out;
}

// ---------------------------------------------------------------------------
// MixedAlgebra
// ---------------------------------------------------------------------------

MixedAlgebra::MixedAlgebra(const Algebra& alg)
    : MixedAlgebra(alg, -alg.r(), -alg.s().reciprocal()) {}

MixedAlgebra::MixedAlgebra(const Algebra& alg, RatFunc x_swap, RatFunc y_swap)
    : alg_(alg), x_swap_(std::move(x_swap)), y_swap_(std::move(y_swap)) {
    x_pows_.push_back(RatFunc::one(alg_.field_vars()));
    y_pows_.push_back(RatFunc::one(alg_.field_vars()));
}

const RatFunc& MixedAlgebra::x_swap_pow(int k) const {
    while (int(x_pows_.size()) <= k) x_pows_.push_back(x_pows_.back() * x_swap_);
    return x_pows_[k];
}

const RatFunc& MixedAlgebra::y_swap_pow(int k) const {
    while (int(y_pows_.size()) <= k) y_pows_.push_back(y_pows_.back() * y_swap_);
    return y_pows_[k];
}

MixedPoly MixedAlgebra::one() const {
    MixedPoly p(alg_.spec_ptr());
    p.add_term(MixedPoly::Key{}, alg_.scalar_one());
    return p;
}

MixedPoly MixedAlgebra::from_nc(const NCPoly& p) const {
    NCPoly n = alg_.normalize(p);
    MixedPoly out(alg_.spec_ptr());
    for (const auto& [w, c] : n.terms()) out.add_term(MixedPoly::Key{w, 0, 0}, c);
    return out;
}

MixedPoly MixedAlgebra::x_var(int i) const {
    MixedPoly p(alg_.spec_ptr());
    p.add_term(MixedPoly::Key{Word(), mask_of({i}), 0}, alg_.scalar_one());
    return p;
}

MixedPoly MixedAlgebra::y_var(int i) const {
    MixedPoly p(alg_.spec_ptr());
    p.add_term(MixedPoly::Key{Word(), 0, mask_of({i})}, alg_.scalar_one());
    return p;
}

MixedPoly MixedAlgebra::mul(const MixedPoly& a, const MixedPoly& b) const {
    MixedPoly out(alg_.spec_ptr());
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            if (ka.xm & kb.xm) continue;
            if (ka.ym & kb.ym) continue;
            RatFunc c = ca * cb;
            int xi = interleave_inversions(ka.xm, kb.xm);
            int yi = interleave_inversions(ka.ym, kb.ym);
            if (xi) c = c * x_swap_pow(xi);
            if (yi) c = c * y_swap_pow(yi);
            MixedPoly::Key k{Word(), ka.xm | kb.xm, ka.ym | kb.ym};
            if (kb.w.empty()) {
                k.w = ka.w;
                out.add_term(k, c);
            } else if (ka.w.empty()) {
                k.w = kb.w;
                out.add_term(k, c);
            } else {
                NCPoly nf = alg_.normal_form(ka.w + kb.w);
                for (const auto& [w, cw] : nf.terms()) {
                    k.w = w;
                    out.add_term(k, c * cw);
                }
            }
        }
    }
    return out;
}

MixedPoly MixedAlgebra::wedge_power(const MixedPoly& base, int k) const {
    MixedPoly acc = one();
    for (int i = 0; i < k; ++i) acc = mul(acc, base);
    return acc;
}

// ---------------------------------------------------------------------------
// Wedges and linear forms
// ---------------------------------------------------------------------------

std::pair<RatFunc, IndexMask> x_wedge(const Algebra& alg, IndexMask m1, IndexMask m2) {
    if (m1 & m2) return {RatFunc::zero(alg.field_vars()), 0};
    RatFunc c = (-alg.r()).pow(interleave_inversions(m1, m2));
    return {c, m1 | m2};
}

std::pair<RatFunc, IndexMask> y_wedge(const Algebra& alg, IndexMask m1, IndexMask m2) {
    if (m1 & m2) return {RatFunc::zero(alg.field_vars()), 0};
    RatFunc c = (-alg.s().reciprocal()).pow(interleave_inversions(m1, m2));
    return {c, m1 | m2};
}

MixedPoly delta_form(const Algebra& alg, int i) {
    if (i < 1 || i > alg.n()) throw std::out_of_range("qexterior: delta index");
    MixedPoly p(alg.spec_ptr());
    for (int j = 1; j <= alg.n(); ++j)
        p.add_term(MixedPoly::Key{Word(1, make_letter(i, j)), mask_of({j}), 0},
                   alg.scalar_one());
    return p;
}

MixedPoly partial_form(const Algebra& alg, int i) {
    if (i < 1 || i > alg.n()) throw std::out_of_range("qexterior: partial index");
    MixedPoly p(alg.spec_ptr());
    for (int j = 1; j <= alg.n(); ++j)
        p.add_term(MixedPoly::Key{Word(1, make_letter(j, i)), 0, mask_of({j})},
                   alg.scalar_one());
    return p;
}

NCPoly det_oracle(const Algebra& alg, DetMode mode) {
    MixedAlgebra mx(alg);
    MixedPoly acc = mx.one();
    for (int i = 1; i <= alg.n(); ++i)
        acc = mx.mul(acc, mode == DetMode::row ? delta_form(alg, i) : partial_form(alg, i));
    IndexMask top = (IndexMask(1) << alg.n()) - 1;
    return mode == DetMode::row ? acc.coefficient(top, 0, alg)
                                : acc.coefficient(0, top, alg);
}

NCPoly wedge_pfaffian_oracle(const Algebra& alg, const GenMatrix& B, const RatFunc& swap) {
    const int m = B.rows();
    if (!B.square() || m % 2 != 0)
        throw std::invalid_argument("qexterior: Pfaffian oracle needs an even square matrix");
    const int half = m / 2;
    MixedAlgebra mx(alg, swap, -alg.s().reciprocal());
    MixedPoly omega(alg.spec_ptr());
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            NCPoly e = alg.normalize(B.at(i, j));
            for (const auto& [w, c] : e.terms())
                omega.add_term(MixedPoly::Key{w, mask_of({i, j}), 0}, c);
        }
    MixedPoly power = mx.wedge_power(omega, half);
    IndexMask top = (IndexMask(1) << m) - 1;
    NCPoly coeff = power.coefficient(top, 0, alg);
    RatFunc norm = q_factorial(half, swap.pow(4));
    return coeff.scaled(norm.reciprocal());
}

NCPoly pf_oracle(const Algebra& alg, const GenMatrix& B, const RatFunc& v, PfFlavor flavor) {
    RatFunc swap = flavor == PfFlavor::x ? -v : -v.reciprocal();
    return wedge_pfaffian_oracle(alg, B, swap);
}

NCPoly hf_oracle(const Algebra& alg, const GenMatrix& B, const RatFunc& q) {
    return wedge_pfaffian_oracle(alg, B, q);
}

std::map<std::vector<int>, NCPoly> minor_expansion(const Algebra& alg,
                                                   const std::vector<int>& rows) {
    std::map<std::vector<int>, NCPoly> out;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (rows[i] == rows[j]) return out;   // wedge vanishes
    MixedAlgebra mx(alg);
    MixedPoly acc = mx.one();
    for (int i : rows) acc = mx.mul(acc, delta_form(alg, i));
    for (const auto& [k, c] : acc.terms()) {
        auto cols = mask_indices(k.xm);
        auto [it, fresh] = out.try_emplace(cols, alg.zero());
        it->second.add_term(k.w, c);
    }
    return out;
}

Report phi_check(const Algebra& alg) {
    auto t0 = std::chrono::steady_clock::now();
    const int n = alg.n();
    MixedAlgebra mx(alg);
    MixedPoly phi(alg.spec_ptr());
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            phi.add_term(MixedPoly::Key{Word(1, make_letter(j, i)),
                                        mask_of({i}), mask_of({j})},
                         alg.scalar_one());
    MixedPoly power = mx.wedge_power(phi, n);
    IndexMask top = (IndexMask(1) << n) - 1;
    NCPoly extracted = power.coefficient(top, top, alg);
    RatFunc norm = q_factorial(n, alg.r() / alg.s());
    extracted = extracted.scaled(norm.reciprocal());

    NCPoly dr = det_oracle(alg, DetMode::row);
    NCPoly dc = det_oracle(alg, DetMode::column);
    NCPoly res_r = extracted - dr;
    NCPoly res_c = extracted - dc;

    Report rep;
    rep.identity = "phi";
    rep.size = n;
    rep.residual_terms = (long long)(res_r.term_count() + res_c.term_count());
    rep.holds = rep.residual_terms == 0;
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

namespace {

// residual term count of the exterior relations satisfied by the given forms
long long form_relation_residuals(const Algebra& alg, const MixedAlgebra& mx,
                                  const std::vector<MixedPoly>& forms,
                                  const RatFunc& swap) {
    long long residuals = 0;
    const int n = int(forms.size());
    for (int i = 0; i < n; ++i) {
        MixedPoly sq = mx.mul(forms[i], forms[i]);
        residuals += (long long)sq.term_count();
        for (int j = i + 1; j < n; ++j) {
            // form_j ^ form_i - swap * form_i ^ form_j must vanish
            MixedPoly res = mx.mul(forms[j], forms[i]) -
                            mx.mul(forms[i], forms[j]).scaled(swap);
            residuals += (long long)res.term_count();
        }
    }
    (void)alg;
    return residuals;
}

} // namespace

Report manin_check(const Algebra& alg) {
    auto t0 = std::chrono::steady_clock::now();
    const int n = alg.n();

    MixedAlgebra mx(alg);
    std::vector<MixedPoly> deltas, partials;
    for (int i = 1; i <= n; ++i) {
        deltas.push_back(delta_form(alg, i));
        partials.push_back(partial_form(alg, i));
    }
    long long residuals =
        form_relation_residuals(alg, mx, deltas, -alg.r()) +
        form_relation_residuals(alg, mx, partials, -alg.s().reciprocal());

    // negative control: over the free algebra the same residuals cannot all vanish
    AlgebraSpec free_spec = alg.spec();
    free_spec.relations = RelationSet::free_algebra;
    Algebra free_alg(free_spec);
    MixedAlgebra free_mx(free_alg);
    std::vector<MixedPoly> free_deltas, free_partials;
    for (int i = 1; i <= n; ++i) {
        free_deltas.push_back(delta_form(free_alg, i));
        free_partials.push_back(partial_form(free_alg, i));
    }
    long long free_residuals =
        form_relation_residuals(free_alg, free_mx, free_deltas, -free_alg.r()) +
        form_relation_residuals(free_alg, free_mx, free_partials,
                                -free_alg.s().reciprocal());

    Report rep;
    rep.identity = "manin";
    rep.size = n;
    rep.residual_terms = residuals + (free_residuals > 0 ? 0 : 1);
    rep.holds = rep.residual_terms == 0;
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

} // namespace qrs
