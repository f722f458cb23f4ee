#include "qrs/ncalg.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace qrs {

// ---------------------------------------------------------------------------
// Letters and words
// ---------------------------------------------------------------------------

LetterCode encode_letter(const Letter& l) {
    return LetterCode((int(l.copy) << 8) | (l.row << 4) | l.col);
}

Letter decode_letter(LetterCode c) {
    Letter l;
    l.copy = Copy((c >> 8) & 1);
    l.row = (c >> 4) & 0xf;
    l.col = c & 0xf;
    return l;
}

LetterCode make_letter(int row, int col, Copy copy) {
    if (row < 1 || row > 15 || col < 1 || col > 15)
        throw std::out_of_range("ncalg: generator index out of range");
    return LetterCode((int(copy) << 8) | (row << 4) | col);
}

bool word_is_normal(const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] > w[i + 1]) return false;
    return true;
}

std::string letter_name(LetterCode c, Flavor flavor) {
    Letter l = decode_letter(c);
    std::string name = flavor == Flavor::single ? "a"
                       : (l.copy == Copy::left ? "L" : "R");
    if (l.row <= 9 && l.col <= 9)
        return name + std::to_string(l.row) + std::to_string(l.col);
    return name + "[" + std::to_string(l.row) + "," + std::to_string(l.col) + "]";
}

std::vector<std::array<int, 3>> word_triples(const Word& w) {
    std::vector<std::array<int, 3>> out;
    out.reserve(w.size());
    for (LetterCode c : w) {
        Letter l = decode_letter(c);
        out.push_back({int(l.copy), l.row, l.col});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Regimes and specs
// ---------------------------------------------------------------------------

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::generic: return "generic";
        case Regime::q_inverse: return "q-inverse";
        case Regime::q_negative: return "q-negative";
        case Regime::numeric: return "numeric";
    }
    return "?";
}

Regime regime_from_name(const std::string& s) {
    if (s == "generic") return Regime::generic;
    if (s == "q-inverse") return Regime::q_inverse;
    if (s == "q-negative") return Regime::q_negative;
    if (s == "numeric") return Regime::numeric;
    throw std::invalid_argument("unknown regime '" + s + "'");
}

bool AlgebraSpec::operator==(const AlgebraSpec& o) const {
    return n == o.n && flavor == o.flavor && relations == o.relations &&
           corrupt_rewrite == o.corrupt_rewrite && r == o.r && s == o.s;
}

AlgebraSpec make_spec(int n, Regime regime, const std::string& numeric_r,
                      const std::string& numeric_s) {
    if (n < 1 || n > 15)
        throw std::invalid_argument("ncalg: matrix size must be in 1..15");
    AlgebraSpec sp;
    sp.n = n;
    switch (regime) {
        case Regime::generic: {
            VarsPtr v = Vars::make({"r", "s"});
            sp.r = RatFunc::variable(v, 0);
            sp.s = RatFunc::variable(v, 1);
            break;
        }
        case Regime::q_inverse: {
            VarsPtr v = Vars::make({"q"});
            sp.r = RatFunc::variable(v, 0);
            sp.s = sp.r.reciprocal();
            break;
        }
        case Regime::q_negative: {
            VarsPtr v = Vars::make({"q"});
            sp.r = RatFunc::variable(v, 0);
            sp.s = -sp.r.reciprocal();
            break;
        }
        case Regime::numeric: {
            VarsPtr v = Vars::make({});
            sp.r = parse_rational(v, numeric_r);
            sp.s = parse_rational(v, numeric_s);
            break;
        }
    }
    if (sp.r.is_zero() || sp.s.is_zero())
        throw std::invalid_argument("ncalg: parameters r, s must be nonzero");
    return sp;
}

// ---------------------------------------------------------------------------
// NCPoly
// ---------------------------------------------------------------------------

void NCPoly::check_same_spec(const NCPoly& o) const {
    if (spec_ == o.spec_) return;
    if (spec_ && o.spec_ && *spec_ == *o.spec_) return;
    if (!spec_ || !o.spec_) {
        if (is_zero() || o.is_zero()) return;   // untagged zero is compatible
    }
    throw std::invalid_argument("ncalg: mixed algebra specs");
}

RatFunc NCPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    if (it == terms_.end()) return RatFunc();
    return it->second;
}

void NCPoly::add_term(const Word& w, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
    check_same_spec(o);
    NCPoly out = *this;
    if (!out.spec_) out.spec_ = o.spec_;
    for (const auto& [w, c] : o.terms_) out.add_term(w, c);
    return out;
}

NCPoly NCPoly::operator-(const NCPoly& o) const { return *this + (-o); }

NCPoly NCPoly::operator-() const {
    NCPoly out(spec_);
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
}

NCPoly NCPoly::scaled(const RatFunc& c) const {
    NCPoly out(spec_);
    if (c.is_zero()) return out;
    for (const auto& [w, k] : terms_) out.terms_.emplace(w, k * c);
    return out;
}

bool NCPoly::operator==(const NCPoly& o) const {
    check_same_spec(o);
    return terms_ == o.terms_;
}

namespace {

bool coeff_needs_parens(const std::string& s) {
    return s.find(' ') != std::string::npos || s.find('/') != std::string::npos;
}

} // namespace

std::string NCPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        bool neg = c.num().leading().second < 0;
        RatFunc mag = neg ? -c : c;
        std::string ws;
        for (LetterCode l : w) {
            if (!ws.empty()) ws += "*";
            ws += letter_name(l, spec_ ? spec_->flavor : Flavor::single);
        }
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        if (ws.empty()) {
            os << mag.to_string();
        } else if (mag.is_one()) {
            os << ws;
        } else {
            std::string cs = mag.to_string();
            if (coeff_needs_parens(cs)) cs = "(" + cs + ")";
            os << cs << "*" << ws;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Algebra engine
// ---------------------------------------------------------------------------

Algebra::Algebra(AlgebraSpec spec, CacheLimits limits)
    : spec_(std::make_shared<const AlgebraSpec>(std::move(spec))), cache_limits_(limits) {
    if (spec_->n < 1 || spec_->n > 15)
        throw std::invalid_argument("ncalg: matrix size must be in 1..15");
    if (spec_->r.is_zero() || spec_->s.is_zero())
        throw std::invalid_argument("ncalg: parameters r, s must be nonzero");
    coeff_row_swap_ = spec_->r.reciprocal();
    coeff_col_swap_ = spec_->s;
    coeff_anti_ = spec_->r * spec_->s;
    coeff_correction_ = -(spec_->r - spec_->s);
    if (spec_->corrupt_rewrite) {
        coeff_anti_ += scalar_one();
        coeff_correction_ += scalar_one();
    }
}

NCPoly Algebra::unit(const RatFunc& c) const {
    NCPoly p(spec_);
    p.add_term(Word(), c);
    return p;
}

NCPoly Algebra::generator(int row, int col, Copy copy) const {
    if (row < 1 || row > n() || col < 1 || col > n())
        throw std::out_of_range("ncalg: generator index out of range");
    if (copy == Copy::right && spec_->flavor != Flavor::tensor_square)
        throw std::invalid_argument("ncalg: right-copy letter in single-flavor algebra");
    NCPoly p(spec_);
    p.add_term(Word(1, make_letter(row, col, copy)), scalar_one());
    return p;
}

NCPoly Algebra::monomial(const Word& w, const RatFunc& c) const {
    return normal_form(w).scaled(c);
}

// Fills the replacement two-letter words for a non-normal pair x*y.
void Algebra::rewrite_terms(Letter x, Letter y, LetterCode out[2][2],
                            RatFunc coeff[2], int& count) const {
    if (x.copy != y.copy) {
        // right-copy letter jumping over a left-copy letter: plain swap
        out[0][0] = encode_letter(y);
        out[0][1] = encode_letter(x);
        coeff[0] = scalar_one();
        count = 1;
        return;
    }
    out[0][0] = encode_letter(y);
    out[0][1] = encode_letter(x);
    count = 1;
    if (x.row == y.row) {
        coeff[0] = coeff_row_swap_;
    } else if (x.col == y.col) {
        coeff[0] = coeff_col_swap_;
    } else if (x.col < y.col) {
        coeff[0] = coeff_anti_;
    } else {
        coeff[0] = scalar_one();
        Letter il{x.copy, y.row, x.col};
        Letter jk{x.copy, x.row, y.col};
        out[1][0] = encode_letter(il);
        out[1][1] = encode_letter(jk);
        coeff[1] = coeff_correction_;
        count = 2;
    }
}

NCPoly Algebra::rewrite_pair(Letter x, Letter y) const {
    LetterCode cx = encode_letter(x), cy = encode_letter(y);
    if (spec_->relations == RelationSet::free_algebra)
        throw std::logic_error("ncalg: rewrite_pair on a free algebra");
    if (cx <= cy)
        throw std::logic_error("ncalg: rewrite_pair called on a normal pair");
    LetterCode out[2][2];
    RatFunc coeff[2];
    int count = 0;
    rewrite_terms(x, y, out, coeff, count);
    NCPoly p(spec_);
    for (int i = 0; i < count; ++i) {
        Word w;
        w.push_back(out[i][0]);
        w.push_back(out[i][1]);
        p.add_term(w, coeff[i]);
    }
    return p;
}

Algebra::NFPtr Algebra::nf_shared(const Word& w) const {
    if (spec_->relations == RelationSet::free_algebra || w.size() <= 1 ||
        word_is_normal(w)) {
        auto p = std::make_shared<NCPoly>(spec_);
        p->add_term(w, scalar_one());
        return p;
    }
    auto hit = nf_cache_.find(w);
    if (hit != nf_cache_.end()) {
        ++cache_hits_;
        return hit->second;
    }
    ++cache_misses_;

    auto out = std::make_shared<NCPoly>(spec_);
    const std::size_t L = w.size();
    Word prefix = w.substr(0, L - 1);
    LetterCode last = w[L - 1];

    if (word_is_normal(prefix)) {
        // single descent at the junction: bubble `last` leftwards
        Word stem = w.substr(0, L - 2);
        Letter x = decode_letter(w[L - 2]);
        Letter y = decode_letter(last);
        LetterCode repl[2][2];
        RatFunc coeff[2];
        int count = 0;
        rewrite_terms(x, y, repl, coeff, count);
        for (int i = 0; i < count; ++i) {
            Word left = stem;
            left.push_back(repl[i][0]);
            NFPtr p1 = nf_shared(left);
            for (const auto& [v, cv] : p1->terms()) {
                Word vq = v;
                vq.push_back(repl[i][1]);
                NFPtr p2 = nf_shared(vq);
                RatFunc c = coeff[i] * cv;
                for (const auto& [t, ct] : p2->terms()) out->add_term(t, c * ct);
            }
        }
    } else {
        NFPtr p1 = nf_shared(prefix);
        for (const auto& [v, cv] : p1->terms()) {
            Word vq = v;
            vq.push_back(last);
            NFPtr p2 = nf_shared(vq);
            for (const auto& [t, ct] : p2->terms()) out->add_term(t, cv * ct);
        }
    }

    if (w.size() <= cache_limits_.max_word_length &&
        nf_cache_.size() < cache_limits_.max_entries)
        nf_cache_.emplace(w, out);
    return out;
}

NCPoly Algebra::normal_form(const Word& w) const { return *nf_shared(w); }

NCPoly Algebra::normalize(const NCPoly& p) const {
    if (p.spec() && !(*p.spec() == *spec_))
        throw std::invalid_argument("ncalg: mixed algebra specs");
    NCPoly out(spec_);
    for (const auto& [w, c] : p.terms()) {
        if (word_is_normal(w)) {
            out.add_term(w, c);
        } else {
            NFPtr nf = nf_shared(w);
            for (const auto& [t, ct] : nf->terms()) out.add_term(t, c * ct);
        }
    }
    return out;
}

NCPoly Algebra::mul(const NCPoly& a, const NCPoly& b) const {
    if ((a.spec() && !(*a.spec() == *spec_)) || (b.spec() && !(*b.spec() == *spec_)))
        throw std::invalid_argument("ncalg: mixed algebra specs");
    NCPoly out(spec_);
    for (const auto& [wa, ca] : a.terms()) {
        for (const auto& [wb, cb] : b.terms()) {
            RatFunc c = ca * cb;
            Word w = wa + wb;
            if (word_is_normal(w)) {
                out.add_term(w, c);
            } else {
                NFPtr nf = nf_shared(w);
                for (const auto& [t, ct] : nf->terms()) out.add_term(t, c * ct);
            }
        }
    }
    return out;
}

NCPoly Algebra::mul(const std::vector<NCPoly>& factors) const {
    NCPoly acc = one();
    for (const auto& f : factors) acc = mul(acc, f);
    return acc;
}

NCPoly Algebra::normalize_with_strategy(const NCPoly& p, RewriteStrategy st,
                                        std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::map<Word, RatFunc, WordLess> pending;
    NCPoly out(spec_);
    for (const auto& [w, c] : p.terms()) {
        auto [it, fresh] = pending.try_emplace(w, c);
        if (!fresh) it->second += c;
    }
    while (!pending.empty()) {
        auto it = std::prev(pending.end());   // largest word first
        Word w = it->first;
        RatFunc c = it->second;
        pending.erase(it);
        if (c.is_zero()) continue;

        std::vector<std::size_t> descents;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] > w[i + 1]) descents.push_back(i);
        if (descents.empty() || spec_->relations == RelationSet::free_algebra) {
            out.add_term(w, c);
            continue;
        }
        std::size_t pos;
        switch (st) {
            case RewriteStrategy::leftmost: pos = descents.front(); break;
            case RewriteStrategy::rightmost: pos = descents.back(); break;
            default: pos = descents[rng() % descents.size()]; break;
        }
        LetterCode repl[2][2];
        RatFunc coeff[2];
        int count = 0;
        rewrite_terms(decode_letter(w[pos]), decode_letter(w[pos + 1]), repl, coeff, count);
        for (int i = 0; i < count; ++i) {
            Word nw = w;
            nw[pos] = repl[i][0];
            nw[pos + 1] = repl[i][1];
            RatFunc nc = c * coeff[i];
            if (nc.is_zero()) continue;
            auto [jt, fresh] = pending.try_emplace(nw, nc);
            if (!fresh) {
                jt->second += nc;
                if (jt->second.is_zero()) pending.erase(jt);
            }
        }
    }
    return out;
}

const Algebra& Algebra::tensor_algebra() const {
    if (spec_->flavor != Flavor::single)
        throw std::logic_error("ncalg: tensor companion of a non-single algebra");
    if (!tensor_) {
        AlgebraSpec t = *spec_;
        t.flavor = Flavor::tensor_square;
        tensor_ = std::make_unique<Algebra>(std::move(t));
    }
    return *tensor_;
}

NCPoly Algebra::coproduct(const NCPoly& p) const {
    if (spec_->flavor != Flavor::single)
        throw std::invalid_argument("ncalg: coproduct requires the single flavor");
    if (p.spec() && !(*p.spec() == *spec_))
        throw std::invalid_argument("ncalg: mixed algebra specs");
    const Algebra& T = tensor_algebra();
    NCPoly out = T.zero();
    for (const auto& [w, c] : p.terms()) {
        NCPoly acc = T.one();
        for (LetterCode lc : w) {
            Letter l = decode_letter(lc);
            NCPoly d = T.zero();
            for (int k = 1; k <= n(); ++k) {
                Word pair;
                pair.push_back(make_letter(l.row, k, Copy::left));
                pair.push_back(make_letter(k, l.col, Copy::right));
                d.add_term(pair, T.scalar_one());
            }
            acc = T.mul(acc, d);
        }
        out = out + acc.scaled(c);
    }
    return out;
}

RatFunc Algebra::counit(const NCPoly& p) const {
    if (spec_->flavor != Flavor::single)
        throw std::invalid_argument("ncalg: counit requires the single flavor");
    if (p.spec() && !(*p.spec() == *spec_))
        throw std::invalid_argument("ncalg: mixed algebra specs");
    RatFunc sum = RatFunc::zero(field_vars());
    for (const auto& [w, c] : p.terms()) {
        bool diag = true;
        for (LetterCode lc : w) {
            Letter l = decode_letter(lc);
            if (l.row != l.col) { diag = false; break; }
        }
        if (diag) sum += c;
    }
    return sum;
}

Algebra::CacheStats Algebra::cache_stats() const {
    return CacheStats{cache_hits_, cache_misses_, nf_cache_.size()};
}

void Algebra::clear_cache() const {
    nf_cache_.clear();
    cache_hits_ = cache_misses_ = 0;
}

} // namespace qrs
