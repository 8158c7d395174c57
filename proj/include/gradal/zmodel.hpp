#ifndef GRADAL_ZMODEL_HPP
#define GRADAL_ZMODEL_HPP

// Strong Groebner bases over Z and the localized-integer models they enable:
// torsion/flatness tests over Z_(p) and formal-model torsion kills over
// localized integers. Reduction divides leading coefficients with balanced
// remainders; completion closes under both S- and gcd-polynomials.

#include "groebner.hpp"

namespace gradal {
namespace zb {

// polynomials over Z; the ring object only supplies the monomial order (its
// coefficient field is inert here)
struct ZPoly {
    RingPtr shape;
    std::map<Expv, Int, MPoly::TermCmp> terms;

    explicit ZPoly(RingPtr s) : shape(std::move(s)), terms(MPoly::TermCmp{shape.get()}) {}
    static ZPoly zero(const RingPtr& s) { return ZPoly(s); }
    static ZPoly constant(const RingPtr& s, const Int& c) {
        ZPoly p(s);
        if (c != 0) p.terms.emplace(mono::one(s->nvars()), c);
        return p;
    }
    static ZPoly var(const RingPtr& s, size_t i) {
        ZPoly p(s);
        Expv m = mono::one(s->nvars());
        m[i] = 1;
        p.terms.emplace(m, Int(1));
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    const Expv& lm() const { return terms.begin()->first; }
    const Int& lc() const { return terms.begin()->second; }

    void add_term(const Expv& m, const Int& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end())
            terms.emplace(m, c);
        else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    ZPoly operator+(const ZPoly& o) const {
        ZPoly r = *this;
        for (auto& [m, c] : o.terms) r.add_term(m, c);
        return r;
    }
    ZPoly operator-() const {
        ZPoly r = *this;
        for (auto& [m, c] : r.terms) c = -c;
        return r;
    }
    ZPoly operator-(const ZPoly& o) const { return *this + (-o); }
    ZPoly operator*(const ZPoly& o) const {
        ZPoly r(shape);
        for (auto& [m1, c1] : terms)
            for (auto& [m2, c2] : o.terms) r.add_term(mono::mul(m1, m2), c1 * c2);
        return r;
    }
    ZPoly mul_term(const Expv& m, const Int& c) const {
        ZPoly r(shape);
        if (c == 0) return r;
        for (auto& [mm, cc] : terms) r.terms.emplace(mono::mul(mm, m), cc * c);
        return r;
    }
    bool operator==(const ZPoly& o) const { return terms == o.terms; }

    // primitive normalization: positive leading coefficient, content 1
    ZPoly primitive() const {
        if (terms.empty()) return *this;
        Int g = 0;
        for (auto& [m, c] : terms) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        ZPoly r = *this;
        if (lc() < 0) g = -g;
        if (g != 1 && g != 0)
            for (auto& [m, c] : r.terms) c /= g;
        return r;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms) {
            if (!first) os << " + ";
            first = false;
            bool printed = false;
            if (c != 1 || mono::total_degree(m) == 0) {
                os << c.get_str();
                printed = true;
            }
            for (size_t i = 0; i < m.size(); ++i) {
                if (!m[i]) continue;
                if (printed) os << "*";
                os << shape->vars[i];
                if (m[i] != 1) os << "^" << m[i];
                printed = true;
            }
        }
        return os.str();
    }
};

// strong normal form: a term c*x^a reduces by g when lm(g) | a and the
// balanced division of c by lc(g) has a nonzero quotient
inline ZPoly strong_nf(const ZPoly& f, const std::vector<ZPoly>& G) {
    ZPoly p = f, r(f.shape);
    while (!p.is_zero()) {
        bool reduced = false;
        for (auto& g : G) {
            if (g.is_zero()) continue;
            if (!mono::divides(g.lm(), p.lm())) continue;
            Int q, rem;
            mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), p.lc().get_mpz_t(), g.lc().get_mpz_t());
            // balance the remainder
            Int d = g.lc() > 0 ? g.lc() : -g.lc();
            if (rem * 2 > d) {
                rem -= d;
                q += g.lc() > 0 ? 1 : -1;
            }
            if (q == 0) continue;
            p = p - g.mul_term(mono::div(p.lm(), g.lm()), q);
            reduced = true;
            break;
        }
        if (!reduced) {
            r.add_term(p.lm(), p.lc());
            p.terms.erase(p.terms.begin());
        }
    }
    return r;
}

// a strong Groebner basis: closes under S-polynomials (lcm of leading
// coefficients) and gcd-polynomials (Bezout combination)
inline std::vector<ZPoly> zgroebner(const RingPtr& shape, std::vector<ZPoly> gens) {
    std::vector<ZPoly> G;
    for (auto& g : gens)
        if (!g.is_zero()) G.push_back(g);
    std::deque<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j) pairs.emplace_back(i, j);
    size_t safety = 0;
    while (!pairs.empty()) {
        if (++safety > 200000) throw DeskCapError("zgroebner: pair limit exceeded");
        auto [i, j] = pairs.front();
        pairs.pop_front();
        // by value: the basis vector may reallocate below
        const ZPoly f = G[i], g = G[j];
        Expv M = mono::lcm(f.lm(), g.lm());
        Int cf = f.lc(), cg = g.lc();
        Int d, u, v;
        mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
        Int l = cf / d * cg;  // lcm
        // S-polynomial
        ZPoly s = f.mul_term(mono::div(M, f.lm()), l / cf) - g.mul_term(mono::div(M, g.lm()), l / cg);
        ZPoly sr = strong_nf(s, G);
        if (!sr.is_zero()) {
            size_t n = G.size();
            G.push_back(sr);
            for (size_t t = 0; t < n; ++t) pairs.emplace_back(t, n);
        }
        // gcd-polynomial (only useful when neither lc divides the other)
        if (cf % cg != 0 && cg % cf != 0) {
            ZPoly h = f.mul_term(mono::div(M, f.lm()), u) + g.mul_term(mono::div(M, g.lm()), v);
            ZPoly hr = strong_nf(h, G);
            if (!hr.is_zero()) {
                size_t n = G.size();
                G.push_back(hr);
                for (size_t t = 0; t < n; ++t) pairs.emplace_back(t, n);
            }
        }
    }
    // inter-reduce (keep it simple: drop elements reducing to zero)
    std::vector<ZPoly> out;
    for (size_t i = 0; i < G.size(); ++i) {
        std::vector<ZPoly> others;
        for (size_t j = 0; j < G.size(); ++j)
            if (j != i) others.push_back(G[j]);
        ZPoly r = strong_nf(G[i], others);
        if (!r.is_zero()) out.push_back(G[i]);
    }
    std::sort(out.begin(), out.end(), [&](const ZPoly& a, const ZPoly& b) {
        int c = shape->mono_cmp(a.lm(), b.lm());
        if (c) return c < 0;
        return cmp(a.lc(), b.lc()) < 0;
    });
    return out;
}

inline bool zmember(const ZPoly& f, const std::vector<ZPoly>& GB) { return strong_nf(f, GB).is_zero(); }

// exact division over Z[x]; nullopt if g does not divide f
inline std::optional<ZPoly> zexact_divide(const ZPoly& f, const ZPoly& g) {
    if (g.is_zero()) return std::nullopt;
    ZPoly r = f, q(f.shape);
    while (!r.is_zero()) {
        if (!mono::divides(g.lm(), r.lm())) return std::nullopt;
        if (r.lc() % g.lc() != 0) return std::nullopt;
        Int c = r.lc() / g.lc();
        Expv m = mono::div(r.lm(), g.lm());
        q.add_term(m, c);
        r = r - g.mul_term(m, c);
    }
    return q;
}

// move a polynomial into a shape with a fresh leading variable (for the
// intersection tag)
inline ZPoly lift_shape(const ZPoly& f, const RingPtr& big, size_t offset) {
    ZPoly out(big);
    for (auto& [m, c] : f.terms) {
        Expv m2 = mono::one(big->nvars());
        for (size_t i = 0; i < m.size(); ++i) m2[i + offset] = m[i];
        out.terms.emplace(m2, c);
    }
    return out;
}

inline ZPoly drop_shape(const ZPoly& f, const RingPtr& small, size_t offset) {
    ZPoly out(small);
    for (auto& [m, c] : f.terms) {
        Expv m2(m.begin() + static_cast<long>(offset), m.end());
        out.terms.emplace(m2, c);
    }
    return out;
}

// I cap J via the tag trick (valid over any commutative ring)
inline std::vector<ZPoly> zintersect(const RingPtr& shape, const std::vector<ZPoly>& I,
                                     const std::vector<ZPoly>& J) {
    auto big = prepend_block(shape, {"@w"});
    ZPoly w = ZPoly::var(big, 0);
    ZPoly onew = ZPoly::constant(big, 1) - w;
    std::vector<ZPoly> K;
    for (auto& g : I) K.push_back(w * lift_shape(g, big, 1));
    for (auto& g : J) K.push_back(onew * lift_shape(g, big, 1));
    auto GB = zgroebner(big, K);
    std::vector<ZPoly> out;
    for (auto& g : GB) {
        bool uses_tag = false;
        for (auto& [m, c] : g.terms)
            if (m[0]) uses_tag = true;
        if (!uses_tag) out.push_back(drop_shape(g, shape, 1));
    }
    return out;
}

// I : h for a single polynomial h
inline std::vector<ZPoly> zquotient(const RingPtr& shape, const std::vector<ZPoly>& I, const ZPoly& h) {
    auto inter = zintersect(shape, I, {h});
    std::vector<ZPoly> out;
    for (auto& g : inter) {
        auto q = zexact_divide(g, h);
        if (!q) throw std::logic_error("zquotient: division failed");
        out.push_back(*q);
    }
    return out;
}

inline bool zideal_contains_all(const std::vector<ZPoly>& GB, const std::vector<ZPoly>& gens) {
    for (auto& g : gens)
        if (!zmember(g, GB)) return false;
    return true;
}

// the constant ideal I cap Z, as a nonnegative generator (0 when empty)
inline Int zconstant_content(const RingPtr& shape, const std::vector<ZPoly>& GB) {
    Int g = 0;
    for (auto& f : GB) {
        if (mono::total_degree(f.lm()) != 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f.lc().get_mpz_t());
    }
    (void)shape;
    return g;
}

}  // namespace zb

// --- localized-integer models ------------------------------------------------------

// X = Z_(p)[x..]/(gens): the polynomial model of a finitely presented
// algebra over the p-adic valuation annuloid of Q
struct ZpAlgebra {
    Int p;
    RingPtr shape;  // ordering metadata; variable names
    std::vector<zb::ZPoly> gens;

    static ZpAlgebra make(const Int& p, const std::vector<std::string>& vars) {
        ZpAlgebra X;
        X.p = p;
        X.shape = MPolyRing::make(Field::rationals(), vars);
        return X;
    }
    zb::ZPoly x(size_t i) const { return zb::ZPoly::var(shape, i); }
    zb::ZPoly constant(const Int& c) const { return zb::ZPoly::constant(shape, c); }
    void add_gen(zb::ZPoly g) { gens.push_back(std::move(g)); }
};

namespace detail_zp {

// does g lie in the localization I * Z_(p)[x] (equivalently, does (I : g)
// meet Z \ pZ)?
inline bool in_localized(const ZpAlgebra& X, const std::vector<zb::ZPoly>& I, const zb::ZPoly& g) {
    auto GB = zb::zgroebner(X.shape, I);
    if (zb::zmember(g, GB)) return true;
    auto quot = zb::zquotient(X.shape, I, g);
    auto QGB = zb::zgroebner(X.shape, quot);
    Int n0 = zb::zconstant_content(X.shape, QGB);
    if (n0 == 0) return false;
    return n0 % X.p != 0;
}

}  // namespace detail_zp

// torsion-freeness = flatness over Z_(p)
inline bool is_flat_zmodel(const ZpAlgebra& X) {
    auto quot = zb::zquotient(X.shape, X.gens, X.constant(X.p));
    for (auto& g : quot)
        if (!detail_zp::in_localized(X, X.gens, g)) return false;
    return true;
}

// saturation (I : p^inf) by iterating the constant quotient
inline std::vector<zb::ZPoly> zp_saturate(const ZpAlgebra& X) {
    std::vector<zb::ZPoly> cur = X.gens;
    for (int round = 0; round < 64; ++round) {
        auto quot = zb::zquotient(X.shape, cur, X.constant(X.p));
        auto GB = zb::zgroebner(X.shape, cur);
        if (zb::zideal_contains_all(GB, quot)) return cur;
        cur.insert(cur.end(), quot.begin(), quot.end());
    }
    throw DeskCapError("zp_saturate: saturation did not stabilize");
}

// the localized-integer analogue of the formal-model torsion kill: returns
// generators of ((gens) : p^inf) that are not already in (gens)
inline std::vector<zb::ZPoly> zp_torsion_kill(const ZpAlgebra& X) {
    auto sat = zp_saturate(X);
    auto satGB = zb::zgroebner(X.shape, sat);
    auto GB = zb::zgroebner(X.shape, X.gens);
    std::vector<zb::ZPoly> out;
    for (auto& g : satGB)
        if (!zb::zmember(g, GB)) out.push_back(g.primitive());
    return out;
}

}  // namespace gradal

#endif
