#ifndef GRADAL_MPOLY_HPP
#define GRADAL_MPOLY_HPP

// Sparse multivariate polynomials over a Field with block-grevlex orders.
// Later blocks are tie-breakers; putting a variable in its own leading block
// gives the elimination orders used for saturation and contraction.

#include "factor.hpp"

#include <functional>

namespace gradal {

using Expv = std::vector<int>;

struct MPolyRing;
using RingPtr = std::shared_ptr<const MPolyRing>;

struct MPolyRing : std::enable_shared_from_this<MPolyRing> {
    FieldPtr k;
    std::vector<std::string> vars;
    std::vector<size_t> blocks;  // sizes; sum == vars.size()

    static RingPtr make(FieldPtr k, std::vector<std::string> vars, std::vector<size_t> blocks = {}) {
        auto r = std::make_shared<MPolyRing>();
        r->k = std::move(k);
        if (blocks.empty()) blocks = {vars.size()};
        size_t total = 0;
        for (auto b : blocks) total += b;
        if (total != vars.size()) throw std::invalid_argument("MPolyRing: block sizes mismatch");
        r->vars = std::move(vars);
        r->blocks = std::move(blocks);
        return r;
    }
    size_t nvars() const { return vars.size(); }

    // monomial order: compare block by block, grevlex inside each block;
    // returns <0 if a < b in the order
    int mono_cmp(const Expv& a, const Expv& b) const {
        size_t off = 0;
        for (size_t bs : blocks) {
            long da = 0, db = 0;
            for (size_t i = off; i < off + bs; ++i) {
                da += a[i];
                db += b[i];
            }
            if (da != db) return da < db ? -1 : 1;
            for (size_t i = off + bs; i-- > off;) {
                if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;  // grevlex: last var larger exp => smaller
            }
            off += bs;
        }
        return 0;
    }
};

namespace mono {
inline Expv one(size_t n) { return Expv(n, 0); }
inline Expv mul(const Expv& a, const Expv& b) {
    Expv r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}
inline bool divides(const Expv& a, const Expv& b) {  // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}
inline Expv div(const Expv& b, const Expv& a) {  // b / a
    Expv r = b;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= a[i];
    return r;
}
inline Expv lcm(const Expv& a, const Expv& b) {
    Expv r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}
inline bool coprime(const Expv& a, const Expv& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}
inline long total_degree(const Expv& a) {
    long d = 0;
    for (int e : a) d += e;
    return d;
}
}  // namespace mono

class MPoly {
public:
    struct TermCmp {
        const MPolyRing* ring = nullptr;
        bool operator()(const Expv& a, const Expv& b) const { return ring->mono_cmp(a, b) > 0; }  // descending
    };
    using TermMap = std::map<Expv, FElem, TermCmp>;

    MPoly() = default;
    explicit MPoly(RingPtr r) : ring_(std::move(r)), terms_(TermCmp{ring_.get()}) {}

    static MPoly zero(const RingPtr& r) { return MPoly(r); }
    static MPoly constant(const RingPtr& r, const FElem& c) {
        MPoly p(r);
        if (!c.is_zero()) p.terms_.emplace(mono::one(r->nvars()), c);
        return p;
    }
    static MPoly one(const RingPtr& r) { return constant(r, FElem::one(r->k)); }
    static MPoly var(const RingPtr& r, size_t i, int e = 1) {
        MPoly p(r);
        Expv m = mono::one(r->nvars());
        m[i] = e;
        p.terms_.emplace(std::move(m), FElem::one(r->k));
        return p;
    }
    static MPoly term(const RingPtr& r, const Expv& m, const FElem& c) {
        MPoly p(r);
        if (!c.is_zero()) p.terms_.emplace(m, c);
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    size_t nterms() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    const Expv& lm() const { return terms_.begin()->first; }    // leading monomial
    const FElem& lc() const { return terms_.begin()->second; }  // leading coefficient

    long total_degree() const {
        long d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, mono::total_degree(m));
        return d;
    }

    void add_term(const Expv& m, const FElem& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end())
            terms_.emplace(m, c);
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MPoly operator+(const MPoly& o) const {
        MPoly r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    MPoly operator-(const MPoly& o) const { return *this + (-o); }
    MPoly operator*(const MPoly& o) const {
        MPoly r(ring_);
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_) r.add_term(mono::mul(m1, m2), c1 * c2);
        return r;
    }
    MPoly operator*(const FElem& c) const {
        MPoly r(ring_);
        if (c.is_zero()) return r;
        for (auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
        return r;
    }
    MPoly mul_term(const Expv& m, const FElem& c) const {
        MPoly r(ring_);
        if (c.is_zero()) return r;
        for (auto& [mm, cc] : terms_) r.terms_.emplace(mono::mul(mm, m), cc * c);
        return r;
    }
    MPoly monic() const {
        if (is_zero()) return *this;
        return *this * lc().inv();
    }
    MPoly pow(unsigned long e) const {
        MPoly r = one(ring_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const MPoly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        auto it = terms_.begin(), jt = o.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt)
            if (it->first != jt->first || !(it->second == jt->second)) return false;
        return true;
    }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    // substitute: images[i] is plugged in for variable i (in the target ring),
    // coefficients pass through cmap
    MPoly substitute(const RingPtr& target, const std::vector<MPoly>& images,
                     const std::function<FElem(const FElem&)>& cmap) const {
        MPoly out = MPoly::zero(target);
        for (auto& [m, c] : terms_) {
            MPoly t = MPoly::constant(target, cmap(c));
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i]) t = t * images[i].pow(static_cast<unsigned long>(m[i]));
            out = out + t;
        }
        return out;
    }

    // collect as univariate in variable i with MPoly coefficients (index = power)
    std::vector<MPoly> as_univariate_in(size_t i) const {
        std::vector<MPoly> out;
        for (auto& [m, c] : terms_) {
            size_t e = static_cast<size_t>(m[i]);
            if (out.size() <= e) out.resize(e + 1, MPoly::zero(ring_));
            Expv m2 = m;
            m2[i] = 0;
            out[e].add_term(m2, c);
        }
        return out;
    }

    bool uses_var(size_t i) const {
        for (auto& [m, c] : terms_)
            if (m[i]) return true;
        return false;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            bool printed = false;
            std::string cs = c.str();
            if (!c.is_one() || mono::total_degree(m) == 0) {
                bool paren = cs.find_first_of("+ ") != std::string::npos;
                os << (paren ? "(" + cs + ")" : cs);
                printed = true;
            }
            for (size_t i = 0; i < m.size(); ++i) {
                if (!m[i]) continue;
                if (printed) os << "*";
                os << ring_->vars[i];
                if (m[i] != 1) os << "^" << m[i];
                printed = true;
            }
        }
        return os.str();
    }

private:
    RingPtr ring_;
    TermMap terms_{TermCmp{nullptr}};
};

// move a polynomial into another ring; var_map[i] = index of old var i in the
// target (coefficient field must match)
inline MPoly remap(const MPoly& f, const RingPtr& target, const std::vector<size_t>& var_map) {
    MPoly out = MPoly::zero(target);
    for (auto& [m, c] : f.terms()) {
        Expv m2 = mono::one(target->nvars());
        for (size_t i = 0; i < m.size(); ++i) m2[var_map[i]] = m[i];
        out.add_term(m2, c);
    }
    return out;
}

// multivariate -> UPoly when only variable i occurs
inline UPoly to_upoly(const MPoly& f, size_t i) {
    std::vector<FElem> c;
    for (auto& [m, cc] : f.terms()) {
        for (size_t j = 0; j < m.size(); ++j)
            if (j != i && m[j]) throw std::domain_error("to_upoly: not univariate");
        size_t e = static_cast<size_t>(m[i]);
        if (c.size() <= e) c.resize(e + 1, FElem::zero(f.ring()->k));
        c[e] = cc;
    }
    return UPoly(f.ring()->k, std::move(c));
}

inline MPoly from_upoly(const UPoly& f, const RingPtr& r, size_t i) {
    MPoly out = MPoly::zero(r);
    for (size_t e = 0; e < f.c.size(); ++e) {
        if (f.c[e].is_zero()) continue;
        Expv m = mono::one(r->nvars());
        m[i] = static_cast<int>(e);
        out.add_term(m, f.c[e]);
    }
    return out;
}

// --- multivariate factorization via Kronecker ------------------------------

namespace detail_mfac {

// substitution x_i -> y^(D^i); injective on exponent boxes < D
inline UPoly kronecker_down(const MPoly& f, unsigned long D) {
    const auto& k = f.ring()->k;
    std::vector<FElem> c;
    for (auto& [m, cc] : f.terms()) {
        unsigned long e = 0, mul = 1;
        for (size_t i = 0; i < m.size(); ++i) {
            e += static_cast<unsigned long>(m[i]) * mul;
            mul *= D;
        }
        if (c.size() <= e) c.resize(e + 1, FElem::zero(k));
        c[e] = c[e] + cc;
    }
    return UPoly(k, std::move(c));
}

inline MPoly kronecker_up(const UPoly& g, const RingPtr& r, unsigned long D) {
    MPoly out = MPoly::zero(r);
    for (size_t e = 0; e < g.c.size(); ++e) {
        if (g.c[e].is_zero()) continue;
        Expv m = mono::one(r->nvars());
        unsigned long rest = e;
        for (size_t i = 0; i < r->nvars(); ++i) {
            m[i] = static_cast<int>(rest % D);
            rest /= D;
        }
        if (rest) throw std::domain_error("kronecker_up: exponent overflow");
        out.add_term(m, g.c[e]);
    }
    return out;
}

// exact division f / g in the polynomial ring; nullopt if not divisible
inline std::optional<MPoly> exact_divide(const MPoly& f, const MPoly& g) {
    if (g.is_zero()) return std::nullopt;
    MPoly r = f, q = MPoly::zero(f.ring());
    FElem linv = g.lc().inv();
    while (!r.is_zero()) {
        if (!mono::divides(g.lm(), r.lm())) return std::nullopt;
        Expv m = mono::div(r.lm(), g.lm());
        FElem c = r.lc() * linv;
        q.add_term(m, c);
        r = r - g.mul_term(m, c);
    }
    return q;
}

}  // namespace detail_mfac

// factor a multivariate polynomial into irreducibles over its field
// (desk-scale Kronecker; exponential in the number of univariate factors)
inline std::vector<std::pair<MPoly, unsigned>> factor_mpoly(const MPoly& f0) {
    if (f0.is_zero()) throw std::domain_error("factor_mpoly: zero");
    const RingPtr& R = f0.ring();
    std::vector<std::pair<MPoly, unsigned>> out;
    MPoly f = f0.monic();
    if (mono::total_degree(f.lm()) == 0 && f.nterms() == 1) return out;

    // one active variable: direct univariate path
    std::vector<size_t> active;
    for (size_t i = 0; i < R->nvars(); ++i)
        if (f.uses_var(i)) active.push_back(i);
    if (active.empty()) return out;
    if (active.size() == 1) {
        auto fac = factor(to_upoly(f, active[0]));
        for (auto& fu : fac.factors) out.emplace_back(from_upoly(fu.poly, R, active[0]), fu.mult);
        return out;
    }

    unsigned long D = 1;
    for (auto& [m, c] : f.terms())
        for (int e : m) D = std::max(D, static_cast<unsigned long>(e) + 1);
    // factors can carry exponents up to those of f, so box size D suffices
    UPoly down = detail_mfac::kronecker_down(f, D);
    auto ufac = factor(down);
    std::vector<UPoly> parts;
    for (auto& fu : ufac.factors)
        for (unsigned i = 0; i < fu.mult; ++i) parts.push_back(fu.poly);

    MPoly work = f;
    std::vector<int> alive(parts.size(), 1);
    for (size_t take = 1; take <= parts.size(); ++take) {
        bool progress = true;
        while (progress && work.total_degree() > 0) {
            progress = false;
            std::vector<size_t> idxs;
            for (size_t i = 0; i < parts.size(); ++i)
                if (alive[i]) idxs.push_back(i);
            if (take > idxs.size()) break;
            std::vector<size_t> comb(take);
            std::iota(comb.begin(), comb.end(), 0);
            while (true) {
                UPoly cand = UPoly::one(R->k);
                for (size_t j = 0; j < take; ++j) cand = cand * parts[idxs[comb[j]]];
                bool ok = cand.degree() >= 0;
                MPoly candm = MPoly::zero(R);
                if (ok) {
                    try {
                        candm = detail_mfac::kronecker_up(cand, R, D);
                    } catch (const std::domain_error&) {
                        ok = false;
                    }
                }
                if (ok && candm.total_degree() >= 1) {
                    auto q = detail_mfac::exact_divide(work, candm);
                    if (q) {
                        MPoly mon = candm.monic();
                        unsigned mult = 1;
                        work = *q;
                        while (true) {
                            auto q2 = detail_mfac::exact_divide(work, mon);
                            if (!q2) break;
                            work = *q2;
                            ++mult;
                        }
                        bool merged = false;
                        for (auto& [g, m] : out)
                            if (g == mon) {
                                m += mult;
                                merged = true;
                            }
                        if (!merged) out.emplace_back(mon, mult);
                        for (size_t j = 0; j < take; ++j) alive[idxs[comb[j]]] = 0;
                        progress = true;
                        break;
                    }
                }
                long pos = static_cast<long>(take) - 1;
                while (pos >= 0 && comb[static_cast<size_t>(pos)] == idxs.size() - take + static_cast<size_t>(pos)) --pos;
                if (pos < 0) break;
                ++comb[static_cast<size_t>(pos)];
                for (size_t j = static_cast<size_t>(pos) + 1; j < take; ++j) comb[j] = comb[j - 1] + 1;
            }
        }
        if (work.total_degree() == 0) break;
    }
    if (work.total_degree() > 0) out.emplace_back(work.monic(), 1);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.nterms() != b.first.nterms()) return a.first.nterms() < b.first.nterms();
        return a.first.total_degree() < b.first.total_degree();
    });
    return out;
}

}  // namespace gradal

#endif
