#ifndef GRADAL_VALUATION_HPP
#define GRADAL_VALUATION_HPP

// Graded valuations at desk scale. The F1 valuation is trivial, p-adic on Q,
// t-adic on a rational function layer, or a rank-2 composite of two
// function-field layers (t then u); the graded part assigns exact positive
// reals to the degree sections. Height chains, residue corpoids, Gauss
// extensions, torsion/flatness over the valuation annuloid, and the
// fiber-splitting cover of flat reduced-fiber algebras live here.

#include "fiber.hpp"

namespace gradal {

class ValuedField {
public:
    enum class Kind { Trivial, PAdicQ, TAdic, TThenU };

    static ValuedField trivial(FieldPtr k) {
        ValuedField v;
        v.kind_ = Kind::Trivial;
        v.k_ = std::move(k);
        return v;
    }
    static ValuedField padic(const Int& p, RealValue pabs) {
        if (!(RealValue::zero() < pabs && pabs < RealValue::one()))
            throw std::domain_error("padic: |p| must lie in (0,1)");
        ValuedField v;
        v.kind_ = Kind::PAdicQ;
        v.k_ = Field::rationals();
        v.p_ = p;
        v.pi_abs_ = std::move(pabs);
        v.res1_ = Field::prime_field(p);
        return v;
    }
    // k = F(t), t-adically valued with |t| = tabs in (0,1)
    static ValuedField tadic(FieldPtr ratfunc, RealValue tabs) {
        if (ratfunc->kind != Field::Kind::RatFunc) throw std::domain_error("tadic: need a rational function field");
        if (!(RealValue::zero() < tabs && tabs < RealValue::one()))
            throw std::domain_error("tadic: |t| must lie in (0,1)");
        ValuedField v;
        v.kind_ = Kind::TAdic;
        v.k_ = std::move(ratfunc);
        v.pi_abs_ = std::move(tabs);
        return v;
    }
    // k = F(u)(t), rank-2 lex: first ord_t, then ord_u of the t-residue
    static ValuedField t_then_u(FieldPtr two_layer) {
        ValuedField v;
        v.kind_ = Kind::TThenU;
        v.k_ = std::move(two_layer);
        if (v.k_->kind != Field::Kind::RatFunc || v.k_->base->kind != Field::Kind::RatFunc)
            throw std::domain_error("t_then_u: need F(u)(t)");
        return v;
    }

    Kind kind() const { return kind_; }
    const FieldPtr& field() const { return k_; }
    size_t height() const {
        switch (kind_) {
            case Kind::Trivial: return 0;
            case Kind::PAdicQ:
            case Kind::TAdic: return 1;
            case Kind::TThenU: return 2;
        }
        return 0;
    }

    // rank-1 real absolute value; TThenU refuses (use lexv)
    RealValue abs(const FElem& x) const {
        if (x.is_zero()) return RealValue::zero();
        switch (kind_) {
            case Kind::Trivial: return RealValue::one();
            case Kind::PAdicQ: return pi_abs_.pow(Rat(vp(x.q_value(), p_)));
            case Kind::TAdic: return pi_abs_.pow(Rat(ord_t(x)));
            case Kind::TThenU: throw std::domain_error("abs: rank-2 valuation has no real absolute value");
        }
        return RealValue::one();
    }

    // additive lex value with height() coordinates
    LexValue lexv(const FElem& x) const {
        if (x.is_zero()) throw std::domain_error("lexv: zero element");
        switch (kind_) {
            case Kind::Trivial: return LexValue::zero(0);
            case Kind::PAdicQ: return LexValue{{Rat(vp(x.q_value(), p_))}};
            case Kind::TAdic: return LexValue{{Rat(ord_t(x))}};
            case Kind::TThenU: {
                long a = ord_t(x);
                FElem r = t_unit_part(x);  // in F(u)
                long b = ord_t(r);         // ord_u via the same routine one level down
                return LexValue{{Rat(a), Rat(b)}};
            }
        }
        return LexValue::zero(0);
    }

    bool in_annuloid(const FElem& x) const {
        if (x.is_zero()) return true;
        if (kind_ == Kind::TThenU) {
            auto v = lexv(x);
            return v.compare(LexValue::zero(2)) >= 0;
        }
        return abs(x) <= RealValue::one();
    }
    bool in_maximal_ideal(const FElem& x) const {
        if (x.is_zero()) return true;
        if (kind_ == Kind::TThenU) return lexv(x).compare(LexValue::zero(2)) > 0;
        return abs(x) < RealValue::one();
    }

    // residue field kappa(tau_level), level in [0, height()]
    FieldPtr residue_field(size_t level) const {
        if (level == 0) return k_;
        switch (kind_) {
            case Kind::Trivial: throw std::domain_error("residue_field: level exceeds height");
            case Kind::PAdicQ:
                if (level == 1) return res1_;
                break;
            case Kind::TAdic:
                if (level == 1) return k_->base;
                break;
            case Kind::TThenU:
                if (level == 1) return k_->base;          // F(u)
                if (level == 2) return k_->base->base;    // F
                break;
        }
        throw std::domain_error("residue_field: level exceeds height");
    }

    // reduce an annuloid element to kappa(level)
    FElem reduce_to(const FElem& x, size_t level) const {
        if (level == 0) return x;
        if (!in_annuloid(x)) throw std::domain_error("reduce_to: element outside the valuation annuloid");
        switch (kind_) {
            case Kind::PAdicQ: {
                if (level != 1) break;
                const auto& Fp = res1_;
                if (x.is_zero()) return FElem::zero(Fp);
                Rat q = x.q_value();
                if (vp(q, p_) > 0) return FElem::zero(Fp);
                FElem num = FElem::from_int(Fp, rat_num(q));
                FElem den = FElem::from_int(Fp, rat_den(q));
                return num / den;
            }
            case Kind::TAdic: {
                if (level != 1) break;
                return t_residue(x);
            }
            case Kind::TThenU: {
                FElem r1 = x.is_zero() ? FElem::zero(k_->base) : t_residue(x);  // in F(u)
                if (level == 1) return r1;
                if (level == 2) {
                    if (r1.is_zero()) return FElem::zero(k_->base->base);
                    if (ord_t(r1) > 0) return FElem::zero(k_->base->base);
                    ValuedField inner = ValuedField::tadic(k_->base, RealValue::from_rat(Rat(1, 2)));
                    return inner.t_residue(r1);
                }
                break;
            }
            case Kind::Trivial: break;
        }
        throw std::domain_error("reduce_to: unsupported level");
    }

    // chain witnesses nu_0..nu_{h-1}: nu_i invertible exactly at tau_0..tau_i
    std::vector<FElem> chain_witnesses() const {
        switch (kind_) {
            case Kind::Trivial: return {};
            case Kind::PAdicQ: return {FElem::from_int(k_, p_)};
            case Kind::TAdic: return {FElem::generator(k_)};
            case Kind::TThenU: {
                FElem t = FElem::generator(k_);
                FElem u_inner = FElem::generator(k_->base);
                FElem u = FElem::from_fraction(k_, {u_inner}, {FElem::one(k_->base)});
                return {t, u};
            }
        }
        return {};
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::Trivial: return "trivial(" + k_->describe() + ")";
            case Kind::PAdicQ: return "padic(" + p_.get_str() + ")";
            case Kind::TAdic: return "tadic(" + k_->describe() + ")";
            case Kind::TThenU: return "t-then-u(" + k_->describe() + ")";
        }
        return "?";
    }

    const Int& prime() const { return p_; }
    const RealValue& uniformizer_abs() const { return pi_abs_; }

    static long vp(const Rat& q, const Int& p) {
        if (q == 0) throw std::domain_error("vp: zero");
        Int n = rat_num(q), d = rat_den(q);
        long v = 0;
        Int tmp;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(tmp.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
            n = tmp;
            ++v;
        }
        while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(tmp.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
            d = tmp;
            --v;
        }
        return v;
    }

    static long ord_t(const FElem& x) {
        // order of vanishing at t = 0 for a RatFunc element
        const auto& [num, den] = x.frac();
        auto ord = [](const std::vector<FElem>& c) {
            for (size_t i = 0; i < c.size(); ++i)
                if (!c[i].is_zero()) return static_cast<long>(i);
            throw std::domain_error("ord_t: zero polynomial");
        };
        return ord(num) - ord(den);
    }

    FElem t_unit_part(const FElem& x) const {
        // x * t^(-ord) evaluated at t = 0, an element of the base field
        const auto& [num, den] = x.frac();
        auto lead = [](const std::vector<FElem>& c) {
            for (size_t i = 0; i < c.size(); ++i)
                if (!c[i].is_zero()) return c[i];
            throw std::domain_error("t_unit_part: zero");
        };
        return lead(num) / lead(den);
    }
    FElem t_residue(const FElem& x) const {
        if (x.is_zero()) return FElem::zero(k_->base);
        if (ord_t(x) > 0) return FElem::zero(k_->base);
        if (ord_t(x) < 0) throw std::domain_error("t_residue: pole at the center");
        return t_unit_part(x);
    }

private:
    Kind kind_ = Kind::Trivial;
    FieldPtr k_;
    FieldPtr res1_;
    Int p_ = 0;
    RealValue pi_abs_ = RealValue::one();
};

// --- graded valuation on a split corpoid (rank-1 real flavour) ----------------

class GradedValuation {
public:
    static GradedValuation make(CorpoidPtr C, ValuedField base, std::vector<RealValue> section_abs) {
        if (base.kind() == ValuedField::Kind::TThenU && !C->gens().empty())
            throw std::domain_error("GradedValuation: rank-2 base supported only for trivially graded corpoids");
        if (section_abs.size() != C->gens().size())
            throw std::invalid_argument("GradedValuation: one section value per degree generator");
        GradedValuation v;
        v.C_ = std::move(C);
        v.base_ = std::move(base);
        v.sec_ = std::move(section_abs);
        return v;
    }

    const CorpoidPtr& corpoid() const { return C_; }
    const ValuedField& base() const { return base_; }
    const std::vector<RealValue>& section_abs() const { return sec_; }

    RealValue abs(const CorpoidElem& x) const {
        if (x.is_zero()) return RealValue::zero();
        RealValue v = base_.abs(x.coeff());
        for (size_t i = 0; i < sec_.size(); ++i) {
            long e = mpz_get_si(x.gexp()[i].get_mpz_t());
            if (e) v = v * sec_[i].pow(Rat(e));
        }
        return v;
    }

    // height of the value group generated by the image
    size_t height() const {
        if (base_.kind() == ValuedField::Kind::TThenU) return 2;
        if (base_.kind() == ValuedField::Kind::Trivial) {
            for (auto& s : sec_)
                if (!s.is_one()) return 1;
            return 0;
        }
        return 1;
    }

    bool in_annuloid(const CorpoidElem& x) const {
        if (x.is_zero()) return true;
        if (base_.kind() == ValuedField::Kind::TThenU) return base_.in_annuloid(x.coeff());
        return abs(x) <= RealValue::one();
    }
    bool in_maximal_ideal(const CorpoidElem& x) const {
        if (x.is_zero()) return true;
        if (base_.kind() == ValuedField::Kind::TThenU) return base_.in_maximal_ideal(x.coeff());
        return abs(x) < RealValue::one();
    }

private:
    CorpoidPtr C_;
    ValuedField base_;
    std::vector<RealValue> sec_;
};

// the valuation annuloid F° with its membership predicates
struct ValuationAnnuloid {
    GradedValuation v;
    bool contains(const CorpoidElem& x) const { return v.in_annuloid(x); }
    bool in_maximal_ideal(const CorpoidElem& x) const { return v.in_maximal_ideal(x); }
};

// coarsening by a convex subgroup: rank-1 groups only carry the two trivial
// convex subgroups; the rank-2 composite coarsens to its t-adic first layer
inline GradedValuation compose_coarsen(const GradedValuation& v, bool whole_group) {
    if (whole_group) {
        std::vector<RealValue> ones(v.corpoid()->gens().size(), RealValue::one());
        return GradedValuation::make(v.corpoid(), ValuedField::trivial(v.corpoid()->f1()), ones);
    }
    return v;
}

inline GradedValuation compose_coarsen_rank2(const GradedValuation& v, const ConvexSubgroup& H) {
    if (v.base().kind() != ValuedField::Kind::TThenU)
        throw std::domain_error("compose_coarsen_rank2: base is not the rank-2 composite");
    if (H.trailing == 0) return v;
    if (H.trailing == 2) return compose_coarsen(v, true);
    // drop the second (u-adic) coordinate: the t-adic coarsening
    auto coarse = ValuedField::tadic(v.base().field(), RealValue::from_rat(Rat(1, 2)));
    return GradedValuation::make(v.corpoid(), coarse, {});
}

// --- residue corpoids ----------------------------------------------------------

struct ResidueCorpoid {
    CorpoidPtr corpoid;  // split over (D x |F^x|)-bidegrees
    std::function<CorpoidElem(const CorpoidElem&)> tilde;
};

inline ResidueCorpoid residue_corpoid(const GradedValuation& v) {
    const auto& C = v.corpoid();
    const auto& base = v.base();
    FieldPtr resf;
    bool has_pi = false;
    switch (base.kind()) {
        case ValuedField::Kind::Trivial: resf = C->f1(); break;
        case ValuedField::Kind::PAdicQ:
        case ValuedField::Kind::TAdic:
            resf = base.residue_field(1);
            has_pi = true;
            break;
        default: throw std::domain_error("residue_corpoid: unsupported base shape");
    }
    // generators: sections of C at bidegree (deg, |s|), plus the uniformizer
    // class at bidegree (1, |pi|)
    std::vector<BiDegree> gens;
    std::vector<std::string> names;
    for (size_t i = 0; i < C->gens().size(); ++i) {
        BiDegree b = C->gens()[i];
        b.v = b.v * v.section_abs()[i];
        gens.push_back(b);
        names.push_back(C->gen_names()[i] + "~");
    }
    if (has_pi) {
        BiDegree b;
        b.v = base.uniformizer_abs();
        gens.push_back(b);
        names.push_back(base.kind() == ValuedField::Kind::PAdicQ ? "p~" : "t~");
    }
    auto RC = Corpoid::make(resf, gens, names);
    auto vv = v;
    auto tilde = [RC, vv, has_pi](const CorpoidElem& x) -> CorpoidElem {
        const auto& base = vv.base();
        if (x.is_zero()) return CorpoidElem::zero_of(RC, x.degree());
        std::vector<Int> ge = x.gexp();
        FElem a = x.coeff();
        FElem red = FElem::zero(RC->f1());
        Int piexp = 0;
        switch (base.kind()) {
            case ValuedField::Kind::Trivial: red = a; break;
            case ValuedField::Kind::PAdicQ: {
                long k = ValuedField::vp(a.q_value(), base.prime());
                Rat unit = a.q_value() / rat_pow(Rat(base.prime()), k);
                auto Fp = RC->f1();
                red = FElem::from_int(Fp, rat_num(unit)) / FElem::from_int(Fp, rat_den(unit));
                piexp = k;
                break;
            }
            case ValuedField::Kind::TAdic: {
                long k = ValuedField::ord_t(a);
                red = base.t_unit_part(a);
                piexp = k;
                break;
            }
            default: throw std::domain_error("residue tilde: unsupported");
        }
        if (has_pi) ge.push_back(piexp);
        return CorpoidElem::make(RC, red, ge);
    };
    return ResidueCorpoid{RC, tilde};
}

// --- Gauss extensions -----------------------------------------------------------

struct GaussExtension {
    GradedRingPtr ring;             // F[r\T]
    GradedValuation base;
    std::vector<RealValue> gamma;   // |T_i|

    RealValue abs(const GradedPoly& f) const {
        RealValue best = RealValue::zero();
        for (auto& [m, c] : f.terms()) {
            RealValue term = base.abs(f.coefficient(m));
            for (size_t i = 0; i < gamma.size(); ++i)
                if (m[i]) term = term * gamma[i].pow(Rat(m[i]));
            best = max(best, term);
        }
        return best;
    }
    RealValue abs_fraction(const GradedPoly& num, const GradedPoly& den) const {
        RealValue d = abs(den);
        if (d.is_zero()) throw std::domain_error("GaussExtension: zero denominator");
        return abs(num) / d;
    }

    // residue corpoid: the reduction of the base extended by the classes of
    // the T_i at bidegree (r_i, gamma_i); implemented through the generic
    // point residue of the reduction ring
    ResidueCorpoid residue() const {
        ResidueCorpoid rc = residue_corpoid(base);
        std::vector<GradedVar> vars;
        for (size_t i = 0; i < ring->nvars(); ++i) {
            BiDegree b = ring->vars()[i].deg;
            b.v = b.v * gamma[i];
            vars.push_back({ring->vars()[i].name + "~", b});
        }
        auto redring = GradedRing::make(rc.corpoid, vars);
        auto pt = generic_point_residue(redring);
        auto base_tilde = rc.tilde;
        auto hom = pt.coeff;
        auto tilde = [base_tilde, hom](const CorpoidElem& x) { return hom.map(base_tilde(x)); };
        return ResidueCorpoid{pt.kappa, tilde};
    }
};

inline GaussExtension gauss_extend(const GradedValuation& base, const GradedRingPtr& ring,
                                   std::vector<RealValue> gamma) {
    if (gamma.size() != ring->nvars()) throw std::invalid_argument("gauss_extend: one radius per variable");
    return GaussExtension{ring, base, std::move(gamma)};
}

// --- Spv membership and integrality witnesses ------------------------------------

// |a(xi)| <= 1 for all a in E, where xi evaluates polynomials to values
inline bool spv_membership(const std::function<RealValue(const GradedPoly&)>& xi_abs,
                           const std::vector<GradedPoly>& E) {
    for (auto& a : E)
        if (!(xi_abs(a) <= RealValue::one())) return false;
    return true;
}

// does the monic polynomial with the given lower coefficients kill `a` in B?
// coefficients c[0..n-1], implied monic leading 1; everything lives in the
// ambient graded quotient B = ring/I
inline bool integrality_witness_check(const GradedIdeal& B, const GradedPoly& a,
                                      const std::vector<GradedPoly>& lower_coeffs) {
    size_t n = lower_coeffs.size();
    if (n == 0) throw std::domain_error("integrality_witness_check: degree must be positive");
    GradedPoly acc = a.pow(static_cast<unsigned long>(n));
    for (size_t i = 0; i < n; ++i) {
        GradedPoly term = lower_coeffs[i];
        if (i > 0) term = term * a.pow(static_cast<unsigned long>(i));
        acc = acc + term;
    }
    return B.contains(acc);
}

}  // namespace gradal

#endif
