#ifndef GRADAL_TATE_HPP
#define GRADAL_TATE_HPP

// Desk-scale Tate algebras k{T/r}: precision-tracked series, Gauss norms,
// strong division through the graded reduction, perturbation of strongly
// generating families, the reduction functor, distinguished-presentation
// tests, scalar extension to Gauss fields, and orthogonal Schauder bases.

#include "annuloid.hpp"

namespace gradal {

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// membership in the divisible hull: Gamma is taken divisible throughout, so
// radii and relator norms are checked against Gamma^Q
inline bool value_in_group(const RealValue& v, const std::vector<RealValue>& gens) {
    return order_modulo(v, gens).finite;
}

// --- the base field of a Tate algebra -------------------------------------------

struct TateBase {
    ValuedField k;
    std::vector<RealValue> gamma;  // generators of the parameter group

    TateBase(ValuedField kk, std::vector<RealValue> g) : k(std::move(kk)), gamma(std::move(g)) {
        // standing hypothesis: Gamma * |k^x| != {1}
        bool nontrivial = false;
        for (auto& x : gamma)
            if (!x.is_one()) nontrivial = true;
        if (k.kind() != ValuedField::Kind::Trivial) nontrivial = true;
        if (!nontrivial) throw std::domain_error("TateBase: Gamma trivial over a trivially valued field");
    }

    // generators of |k^x| as real values
    std::vector<RealValue> value_group_gens() const {
        switch (k.kind()) {
            case ValuedField::Kind::Trivial: return {};
            case ValuedField::Kind::PAdicQ:
            case ValuedField::Kind::TAdic: return {k.uniformizer_abs()};
            default: throw std::domain_error("TateBase: unsupported valued field");
        }
    }
    // Gamma * |k^x| generators
    std::vector<RealValue> norm_group_gens() const {
        auto out = gamma;
        for (auto& v : value_group_gens()) out.push_back(v);
        return out;
    }
};

struct TateRing;
using TateRingPtr = std::shared_ptr<const TateRing>;

struct TateRing : std::enable_shared_from_this<TateRing> {
    TateBase base;
    std::vector<std::string> vars;
    std::vector<RealValue> radii;

    TateRing(TateBase b, std::vector<std::string> v, std::vector<RealValue> r)
        : base(std::move(b)), vars(std::move(v)), radii(std::move(r)) {}

    static TateRingPtr make(TateBase b, std::vector<std::string> v, std::vector<RealValue> r) {
        if (v.size() != r.size()) throw std::invalid_argument("TateRing: one radius per variable");
        return std::make_shared<TateRing>(std::move(b), std::move(v), std::move(r));
    }
    size_t nvars() const { return vars.size(); }
};

// --- series ------------------------------------------------------------------------

class TateSeries {
public:
    TateSeries() = default;
    explicit TateSeries(TateRingPtr R) : R_(std::move(R)) {}

    static TateSeries zero(const TateRingPtr& R) { return TateSeries(R); }
    static TateSeries one(const TateRingPtr& R) {
        TateSeries f(R);
        f.add_term(mono::one(R->nvars()), FElem::one(R->base.k.field()));
        return f;
    }
    static TateSeries variable(const TateRingPtr& R, size_t i) {
        TateSeries f(R);
        Expv m = mono::one(R->nvars());
        m[i] = 1;
        f.add_term(m, FElem::one(R->base.k.field()));
        return f;
    }
    static TateSeries constant(const TateRingPtr& R, const FElem& c) {
        TateSeries f(R);
        f.add_term(mono::one(R->nvars()), c);
        return f;
    }

    const TateRingPtr& ring() const { return R_; }
    const std::map<Expv, FElem>& terms() const { return terms_; }
    bool is_exact() const { return exact_; }
    const RealValue& eps() const { return eps_; }  // meaningful when !exact_

    void set_precision(RealValue eps) {
        exact_ = false;
        eps_ = std::move(eps);
        truncate();
    }

    bool is_exactly_zero() const { return terms_.empty() && exact_; }

    RealValue term_norm(const Expv& m, const FElem& c) const {
        RealValue v = R_->base.k.abs(c);
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i]) v = v * R_->radii[i].pow(Rat(m[i]));
        return v;
    }

    // Gauss norm: max over represented terms; raises when the answer is not
    // determined at the current precision
    RealValue gauss_norm() const {
        if (terms_.empty()) {
            if (exact_) return RealValue::zero();
            throw PrecisionError("gauss_norm: series vanishes below the precision floor");
        }
        RealValue best = RealValue::zero();
        for (auto& [m, c] : terms_) best = max(best, term_norm(m, c));
        return best;
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

    TateSeries operator+(const TateSeries& o) const {
        check(o);
        TateSeries r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        r.join_precision(o.eps_, o.exact_);
        return r;
    }
    TateSeries operator-() const {
        TateSeries r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    TateSeries operator-(const TateSeries& o) const { return *this + (-o); }
    TateSeries operator*(const TateSeries& o) const {
        check(o);
        TateSeries r(R_);
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_) r.add_term(mono::mul(m1, m2), c1 * c2);
        // precision floors scale by the partner's norm
        if (!exact_) {
            RealValue onorm = o.terms_.empty() ? RealValue::zero() : o.gauss_norm();
            if (!onorm.is_zero()) r.join_precision(eps_ * onorm, false);
        }
        if (!o.exact_) {
            RealValue n = terms_.empty() ? RealValue::zero() : gauss_norm();
            if (!n.is_zero()) r.join_precision(o.eps_ * n, false);
        }
        return r;
    }
    TateSeries operator*(const FElem& c) const {
        TateSeries r(R_);
        if (c.is_zero()) return r;
        for (auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
        r.exact_ = exact_;
        if (!exact_) r.eps_ = eps_ * R_->base.k.abs(c);
        return r;
    }

    bool same_terms(const TateSeries& o) const { return terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return exact_ ? "0" : "O(<" + eps_.str() + ")";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << it->second.str();
            for (size_t i = 0; i < it->first.size(); ++i) {
                if (!it->first[i]) continue;
                os << "*" << R_->vars[i];
                if (it->first[i] != 1) os << "^" << it->first[i];
            }
        }
        if (!exact_) os << " + O(<" << eps_.str() << ")";
        return os.str();
    }

private:
    void check(const TateSeries& o) const {
        if (R_ != o.R_) throw std::invalid_argument("TateSeries: mixed rings");
    }
    void join_precision(const RealValue& eps, bool other_exact) {
        if (other_exact) return;
        if (exact_ || eps_ < eps) {
            exact_ = false;
            eps_ = eps;
        }
        truncate();
    }
    void truncate() {
        if (exact_) return;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (term_norm(it->first, it->second) < eps_)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    TateRingPtr R_;
    std::map<Expv, FElem> terms_;
    bool exact_ = true;
    RealValue eps_ = RealValue::zero();
};

// --- reduction functor ----------------------------------------------------------------

// residue corpoid of the base, graded in the d-slot by |k^x|
inline CorpoidPtr tate_residue_corpoid(const TateBase& base) {
    switch (base.k.kind()) {
        case ValuedField::Kind::Trivial: return Corpoid::trivial(base.k.field());
        case ValuedField::Kind::PAdicQ: {
            BiDegree g;
            g.d = base.k.uniformizer_abs();
            return Corpoid::make(base.k.residue_field(1), {g}, {"p~"});
        }
        case ValuedField::Kind::TAdic: {
            BiDegree g;
            g.d = base.k.uniformizer_abs();
            return Corpoid::make(base.k.residue_field(1), {g}, {"t~"});
        }
        default: throw std::domain_error("tate_residue_corpoid: unsupported base");
    }
}

// k~[r\T], the reduction of the free algebra
inline GradedRingPtr reduction_ring(const TateRingPtr& R) {
    auto C = tate_residue_corpoid(R->base);
    std::vector<GradedVar> vars;
    for (size_t i = 0; i < R->nvars(); ++i) vars.push_back({R->vars[i] + "~", BiDegree::of(R->radii[i])});
    return GradedRing::make(C, vars);
}

// tilde of a coefficient: residue class and uniformizer exponent
inline CorpoidElem coefficient_tilde(const CorpoidPtr& Ct, const ValuedField& k, const FElem& c) {
    switch (k.kind()) {
        case ValuedField::Kind::Trivial: return CorpoidElem::from_coeff(Ct, c);
        case ValuedField::Kind::PAdicQ: {
            long e = ValuedField::vp(c.q_value(), k.prime());
            Rat unit = c.q_value() / rat_pow(Rat(k.prime()), e);
            auto Fp = Ct->f1();
            FElem red = FElem::from_int(Fp, rat_num(unit)) / FElem::from_int(Fp, rat_den(unit));
            return CorpoidElem::make(Ct, red, {Int(e)});
        }
        case ValuedField::Kind::TAdic: {
            long e = ValuedField::ord_t(c);
            return CorpoidElem::make(Ct, k.t_unit_part(c), {Int(e)});
        }
        default: throw std::domain_error("coefficient_tilde: unsupported base");
    }
}

// lift a residue-corpoid element back to the field, norm = its degree
inline FElem coefficient_lift(const CorpoidElem& x, const ValuedField& k) {
    if (x.is_zero()) return FElem::zero(k.field());
    switch (k.kind()) {
        case ValuedField::Kind::Trivial: return x.coeff();
        case ValuedField::Kind::PAdicQ: {
            // residue class in F_p -> integer representative
            Int rep = x.coeff().fp_value();
            long e = mpz_get_si(x.gexp()[0].get_mpz_t());
            return FElem::from_rat(k.field(), Rat(rep) * rat_pow(Rat(k.prime()), e));
        }
        case ValuedField::Kind::TAdic: {
            // residue in the base of the rational function layer
            FElem cst = FElem::from_fraction(k.field(), {x.coeff()}, {FElem::one(k.field()->base)});
            long e = mpz_get_si(x.gexp()[0].get_mpz_t());
            return cst * FElem::generator(k.field()).pow(Int(e));
        }
        default: throw std::domain_error("coefficient_lift: unsupported base");
    }
}

// the top-level reduction of f at its own norm gamma = ||f||
inline GradedPoly reduce_series(const GradedRingPtr& Rt, const TateSeries& f, const RealValue& gamma) {
    const auto& R = f.ring();
    GradedPoly out(Rt, BiDegree::of(gamma));
    const auto& Ct = Rt->corpoid();
    for (auto& [m, c] : f.terms()) {
        if (f.term_norm(m, c) != gamma) continue;
        CorpoidElem ct = coefficient_tilde(Ct, R->base.k, c);
        out.add_term(m, ct.coeff());
    }
    return out;
}

// lift a homogeneous reduction back to a series of the same norm
inline TateSeries lift_graded(const TateRingPtr& R, const GradedPoly& g) {
    TateSeries out(R);
    for (auto& [m, c] : g.terms()) {
        CorpoidElem ce = g.coefficient(m);
        out.add_term(m, coefficient_lift(ce, R->base.k));
    }
    return out;
}

// --- presentations -----------------------------------------------------------------

struct TatePresentation {
    TateRingPtr ring;
    std::vector<TateSeries> relators;
    std::vector<RealValue> rho;  // spectral data ||a_i||
    bool strongly_generating = false;  // set only by the verifier
    bool distinguished = false;        // set only by the verifier

    static TatePresentation make(TateRingPtr R, std::vector<TateSeries> rels) {
        TatePresentation P;
        P.ring = std::move(R);
        P.relators = std::move(rels);
        for (auto& a : P.relators) P.rho.push_back(a.gauss_norm());
        return P;
    }
};

// the graded ideal (a_1~, ..., a_m~) in k~[r\T]; requires every rho_i in Gamma
inline GradedIdeal reduce_presentation(const TatePresentation& P) {
    auto Rt = reduction_ring(P.ring);
    std::vector<GradedPoly> gens;
    for (size_t i = 0; i < P.relators.size(); ++i) {
        if (!value_in_group(P.rho[i], P.ring->base.gamma))
            throw std::domain_error("reduce_presentation: relator norm " + P.rho[i].str() +
                                    " does not lie in Gamma");
        gens.push_back(reduce_series(Rt, P.relators[i], P.rho[i]));
    }
    for (auto& r : P.ring->radii)
        if (!value_in_group(r, P.ring->base.gamma))
            throw std::domain_error("reduce_presentation: radius outside Gamma");
    return GradedIdeal::make(Rt, gens);
}

// --- strong division ------------------------------------------------------------------

struct DivisionResult {
    bool success = false;
    std::vector<TateSeries> cofactors;
    TateSeries remainder;  // zero on success (to precision)
    std::string reason;
};

// write f = sum b_i a_i with ||b_i|| rho_i <= ||f||, to precision eps; the
// loop kills the whole top level each round via graded membership
inline DivisionResult strong_division(const TateSeries& f0, const std::vector<TateSeries>& gens,
                                      const std::vector<RealValue>& rho, const RealValue& eps,
                                      size_t max_rounds = 512) {
    const TateRingPtr& R = f0.ring();
    DivisionResult out;
    out.cofactors.assign(gens.size(), TateSeries::zero(R));
    out.remainder = f0;

    auto Rt = reduction_ring(R);
    std::vector<GradedPoly> reduced;
    for (size_t i = 0; i < gens.size(); ++i) reduced.push_back(reduce_series(Rt, gens[i], rho[i]));

    // one translation context for all degrees
    GradedIdeal J = GradedIdeal::make(Rt, reduced);
    const auto& tr = J.translation();
    std::vector<MPoly> tgens;
    for (auto& g : reduced) tgens.push_back(tr.translate(g));
    for (auto& rel : tr.inverse_pair_relations()) tgens.push_back(rel);
    auto GB = groebner(tr.target(), tgens, true);

    for (size_t round = 0; round < max_rounds; ++round) {
        if (out.remainder.terms().empty()) {
            out.success = true;
            return out;
        }
        RealValue gamma = out.remainder.gauss_norm();
        if (gamma < eps) {
            out.success = true;
            return out;
        }
        GradedPoly top = reduce_series(Rt, out.remainder, gamma);
        std::vector<MPoly> cof;
        MPoly nf = GB.reduce(tr.translate(top), &cof);
        if (!nf.is_zero()) {
            out.reason = "not in ideal at this precision (top level escapes the reduced ideal at norm " +
                         gamma.str() + ")";
            return out;
        }
        for (size_t i = 0; i < gens.size(); ++i) {
            if (cof[i].is_zero()) continue;
            // homogeneous components of the cofactor: keep those matching the
            // degree gamma / rho_i; lift and subtract
            for (auto& comp : tr.homogeneous_components(cof[i])) {
                if (comp.is_zero()) continue;
                if (!(comp.total_degree() == BiDegree::of(gamma / rho[i]))) continue;
                TateSeries lift = lift_graded(R, comp);
                out.cofactors[i] = out.cofactors[i] + lift;
                out.remainder = out.remainder - lift * gens[i];
            }
        }
        // the subtraction must strictly lower the norm
        if (!out.remainder.terms().empty()) {
            RealValue after = out.remainder.gauss_norm();
            if (!(after < gamma)) {
                out.reason = "remainder stagnates above the precision floor";
                return out;
            }
        }
    }
    out.reason = "round limit reached above the precision floor";
    return out;
}

// --- perturbation ----------------------------------------------------------------------

struct PerturbResult {
    std::vector<TateSeries> family;
    RealValue contraction;  // max ||delta_i|| / rho_i < 1
};

inline PerturbResult perturb_generators(const std::vector<TateSeries>& gens, const std::vector<RealValue>& rho,
                                        const std::vector<TateSeries>& deltas) {
    if (gens.size() != deltas.size()) throw std::invalid_argument("perturb_generators: size mismatch");
    PerturbResult out;
    out.contraction = RealValue::zero();
    for (size_t i = 0; i < gens.size(); ++i) {
        RealValue dn = deltas[i].terms().empty() ? RealValue::zero() : deltas[i].gauss_norm();
        if (!dn.is_zero()) {
            RealValue ratio = dn / rho[i];
            if (!(ratio < RealValue::one()))
                throw std::domain_error("perturb_generators: ||delta|| >= ||gen|| at index " + std::to_string(i));
            out.contraction = max(out.contraction, ratio);
        }
        out.family.push_back(gens[i] + deltas[i]);
    }
    return out;
}

// --- distinguished presentations ---------------------------------------------------------

inline bool is_distinguished(TatePresentation& P) {
    auto red = reduce_presentation(P);
    bool ok = red.is_reduced();
    if (ok) P.distinguished = true;
    return ok;
}

// three-valued strong-generation verdict; route (b) applies the sufficient
// criterion of universal distinguishedness, route (a) certifies failures via
// witness divisions
inline Verdict is_strongly_generating(TatePresentation& P, const std::vector<TateSeries>& witnesses,
                                      const RealValue& eps, size_t random_checks = 8) {
    // witnesses: known members of the ideal; division must succeed with the
    // norm contract
    for (auto& w : witnesses) {
        auto dv = strong_division(w, P.relators, P.rho, eps);
        if (!dv.success) return Verdict::False;
        RealValue wn = w.gauss_norm();
        for (size_t i = 0; i < dv.cofactors.size(); ++i) {
            if (dv.cofactors[i].terms().empty()) continue;
            if (!(dv.cofactors[i].gauss_norm() * P.rho[i] <= wn)) return Verdict::False;
        }
    }
    // random combinations sum c_i a_i are members by construction
    std::mt19937 rng(0xBA5E5u);
    std::uniform_int_distribution<int> pick(-3, 3);
    const auto& R = P.ring;
    for (size_t trial = 0; trial < random_checks && !P.relators.empty(); ++trial) {
        TateSeries f = TateSeries::zero(R);
        for (auto& a : P.relators) {
            TateSeries c = TateSeries::zero(R);
            Expv m = mono::one(R->nvars());
            c.add_term(m, FElem::from_int(R->base.k.field(), Int(pick(rng))));
            if (R->nvars() > 0) {
                Expv m2 = mono::one(R->nvars());
                m2[trial % R->nvars()] = 1;
                c.add_term(m2, FElem::from_int(R->base.k.field(), Int(pick(rng))));
            }
            f = f + c * a;
        }
        if (f.terms().empty()) continue;
        auto dv = strong_division(f, P.relators, P.rho, eps);
        if (!dv.success) return Verdict::False;
        RealValue fn = f.gauss_norm();
        for (size_t i = 0; i < dv.cofactors.size(); ++i) {
            if (dv.cofactors[i].terms().empty()) continue;
            if (!(dv.cofactors[i].gauss_norm() * P.rho[i] <= fn)) return Verdict::False;
        }
    }
    // sufficient route: geometrically reduced reduction with geometrically
    // integral minimal primes
    try {
        auto red = reduce_presentation(P);
        if (red.is_geometrically_reduced() == Verdict::True) {
            bool all_integral = true;
            for (auto& p : red.minimal_primes_graded()) {
                if (p.is_geometrically_irreducible(6) != Verdict::True) {
                    all_integral = false;
                    break;
                }
            }
            if (all_integral) {
                P.strongly_generating = true;
                return Verdict::True;
            }
        }
    } catch (const std::domain_error&) {
        // reduction unavailable: stay inconclusive
    }
    return Verdict::Inconclusive;
}

// minimal Gauss norm over lifts, by normal-form descent; defined for
// distinguished presentations
inline RealValue spectral_norm_in_quotient(const TatePresentation& P, const TateSeries& a,
                                           const RealValue& eps, size_t max_rounds = 512) {
    if (!P.distinguished)
        throw std::domain_error("spectral_norm_in_quotient: presentation not verified distinguished");
    const TateRingPtr& R = P.ring;
    auto Rt = reduction_ring(R);
    std::vector<GradedPoly> reduced;
    for (size_t i = 0; i < P.relators.size(); ++i) reduced.push_back(reduce_series(Rt, P.relators[i], P.rho[i]));
    GradedIdeal J = GradedIdeal::make(Rt, reduced);
    const auto& tr = J.translation();
    std::vector<MPoly> tgens;
    for (auto& g : reduced) tgens.push_back(tr.translate(g));
    for (auto& rel : tr.inverse_pair_relations()) tgens.push_back(rel);
    auto GB = groebner(tr.target(), tgens, true);

    TateSeries lift = a;
    for (size_t round = 0; round < max_rounds; ++round) {
        if (lift.terms().empty()) return RealValue::zero();
        RealValue gamma = lift.gauss_norm();
        if (gamma < eps) return RealValue::zero();  // zero at this precision
        GradedPoly top = reduce_series(Rt, lift, gamma);
        std::vector<MPoly> cof;
        MPoly nf = GB.reduce(tr.translate(top), &cof);
        if (!nf.is_zero()) return gamma;  // the top level survives: spectral norm reached
        for (size_t i = 0; i < P.relators.size(); ++i) {
            if (cof[i].is_zero()) continue;
            for (auto& comp : tr.homogeneous_components(cof[i])) {
                if (comp.is_zero()) continue;
                if (!(comp.total_degree() == BiDegree::of(gamma / P.rho[i]))) continue;
                lift = lift - lift_graded(R, comp) * P.relators[i];
            }
        }
        if (!lift.terms().empty() && !(lift.gauss_norm() < gamma))
            throw PrecisionError("spectral_norm_in_quotient: descent stagnates");
    }
    throw PrecisionError("spectral_norm_in_quotient: precision exhausted");
}

// --- scalar extension to Gauss fields ------------------------------------------------------

// coefficients become polynomials in the new Gauss variables; the norm obeys
// the double-max formula
inline TateSeries extend_scalars_gauss(const TateSeries& f, const std::vector<std::string>& new_vars,
                                       const std::vector<RealValue>& new_radii, TateRingPtr& out_ring) {
    const TateRingPtr& R = f.ring();
    std::vector<std::string> vars = R->vars;
    std::vector<RealValue> radii = R->radii;
    for (size_t i = 0; i < new_vars.size(); ++i) {
        vars.push_back(new_vars[i]);
        radii.push_back(new_radii[i]);
    }
    out_ring = TateRing::make(R->base, vars, radii);
    TateSeries out(out_ring);
    for (auto& [m, c] : f.terms()) {
        Expv m2 = m;
        m2.resize(vars.size(), 0);
        out.add_term(m2, c);
    }
    if (!f.is_exact()) out.set_precision(f.eps());
    return out;
}

// --- Schauder bases --------------------------------------------------------------------------

struct SchauderElement {
    UPoly numerator;    // in k[T]
    UPoly denominator;  // monic, 1 for the polynomial part; T^i for i<0 uses denominator T^-i
    RealValue norm;
    std::string label;
};

// orthogonal Schauder basis elements for k(T/r)-hat up to the degree bound;
// pre-reduced to r = 1 (or the free branch emitting integer powers)
inline std::vector<SchauderElement> schauder_basis(const TateBase& base, const RealValue& r, long bound) {
    const FieldPtr& k = base.k.field();
    std::vector<SchauderElement> out;
    auto vgens = base.value_group_gens();
    auto ord = order_modulo(r, vgens);
    if (!ord.finite) {
        // k-free radius: the family (T^i), i in Z
        for (long i = 0; i <= bound; ++i) {
            SchauderElement e{UPoly::x(k).pow(static_cast<unsigned long>(i)), UPoly::one(k), r.pow(Rat(i)),
                              "T^" + std::to_string(i)};
            out.push_back(std::move(e));
            if (i > 0) {
                SchauderElement e2{UPoly::one(k), UPoly::x(k).pow(static_cast<unsigned long>(i)),
                                   r.pow(Rat(-i)), "T^-" + std::to_string(i)};
                out.push_back(std::move(e2));
            }
        }
        return out;
    }
    if (ord.n != 1)
        throw std::domain_error(
            "schauder_basis: renormalize first (radius has order " + std::to_string(ord.n) +
            " modulo |k^x|); the emitted family applies to the subfield of T^" + std::to_string(ord.n));
    // r in |k^x|: renormalize to r = 1; enumerate monic P with irreducible
    // residue over the residue field
    FieldPtr res;
    switch (base.k.kind()) {
        case ValuedField::Kind::Trivial: res = k; break;
        case ValuedField::Kind::PAdicQ:
        case ValuedField::Kind::TAdic: res = base.k.residue_field(1); break;
        default: throw std::domain_error("schauder_basis: unsupported base");
    }
    if (!res->is_finite() && res->kind != Field::Kind::Q)
        throw std::domain_error("schauder_basis: residue field not finite or Q: enumeration unsupported");
    for (long i = 0; i <= bound; ++i)
        out.push_back({UPoly::x(k).pow(static_cast<unsigned long>(i)), UPoly::one(k), RealValue::one(),
                       "T^" + std::to_string(i)});
    std::vector<UPoly> irreducibles;
    if (res->is_finite())
        irreducibles = enumerate_monic_irreducibles(res, bound);
    else {
        // over Q the stream emits the height-bounded prefix: monic integer
        // polynomials with coefficients in [-bound, bound]
        for (long d = 1; d <= bound; ++d) {
            std::vector<long> c(static_cast<size_t>(d), -bound);
            while (true) {
                std::vector<FElem> cf;
                for (long x : c) cf.push_back(FElem::from_int(res, Int(x)));
                cf.push_back(FElem::one(res));
                UPoly f(res, std::move(cf));
                if (is_irreducible(f)) irreducibles.push_back(f);
                size_t i = 0;
                while (i < c.size() && ++c[i] > bound) c[i++] = -bound;
                if (i == c.size()) break;
            }
        }
    }
    for (auto& Pres : irreducibles) {
        // lift coefficients to k (trivial valuation: identity; otherwise units)
        std::vector<FElem> lifted;
        for (auto& c : Pres.c) {
            switch (base.k.kind()) {
                case ValuedField::Kind::Trivial: lifted.push_back(c); break;
                case ValuedField::Kind::PAdicQ: lifted.push_back(FElem::from_rat(k, Rat(c.fp_value()))); break;
                case ValuedField::Kind::TAdic:
                    lifted.push_back(FElem::from_fraction(k, {c}, {FElem::one(k->base)}));
                    break;
                default: throw std::domain_error("schauder_basis: unsupported base");
            }
        }
        UPoly P(k, lifted);
        long dP = P.degree();
        for (long m = 1; m * dP <= bound; ++m) {
            UPoly Pm = P.pow(static_cast<unsigned long>(m));
            for (long d = 0; d < dP; ++d) {
                out.push_back({UPoly::x(k).pow(static_cast<unsigned long>(d)), Pm, RealValue::one(),
                               "T^" + std::to_string(d) + "/(" + P.str("T") + ")^" + std::to_string(m)});
            }
        }
    }
    return out;
}

// --- Newton polygon utilities ------------------------------------------------------------------

// multiset of root norms of a polynomial over a rank-1 valued field, from the
// Newton polygon; includes zero roots (norm 0)
inline std::vector<std::pair<RealValue, long>> newton_root_norms(const std::vector<RealValue>& coeff_abs) {
    // coeff_abs[i] = |a_i|, i = 0..n; assumes |a_n| != 0
    long n = static_cast<long>(coeff_abs.size()) - 1;
    if (n < 1) return {};
    std::vector<std::pair<RealValue, long>> out;
    long i0 = 0;
    while (coeff_abs[static_cast<size_t>(i0)].is_zero()) ++i0;
    if (i0 > 0) out.emplace_back(RealValue::zero(), i0);
    // lower hull on valuations = upper hull on |.|-logs; walk from i0 to n
    long i = i0;
    while (i < n) {
        // next hull vertex: maximize the slope in |.| terms: root norm for the
        // segment (i, j) is (|a_i| / |a_j|)^(1/(j-i)); pick j minimizing it
        long best = i + 1;
        RealValue bestnorm;
        bool first = true;
        for (long j = i + 1; j <= n; ++j) {
            if (coeff_abs[static_cast<size_t>(j)].is_zero()) continue;
            RealValue norm = (coeff_abs[static_cast<size_t>(i)] / coeff_abs[static_cast<size_t>(j)])
                                 .pow(Rat(1, static_cast<unsigned long>(j - i)));
            if (first || norm < bestnorm || (norm == bestnorm && j > best)) {
                // ties extend the same segment; prefer the farthest endpoint
                if (first || norm < bestnorm) {
                    bestnorm = norm;
                    best = j;
                } else
                    best = j;
                first = false;
            }
        }
        out.emplace_back(bestnorm, best - i);
        i = best;
    }
    return out;
}

inline RealValue max_root_norm(const std::vector<RealValue>& coeff_abs) {
    auto roots = newton_root_norms(coeff_abs);
    RealValue best = RealValue::zero();
    for (auto& [v, mult] : roots) best = max(best, v);
    return best;
}

}  // namespace gradal

#endif
