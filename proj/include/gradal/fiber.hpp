#ifndef GRADAL_FIBER_HPP
#define GRADAL_FIBER_HPP

// Fibers of presented maps between graded quotients: residue corpoids of
// generic points of free bases (rational-function twist for degrees inside
// the group, fresh degree generators for free degrees) and closed points by
// direct substitution. FiniteSpectrum packages the primes a verifier visits.

#include "graded_ideal.hpp"

namespace gradal {

// degree-preserving corpoid homomorphism
struct CorpoidHom {
    CorpoidPtr src, dst;
    std::function<FElem(const FElem&)> f1map;
    std::vector<CorpoidElem> gen_images;  // image of each section generator

    CorpoidElem map(const CorpoidElem& x) const {
        if (x.is_zero()) return CorpoidElem::zero_of(dst, x.degree());
        CorpoidElem out = CorpoidElem::from_coeff(dst, f1map(x.coeff()));
        for (size_t i = 0; i < gen_images.size(); ++i) {
            Int e = x.gexp()[i];
            if (e == 0) continue;
            out = out * gen_images[i].pow(mpz_get_si(e.get_mpz_t()));
        }
        return out;
    }
    static CorpoidHom identity(const CorpoidPtr& C) {
        CorpoidHom h;
        h.src = h.dst = C;
        h.f1map = [](const FElem& a) { return a; };
        for (size_t i = 0; i < C->gens().size(); ++i) h.gen_images.push_back(CorpoidElem::section(C, i));
        return h;
    }
};

// A presentation B = A{T/r}/(rels) with A = C[S-vars]/(base_rels); the total
// ring carries the base variables first.
struct RelativeGradedPresentation {
    GradedRingPtr total;   // C[S.., T..]
    size_t n_base = 0;     // number of S variables
    std::vector<GradedPoly> base_rels;  // polynomials in the S variables only
    std::vector<GradedPoly> rels;       // relators of B over A

    GradedRingPtr base_ring() const {
        std::vector<GradedVar> vars(total->vars().begin(), total->vars().begin() + static_cast<long>(n_base));
        return GradedRing::make(total->corpoid(), std::move(vars));
    }
    GradedRingPtr fiber_shape(const CorpoidPtr& kappa) const {
        std::vector<GradedVar> vars(total->vars().begin() + static_cast<long>(n_base), total->vars().end());
        return GradedRing::make(kappa, std::move(vars));
    }
};

// residue data of a point of the base: the corpoid kappa, the coefficient
// hom, and values of the base variables in kappa
struct BasePointResidue {
    CorpoidPtr kappa;
    CorpoidHom coeff;
    std::vector<CorpoidElem> var_values;
    std::string label;
};

namespace detail_fiber {

inline bool degree_in_group(const CorpoidPtr& C, const BiDegree& d) { return C->has_degree(d); }

inline bool degree_free_over(const CorpoidPtr& C, const BiDegree& d) {
    std::vector<BiDegree> all = C->gens();
    all.push_back(d);
    auto L = detail_lattice::BiLattice::build(all);
    QMat rows;
    for (auto& g : C->gens()) {
        QVec row;
        for (auto& x : L.coords(g)) row.push_back(Rat(x));
        rows.push_back(row);
    }
    size_t base_rank = rank_of(rows);
    QVec row;
    for (auto& x : L.coords(d)) row.push_back(Rat(x));
    rows.push_back(row);
    return rank_of(rows) == base_rank + 1;
}

}  // namespace detail_fiber

// Residue corpoid of the generic point of Spec C[S-vars] (zero base
// relations). Each variable degree must either lie in the degree group
// (fraction-field twist: F1 gains one transcendental) or be free over it
// (degree group gains one generator).
inline BasePointResidue generic_point_residue(const GradedRingPtr& base) {
    CorpoidPtr kappa = base->corpoid();
    CorpoidHom hom = CorpoidHom::identity(kappa);
    std::vector<CorpoidElem> values;
    for (auto& v : base->vars()) {
        const BiDegree& s = v.deg;
        if (auto co = kappa->coords_of(s)) {
            // S/section(s) is a fresh degree-one transcendental Theta
            auto F1p = Field::rational_functions(kappa->f1(), v.name + "~");
            auto kappa2 = Corpoid::make(F1p, kappa->gens(), kappa->gen_names());
            auto lift = [F1p](const FElem& a) {
                return FElem::from_fraction(F1p, {a}, {FElem::one(F1p->base)});
            };
            // rebase everything built so far
            CorpoidHom hom2;
            hom2.src = hom.src;
            hom2.dst = kappa2;
            auto prev_f1 = hom.f1map;
            hom2.f1map = [prev_f1, lift](const FElem& a) { return lift(prev_f1(a)); };
            for (auto& gi : hom.gen_images)
                hom2.gen_images.push_back(CorpoidElem::make(kappa2, lift(gi.coeff()), gi.gexp()));
            for (auto& val : values) val = CorpoidElem::make(kappa2, lift(val.coeff()), val.gexp());
            CorpoidElem theta = CorpoidElem::from_coeff(kappa2, FElem::generator(F1p));
            CorpoidElem sec = CorpoidElem::make(kappa2, FElem::one(F1p), *co);
            values.push_back(theta * sec);
            kappa = kappa2;
            hom = hom2;
        } else if (detail_fiber::degree_free_over(kappa, s)) {
            std::vector<BiDegree> gens = kappa->gens();
            gens.push_back(s);
            std::vector<std::string> names = kappa->gen_names();
            names.push_back(v.name + "~");
            auto kappa2 = Corpoid::make(kappa->f1(), gens, names);
            CorpoidHom hom2;
            hom2.src = hom.src;
            hom2.dst = kappa2;
            hom2.f1map = hom.f1map;
            for (auto& gi : hom.gen_images) {
                std::vector<Int> ge = gi.gexp();
                ge.push_back(0);
                hom2.gen_images.push_back(CorpoidElem::make(kappa2, gi.coeff(), ge));
            }
            for (auto& val : values) {
                std::vector<Int> ge = val.gexp();
                ge.push_back(0);
                val = CorpoidElem::make(kappa2, val.coeff(), ge);
            }
            values.push_back(CorpoidElem::section(kappa2, kappa2->gens().size() - 1));
            kappa = kappa2;
            hom = hom2;
        } else {
            throw std::domain_error(
                "generic_point_residue: variable degree has finite order > 1 modulo the degree group "
                "(unsupported at desk scale)");
        }
    }
    return BasePointResidue{kappa, hom, values, "generic"};
}

// closed point: values supplied in a corpoid sharing the degree generators
inline BasePointResidue closed_point_residue(const GradedRingPtr& base, const CorpoidPtr& kappa,
                                             const CorpoidHom& coeff, std::vector<CorpoidElem> values,
                                             std::string label) {
    if (values.size() != base->nvars()) throw std::invalid_argument("closed_point_residue: value count");
    for (size_t i = 0; i < values.size(); ++i)
        if (values[i].degree() != base->vars()[i].deg)
            throw std::invalid_argument("closed_point_residue: value degree mismatch at " + base->vars()[i].name);
    return BasePointResidue{kappa, coeff, std::move(values), std::move(label)};
}

// substitution of a presentation's relators at a base point; an explicit
// target ring keeps several fibers over one point in the same ring
inline GradedIdeal fiber_ring(const RelativeGradedPresentation& P, const BasePointResidue& pt,
                              GradedRingPtr fring = nullptr) {
    if (!fring) fring = P.fiber_shape(pt.kappa);
    std::vector<GradedPoly> out;
    for (auto& rel : P.rels) {
        // group terms by the fiber-variable exponents
        std::map<Expv, CorpoidElem> acc;
        for (auto& [m, c] : rel.terms()) {
            Expv mb(m.begin(), m.begin() + static_cast<long>(P.n_base));
            Expv mf(m.begin() + static_cast<long>(P.n_base), m.end());
            CorpoidElem co = pt.coeff.map(rel.coefficient(m));
            for (size_t i = 0; i < P.n_base; ++i)
                if (mb[i]) co = co * pt.var_values[i].pow(mb[i]);
            auto it = acc.find(mf);
            if (it == acc.end())
                acc.emplace(mf, co);
            else
                it->second = it->second + co;
        }
        GradedPoly g(fring, rel.total_degree());
        for (auto& [mf, co] : acc) {
            if (co.is_zero()) continue;
            BiDegree want = rel.total_degree() / fring->monomial_degree(mf);
            if (co.degree() != want) throw std::logic_error("fiber_ring: inhomogeneous substitution");
            g.add_term(mf, co.coeff());
        }
        out.push_back(g);
    }
    return GradedIdeal::make(fring, out);
}

// spectrum slice a verifier walks: primes plus the specialization order
struct FiniteSpectrum {
    GradedRingPtr ring;
    std::vector<GradedIdeal> primes;
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> specializes;  // [i][j]: p_i contained in p_j

    static FiniteSpectrum of_minimal_primes(const GradedIdeal& I) {
        FiniteSpectrum S;
        S.ring = I.ring();
        S.primes = I.minimal_primes_graded();
        for (size_t i = 0; i < S.primes.size(); ++i) S.labels.push_back("min" + std::to_string(i));
        S.fill_order();
        return S;
    }
    void fill_order() {
        size_t n = primes.size();
        specializes.assign(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (i == j) {
                    specializes[i][j] = true;
                    continue;
                }
                bool inside = true;
                for (auto& g : primes[i].gens())
                    if (!primes[j].contains(g)) {
                        inside = false;
                        break;
                    }
                specializes[i][j] = inside;
            }
    }
};

}  // namespace gradal

#endif
