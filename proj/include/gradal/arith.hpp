#ifndef GRADAL_ARITH_HPP
#define GRADAL_ARITH_HPP

// Exact integer/rational arithmetic helpers shared by the whole kernel.
// Everything is built on GMP; no floating point anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradal {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat b = base;
    bool neg = e < 0;
    unsigned long a = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), a);
    r.canonicalize();
    if (neg) {
        if (r == 0) throw std::domain_error("rat_pow: zero to negative power");
        r = 1 / r;
    }
    return r;
}

inline Int rat_num(const Rat& q) { return Int(q.get_num()); }
inline Int rat_den(const Rat& q) { return Int(q.get_den()); }

// Least common multiple of denominators of a rational vector.
inline Int common_denominator(const std::vector<Rat>& v) {
    Int l = 1;
    for (const auto& q : v) {
        Int d = rat_den(q);
        Int g;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        l = l / g * d;
    }
    return l;
}

// --- prime factorization -----------------------------------------------
//
// Degree and value groups are generated by positive rationals, so every
// element lives in the free abelian group on primes. Factoring the (small)
// generator numerators/denominators once makes group questions linear
// algebra. Trial division plus Pollard rho covers desk-scale inputs.

namespace detail {

inline Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return Int(2);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEul);
    while (true) {
        Int x = rng.get_z_range(n - 2) + 2, y = x, c = rng.get_z_range(n - 1) + 1, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

inline void factor_into(Int n, std::map<Int, long>& out) {
    if (n <= 1) return;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (n % p == 0) {
            out[Int(p)] += 1;
            n /= p;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 32)) {
        out[n] += 1;
        return;
    }
    // trial divide a little further before falling back to rho
    for (Int p = 41; p * p <= n && p < 100000; p += 2) {
        while (n % p == 0) {
            out[p] += 1;
            n /= p;
        }
        if (n == 1) return;
        if (mpz_probab_prime_p(n.get_mpz_t(), 32)) {
            out[n] += 1;
            return;
        }
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

// prime -> exponent, exponents may be negative for rationals
inline std::map<Int, long> factor_rational(const Rat& q) {
    if (q <= 0) throw std::domain_error("factor_rational: argument must be positive");
    std::map<Int, long> out;
    detail::factor_into(rat_num(q), out);
    std::map<Int, long> den;
    detail::factor_into(rat_den(q), den);
    for (auto& [p, e] : den) out[p] -= e;
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0)
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

// --- exact comparison of products of rational powers --------------------
//
// compare prod q_i^{e_i} with 1, e_i rational: clear denominators, then the
// sign of sum e_i*log q_i is decided by splitting into numerator and
// denominator products of integers.
inline int compare_power_product_with_one(const std::vector<Rat>& bases, const std::vector<Rat>& exps) {
    if (bases.size() != exps.size()) throw std::invalid_argument("compare_power_product: size mismatch");
    // exponents on the prime support
    std::map<Int, Rat> acc;
    for (size_t i = 0; i < bases.size(); ++i) {
        if (exps[i] == 0) continue;
        for (auto& [p, e] : factor_rational(bases[i])) acc[p] += exps[i] * e;
    }
    std::vector<Rat> pexp;
    std::vector<Int> primes;
    for (auto& [p, e] : acc)
        if (e != 0) {
            primes.push_back(p);
            pexp.push_back(e);
        }
    if (primes.empty()) return 0;
    Int L = common_denominator(pexp);
    Int num = 1, den = 1;
    for (size_t i = 0; i < primes.size(); ++i) {
        Rat scaled = pexp[i] * Rat(L);
        Int e = rat_num(scaled);  // integral now
        if (e > 0)
            num *= int_pow(primes[i], mpz_get_ui(e.get_mpz_t()));
        else
            den *= int_pow(primes[i], mpz_get_ui(Int(-e).get_mpz_t()));
    }
    return cmp(num, den) < 0 ? -1 : (num == den ? 0 : 1);
}

// --- small exact linear algebra over Q ----------------------------------

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;  // row major

// Solve A x = b exactly; returns false when inconsistent. A is m x n.
inline bool solve_linear(QMat A, QVec b, QVec& x) {
    size_t m = A.size();
    size_t n = m ? A[0].size() : 0;
    std::vector<long> pivot_col(m, -1);
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t sel = row;
        while (sel < m && A[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(A[sel], A[row]);
        std::swap(b[sel], b[row]);
        Rat inv = 1 / A[row][col];
        for (size_t j = col; j < n; ++j) A[row][j] *= inv;
        b[row] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || A[i][col] == 0) continue;
            Rat f = A[i][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[row][j];
            b[i] -= f * b[row];
        }
        pivot_col[row] = static_cast<long>(col);
        ++row;
    }
    for (size_t i = row; i < m; ++i)
        if (b[i] != 0) return false;
    x.assign(n, Rat(0));
    for (size_t i = 0; i < row; ++i) x[static_cast<size_t>(pivot_col[i])] = b[i];
    return true;
}

inline size_t rank_of(QMat A) {
    size_t m = A.size();
    size_t n = m ? A[0].size() : 0;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t sel = row;
        while (sel < m && A[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(A[sel], A[row]);
        Rat inv = 1 / A[row][col];
        for (size_t j = col; j < n; ++j) A[row][j] *= inv;
        for (size_t i = row + 1; i < m; ++i) {
            if (A[i][col] == 0) continue;
            Rat f = A[i][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[row][j];
        }
        ++row;
    }
    return row;
}

// --- integer lattices (column HNF) --------------------------------------
//
// Columns of A generate a sublattice of Z^m. hnf_basis returns a column
// basis in Hermite-ish triangular form; membership and "smallest n with
// n*v in L" reduce to solving against that basis.

using ZMat = std::vector<std::vector<Int>>;  // row major

inline ZMat hnf_basis(ZMat cols_as_rows_t /*each entry: one column*/, size_t dim) {
    // Gaussian elimination over Z with exact gcd steps; returns echelon basis
    // (list of columns, each a vector of length dim).
    std::vector<std::vector<Int>>& cols = cols_as_rows_t;
    ZMat basis;
    size_t pivot_row = 0;
    while (pivot_row < dim) {
        // gather columns with nonzero entry at pivot_row, reduce pairwise
        bool any = true;
        while (any) {
            any = false;
            long best = -1;
            for (size_t c = 0; c < cols.size(); ++c) {
                if (cols[c][pivot_row] == 0) continue;
                if (best < 0 || cmp(abs(cols[c][pivot_row]), abs(cols[static_cast<size_t>(best)][pivot_row])) < 0)
                    best = static_cast<long>(c);
            }
            if (best < 0) break;
            for (size_t c = 0; c < cols.size(); ++c) {
                if (static_cast<long>(c) == best || cols[c][pivot_row] == 0) continue;
                Int q = cols[c][pivot_row] / cols[static_cast<size_t>(best)][pivot_row];
                if (q != 0)
                    for (size_t r = 0; r < dim; ++r) cols[c][r] -= q * cols[static_cast<size_t>(best)][r];
                if (cols[c][pivot_row] != 0) any = true;
            }
        }
        long best = -1;
        for (size_t c = 0; c < cols.size(); ++c)
            if (cols[c][pivot_row] != 0) best = static_cast<long>(c);
        if (best >= 0) {
            auto col = cols[static_cast<size_t>(best)];
            if (col[pivot_row] < 0)
                for (auto& v : col) v = -v;
            basis.push_back(col);
            cols.erase(cols.begin() + best);
        }
        ++pivot_row;
    }
    return basis;
}

// Does v lie in the lattice spanned by basis (echelon columns)? If so fill
// integer coords.
inline bool lattice_member(const ZMat& basis, const std::vector<Int>& v, std::vector<Int>* coords = nullptr) {
    std::vector<Int> rem = v;
    std::vector<Int> co(basis.size(), 0);
    for (size_t b = 0; b < basis.size(); ++b) {
        size_t pr = 0;
        while (pr < basis[b].size() && basis[b][pr] == 0) ++pr;
        if (pr == basis[b].size()) continue;
        if (rem[pr] % basis[b][pr] != 0) {
            // try continue: echelon means earlier rows already cleared
            return false;
        }
        Int q = rem[pr] / basis[b][pr];
        co[b] = q;
        for (size_t r = 0; r < rem.size(); ++r) rem[r] -= q * basis[b][r];
    }
    for (auto& x : rem)
        if (x != 0) return false;
    if (coords) *coords = co;
    return true;
}

}  // namespace gradal

#endif
