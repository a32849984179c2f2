// The Teichmuller dictionary: a fixed multiplicative identification between
// the N-th roots of unity of F_{p^s} (s = ord of p mod N) and those of
// Q(zeta_N). The finite field is presented as F_p[x]/(g) where g is the
// lexicographically least irreducible factor of Phi_N mod p (coefficients
// compared from the constant term, representatives in [0, p)); omega, the
// class of x, is then a root of Phi_N of exact order N, and omega^j <-> zeta_N^j
// is reduction-compatible for the prime of Z[zeta_N] selected by g.
#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "perfbr/cyclotomic.hpp"
#include "perfbr/finite_field.hpp"
#include "perfbr/scalar.hpp"
#include "perfbr/util.hpp"

namespace perfbr::arith {

class TeichmullerDictionary {
   public:
    long p() const { return p_; }
    long level() const { return N_; }
    long residue_degree() const { return s_; }
    const std::vector<long>& chosen_factor() const { return factor_; }
    const FqContextPtr& field() const { return field_; }
    const FqElem& omega() const { return omega_; }
    const CycContextPtr& cyclotomic() const { return cyc_; }

    // Discrete log of alpha in the cyclic group generated by omega, by
    // enumeration over 0 <= j < N (documented ceiling N <= 10^4).
    long discrete_log(const FqElem& alpha) const {
        FqElem acc = field_->one();
        for (long j = 0; j < N_; ++j) {
            if (acc == alpha) return j;
            acc = acc * omega_;
        }
        throw InputError("teichmuller: element is not a power of omega");
    }

    friend TeichmullerDictionary build_teichmuller_dictionary(const ScalarContext&, long);

   private:
    TeichmullerDictionary() = default;
    long p_ = 0, N_ = 0, s_ = 0;
    std::vector<long> factor_;
    FqContextPtr field_;
    FqElem omega_{};
    CycContextPtr cyc_;
};

namespace detail {

// Lexicographically least monic irreducible polynomial of degree s over F_p,
// scanning coefficient vectors from the constant term. The scan is short:
// about one in s monic polynomials is irreducible.
inline FpPoly least_irreducible(long p, long s) {
    FpPoly f(static_cast<std::size_t>(s) + 1, 0);
    f.back() = 1;
    while (true) {
        if (fp_irreducible(f, p)) return f;
        // increment the coefficient vector
        long i = 0;
        while (i < s) {
            if (++f[static_cast<std::size_t>(i)] < p) break;
            f[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == s) throw InternalInconsistency("least_irreducible: exhausted search");
    }
}

}  // namespace detail

// Builds the dictionary for level N coprime to p. The factorization of
// Phi_N mod p is obtained from the Frobenius orbits of a primitive N-th root
// of unity in a bootstrap copy of F_{p^s}; the chosen factor is the
// lexicographically least of the orbit factors, independent of the bootstrap
// presentation.
inline TeichmullerDictionary build_teichmuller_dictionary(const ScalarContext& ctx, long N) {
    const long p = ctx.p();
    if (N < 1) throw InputError("build_teichmuller_dictionary: N must be positive");
    if (std::gcd(N, p) != 1) throw InputError("build_teichmuller_dictionary: gcd(N, p) != 1");
    const long s = multiplicative_order_mod(p, N);

    // bootstrap field F_{p^s}
    detail::FpPoly boot = s == 1 ? detail::FpPoly{0, 1} : detail::least_irreducible(p, s);
    FqContextPtr bootstrap = FqContext::make(p, std::vector<long>(boot.begin(), boot.end()));

    // primitive N-th root of unity: scan g = x, x+1, x+2, ... and take
    // alpha = g^((p^s - 1)/N) until alpha has exact order N
    mpz_class group_order = bootstrap->cardinality() - 1;
    mpz_class exp = group_order / N;
    FqElem omega0 = bootstrap->one();
    bool found = false;
    // scan nonzero field elements in base-p counter order; any candidate
    // whose (p^s-1)/N-th power has exact order N will do
    for (mpz_class counter = 1; counter < bootstrap->cardinality() && !found; ++counter) {
        mpz_class rest = counter;
        std::vector<long> cv(static_cast<std::size_t>(s), 0);
        for (long i = 0; i < s && rest != 0; ++i) {
            cv[static_cast<std::size_t>(i)] = static_cast<long>(mpz_fdiv_ui(rest.get_mpz_t(), static_cast<unsigned long>(p)));
            rest /= p;
        }
        FqElem alpha = bootstrap->from_coeffs(cv).pow(exp);
        if (alpha.is_zero()) continue;
        bool ok = N == 1 ? alpha == bootstrap->one() : !(alpha == bootstrap->one());
        if (ok)
            for (auto [q, e] : factorize(N))
                if (alpha.pow(N / q) == bootstrap->one()) { ok = false; break; }
        if (ok) {
            omega0 = alpha;
            found = true;
        }
    }
    if (!found) throw InternalInconsistency("build_teichmuller_dictionary: no primitive root found");

    // Frobenius orbits on the primitive residues mod N give the irreducible
    // factors of Phi_N mod p; each orbit has size s
    std::vector<long> prim;
    for (long i = 0; i < N; ++i)
        if (std::gcd(i, N) == 1) prim.push_back(i);
    std::vector<bool> seen(static_cast<std::size_t>(N), false);
    std::vector<std::vector<long>> factors;
    for (long i : prim) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        std::vector<long> orbit;
        long j = i;
        do {
            orbit.push_back(j);
            seen[static_cast<std::size_t>(j)] = true;
            j = static_cast<long>((static_cast<long long>(j) * p) % N);
        } while (j != i);
        // product of (x - omega0^t), t in orbit
        std::vector<FqElem> poly{bootstrap->one()};
        for (long t : orbit) {
            FqElem root = omega0.pow(t);
            std::vector<FqElem> next(poly.size() + 1, bootstrap->zero());
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] = next[k + 1] + poly[k];
                next[k] = next[k] - root * poly[k];
            }
            poly = std::move(next);
        }
        std::vector<long> coeffs;
        coeffs.reserve(poly.size());
        for (const auto& e : poly) coeffs.push_back(e.constant_value());
        if (static_cast<long>(coeffs.size()) != s + 1)
            throw InternalInconsistency("teichmuller: orbit factor has wrong degree");
        factors.push_back(std::move(coeffs));
    }
    std::sort(factors.begin(), factors.end());

    TeichmullerDictionary dict;
    dict.p_ = p;
    dict.N_ = N;
    dict.s_ = s;
    dict.factor_ = factors.front();
    dict.field_ = FqContext::make(p, dict.factor_);
    dict.omega_ = dict.field_->gen();
    dict.cyc_ = CycContext::make(N);

    // construction invariants: Phi_N(omega) = 0 and omega has exact order N
    {
        const auto& phi = cyclotomic_polynomial(N);
        FqElem acc = dict.field_->zero();
        FqElem xp = dict.field_->one();
        for (std::size_t i = 0; i < phi.size(); ++i) {
            long c = static_cast<long>(mpz_fdiv_ui(phi[i].get_mpz_t(), static_cast<unsigned long>(p)));
            acc = acc + xp * dict.field_->from_residue(c);
            if (i + 1 < phi.size()) xp = xp * dict.omega_;
        }
        if (!acc.is_zero()) throw InternalInconsistency("teichmuller: Phi_N(omega) != 0");
        if (multiplicative_order(dict.omega_) != N)
            throw InternalInconsistency("teichmuller: omega does not have order N");
    }
    return dict;
}

// The Teichmuller lift of an N-th root of unity alpha: zeta_N^j for the
// unique j with alpha = omega^j.
inline CycNum teichmuller_lift(const TeichmullerDictionary& dict, const FqElem& alpha) {
    if (alpha.is_zero()) throw InputError("teichmuller_lift: zero has no lift");
    if (!(alpha.pow(dict.level()) == dict.field()->one()))
        throw InputError("teichmuller_lift: element is not an N-th root of unity");
    return dict.cyclotomic()->zeta_pow(dict.discrete_log(alpha));
}

}  // namespace perfbr::arith
