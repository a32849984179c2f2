// Prime fields F_p and extensions F_{p^s} = F_p[x]/(modulus), with the
// modulus irreducibility witnessed at construction. Elements are coefficient
// vectors in the power basis of the class of x.
#pragma once

#include <memory>
#include <ostream>
#include <vector>

#include "perfbr/util.hpp"

namespace perfbr::arith {

class FqContext;
using FqContextPtr = std::shared_ptr<const FqContext>;

class FqElem;

// F_p[x]/(modulus). modulus is monic of degree s >= 1 with coefficients in
// [0, p), listed from the constant term. For s = 1 any monic linear modulus
// is allowed (the field is plainly F_p); for s >= 2 irreducibility is checked
// at construction by verifying the modulus has no factor of degree <= s/2
// (gcd with x^{p^d} - x for d = 1..s/2).
class FqContext : public std::enable_shared_from_this<FqContext> {
   public:
    static FqContextPtr make(long p, std::vector<long> modulus);

    long p() const { return p_; }
    long degree() const { return s_; }
    const std::vector<long>& modulus() const { return modulus_; }

    // p^s as mpz (group order + 1).
    const mpz_class& cardinality() const { return card_; }

    FqElem zero() const;
    FqElem one() const;
    // The class of the variable x.
    FqElem gen() const;
    // Constant embedding of a residue in [0, p).
    FqElem from_residue(long r) const;
    FqElem from_coeffs(std::vector<long> c) const;

   private:
    FqContext(long p, std::vector<long> modulus);
    long p_;
    long s_;
    std::vector<long> modulus_;
    mpz_class card_;
};

class FqElem {
   public:
    FqElem() = default;
    FqElem(FqContextPtr ctx, std::vector<long> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        normalize();
    }

    const FqContextPtr& ctx() const { return ctx_; }
    const std::vector<long>& coeffs() const { return c_; }

    bool is_zero() const {
        for (long v : c_)
            if (v != 0) return false;
        return true;
    }

    // True when the element lies in the prime subfield.
    bool is_constant() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    long constant_value() const {
        if (!is_constant()) throw InternalInconsistency("FqElem: not a prime-field constant");
        return c_.empty() ? 0 : c_[0];
    }

    friend bool operator==(const FqElem& a, const FqElem& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FqElem& a, const FqElem& b) { return !(a == b); }

    friend FqElem operator+(const FqElem& a, const FqElem& b) {
        a.check(b);
        std::vector<long> r(a.c_.size());
        long p = a.ctx_->p();
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a.c_[i] + b.c_[i]) % p;
        return FqElem(a.ctx_, std::move(r));
    }
    friend FqElem operator-(const FqElem& a, const FqElem& b) {
        a.check(b);
        std::vector<long> r(a.c_.size());
        long p = a.ctx_->p();
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = ((a.c_[i] - b.c_[i]) % p + p) % p;
        return FqElem(a.ctx_, std::move(r));
    }
    FqElem operator-() const {
        std::vector<long> r(c_.size());
        long p = ctx_->p();
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (p - c_[i]) % p;
        return FqElem(ctx_, std::move(r));
    }
    friend FqElem operator*(const FqElem& a, const FqElem& b);

    FqElem inverse() const;

    FqElem pow(const mpz_class& e) const;
    FqElem pow(long e) const { return pow(mpz_class(e)); }

    friend std::ostream& operator<<(std::ostream& os, const FqElem& x) {
        os << "[";
        for (std::size_t i = 0; i < x.c_.size(); ++i) os << (i ? "," : "") << x.c_[i];
        return os << "]";
    }

   private:
    void normalize() {
        if (!ctx_) throw InternalInconsistency("FqElem without context");
        c_.resize(static_cast<std::size_t>(ctx_->degree()), 0);
        long p = ctx_->p();
        for (long& v : c_) v = ((v % p) + p) % p;
    }
    void check(const FqElem& other) const {
        if (!ctx_ || !other.ctx_ || ctx_->p() != other.ctx_->p() || ctx_->modulus() != other.ctx_->modulus())
            throw InternalInconsistency("FqElem: mixed field contexts");
    }

    FqContextPtr ctx_;
    std::vector<long> c_;
};

namespace detail {

// Dense polynomials over F_p with coefficients in [0, p), trailing zeros trimmed.
using FpPoly = std::vector<long>;

inline void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(r);
    return r;
}

// Remainder of a modulo monic m.
inline FpPoly fp_rem(FpPoly a, const FpPoly& m, long p) {
    fp_trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        long lead = a.back();
        std::size_t shift = a.size() - 1 - dm;
        if (lead != 0)
            for (std::size_t i = 0; i < m.size(); ++i)
                a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
        a.pop_back();
        fp_trim(a);
        if (a.size() <= dm) break;
    }
    fp_trim(a);
    return a;
}

inline FpPoly fp_powmod(FpPoly base, mpz_class e, const FpPoly& m, long p) {
    FpPoly r{1};
    base = fp_rem(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_rem(fp_mul(r, base, p), m, p);
        e >>= 1;
        if (e > 0) base = fp_rem(fp_mul(base, base, p), m, p);
    }
    return r;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // make b monic for the remainder step
        long lead_inv = inv_mod_long(b.back(), p);
        FpPoly bm(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) bm[i] = (b[i] * lead_inv) % p;
        a = fp_rem(std::move(a), bm, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        long lead_inv = inv_mod_long(a.back(), p);
        for (long& v : a) v = (v * lead_inv) % p;
    }
    return a;
}

// Irreducibility of monic f over F_p: f has no root pattern of low degree,
// i.e. gcd(x^{p^d} - x, f) = 1 for d = 1..deg/2, and x^{p^deg} = x mod f.
inline bool fp_irreducible(const FpPoly& f, long p) {
    const long s = static_cast<long>(f.size()) - 1;
    if (s < 1) return false;
    if (s == 1) return true;
    mpz_class q(p);
    FpPoly x{0, 1};
    // x^{p^d} mod f computed incrementally
    FpPoly xp = fp_rem(x, f, p);
    for (long d = 1; d <= s; ++d) {
        xp = fp_powmod(xp, q, f, p);
        if (d < s && s % d == 0) {
            FpPoly diff = xp;
            diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
            diff[1] = ((diff[1] - 1) % p + p) % p;
            fp_trim(diff);
            if (fp_gcd(diff, f, p).size() > 1) return false;
        }
        if (d == s) {
            FpPoly diff = xp;
            diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
            diff[1] = ((diff[1] - 1) % p + p) % p;
            fp_trim(diff);
            if (!diff.empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

inline FqContext::FqContext(long p, std::vector<long> modulus) : p_(p), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw InputError("FqContext: p not prime");
    if (modulus_.size() < 2) throw InputError("FqContext: modulus must have degree >= 1");
    for (long& v : modulus_) v = ((v % p_) + p_) % p_;
    if (modulus_.back() != 1) throw InputError("FqContext: modulus not monic");
    s_ = static_cast<long>(modulus_.size()) - 1;
    if (s_ > 1 && !detail::fp_irreducible(modulus_, p_))
        throw InputError("FqContext: modulus not irreducible");
    mpz_ui_pow_ui(card_.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(s_));
}

inline FqContextPtr FqContext::make(long p, std::vector<long> modulus) {
    return FqContextPtr(new FqContext(p, std::move(modulus)));
}

inline FqElem FqContext::zero() const {
    return FqElem(shared_from_this(), std::vector<long>(static_cast<std::size_t>(s_), 0));
}
inline FqElem FqContext::one() const { return from_residue(1); }
inline FqElem FqContext::gen() const {
    std::vector<long> c(static_cast<std::size_t>(s_), 0);
    if (s_ == 1) {
        // class of x = -constant term of the linear modulus
        c[0] = (p_ - modulus_[0]) % p_;
    } else {
        c[1] = 1;
    }
    return FqElem(shared_from_this(), std::move(c));
}
inline FqElem FqContext::from_residue(long r) const {
    std::vector<long> c(static_cast<std::size_t>(s_), 0);
    c[0] = ((r % p_) + p_) % p_;
    return FqElem(shared_from_this(), std::move(c));
}
inline FqElem FqContext::from_coeffs(std::vector<long> c) const {
    c = detail::fp_rem(std::move(c), modulus_, p_);
    return FqElem(shared_from_this(), std::move(c));
}

inline FqElem operator*(const FqElem& a, const FqElem& b) {
    a.check(b);
    long p = a.ctx_->p();
    detail::FpPoly prod = detail::fp_mul(a.c_, b.c_, p);
    prod = detail::fp_rem(std::move(prod), a.ctx_->modulus(), p);
    return FqElem(a.ctx_, std::move(prod));
}

inline FqElem FqElem::inverse() const {
    if (is_zero()) throw NotInvertible("FqElem: inverse of zero");
    long p = ctx_->p();
    // extended Euclid over F_p[x]
    detail::FpPoly r0 = ctx_->modulus(), r1 = c_;
    detail::fp_trim(r1);
    detail::FpPoly t0{}, t1{1};
    while (!r1.empty()) {
        // divide r0 by r1
        detail::FpPoly q;
        detail::FpPoly rem = r0;
        long inv_lead = inv_mod_long(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
            long coef = (rem.back() * inv_lead) % p;
            std::size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = coef;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = ((rem[shift + i] - coef * r1[i]) % p + p) % p;
            detail::fp_trim(rem);
        }
        detail::FpPoly t2 = t0;
        detail::FpPoly qt1 = detail::fp_mul(q, t1, p);
        t2.resize(std::max(t2.size(), qt1.size()), 0);
        for (std::size_t i = 0; i < qt1.size(); ++i) t2[i] = ((t2[i] - qt1[i]) % p + p) % p;
        detail::fp_trim(t2);
        r0 = std::exchange(r1, rem);
        t0 = std::exchange(t1, t2);
    }
    if (r0.size() != 1) throw InternalInconsistency("FqElem: gcd with modulus not constant");
    long scale = inv_mod_long(r0[0], p);
    for (long& v : t0) v = (v * scale) % p;
    return FqElem(ctx_, std::move(t0));
}

inline FqElem FqElem::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(-e);
    detail::FpPoly r = detail::fp_powmod(c_, e, ctx_->modulus(), ctx_->p());
    return FqElem(ctx_, std::move(r));
}

// Least n >= 1 with alpha^n = 1, by factoring the group order p^s - 1 and
// descending through prime factors. Desk scale: the group order must fit in
// 64 bits and factor by trial division.
inline long multiplicative_order(const FqElem& alpha) {
    if (alpha.is_zero()) throw InputError("multiplicative_order: zero element");
    mpz_class group_order = alpha.ctx()->cardinality() - 1;
    if (!group_order.fits_slong_p())
        throw InputError("multiplicative_order: group order exceeds desk scale");
    long n = group_order.get_si();
    if (n == 0) return 1;
    for (auto [q, e] : factorize(n)) {
        for (int i = 0; i < e; ++i) {
            if (alpha.pow(n / q) == alpha.ctx()->one())
                n /= q;
            else
                break;
        }
    }
    return n;
}

}  // namespace perfbr::arith
