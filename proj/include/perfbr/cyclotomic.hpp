// Cyclotomic polynomials and exact arithmetic in Q(zeta_N), with coordinates
// in the power basis 1, zeta, ..., zeta^{phi(N)-1} modulo the N-th cyclotomic
// polynomial.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <vector>

#include "perfbr/util.hpp"

namespace perfbr::arith {

namespace detail {

// Dense integer polynomials, ascending coefficients, trailing zeros trimmed.
using ZPoly = std::vector<mpz_class>;

inline void z_trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Exact division of a by monic b (remainder must be zero).
inline ZPoly z_div_exact(ZPoly a, const ZPoly& b) {
    z_trim(a);
    if (b.empty() || b.back() != 1) throw InternalInconsistency("z_div_exact: divisor not monic");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw InternalInconsistency("z_div_exact: not divisible");
    ZPoly q(a.size() - b.size() + 1, mpz_class(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        mpz_class coef = a[k + b.size() - 1];
        q[k] = coef;
        if (coef != 0)
            for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= coef * b[i];
    }
    z_trim(a);
    if (!a.empty()) throw InternalInconsistency("z_div_exact: nonzero remainder");
    return q;
}

}  // namespace detail

// The N-th cyclotomic polynomial, monic of degree phi(N), integer
// coefficients ascending. Computed as (x^N - 1) / prod_{d | N, d < N} Phi_d
// and memoized.
inline const std::vector<mpz_class>& cyclotomic_polynomial(long N) {
    static std::map<long, detail::ZPoly> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    if (N < 1) throw InputError("cyclotomic_polynomial: N must be positive");
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;

    // iterative fill over divisors so the recursion depth stays flat
    for (long d : divisors(N)) {
        if (cache.count(d)) continue;
        detail::ZPoly xn_minus_1(static_cast<std::size_t>(d) + 1, mpz_class(0));
        xn_minus_1[0] = -1;
        xn_minus_1.back() = 1;
        detail::ZPoly f = std::move(xn_minus_1);
        for (long e : divisors(d))
            if (e < d) f = detail::z_div_exact(std::move(f), cache.at(e));
        cache.emplace(d, std::move(f));
    }
    return cache.at(N);
}

class CycContext;
using CycContextPtr = std::shared_ptr<const CycContext>;

class CycNum;

// Q(zeta_N) presented as Q[x]/(Phi_N).
class CycContext : public std::enable_shared_from_this<CycContext> {
   public:
    static CycContextPtr make(long N) { return CycContextPtr(new CycContext(N)); }

    long level() const { return N_; }
    long degree() const { return phi_; }
    const std::vector<mpz_class>& minimal_polynomial() const { return phi_poly_; }

    CycNum zero() const;
    CycNum one() const;
    CycNum from_rational(const mpq_class& a) const;
    CycNum from_coeffs(std::vector<mpq_class> c) const;
    // zeta_N^j for any integer exponent (reduced mod N).
    CycNum zeta_pow(long j) const;

   private:
    explicit CycContext(long N) : N_(N) {
        if (N < 1) throw InputError("CycContext: N must be positive");
        const auto& f = cyclotomic_polynomial(N);
        phi_poly_ = f;
        phi_ = static_cast<long>(f.size()) - 1;
        // power basis reductions of x^k for phi <= k < 2*phi - 1, used by mul
        xpow_.resize(static_cast<std::size_t>(std::max<long>(phi_ - 1, 0)));
        std::vector<mpq_class> cur(static_cast<std::size_t>(phi_), 0);
        // start with x^phi = -(lower terms)
        for (long i = 0; i < phi_; ++i) cur[static_cast<std::size_t>(i)] = mpq_class(-phi_poly_[static_cast<std::size_t>(i)]);
        for (std::size_t k = 0; k < xpow_.size(); ++k) {
            xpow_[k] = cur;
            // multiply by x and reduce
            mpq_class top = cur.back();
            for (std::size_t i = cur.size(); i-- > 1;) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (top != 0)
                for (long i = 0; i < phi_; ++i)
                    cur[static_cast<std::size_t>(i)] -= top * mpq_class(phi_poly_[static_cast<std::size_t>(i)]);
        }
    }

    long N_;
    long phi_;
    std::vector<mpz_class> phi_poly_;
    // xpow_[k] = coordinates of x^{phi + k}, 0 <= k < phi - 1
    std::vector<std::vector<mpq_class>> xpow_;

    friend class CycNum;
};

class CycNum {
   public:
    CycNum() = default;
    CycNum(CycContextPtr ctx, std::vector<mpq_class> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        if (!ctx_) throw InternalInconsistency("CycNum without context");
        c_.resize(static_cast<std::size_t>(ctx_->degree()), mpq_class(0));
    }

    const CycContextPtr& ctx() const { return ctx_; }
    long level() const { return ctx_->level(); }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    mpq_class rational_value() const {
        if (!is_rational()) throw InternalInconsistency("CycNum: not rational");
        return c_.empty() ? mpq_class(0) : c_[0];
    }

    friend bool operator==(const CycNum& a, const CycNum& b) {
        a.check(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    friend CycNum operator+(const CycNum& a, const CycNum& b) {
        a.check(b);
        std::vector<mpq_class> r(a.c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] + b.c_[i];
        return CycNum(a.ctx_, std::move(r));
    }
    friend CycNum operator-(const CycNum& a, const CycNum& b) {
        a.check(b);
        std::vector<mpq_class> r(a.c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] - b.c_[i];
        return CycNum(a.ctx_, std::move(r));
    }
    CycNum operator-() const {
        std::vector<mpq_class> r(c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = -c_[i];
        return CycNum(ctx_, std::move(r));
    }
    friend CycNum operator*(const CycNum& a, const CycNum& b) {
        a.check(b);
        const long phi = a.ctx_->degree();
        std::vector<mpq_class> prod(static_cast<std::size_t>(2 * phi - 1), mpq_class(0));
        for (long i = 0; i < phi; ++i) {
            if (a.c_[static_cast<std::size_t>(i)] == 0) continue;
            for (long j = 0; j < phi; ++j)
                if (b.c_[static_cast<std::size_t>(j)] != 0)
                    prod[static_cast<std::size_t>(i + j)] += a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
        }
        std::vector<mpq_class> r(prod.begin(), prod.begin() + phi);
        for (long k = phi; k < 2 * phi - 1; ++k) {
            const mpq_class& coef = prod[static_cast<std::size_t>(k)];
            if (coef == 0) continue;
            const auto& red = a.ctx_->xpow_[static_cast<std::size_t>(k - phi)];
            for (long i = 0; i < phi; ++i) r[static_cast<std::size_t>(i)] += coef * red[static_cast<std::size_t>(i)];
        }
        return CycNum(a.ctx_, std::move(r));
    }

    CycNum inverse() const;

    CycNum pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CycNum r = ctx_->one();
        CycNum b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e > 0) b = b * b;
        }
        return r;
    }

    // Image in Q(zeta_M) for a level M with level() | M: zeta_N -> zeta_M^{M/N}.
    CycNum embed(const CycContextPtr& target) const;

    friend std::ostream& operator<<(std::ostream& os, const CycNum& x) {
        os << "cyc" << x.level() << "(";
        for (std::size_t i = 0; i < x.c_.size(); ++i) os << (i ? "," : "") << x.c_[i].get_str();
        return os << ")";
    }

   private:
    void check(const CycNum& other) const {
        if (!ctx_ || !other.ctx_ || ctx_->level() != other.ctx_->level())
            throw InternalInconsistency("CycNum: mixed cyclotomic levels");
    }

    CycContextPtr ctx_;
    std::vector<mpq_class> c_;
};

inline CycNum CycContext::zero() const {
    return CycNum(shared_from_this(), std::vector<mpq_class>(static_cast<std::size_t>(phi_), mpq_class(0)));
}
inline CycNum CycContext::one() const { return from_rational(1); }
inline CycNum CycContext::from_rational(const mpq_class& a) const {
    std::vector<mpq_class> c(static_cast<std::size_t>(phi_), mpq_class(0));
    c[0] = a;
    return CycNum(shared_from_this(), std::move(c));
}
inline CycNum CycContext::from_coeffs(std::vector<mpq_class> c) const {
    // reduce an arbitrary-degree coordinate vector modulo Phi_N
    CycNum acc = zero();
    CycNum x = zeta_pow(1);
    CycNum xp = one();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) acc = acc + xp * from_rational(c[i]);
        if (i + 1 < c.size()) xp = xp * x;
    }
    return acc;
}
inline CycNum CycContext::zeta_pow(long j) const {
    j = ((j % N_) + N_) % N_;
    std::vector<mpq_class> c(static_cast<std::size_t>(phi_), mpq_class(0));
    if (j < phi_) {
        c[static_cast<std::size_t>(j)] = 1;
        return CycNum(shared_from_this(), std::move(c));
    }
    if (j - phi_ < static_cast<long>(xpow_.size()))
        return CycNum(shared_from_this(), xpow_[static_cast<std::size_t>(j - phi_)]);
    // j beyond the precomputed range: walk up multiplying by zeta
    CycNum acc(shared_from_this(), xpow_.empty() ? std::vector<mpq_class>{} : xpow_.back());
    if (xpow_.empty()) {
        // phi == 1: zeta is rational, equal to the root of the linear Phi_N
        mpq_class root(-phi_poly_[0]);
        CycNum r = from_rational(1);
        for (long t = 0; t < j; ++t) r = r * from_rational(root);
        return r;
    }
    long have = phi_ + static_cast<long>(xpow_.size()) - 1;
    CycNum z = zeta_pow(1);
    for (long t = have; t < j; ++t) acc = acc * z;
    return acc;
}

inline CycNum CycNum::inverse() const {
    if (is_zero()) throw NotInvertible("CycNum: inverse of zero");
    // extended Euclid in Q[x] against Phi_N (irreducible over Q)
    using QPoly = std::vector<mpq_class>;
    auto trim = [](QPoly& f) {
        while (!f.empty() && f.back() == 0) f.pop_back();
    };
    const long phi = ctx_->degree();
    QPoly r0(static_cast<std::size_t>(phi) + 1);
    for (long i = 0; i <= phi; ++i) r0[static_cast<std::size_t>(i)] = mpq_class(ctx_->minimal_polynomial()[static_cast<std::size_t>(i)]);
    QPoly r1(c_.begin(), c_.end());
    trim(r1);
    QPoly t0{}, t1{mpq_class(1)};
    while (!r1.empty()) {
        QPoly q, rem = r0;
        trim(rem);
        while (rem.size() >= r1.size() && !rem.empty()) {
            mpq_class coef = rem.back() / r1.back();
            std::size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, mpq_class(0));
            q[shift] = coef;
            for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= coef * r1[i];
            trim(rem);
        }
        QPoly qt1(q.size() + t1.size(), mpq_class(0));
        if (!q.empty() && !t1.empty()) {
            qt1.assign(q.size() + t1.size() - 1, mpq_class(0));
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < t1.size(); ++j) qt1[i + j] += q[i] * t1[j];
        } else {
            qt1.clear();
        }
        QPoly t2 = t0;
        t2.resize(std::max(t2.size(), qt1.size()), mpq_class(0));
        for (std::size_t i = 0; i < qt1.size(); ++i) t2[i] -= qt1[i];
        trim(t2);
        r0 = std::exchange(r1, rem);
        t0 = std::exchange(t1, t2);
    }
    if (r0.size() != 1) throw InternalInconsistency("CycNum: gcd with Phi_N not constant");
    QPoly inv = t0;
    for (auto& v : inv) v /= r0[0];
    inv.resize(static_cast<std::size_t>(phi), mpq_class(0));
    return CycNum(ctx_, std::move(inv));
}

inline CycNum CycNum::embed(const CycContextPtr& target) const {
    const long N = level(), M = target->level();
    if (M % N != 0) throw InputError("CycNum::embed: target level not a multiple");
    if (M == N && target.get() == ctx_.get()) return *this;
    const long step = M / N;
    CycNum acc = target->zero();
    for (long i = 0; i < static_cast<long>(c_.size()); ++i) {
        const mpq_class& a = c_[static_cast<std::size_t>(i)];
        if (a != 0) acc = acc + target->zeta_pow(i * step) * target->from_rational(a);
    }
    return acc;
}

}  // namespace perfbr::arith
