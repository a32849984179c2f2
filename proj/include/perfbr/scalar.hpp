// The base coefficient domain: integers localized at p. Elements are
// canonical rationals whose denominator is prime to p.
#pragma once

#include <memory>
#include <string>

#include "perfbr/finite_field.hpp"
#include "perfbr/util.hpp"

namespace perfbr::arith {

// Fixes the prime p; primality is checked by trial division at construction.
class ScalarContext {
   public:
    explicit ScalarContext(long p) : p_(p) {
        if (!is_prime(p)) throw InputError("ScalarContext: p = " + std::to_string(p) + " is not prime");
    }
    long p() const { return p_; }

    friend bool operator==(const ScalarContext& a, const ScalarContext& b) { return a.p_ == b.p_; }

   private:
    long p_;
};

// An element of Z localized at p: a canonical fraction a/b with gcd(b, p) = 1
// and b > 0. Mostly a validated boundary type; matrix internals work on raw
// mpq_class values with the same invariant enforced at the edges.
class LocalScalar {
   public:
    LocalScalar(mpq_class value, ScalarContext ctx) : v_(std::move(value)), ctx_(ctx) {
        v_.canonicalize();
        if (v_.get_den() % ctx_.p() == 0)
            throw InputError("LocalScalar: denominator divisible by p");
    }

    const mpq_class& value() const { return v_; }
    const ScalarContext& context() const { return ctx_; }

    // Order of vanishing at p: x = p^v * unit; kValInfinity for x = 0.
    long valuation() const { return padic_valuation(v_, ctx_.p()); }

    // Image in F_p (denominator inverted mod p).
    long residue() const {
        return static_cast<long>(mod_prime_power(v_, ctx_.p(), 1).get_si());
    }

    std::string str() const { return v_.get_str(); }

    friend bool operator==(const LocalScalar& a, const LocalScalar& b) {
        return a.ctx_ == b.ctx_ && a.v_ == b.v_;
    }

   private:
    mpq_class v_;
    ScalarContext ctx_;
};

}  // namespace perfbr::arith
