#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pgcl {

using FieldCode = std::uint8_t;

// Complete lookup tables for GF(q), small prime powers only.
//
// Element encoding is the polynomial basis written in base p: the element
// b1*w + b0 over the prime subfield has code b1*p + b0 (for prime q the code
// is the residue itself). The moduli are fixed per order so that every
// downstream canonical index is reproducible:
//   GF(4): x^2 + x + 1,  GF(8): x^3 + x + 1,  GF(9): x^2 + 1,
//   GF(16) (as extension of GF(4)): y^2 + y + w  with w = code 2 of GF(4).
class FieldTable {
public:
    int q = 0;              // field order
    int characteristic = 0; // prime p
    std::string modulus;    // human-readable modulus, "-" for prime fields

    FieldCode add(FieldCode a, FieldCode b) const { return add_[idx(a, b)]; }
    FieldCode sub(FieldCode a, FieldCode b) const { return add_[idx(a, neg_[b])]; }
    FieldCode mul(FieldCode a, FieldCode b) const { return mul_[idx(a, b)]; }
    FieldCode neg(FieldCode a) const { return neg_[a]; }
    FieldCode inv(FieldCode a) const {
        if (a == 0) throw std::domain_error("field inverse of zero");
        return inv_[a];
    }
    FieldCode div(FieldCode a, FieldCode b) const {
        if (b == 0) throw std::domain_error("field division by zero");
        return mul_[idx(a, inv_[b])];
    }

    FieldCode pow(FieldCode a, unsigned e) const {
        FieldCode r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    bool operator==(const FieldTable& o) const {
        return q == o.q && characteristic == o.characteristic && add_ == o.add_ &&
               mul_ == o.mul_ && neg_ == o.neg_ && inv_ == o.inv_;
    }

    // table construction, used by the factory functions below
    void init(int order, int p, std::string mod_name) {
        q = order;
        characteristic = p;
        modulus = std::move(mod_name);
        add_.assign((std::size_t)q * q, 0);
        mul_.assign((std::size_t)q * q, 0);
        neg_.assign(q, 0);
        inv_.assign(q, 0);
    }
    void set_add(FieldCode a, FieldCode b, FieldCode v) { add_[idx(a, b)] = v; }
    void set_mul(FieldCode a, FieldCode b, FieldCode v) { mul_[idx(a, b)] = v; }
    void finalize() {
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                if (add_[idx(a, b)] == 0) neg_[a] = (FieldCode)b;
        for (int a = 1; a < q; ++a)
            for (int b = 1; b < q; ++b)
                if (mul_[idx(a, b)] == 1) inv_[a] = (FieldCode)b;
    }

private:
    std::size_t idx(FieldCode a, FieldCode b) const { return (std::size_t)a * q + b; }

    std::vector<FieldCode> add_, mul_, neg_, inv_;
};

namespace detail {

// polynomial-basis field over prime p with monic irreducible modulus
// (modulus given by its non-leading coefficients, degree k)
inline FieldTable poly_field(int p, int k, const std::vector<int>& mod_low,
                             const std::string& mod_name) {
    int q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    FieldTable t;
    t.init(q, p, mod_name);

    auto digits = [&](int code) {
        std::vector<int> d(k);
        for (int i = 0; i < k; ++i) {
            d[i] = code % p;
            code /= p;
        }
        return d;
    };
    auto encode = [&](const std::vector<int>& d) {
        int c = 0;
        for (int i = k - 1; i >= 0; --i) c = c * p + d[i];
        return (FieldCode)c;
    };

    for (int a = 0; a < q; ++a) {
        auto da = digits(a);
        for (int b = 0; b < q; ++b) {
            auto db = digits(b);
            std::vector<int> s(k);
            for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
            t.set_add((FieldCode)a, (FieldCode)b, encode(s));

            std::vector<int> prod(2 * k - 1, 0);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            // reduce: x^k = -mod_low
            for (int d = 2 * k - 2; d >= k; --d) {
                int c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                for (int i = 0; i < k; ++i)
                    prod[d - k + i] = ((prod[d - k + i] - c * mod_low[i]) % p + p * p) % p;
            }
            prod.resize(k);
            t.set_mul((FieldCode)a, (FieldCode)b, encode(prod));
        }
    }
    t.finalize();
    return t;
}

inline FieldTable prime_field(int p) {
    FieldTable t;
    t.init(p, p, "-");
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) {
            t.set_add((FieldCode)a, (FieldCode)b, (FieldCode)((a + b) % p));
            t.set_mul((FieldCode)a, (FieldCode)b, (FieldCode)((a * b) % p));
        }
    t.finalize();
    return t;
}

} // namespace detail

inline FieldTable make_field(int q) {
    switch (q) {
    case 2:
    case 3:
    case 5:
    case 7:
        return detail::prime_field(q);
    case 4:
        return detail::poly_field(2, 2, {1, 1}, "x^2+x+1");
    case 8:
        return detail::poly_field(2, 3, {1, 1, 0}, "x^3+x+1");
    case 9:
        return detail::poly_field(3, 2, {1, 0}, "x^2+1");
    default:
        throw std::invalid_argument("unsupported field order " + std::to_string(q));
    }
}

inline bool is_supported_order(int q) {
    switch (q) {
    case 2:
    case 3:
    case 4:
    case 5:
    case 7:
    case 8:
    case 9:
        return true;
    default:
        return false;
    }
}

// Quadratic extension GF(q^2) of a base field, with the maps between the two.
// Codes of the extension are hi*q + lo for the element lo + hi*y; embedding a
// base element therefore keeps its numeric code.
struct QuadraticExtension {
    FieldTable field;      // order q^2
    int base_order = 0;

    FieldCode embed(FieldCode a) const { return a; }
    std::pair<FieldCode, FieldCode> decompose(FieldCode c) const {
        return {(FieldCode)(c % base_order), (FieldCode)(c / base_order)};
    }
};

inline QuadraticExtension make_extension(const FieldTable& base) {
    // fixed irreducible y^2 + c1*y + c0 per base order
    FieldCode c1, c0;
    std::string name;
    switch (base.q) {
    case 2:
        c1 = 1; c0 = 1; name = "y^2+y+1";
        break;
    case 3:
        c1 = 0; c0 = 1; name = "y^2+1";
        break;
    case 4:
        c1 = 1; c0 = 2; name = "y^2+y+w";
        break;
    default:
        throw std::invalid_argument("unsupported extension base order " +
                                    std::to_string(base.q));
    }
    int q = base.q;
    QuadraticExtension ext;
    ext.base_order = q;
    ext.field.init(q * q, base.characteristic, name);

    // y^2 = -c1*y - c0
    FieldCode y2_lin = base.neg(c1), y2_cst = base.neg(c0);
    for (int a = 0; a < q * q; ++a) {
        FieldCode a0 = (FieldCode)(a % q), a1 = (FieldCode)(a / q);
        for (int b = 0; b < q * q; ++b) {
            FieldCode b0 = (FieldCode)(b % q), b1 = (FieldCode)(b / q);
            FieldCode s0 = base.add(a0, b0), s1 = base.add(a1, b1);
            ext.field.set_add((FieldCode)a, (FieldCode)b, (FieldCode)(s1 * q + s0));

            FieldCode p0 = base.mul(a0, b0);
            FieldCode p1 = base.add(base.mul(a0, b1), base.mul(a1, b0));
            FieldCode p2 = base.mul(a1, b1);
            FieldCode r0 = base.add(p0, base.mul(p2, y2_cst));
            FieldCode r1 = base.add(p1, base.mul(p2, y2_lin));
            ext.field.set_mul((FieldCode)a, (FieldCode)b, (FieldCode)(r1 * q + r0));
        }
    }
    ext.field.finalize();
    return ext;
}

} // namespace pgcl
