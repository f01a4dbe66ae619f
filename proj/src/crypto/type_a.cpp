// Copyright 2026 The aggsig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aggsig/crypto/type_a.hpp"

#include <stdexcept>
#include <string_view>

#include "aggsig/digest.hpp"

namespace aggsig::crypto::type_a {

namespace {

// r: 180-bit prime; h: cofactor, multiple of 4; q = h * r - 1 prime, q = 3 mod 4.
constexpr const char* kOrderHex = "800000000000000000000000000000000000000000135";
constexpr const char* kFieldHex =
    "80000000000000000000000000000000000000000000000000000000000000000000000000000000"
    "15fffd160e000000000000000000000000000000000351bf";
constexpr const char* kCofactorHex =
    "ffffffffffffffffffffffffffffffffffffffffffd96000000000000000000000000000000000002c0";

struct Constants {
    mpz_class q{kFieldHex, 16};
    mpz_class r{kOrderHex, 16};
    mpz_class h{kCofactorHex, 16};
    mpz_class sqrt_exp;  // (q + 1) / 4
    Constants() {
        if (h * r - 1 != q) throw std::logic_error("type_a: inconsistent curve constants");
        sqrt_exp = (q + 1) / 4;
    }
};

const Constants& k() {
    static const Constants c;
    return c;
}

inline void red(mpz_class& a) { mpz_mod(a.get_mpz_t(), a.get_mpz_t(), k().q.get_mpz_t()); }

inline mpz_class fmul(const mpz_class& a, const mpz_class& b) {
    mpz_class t = a * b;
    red(t);
    return t;
}

inline mpz_class fsqr(const mpz_class& a) { return fmul(a, a); }

inline mpz_class fadd(const mpz_class& a, const mpz_class& b) {
    mpz_class t = a + b;
    if (t >= k().q) t -= k().q;
    return t;
}

inline mpz_class fsub(const mpz_class& a, const mpz_class& b) {
    mpz_class t = a - b;
    if (sgn(t) < 0) t += k().q;
    return t;
}

inline mpz_class finv(const mpz_class& a) {
    mpz_class out;
    if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), k().q.get_mpz_t()) == 0) {
        throw std::domain_error("type_a: inverse of zero");
    }
    return out;
}

inline mpz_class fpow(const mpz_class& a, const mpz_class& e) {
    mpz_class out;
    mpz_powm(out.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), k().q.get_mpz_t());
    return out;
}

// --- F_{q^2} --------------------------------------------------------------

Fq2 q2_mul(const Fq2& a, const Fq2& b) {
    mpz_class ac = a.re * b.re;
    mpz_class bd = a.im * b.im;
    mpz_class cross = (a.re + a.im) * (b.re + b.im) - ac - bd;
    Fq2 out{ac - bd, std::move(cross)};
    red(out.re);
    red(out.im);
    return out;
}

Fq2 q2_sqr(const Fq2& a) {
    // (x + yi)^2 = (x + y)(x - y) + 2xy i
    mpz_class re = (a.re + a.im) * (a.re - a.im);
    mpz_class im = 2 * a.re * a.im;
    red(re);
    red(im);
    return {std::move(re), std::move(im)};
}

Fq2 q2_conj(const Fq2& a) { return {a.re, a.im == 0 ? mpz_class(0) : k().q - a.im}; }

Fq2 q2_inv(const Fq2& a) {
    mpz_class norm = a.re * a.re + a.im * a.im;
    red(norm);
    mpz_class inv = finv(norm);
    Fq2 c = q2_conj(a);
    return {fmul(c.re, inv), fmul(c.im, inv)};
}

Fq2 q2_pow(const Fq2& a, const mpz_class& e) {
    Fq2 out{1, 0};
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        out = q2_sqr(out);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) out = q2_mul(out, a);
    }
    return out;
}

// --- Jacobian points: (X, Y, Z) ~ (X / Z^2, Y / Z^3), Z = 0 is infinity ------

struct Jac {
    mpz_class X, Y, Z;
    [[nodiscard]] bool infinity() const { return Z == 0; }
};

Jac to_jac(const Point& p) {
    if (p.infinity) return {1, 1, 0};
    return {p.x, p.y, 1};
}

Point to_affine(const Jac& j) {
    if (j.infinity()) return Point::identity();
    mpz_class zi = finv(j.Z);
    mpz_class zi2 = fsqr(zi);
    return Point::affine(fmul(j.X, zi2), fmul(j.Y, fmul(zi2, zi)));
}

Jac jac_double(const Jac& p) {
    if (p.infinity() || p.Y == 0) return {1, 1, 0};
    mpz_class xx = fsqr(p.X);
    mpz_class yy = fsqr(p.Y);
    mpz_class yyyy = fsqr(yy);
    mpz_class zz = fsqr(p.Z);
    mpz_class s = fmul(4 * p.X, yy);
    mpz_class m = 3 * xx + fsqr(zz);  // a = 1
    red(m);
    mpz_class x3 = fsub(fsqr(m), fadd(s, s));
    mpz_class y3 = fmul(m, fsub(s, x3)) - 8 * yyyy;
    red(y3);
    mpz_class z3 = fmul(2 * p.Y, p.Z);
    return {std::move(x3), std::move(y3), std::move(z3)};
}

Jac jac_add_affine(const Jac& p, const Point& q) {
    if (q.infinity) return p;
    if (p.infinity()) return to_jac(q);
    mpz_class z1z1 = fsqr(p.Z);
    mpz_class u2 = fmul(q.x, z1z1);
    mpz_class s2 = fmul(q.y, fmul(p.Z, z1z1));
    mpz_class hh = fsub(u2, p.X);
    mpz_class rr = fsub(s2, p.Y);
    if (hh == 0) {
        if (rr == 0) return jac_double(p);
        return {1, 1, 0};
    }
    mpz_class h2 = fsqr(hh);
    mpz_class h3 = fmul(hh, h2);
    mpz_class v = fmul(p.X, h2);
    mpz_class x3 = fsub(fsub(fsqr(rr), h3), fadd(v, v));
    mpz_class y3 = fsub(fmul(rr, fsub(v, x3)), fmul(p.Y, h3));
    mpz_class z3 = fmul(p.Z, hh);
    return {std::move(x3), std::move(y3), std::move(z3)};
}

mpz_class curve_rhs(const mpz_class& x) {
    mpz_class t = fmul(fsqr(x), x) + x;
    red(t);
    return t;
}

std::optional<mpz_class> field_sqrt(const mpz_class& a) {
    mpz_class y = fpow(a, k().sqrt_exp);
    if (fsqr(y) != a) return std::nullopt;
    return y;
}

Point mul_unchecked(const Point& p, const mpz_class& scalar) {
    if (p.infinity || scalar == 0) return Point::identity();
    mpz_class e = scalar;
    Point base = p;
    if (sgn(e) < 0) {
        e = -e;
        base = negate(p);
    }
    Jac acc{1, 1, 0};
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        acc = jac_double(acc);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) acc = jac_add_affine(acc, base);
    }
    return to_affine(acc);
}

}  // namespace

const mpz_class& field_prime() { return k().q; }
const mpz_class& group_order() { return k().r; }
const mpz_class& cofactor() { return k().h; }

const Point& generator() {
    static const Point g = [] {
        constexpr std::string_view seed = "aggsig type-a generator";
        return hash_to_group(std::span(reinterpret_cast<const std::uint8_t*>(seed.data()), seed.size()));
    }();
    return g;
}

bool on_curve(const Point& p) {
    if (p.infinity) return true;
    if (sgn(p.x) < 0 || p.x >= k().q || sgn(p.y) < 0 || p.y >= k().q) return false;
    return fsqr(p.y) == curve_rhs(p.x);
}

bool in_group(const Point& p) { return on_curve(p) && mul_unchecked(p, k().r).infinity; }

Point negate(const Point& p) {
    if (p.infinity) return p;
    return Point::affine(p.x, p.y == 0 ? mpz_class(0) : k().q - p.y);
}

Point add(const Point& a, const Point& b) { return to_affine(jac_add_affine(to_jac(a), b)); }

Point mul(const Point& p, const mpz_class& scalar) {
    mpz_class e;
    mpz_mod(e.get_mpz_t(), scalar.get_mpz_t(), k().r.get_mpz_t());
    return mul_unchecked(p, e);
}

Fq2 pairing(const Point& p, const Point& q) {
    if (p.infinity || q.infinity) return gt_one();
    const mpz_class& r = k().r;
    // Miller loop for f_{r,P} evaluated at phi(Q) = (-xQ, i*yQ). Line values
    // are scaled by F_q factors, which the final exponentiation removes.
    Fq2 f{1, 0};
    Jac t = to_jac(p);
    for (long i = static_cast<long>(mpz_sizeinbase(r.get_mpz_t(), 2)) - 2; i >= 0; --i) {
        {
            mpz_class zz = fsqr(t.Z);
            mpz_class m = 3 * fsqr(t.X) + fsqr(zz);
            red(m);
            mpz_class re = fsub(fmul(m, fadd(fmul(zz, q.x), t.X)), fmul(2 * t.Y, t.Y));
            mpz_class im = fmul(fmul(2 * t.Y, fmul(zz, t.Z)), q.y);
            f = q2_mul(q2_sqr(f), Fq2{std::move(re), std::move(im)});
            t = jac_double(t);
        }
        if (mpz_tstbit(r.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            mpz_class zz = fsqr(t.Z);
            mpz_class hh = fsub(fmul(p.x, zz), t.X);
            mpz_class rr = fsub(fmul(p.y, fmul(zz, t.Z)), t.Y);
            if (hh != 0) {
                mpz_class zh = fmul(t.Z, hh);
                mpz_class re = fsub(fmul(rr, fadd(q.x, p.x)), fmul(zh, p.y));
                mpz_class im = fmul(zh, q.y);
                f = q2_mul(f, Fq2{std::move(re), std::move(im)});
            }
            t = jac_add_affine(t, p);
        }
    }
    // f^((q^2 - 1) / r) = (conj(f) / f)^((q + 1) / r)
    Fq2 unitary = q2_mul(q2_conj(f), q2_inv(f));
    return q2_pow(unitary, k().h);
}

Fq2 gt_one() { return {1, 0}; }
Fq2 gt_mul(const Fq2& a, const Fq2& b) { return q2_mul(a, b); }

Fq2 gt_pow(const Fq2& a, const mpz_class& e) {
    mpz_class reduced;
    mpz_mod(reduced.get_mpz_t(), e.get_mpz_t(), k().r.get_mpz_t());
    return q2_pow(a, reduced);
}

Point hash_to_group(std::span<const std::uint8_t> msg) {
    static constexpr std::string_view kDst = "aggsig-type-a-h2g";
    const auto dst = std::span(reinterpret_cast<const std::uint8_t*>(kDst.data()), kDst.size());
    for (std::uint32_t ctr = 0;; ++ctr) {
        std::array<std::uint8_t, 5> tag{static_cast<std::uint8_t>(ctr >> 24),
                                        static_cast<std::uint8_t>(ctr >> 16),
                                        static_cast<std::uint8_t>(ctr >> 8),
                                        static_cast<std::uint8_t>(ctr), 0};
        Digest lo = sha256({dst, tag, msg});
        tag[4] = 1;
        Digest hi = sha256({dst, tag, msg});
        std::array<std::uint8_t, 64> wide{};
        std::copy(lo.begin(), lo.end(), wide.begin());
        std::copy(hi.begin(), hi.end(), wide.begin() + 32);
        mpz_class x = mpz_from_bytes(wide);
        red(x);
        mpz_class rhs = curve_rhs(x);
        if (rhs == 0) continue;
        auto y = field_sqrt(rhs);
        if (!y) continue;
        if ((hi[31] & 1) != mpz_odd_p(y->get_mpz_t())) *y = k().q - *y;
        Point candidate = mul_unchecked(Point::affine(x, *y), k().h);
        if (!candidate.infinity) return candidate;
    }
}

std::array<std::uint8_t, kPointBytes> serialize_point(const Point& p) {
    std::array<std::uint8_t, kPointBytes> out{};
    if (p.infinity) return out;
    out[0] = static_cast<std::uint8_t>(0x02 | (mpz_odd_p(p.y.get_mpz_t()) ? 1 : 0));
    mpz_to_bytes(p.x, std::span(out).subspan(1));
    return out;
}

std::optional<Point> parse_point(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kPointBytes) return std::nullopt;
    std::uint8_t tag = bytes[0];
    if (tag == 0x00) {
        for (std::size_t i = 1; i < bytes.size(); ++i) {
            if (bytes[i] != 0) return std::nullopt;
        }
        return Point::identity();
    }
    if (tag != 0x02 && tag != 0x03) return std::nullopt;
    mpz_class x = mpz_from_bytes(bytes.subspan(1));
    if (x >= k().q) return std::nullopt;
    mpz_class rhs = curve_rhs(x);
    auto y = field_sqrt(rhs);
    if (!y) return std::nullopt;
    if (static_cast<int>(mpz_odd_p(y->get_mpz_t()) ? 1 : 0) != (tag & 1)) {
        if (*y == 0) return std::nullopt;
        *y = k().q - *y;
    }
    Point p = Point::affine(std::move(x), std::move(*y));
    if (!in_group(p)) return std::nullopt;
    return p;
}

std::array<std::uint8_t, kGtBytes> serialize_gt(const Fq2& v) {
    std::array<std::uint8_t, kGtBytes> out{};
    mpz_to_bytes(v.re, std::span(out).first(kFieldBytes));
    mpz_to_bytes(v.im, std::span(out).subspan(kFieldBytes));
    return out;
}

std::array<std::uint8_t, kScalarBytes> serialize_scalar(const mpz_class& value) {
    std::array<std::uint8_t, kScalarBytes> out{};
    mpz_to_bytes(value, out);
    return out;
}

mpz_class mpz_from_bytes(std::span<const std::uint8_t> bytes) {
    mpz_class v;
    if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    return v;
}

void mpz_to_bytes(const mpz_class& v, std::span<std::uint8_t> out) {
    std::fill(out.begin(), out.end(), 0);
    std::size_t needed = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    if (sgn(v) < 0 || needed > out.size()) throw std::out_of_range("value does not fit in field width");
    if (v == 0) return;
    std::size_t written = 0;
    mpz_export(out.data() + (out.size() - needed), &written, 1, 1, 1, 0, v.get_mpz_t());
}

}  // namespace aggsig::crypto::type_a
