#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zkset/bigint.hpp"
#include "zkset/bytes.hpp"
#include "zkset/detail/curves.hpp"
#include "zkset/errors.hpp"
#include "zkset/rng.hpp"
#include "zkset/sha256.hpp"

namespace zkset {

enum class GroupKind : uint8_t { toy_modular = 0, rsa = 1, ec_prime_order = 2 };

// Affine point or residue, depending on the backend. Residue backends use x
// only; Weierstrass points at infinity are normalized to (0, 0, infinity).
struct GroupElement {
    BigInt x;
    BigInt y;
    bool infinity = false;

    bool operator==(const GroupElement&) const = default;
};

struct Scalar {
    BigInt value;

    bool operator==(const Scalar&) const = default;
};

// RSA trusted-setup secret: the factorization and group exponent. Handed to
// the prover role only; never written into a public artifact.
struct SetupSecret {
    BigInt p;
    BigInt q;
    BigInt phi;
};

namespace detail {

struct GroupData {
    GroupKind kind;
    // ec
    CurveId curve = CurveId::ed25519;
    CurveForm form = CurveForm::short_weierstrass;
    BigInt field_p, curve_a, curve_d_or_b, cofactor;
    // residue backends: toy p or rsa N
    BigInt modulus;
    // exponent modulus where public: ec order / toy generator order; 0 for rsa
    BigInt order;
    GroupElement generator;
    size_t element_byte_len = 0;
    size_t scalar_byte_len = 0;
    // fixed-base table for the generator, window w: entries[i*(2^w-1)+(d-1)]
    // holds g^(d * 2^(i*w))
    unsigned gen_window = 0;
    std::vector<GroupElement> gen_table;
};

}  // namespace detail

class Group {
  public:
    Group() = default;
    explicit Group(std::shared_ptr<const detail::GroupData> d) : d_(std::move(d)) {}

    GroupKind kind() const { return d_->kind; }
    CurveId curve() const { return d_->curve; }
    const GroupElement& generator() const { return d_->generator; }
    size_t element_byte_len() const { return d_->element_byte_len; }
    size_t scalar_byte_len() const { return d_->scalar_byte_len; }

    // toy: p, rsa: N, ec: field prime
    const BigInt& modulus() const {
        return d_->kind == GroupKind::ec_prime_order ? d_->field_p : d_->modulus;
    }

    // ec/toy: exponent-group order; rsa has no public order
    std::optional<BigInt> public_order() const {
        if (d_->kind == GroupKind::rsa) return std::nullopt;
        return d_->order;
    }

    bool valid() const { return d_ != nullptr; }
    const detail::GroupData& data() const { return *d_; }

    std::string name() const {
        switch (d_->kind) {
            case GroupKind::toy_modular:
                return "toy-" + d_->modulus.str();
            case GroupKind::rsa:
                return "rsa-" + std::to_string(bit_length(d_->modulus));
            case GroupKind::ec_prime_order:
                return std::string(curve_name(d_->curve));
        }
        return "?";
    }

  private:
    std::shared_ptr<const detail::GroupData> d_;
};

// ---------------------------------------------------------------------------
// operation counting (used by tests to pin down verification work)

struct OpCounters {
    uint64_t exps = 0;
    uint64_t ops = 0;
};

namespace detail {
inline thread_local OpCounters op_counters;
inline thread_local bool count_ops = false;
}  // namespace detail

class OpCountScope {
  public:
    OpCountScope() {
        detail::op_counters = {};
        detail::count_ops = true;
    }
    ~OpCountScope() { detail::count_ops = false; }
    OpCounters counters() const { return detail::op_counters; }
};

// ---------------------------------------------------------------------------
// backend arithmetic

namespace detail {

inline BigInt field_inv(const BigInt& a, const BigInt& p) {
    auto inv = mod_inverse(a, p);
    if (!inv) fail(ErrorKind::parameter, "non-invertible field element");
    return *inv;
}

// sqrt mod p for p = 3 (mod 4) and p = 5 (mod 8); covers every built curve
inline std::optional<BigInt> sqrt_mod(const BigInt& v0, const BigInt& p) {
    BigInt v = mod(v0, p);
    if (v == 0) return BigInt(0);
    BigInt s;
    if (p % 4 == 3) {
        s = mod_pow(v, (p + 1) / 4, p);
    } else if (p % 8 == 5) {
        s = mod_pow(v, (p + 3) / 8, p);
        if (mod(s * s, p) != v) s = mod(s * mod_pow(BigInt(2), (p - 1) / 4, p), p);
    } else {
        fail(ErrorKind::parameter, "unsupported field for sqrt");
    }
    if (mod(s * s, p) != v) return std::nullopt;
    return s;
}

inline GroupElement identity_of(const GroupData& g) {
    switch (g.kind) {
        case GroupKind::toy_modular:
        case GroupKind::rsa:
            return {BigInt(1), BigInt(0), false};
        case GroupKind::ec_prime_order:
            if (g.form == CurveForm::twisted_edwards) return {BigInt(0), BigInt(1), false};
            return {BigInt(0), BigInt(0), true};
    }
    fail(ErrorKind::parameter, "bad group kind");
}

// complete twisted Edwards addition (a = -1, d nonsquare)
inline GroupElement ed_add(const GroupData& g, const GroupElement& a, const GroupElement& b) {
    const BigInt& p = g.field_p;
    BigInt t = mod(g.curve_d_or_b * a.x * b.x % p * a.y % p * b.y, p);
    BigInt nx = mod(a.x * b.y + a.y * b.x, p);
    BigInt ny = mod(a.y * b.y + a.x * b.x, p);
    // one joint inversion for both denominators
    BigInt dp = mod(1 + t, p), dm = mod(1 - t, p);
    BigInt inv = field_inv(mod(dp * dm, p), p);
    return {mod(nx * dm % p * inv, p), mod(ny * dp % p * inv, p), false};
}

inline GroupElement ws_add(const GroupData& g, const GroupElement& a, const GroupElement& b) {
    if (a.infinity) return b;
    if (b.infinity) return a;
    const BigInt& p = g.field_p;
    if (a.x == b.x) {
        if (mod(a.y + b.y, p) == 0) return identity_of(g);
        // doubling
        BigInt lam = mod((3 * a.x * a.x + g.curve_a) * field_inv(mod(2 * a.y, p), p), p);
        BigInt x3 = mod(lam * lam - 2 * a.x, p);
        return {x3, mod(lam * (a.x - x3) - a.y, p), false};
    }
    BigInt lam = mod((b.y - a.y) * field_inv(mod(b.x - a.x, p), p), p);
    BigInt x3 = mod(lam * lam - a.x - b.x, p);
    return {x3, mod(lam * (a.x - x3) - a.y, p), false};
}

inline GroupElement op_impl(const GroupData& g, const GroupElement& a, const GroupElement& b) {
    switch (g.kind) {
        case GroupKind::toy_modular:
        case GroupKind::rsa:
            return {mod(a.x * b.x, g.modulus), BigInt(0), false};
        case GroupKind::ec_prime_order:
            return g.form == CurveForm::twisted_edwards ? ed_add(g, a, b) : ws_add(g, a, b);
    }
    fail(ErrorKind::parameter, "bad group kind");
}

inline GroupElement invert_impl(const GroupData& g, const GroupElement& a) {
    switch (g.kind) {
        case GroupKind::toy_modular:
        case GroupKind::rsa:
            return {field_inv(a.x, g.modulus), BigInt(0), false};
        case GroupKind::ec_prime_order:
            if (g.form == CurveForm::twisted_edwards)
                return {mod(-a.x, g.field_p), a.y, false};
            if (a.infinity) return a;
            return {a.x, mod(-a.y, g.field_p), false};
    }
    fail(ErrorKind::parameter, "bad group kind");
}

// plain square-and-multiply; exponent taken as a non-negative integer
inline GroupElement exp_impl(const GroupData& g, const GroupElement& base, const BigInt& e) {
    if (e < 0) fail(ErrorKind::parameter, "negative exponent");
    if (g.kind != GroupKind::ec_prime_order)
        return {mod_pow(base.x, e, g.modulus), BigInt(0), false};
    GroupElement acc = identity_of(g);
    size_t nbits = bit_length(e);
    for (size_t i = nbits; i-- > 0;) {
        acc = op_impl(g, acc, acc);
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i)))
            acc = op_impl(g, acc, base);
    }
    return acc;
}

// fixed-base walk over a precomputed window table
inline GroupElement exp_table_walk(const GroupData& g, const std::vector<GroupElement>& table,
                                   unsigned w, const BigInt& e) {
    GroupElement acc = identity_of(g);
    size_t mask = (size_t(1) << w) - 1;
    BigInt rest = e;
    size_t window = 0;
    size_t per = mask;  // entries per window: 2^w - 1
    while (rest != 0) {
        size_t digit = static_cast<size_t>(rest & mask);
        if (digit != 0) {
            size_t idx = window * per + digit - 1;
            if (idx >= table.size()) fail(ErrorKind::parameter, "exponent exceeds table range");
            acc = op_impl(g, acc, table[idx]);
        }
        rest >>= w;
        window++;
    }
    return acc;
}

inline std::vector<GroupElement> build_table(const GroupData& g, const GroupElement& base,
                                             unsigned w, size_t max_bits) {
    size_t windows = (max_bits + w - 1) / w;
    size_t per = (size_t(1) << w) - 1;
    std::vector<GroupElement> table;
    table.reserve(windows * per);
    GroupElement window_base = base;  // base^(2^(i*w))
    for (size_t i = 0; i < windows; i++) {
        GroupElement cur = window_base;
        for (size_t d = 1; d <= per; d++) {
            table.push_back(cur);
            if (d < per) cur = op_impl(g, cur, window_base);
        }
        // advance to the next window: square w times
        window_base = op_impl(g, table[i * per + per - 1], window_base);
    }
    return table;
}

inline bool on_curve(const GroupData& g, const GroupElement& e) {
    const BigInt& p = g.field_p;
    if (g.form == CurveForm::twisted_edwards) {
        BigInt x2 = mod(e.x * e.x, p), y2 = mod(e.y * e.y, p);
        return mod(-x2 + y2 - 1 - g.curve_d_or_b * x2 % p * y2, p) == 0;
    }
    if (e.infinity) return true;
    BigInt lhs = mod(e.y * e.y, p);
    BigInt rhs = mod(e.x * e.x % p * e.x + g.curve_a * e.x + g.curve_d_or_b, p);
    return lhs == rhs;
}

inline bool in_prime_subgroup(const GroupData& g, const GroupElement& e) {
    if (g.cofactor == 1) return true;
    return exp_impl(g, e, g.order) == identity_of(g);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// public group operations

inline GroupElement identity(const Group& g) { return detail::identity_of(g.data()); }

inline GroupElement op(const Group& g, const GroupElement& a, const GroupElement& b) {
    if (detail::count_ops) detail::op_counters.ops++;
    return detail::op_impl(g.data(), a, b);
}

inline GroupElement inverse(const Group& g, const GroupElement& a) {
    return detail::invert_impl(g.data(), a);
}

namespace detail {

// shared by exp() and the batch path; exponent is any non-negative integer
inline GroupElement exp_integer(const GroupData& g, const GroupElement& base, const BigInt& e) {
    if (!g.gen_table.empty() && base == g.generator) {
        size_t per = (size_t(1) << g.gen_window) - 1;
        size_t covered_bits = (g.gen_table.size() / per) * g.gen_window;
        if (bit_length(e) <= covered_bits) return exp_table_walk(g, g.gen_table, g.gen_window, e);
    }
    return exp_impl(g, base, e);
}

}  // namespace detail

inline GroupElement exp(const Group& g, const GroupElement& base, const Scalar& s) {
    if (detail::count_ops) detail::op_counters.exps++;
    return detail::exp_integer(g.data(), base, s.value);
}

inline bool is_valid_element(const Group& g, const GroupElement& e) {
    const auto& d = g.data();
    switch (d.kind) {
        case GroupKind::toy_modular:
            if (e.x <= 0 || e.x >= d.modulus) return false;
            return detail::exp_impl(d, e, d.order) == detail::identity_of(d);
        case GroupKind::rsa:
            return e.x > 0 && e.x < d.modulus && gcd(e.x, d.modulus) == 1;
        case GroupKind::ec_prime_order:
            if (!e.infinity && (e.x < 0 || e.x >= d.field_p || e.y < 0 || e.y >= d.field_p))
                return false;
            return detail::on_curve(d, e) && detail::in_prime_subgroup(d, e);
    }
    return false;
}

// ---------------------------------------------------------------------------
// element and scalar codecs (canonical fixed-width encodings)

inline Bytes encode_element(const Group& g, const GroupElement& e) {
    const auto& d = g.data();
    switch (d.kind) {
        case GroupKind::toy_modular:
        case GroupKind::rsa:
            return be_bytes(e.x, d.element_byte_len);
        case GroupKind::ec_prime_order:
            break;
    }
    if (d.form == detail::CurveForm::twisted_edwards) {
        // y little-endian, sign of x in the top bit
        Bytes be = be_bytes(e.y, 32);
        Bytes out(be.rbegin(), be.rend());
        if ((e.x & 1) != 0) out[31] |= 0x80;
        return out;
    }
    if (d.curve == CurveId::bls12_381_g1) {
        // zcash-style: compression flag, infinity flag, y-sign flag
        Bytes out(48, 0);
        if (e.infinity) {
            out[0] = 0xc0;
            return out;
        }
        out = be_bytes(e.x, 48);
        out[0] |= 0x80;
        if (e.y > (d.field_p - 1) / 2) out[0] |= 0x20;
        return out;
    }
    // SEC1 compressed, widened: infinity encodes as all-zero
    Bytes out(d.element_byte_len, 0);
    if (e.infinity) return out;
    out[0] = static_cast<uint8_t>(0x02 | static_cast<uint8_t>(e.y & 1));
    Bytes xb = be_bytes(e.x, d.element_byte_len - 1);
    std::copy(xb.begin(), xb.end(), out.begin() + 1);
    return out;
}

inline GroupElement decode_element(const Group& g, BytesView bytes) {
    const auto& d = g.data();
    if (bytes.size() != d.element_byte_len) fail(ErrorKind::decode, "bad element length");
    switch (d.kind) {
        case GroupKind::toy_modular:
        case GroupKind::rsa: {
            GroupElement e{from_be_bytes(bytes), BigInt(0), false};
            if (!is_valid_element(g, e)) fail(ErrorKind::decode, "element outside group");
            return e;
        }
        case GroupKind::ec_prime_order:
            break;
    }
    if (d.form == detail::CurveForm::twisted_edwards) {
        Bytes le(bytes.begin(), bytes.end());
        bool sign = (le[31] & 0x80) != 0;
        le[31] &= 0x7f;
        Bytes be(le.rbegin(), le.rend());
        BigInt y = from_be_bytes(be);
        if (y >= d.field_p) fail(ErrorKind::decode, "non-canonical y");
        BigInt y2 = mod(y * y, d.field_p);
        BigInt denom = mod(d.curve_d_or_b * y2 + 1, d.field_p);
        BigInt xx = mod((y2 - 1) * detail::field_inv(denom, d.field_p), d.field_p);
        auto x = detail::sqrt_mod(xx, d.field_p);
        if (!x) fail(ErrorKind::decode, "not a curve point");
        BigInt xv = *x;
        if (xv == 0 && sign) fail(ErrorKind::decode, "non-canonical x sign");
        if ((xv & 1) != (sign ? 1 : 0)) xv = mod(-xv, d.field_p);
        GroupElement e{xv, y, false};
        if (!detail::in_prime_subgroup(d, e)) fail(ErrorKind::decode, "point outside subgroup");
        return e;
    }
    if (d.curve == CurveId::bls12_381_g1) {
        uint8_t flags = bytes[0];
        if ((flags & 0x80) == 0) fail(ErrorKind::decode, "expected compressed point");
        if (flags & 0x40) {
            Bytes rest(bytes.begin(), bytes.end());
            rest[0] &= 0x3f;
            for (uint8_t b : rest)
                if (b != 0) fail(ErrorKind::decode, "non-canonical infinity");
            return detail::identity_of(d);
        }
        Bytes xb(bytes.begin(), bytes.end());
        xb[0] &= 0x1f;
        BigInt x = from_be_bytes(xb);
        if (x >= d.field_p) fail(ErrorKind::decode, "non-canonical x");
        auto y = detail::sqrt_mod(mod(x * x % d.field_p * x + d.curve_d_or_b, d.field_p), d.field_p);
        if (!y) fail(ErrorKind::decode, "not a curve point");
        BigInt yv = *y;
        bool big = yv > (d.field_p - 1) / 2;
        if (big != ((flags & 0x20) != 0)) yv = mod(-yv, d.field_p);
        GroupElement e{x, yv, false};
        if (!detail::in_prime_subgroup(d, e)) fail(ErrorKind::decode, "point outside subgroup");
        return e;
    }
    // SEC1 compressed
    uint8_t prefix = bytes[0];
    if (prefix == 0x00) {
        for (uint8_t b : bytes)
            if (b != 0) fail(ErrorKind::decode, "non-canonical infinity");
        return detail::identity_of(d);
    }
    if (prefix != 0x02 && prefix != 0x03) fail(ErrorKind::decode, "bad point prefix");
    BigInt x = from_be_bytes(bytes.subspan(1));
    if (x >= d.field_p) fail(ErrorKind::decode, "non-canonical x");
    auto y = detail::sqrt_mod(mod(x * x % d.field_p * x + d.curve_a * x + d.curve_d_or_b, d.field_p),
                              d.field_p);
    if (!y) fail(ErrorKind::decode, "not a curve point");
    BigInt yv = *y;
    if ((yv & 1) != (prefix == 0x03 ? 1 : 0)) yv = mod(-yv, d.field_p);
    return {x, yv, false};
}

inline Bytes encode_scalar(const Group& g, const Scalar& s) {
    return be_bytes(s.value, g.scalar_byte_len());
}

inline Scalar decode_scalar(const Group& g, BytesView bytes) {
    if (bytes.size() != g.scalar_byte_len()) fail(ErrorKind::decode, "bad scalar length");
    BigInt v = from_be_bytes(bytes);
    // ec/toy scalars must be canonical (below the public order); rsa scalars
    // live mod the secret phi(N), which a verifier cannot check, so only the
    // width is enforced there
    if (auto q = g.public_order(); q && v >= *q) fail(ErrorKind::decode, "non-canonical scalar");
    return {v};
}

// ---------------------------------------------------------------------------
// exponent-modulus plumbing: q for ec/toy, phi(N) (prover side only) for rsa

inline BigInt resolve_exponent_modulus(const Group& g,
                                       const std::optional<BigInt>& prover_modulus = {}) {
    if (auto q = g.public_order()) return *q;
    if (!prover_modulus)
        fail(ErrorKind::missing_prover_key, "rsa exponent arithmetic requires phi(N)");
    return *prover_modulus;
}

inline Scalar make_scalar(const Group& g, const BigInt& v,
                          const std::optional<BigInt>& prover_modulus = {}) {
    return {mod(v, resolve_exponent_modulus(g, prover_modulus))};
}

inline Scalar random_scalar(const Group& g, RandomSource& rng,
                            const std::optional<BigInt>& prover_modulus = {}) {
    return {uniform_below(rng, resolve_exponent_modulus(g, prover_modulus))};
}

Bytes write_group_header(const Group& g);  // defined below

inline Scalar hash_to_scalar(const Group& g, BytesView data,
                             const std::optional<BigInt>& prover_modulus = {}) {
    BigInt m = resolve_exponent_modulus(g, prover_modulus);
    Bytes header = write_group_header(g);
    auto block = [&](uint8_t tag) {
        Sha256 h;
        h.update(std::string("zkset/hash-to-scalar/v1"));
        h.update_byte(tag);
        h.update(BytesView(header));
        h.update(data);
        return h.finalize();
    };
    auto h0 = block(0x00), h1 = block(0x01);
    Bytes wide;
    append(wide, BytesView(h0.data(), h0.size()));
    append(wide, BytesView(h1.data(), h1.size()));
    return {mod(from_be_bytes(wide), m)};
}

// ---------------------------------------------------------------------------
// fixed-base tables (public interface)

class FixedBaseTable {
  public:
    FixedBaseTable(Group group, GroupElement base, unsigned window_bits)
        : group_(std::move(group)), base_(std::move(base)), window_bits_(window_bits) {
        if (window_bits < 1 || window_bits > 8)
            fail(ErrorKind::parameter, "window_bits must be in [1, 8]");
        const auto& d = group_.data();
        size_t max_bits =
            d.kind == GroupKind::rsa ? bit_length(d.modulus) : bit_length(d.order);
        entries_ = detail::build_table(d, base_, window_bits, std::max<size_t>(max_bits, 1));
    }

    const Group& group() const { return group_; }
    const GroupElement& base() const { return base_; }
    unsigned window_bits() const { return window_bits_; }
    size_t covered_bits() const {
        size_t per = (size_t(1) << window_bits_) - 1;
        return (entries_.size() / per) * window_bits_;
    }

    GroupElement power(const BigInt& e) const {
        if (e < 0) fail(ErrorKind::parameter, "negative exponent");
        if (bit_length(e) > covered_bits())
            return detail::exp_impl(group_.data(), base_, e);
        return detail::exp_table_walk(group_.data(), entries_, window_bits_, e);
    }

  private:
    Group group_;
    GroupElement base_;
    unsigned window_bits_;
    std::vector<GroupElement> entries_;
};

inline FixedBaseTable precompute_base_table(const Group& g, const GroupElement& base,
                                            unsigned window_bits) {
    return FixedBaseTable(g, base, window_bits);
}

inline GroupElement exp_with_table(const FixedBaseTable& table, const Scalar& s) {
    if (detail::count_ops) detail::op_counters.exps++;
    return table.power(s.value);
}

// ---------------------------------------------------------------------------
// factories

namespace detail {

inline void attach_generator_table(GroupData& d, unsigned window = 8) {
    size_t max_bits =
        d.kind == GroupKind::rsa ? bit_length(d.modulus) : bit_length(d.order);
    d.gen_window = window;
    d.gen_table = build_table(d, d.generator, window, std::max<size_t>(max_bits, 1));
}

}  // namespace detail

inline Group make_ec_group(CurveId id) {
    using namespace detail;
    const CurveSpec& spec = curve_spec(id);
    auto d = std::make_shared<GroupData>();
    d->kind = GroupKind::ec_prime_order;
    d->curve = id;
    d->form = spec.form;
    d->field_p = hex_int(spec.field_p_hex);
    d->curve_a = spec.form == CurveForm::twisted_edwards ? BigInt(-1) : hex_int(spec.a_hex);
    d->curve_d_or_b = hex_int(spec.b_hex);
    d->cofactor = hex_int(spec.cofactor_hex);
    d->order = hex_int(spec.order_hex);
    d->generator = {hex_int(spec.gx_hex), hex_int(spec.gy_hex), false};
    d->element_byte_len = spec.element_byte_len;
    d->scalar_byte_len = spec.scalar_byte_len;
    attach_generator_table(*d);
    return Group(std::move(d));
}

inline Group make_ec_group(std::string_view name) { return make_ec_group(curve_from_name(name)); }

inline Group make_toy_group(uint32_t p, uint32_t g) {
    if (p >= (1u << 20)) fail(ErrorKind::parameter, "toy modulus must be below 2^20");
    if (p < 3 || !is_probable_prime(BigInt(p)))
        fail(ErrorKind::parameter, "toy modulus must be prime");
    if (g % p == 0) fail(ErrorKind::parameter, "generator must be a unit mod p");
    uint32_t gg = g % p;
    // brute-force multiplicative order
    uint64_t acc = gg;
    uint32_t order = 1;
    while (acc != 1) {
        acc = acc * gg % p;
        order++;
    }
    auto d = std::make_shared<detail::GroupData>();
    d->kind = GroupKind::toy_modular;
    d->modulus = p;
    d->order = order;
    d->generator = {BigInt(gg), BigInt(0), false};
    d->element_byte_len = 4;
    d->scalar_byte_len = 4;
    detail::attach_generator_table(*d);
    return Group(std::move(d));
}

inline std::pair<Group, SetupSecret> make_rsa_group_from_primes(
    const BigInt& p, const BigInt& q, const std::optional<BigInt>& generator = {},
    RandomSource* rng = nullptr) {
    if (p == q) fail(ErrorKind::parameter, "rsa primes must be distinct");
    if (!is_probable_prime(p) || !is_probable_prime(q))
        fail(ErrorKind::parameter, "rsa factors must be prime");
    auto d = std::make_shared<detail::GroupData>();
    d->kind = GroupKind::rsa;
    d->modulus = p * q;
    d->order = 0;
    size_t len = (bit_length(d->modulus) + 7) / 8;
    d->element_byte_len = len;
    d->scalar_byte_len = len;
    BigInt g;
    if (generator) {
        g = mod(*generator, d->modulus);
        if (g == 0 || gcd(g, d->modulus) != 1)
            fail(ErrorKind::parameter, "generator not a unit mod N");
    } else {
        SystemRandom fallback;
        RandomSource& r = rng ? *rng : fallback;
        do {
            g = uniform_below(r, d->modulus - 2) + 2;
        } while (gcd(g, d->modulus) != 1);
    }
    d->generator = {g, BigInt(0), false};
    detail::attach_generator_table(*d);
    SetupSecret secret{p, q, (p - 1) * (q - 1)};
    return {Group(std::move(d)), secret};
}

inline std::pair<Group, SetupSecret> make_rsa_group(unsigned bits, RandomSource& rng,
                                                    bool test_mode = false) {
    if (bits < 64) fail(ErrorKind::parameter, "rsa modulus below the 64-bit test floor");
    if (!test_mode && bits != 1024 && bits != 2048 && bits != 3072 && bits != 4096)
        fail(ErrorKind::parameter, "rsa bits must be 1024, 2048, 3072 or 4096");
    if (bits % 2 != 0) fail(ErrorKind::parameter, "rsa bits must be even");
    unsigned half = bits / 2;
    auto random_prime = [&]() {
        while (true) {
            BigInt c = uniform_below(rng, BigInt(1) << half);
            // top two bits set so p*q lands on exactly `bits` bits; force odd
            c |= (BigInt(3) << (half - 2)) | 1;
            if (is_probable_prime(c)) return c;
        }
    };
    BigInt p = random_prime();
    BigInt q;
    do {
        q = random_prime();
    } while (q == p);
    return make_rsa_group_from_primes(p, q, std::nullopt, &rng);
}

// ---------------------------------------------------------------------------
// self-describing group header, embedded in commitment and proof files

inline Bytes write_group_header(const Group& g) {
    const auto& d = g.data();
    Bytes out;
    append_u8(out, static_cast<uint8_t>(d.kind));
    switch (d.kind) {
        case GroupKind::toy_modular:
            append_u32_be(out, static_cast<uint32_t>(d.modulus));
            append_u32_be(out, static_cast<uint32_t>(d.generator.x));
            append_u32_be(out, static_cast<uint32_t>(d.order));
            break;
        case GroupKind::rsa: {
            Bytes n = be_bytes(d.modulus, d.element_byte_len);
            append_u32_be(out, static_cast<uint32_t>(n.size()));
            append(out, BytesView(n));
            append(out, BytesView(be_bytes(d.generator.x, d.element_byte_len)));
            break;
        }
        case GroupKind::ec_prime_order:
            append_u8(out, static_cast<uint8_t>(d.curve));
            break;
    }
    return out;
}

inline Group read_group_header(ByteReader& in) {
    uint8_t kind = in.u8();
    switch (static_cast<GroupKind>(kind)) {
        case GroupKind::toy_modular: {
            uint32_t p = in.u32_be();
            uint32_t g = in.u32_be();
            uint32_t order = in.u32_be();
            Group grp = make_toy_group(p, g);
            if (grp.data().order != order) fail(ErrorKind::decode, "toy order mismatch");
            return grp;
        }
        case GroupKind::rsa: {
            uint32_t len = in.u32_be();
            if (len == 0 || len > (1u << 16)) fail(ErrorKind::decode, "bad rsa modulus length");
            BigInt n = from_be_bytes(in.take(len));
            BigInt g = from_be_bytes(in.take(len));
            if (n < 4 || g == 0 || g >= n || gcd(g, n) != 1)
                fail(ErrorKind::decode, "bad rsa group header");
            auto d = std::make_shared<detail::GroupData>();
            d->kind = GroupKind::rsa;
            d->modulus = n;
            d->order = 0;
            d->element_byte_len = len;
            d->scalar_byte_len = len;
            d->generator = {g, BigInt(0), false};
            detail::attach_generator_table(*d);
            return Group(std::move(d));
        }
        case GroupKind::ec_prime_order: {
            uint8_t curve = in.u8();
            if (curve > static_cast<uint8_t>(CurveId::bls12_381_g1))
                fail(ErrorKind::decode, "unknown curve id");
            return make_ec_group(static_cast<CurveId>(curve));
        }
    }
    fail(ErrorKind::decode, "unknown group kind");
}

inline Group read_group_header(BytesView bytes) {
    ByteReader r(bytes);
    Group g = read_group_header(r);
    r.expect_end();
    return g;
}

inline bool same_group(const Group& a, const Group& b) {
    return write_group_header(a) == write_group_header(b);
}

// Setup-secret file (RSA trusted setup). Secret material: lives in a separate
// file from the public parameters and never inside commitments or proofs.
inline Bytes serialize_setup_secret(const SetupSecret& s) {
    Bytes out;
    auto put = [&out](const BigInt& v) {
        Bytes b = be_bytes(v, (bit_length(v) + 7) / 8);
        append_u32_be(out, static_cast<uint32_t>(b.size()));
        append(out, BytesView(b));
    };
    put(s.p);
    put(s.q);
    put(s.phi);
    return out;
}

inline SetupSecret parse_setup_secret(BytesView bytes) {
    ByteReader in(bytes);
    auto get = [&in]() {
        uint32_t len = in.u32_be();
        if (len == 0 || len > (1u << 16)) fail(ErrorKind::decode, "bad secret field length");
        return from_be_bytes(in.take(len));
    };
    SetupSecret s;
    s.p = get();
    s.q = get();
    s.phi = get();
    in.expect_end();
    if (s.phi != (s.p - 1) * (s.q - 1)) fail(ErrorKind::decode, "inconsistent setup secret");
    return s;
}

}  // namespace zkset
