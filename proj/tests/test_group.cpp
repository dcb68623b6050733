#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "zkset/group.hpp"

using namespace zkset;

namespace {

std::vector<Group> all_backends(std::optional<SetupSecret>& rsa_secret, RandomSource& rng) {
    std::vector<Group> out;
    out.push_back(make_toy_group(23, 5));
    auto [rsa, secret] = make_rsa_group(256, rng, /*test_mode=*/true);
    rsa_secret = secret;
    out.push_back(rsa);
    for (auto id : {CurveId::ed25519, CurveId::secp256r1, CurveId::secp384r1,
                    CurveId::secp521r1, CurveId::bls12_381_g1})
        out.push_back(make_ec_group(id));
    return out;
}

BigInt exponent_modulus_of(const Group& g, const std::optional<SetupSecret>& secret) {
    if (auto q = g.public_order()) return *q;
    return secret->phi;
}

}  // namespace

TEST_CASE("named curves carry their standard field primes") {
    Group p256 = make_ec_group(CurveId::secp256r1);
    CHECK(p256.modulus() ==
          (BigInt(1) << 256) - (BigInt(1) << 224) + (BigInt(1) << 192) + (BigInt(1) << 96) - 1);
    Group ed = make_ec_group(CurveId::ed25519);
    CHECK(ed.modulus() == (BigInt(1) << 255) - 19);
    Group p384 = make_ec_group("secp384r1");
    CHECK(p384.modulus() ==
          (BigInt(1) << 384) - (BigInt(1) << 128) - (BigInt(1) << 96) + (BigInt(1) << 32) - 1);
    Group p521 = make_ec_group("secp521r1");
    CHECK(p521.modulus() == (BigInt(1) << 521) - 1);
    CHECK_THROWS_MATCHES(make_ec_group("unknown"), Error, Catch::Matchers::Predicate<Error>(
        [](const Error& e) { return e.kind() == ErrorKind::unsupported_backend; }));
}

TEST_CASE("generator multiples match the independent reference implementation") {
    // golden values from tests/oracles/ec_oracle.py
    struct Golden {
        CurveId id;
        uint64_t k;
        const char* hex;
    };
    const Golden cases[] = {
        {CurveId::ed25519, 2,
         "c9a3f86aae465f0e56513864510f3997561fa2c9e85ea21dc2292309f3cd6022"},
        {CurveId::ed25519, 3,
         "d4b4f5784868c3020403246717ec169ff79e26608ea126a1ab69ee77d1b16712"},
        {CurveId::ed25519, 9,
         "c0f1225584444ec730446e231390781ffdd2f256e9fcbeb2f40dddc2c2233d7f"},
        {CurveId::ed25519, 0xdeadbeef,
         "aa8a6aca3fad09b66800f719b672863ecc5c477a6fe745b3978a783081f5b080"},
        {CurveId::secp256r1, 2,
         "037cf27b188d034f7e8a52380304b51ac3c08969e277f21b35a60b48fc47669978"},
        {CurveId::secp256r1, 3,
         "025ecbe4d1a6330a44c8f7ef951d4bf165e6c6b721efada985fb41661bc6e7fd6c"},
        {CurveId::secp256r1, 9,
         "02ea68d7b6fedf0b71878938d51d71f8729e0acb8c2c6df8b3d79e8a4b90949ee0"},
        {CurveId::secp256r1, 0xdeadbeef,
         "02b487d183dc4806058eb31a29bedefd7bcca987b77a381a3684871d8449c18394"},
        {CurveId::secp384r1, 2,
         "0208d999057ba3d2d969260045c55b97f089025959a6f434d651d207d19fb96e9e4fe0e86ebe0e64"
         "f85b96a9c75295df61"},
        {CurveId::secp384r1, 9,
         "028f0a39a4049bcb3ef1bf29b8b025b78f2216f7291e6fd3bac6cb1ee285fb6e21c388528bfee2b9"
         "535c55e4461079118b"},
        {CurveId::secp521r1, 2,
         "0200433c219024277e7e682fcb288148c282747403279b1ccc06352c6e5505d769be97b3b204da6e"
         "f55507aa104a3a35c5af41cf2fa364d60fd967f43e3933ba6d783d"},
        {CurveId::secp521r1, 9,
         "0201585389e359e1e21826a2f5bf157156d488ed34541b988746992c4ab145b8c6b6657429e13961"
         "34da35f3c556df725a318f4f50babd85cd28661f45627967cbe207"},
        {CurveId::bls12_381_g1, 2,
         "a572cbea904d67468808c8eb50a9450c9721db309128012543902d0ac358a62ae28f75bb8f1c7c42"
         "c39a8c5529bf0f4e"},
        {CurveId::bls12_381_g1, 9,
         "99cdf3807146e68e041314ca93e1fee0991224ec2a74beb2866816fd0826ce7b6263ee31e953a86d"
         "1b72cc2215a57793"},
        {CurveId::bls12_381_g1, 0xdeadbeef,
         "acccb5bab2944a1bdc721c97f3affa035d507c78fe442a9284982bd4c27617b33f1d46e8191a1eda"
         "03d73c357752d219"},
    };
    for (const auto& c : cases) {
        Group g = make_ec_group(c.id);
        GroupElement e = exp(g, g.generator(), {BigInt(c.k)});
        CHECK(to_hex(encode_element(g, e)) == c.hex);
    }
}

TEST_CASE("group order annihilates the generator") {
    for (auto id : {CurveId::ed25519, CurveId::secp256r1, CurveId::secp384r1,
                    CurveId::secp521r1, CurveId::bls12_381_g1}) {
        Group g = make_ec_group(id);
        CHECK(exp(g, g.generator(), {*g.public_order()}) == identity(g));
        CHECK_FALSE(g.generator() == identity(g));
        CHECK(is_valid_element(g, g.generator()));
    }
}

TEST_CASE("toy group construction") {
    Group toy = make_toy_group(23, 5);
    CHECK(toy.data().order == 22);
    CHECK_THROWS_AS(make_toy_group(23, 0), Error);
    CHECK_THROWS_AS(make_toy_group(24, 5), Error);
    CHECK_THROWS_AS(make_toy_group(1 << 20, 3), Error);
    // subgroup case: 2 generates the order-11 subgroup of Z_23^*
    Group sub = make_toy_group(23, 2);
    CHECK(sub.data().order == 11);
}

TEST_CASE("toy exp and op match the worked arithmetic") {
    Group toy = make_toy_group(23, 5);
    GroupElement g = toy.generator();
    CHECK(exp(toy, g, {6}).x == 8);
    CHECK(exp(toy, g, {0}) == identity(toy));
    CHECK(exp(toy, g, {1}) == g);
    CHECK(op(toy, {2, 0, false}, {10, 0, false}).x == 20);
    GroupElement e = exp(toy, g, {7});
    CHECK(op(toy, e, identity(toy)) == e);
    CHECK(op(toy, e, inverse(toy, e)) == identity(toy));
}

TEST_CASE("toy multiplication table matches a brute-force reference") {
    Group toy = make_toy_group(23, 5);
    for (uint32_t a = 1; a < 23; a++) {
        for (uint32_t b = 1; b < 23; b++) {
            uint32_t want = a * b % 23;
            CHECK(op(toy, {a, 0, false}, {b, 0, false}).x == want);
        }
    }
}

TEST_CASE("rsa group generation") {
    SeededRandom rng(1);
    SECTION("textbook factors via injection") {
        auto [g, secret] = make_rsa_group_from_primes(11, 13);
        CHECK(g.modulus() == 143);
        CHECK(secret.phi == 120);
        CHECK_FALSE(g.public_order().has_value());
    }
    SECTION("bit-length floor") {
        CHECK_THROWS_MATCHES(make_rsa_group(32, rng), Error, Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.kind() == ErrorKind::parameter; }));
        CHECK_THROWS_AS(make_rsa_group(32, rng, /*test_mode=*/true), Error);
    }
    SECTION("non-benchmark size requires test mode") {
        CHECK_THROWS_AS(make_rsa_group(512, rng), Error);
        auto [g, secret] = make_rsa_group(128, rng, /*test_mode=*/true);
        CHECK(bit_length(g.modulus()) == 128);
    }
    SECTION("modulus has exactly the requested bits") {
        auto [g, secret] = make_rsa_group(1024, rng);
        CHECK(bit_length(g.modulus()) == 1024);
        CHECK(bit_length(secret.p) == 512);
        CHECK(bit_length(secret.q) == 512);
        CHECK(secret.p != secret.q);
        CHECK(secret.p * secret.q == g.modulus());
        CHECK(gcd(g.generator().x, g.modulus()) == 1);
        // exponents reduce mod phi without changing the group element
        BigInt x = uniform_below(rng, g.modulus() * g.modulus());
        CHECK(exp(g, g.generator(), {x % secret.phi}) ==
              detail::exp_impl(g.data(), g.generator(), x));
    }
    SECTION("equal injected primes rejected") {
        CHECK_THROWS_AS(make_rsa_group_from_primes(11, 11), Error);
        CHECK_THROWS_AS(make_rsa_group_from_primes(12, 13), Error);
    }
}

TEST_CASE("encoding round-trips and junk rejection on every backend") {
    SeededRandom rng(7);
    std::optional<SetupSecret> secret;
    for (const auto& g : all_backends(secret, rng)) {
        INFO(g.name());
        BigInt m = exponent_modulus_of(g, secret);
        for (int i = 0; i < 100; i++) {
            GroupElement e = exp(g, g.generator(), {uniform_below(rng, m)});
            Bytes enc = encode_element(g, e);
            CHECK(enc.size() == g.element_byte_len());
            CHECK(decode_element(g, BytesView(enc)) == e);
            Scalar s{uniform_below(rng, m)};
            if (g.public_order()) {
                Bytes se = encode_scalar(g, s);
                CHECK(se.size() == g.scalar_byte_len());
                CHECK(decode_scalar(g, BytesView(se)) == s);
            }
        }
        // identity round-trips too
        CHECK(decode_element(g, BytesView(encode_element(g, identity(g)))) == identity(g));
        Bytes junk(g.element_byte_len(), 0xff);
        CHECK_THROWS_MATCHES(decode_element(g, BytesView(junk)), Error,
                             Catch::Matchers::Predicate<Error>([](const Error& e) {
                                 return e.kind() == ErrorKind::decode;
                             }));
    }
}

TEST_CASE("decoded points outside the prime subgroup are rejected") {
    SECTION("ed25519 order-2 point") {
        Group ed = make_ec_group(CurveId::ed25519);
        // y = p - 1 encodes the order-2 point (0, -1)
        Bytes be = be_bytes(ed.modulus() - 1, 32);
        Bytes le(be.rbegin(), be.rend());
        CHECK_THROWS_AS(decode_element(ed, BytesView(le)), Error);
    }
    SECTION("bls12-381 cofactor points") {
        Group bls = make_ec_group(CurveId::bls12_381_g1);
        const auto& d = bls.data();
        int rejected = 0, tried = 0;
        for (BigInt x = 2; x < 40 && tried < 5; x++) {
            auto y = detail::sqrt_mod(mod(x * x * x + 4, d.field_p), d.field_p);
            if (!y) continue;
            tried++;
            Bytes enc = be_bytes(x, 48);
            enc[0] |= 0x80;
            try {
                decode_element(bls, BytesView(enc));
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::decode) rejected++;
            }
        }
        CHECK(tried == 5);
        CHECK(rejected == 5);  // random curve points land outside G1 essentially always
    }
}

TEST_CASE("exponent homomorphism: g^(a+b) = g^a * g^b") {
    SeededRandom rng(11);
    std::optional<SetupSecret> secret;
    for (const auto& g : all_backends(secret, rng)) {
        INFO(g.name());
        BigInt m = exponent_modulus_of(g, secret);
        for (int i = 0; i < 50; i++) {
            BigInt a = uniform_below(rng, m), b = uniform_below(rng, m);
            CHECK(exp(g, g.generator(), {mod(a + b, m)}) ==
                  op(g, exp(g, g.generator(), {a}), exp(g, g.generator(), {b})));
        }
    }
}

TEST_CASE("fixed encoding width across elements") {
    SeededRandom rng(13);
    std::optional<SetupSecret> secret;
    for (const auto& g : all_backends(secret, rng)) {
        BigInt m = exponent_modulus_of(g, secret);
        std::set<size_t> widths;
        widths.insert(encode_element(g, identity(g)).size());
        for (int i = 0; i < 20; i++)
            widths.insert(encode_element(g, exp(g, g.generator(), {uniform_below(rng, m)})).size());
        CHECK(widths.size() == 1);
        CHECK(*widths.begin() == g.element_byte_len());
    }
}

TEST_CASE("random scalars are in range and streams are independent") {
    SeededRandom rng(17);
    Group toy = make_toy_group(23, 5);
    for (int i = 0; i < 10000; i++) {
        Scalar s = random_scalar(toy, rng);
        CHECK(s.value >= 0);
        CHECK(s.value < 22);
    }
    SeededRandom r1(100), r2(200);
    Group ed = make_ec_group(CurveId::ed25519);
    CHECK_FALSE(random_scalar(ed, r1) == random_scalar(ed, r2));
}

TEST_CASE("random scalar uniformity (chi-square, toy order 22)") {
    SeededRandom rng(19);
    Group toy = make_toy_group(23, 5);
    constexpr int kDraws = 100000;
    std::map<uint32_t, int> counts;
    for (int i = 0; i < kDraws; i++)
        counts[static_cast<uint32_t>(random_scalar(toy, rng).value)]++;
    double expected = double(kDraws) / 22.0;
    double chi2 = 0;
    for (uint32_t v = 0; v < 22; v++) {
        double diff = counts[v] - expected;
        chi2 += diff * diff / expected;
    }
    // df = 21, alpha = 0.001 -> critical value 46.797
    CHECK(chi2 < 46.797);
}

TEST_CASE("hash_to_scalar is deterministic, separating and in range") {
    Group toy = make_toy_group(23, 5);
    Scalar a1 = hash_to_scalar(toy, BytesView(to_bytes("a")));
    Scalar a2 = hash_to_scalar(toy, BytesView(to_bytes("a")));
    Scalar b = hash_to_scalar(toy, BytesView(to_bytes("b")));
    CHECK(a1 == a2);
    CHECK_FALSE(a1 == b);
    SeededRandom rng(23);
    std::optional<SetupSecret> secret;
    for (const auto& g : all_backends(secret, rng)) {
        BigInt m = exponent_modulus_of(g, secret);
        std::optional<BigInt> pm;
        if (!g.public_order()) pm = m;
        for (int i = 0; i < 50; i++) {
            Bytes data = rng.bytes(16);
            Scalar s = hash_to_scalar(g, BytesView(data), pm);
            CHECK(s.value >= 0);
            CHECK(s.value < m);
        }
    }
    // empty input is stable across calls
    CHECK(hash_to_scalar(toy, BytesView{}) == hash_to_scalar(toy, BytesView{}));
}

TEST_CASE("fixed-base tables agree with plain exponentiation") {
    Group toy = make_toy_group(23, 5);
    FixedBaseTable table = precompute_base_table(toy, toy.generator(), 4);
    CHECK(exp_with_table(table, {6}).x == 8);
    CHECK(exp_with_table(table, {0}) == identity(toy));
    for (uint32_t s = 0; s < 22; s++)
        CHECK(exp_with_table(table, {s}) == exp(toy, toy.generator(), {s}));
    CHECK_THROWS_AS(precompute_base_table(toy, toy.generator(), 0), Error);
    CHECK_THROWS_AS(precompute_base_table(toy, toy.generator(), 9), Error);

    SeededRandom rng(29);
    Group ed = make_ec_group(CurveId::ed25519);
    GroupElement base = exp(ed, ed.generator(), random_scalar(ed, rng));
    FixedBaseTable et = precompute_base_table(ed, base, 6);
    for (int i = 0; i < 10; i++) {
        Scalar s = random_scalar(ed, rng);
        CHECK(exp_with_table(et, s) == exp(ed, base, s));
    }
}

TEST_CASE("group headers round-trip") {
    SeededRandom rng(31);
    std::optional<SetupSecret> secret;
    for (const auto& g : all_backends(secret, rng)) {
        Bytes header = write_group_header(g);
        Group back = read_group_header(BytesView(header));
        CHECK(same_group(g, back));
        CHECK(back.element_byte_len() == g.element_byte_len());
        CHECK(back.generator() == g.generator());
    }
    Bytes junk{0x09};
    CHECK_THROWS_AS(read_group_header(BytesView(junk)), Error);
}

TEST_CASE("setup secret serialization round-trips and validates") {
    auto [g, secret] = make_rsa_group_from_primes(11, 13);
    Bytes ser = serialize_setup_secret(secret);
    SetupSecret back = parse_setup_secret(BytesView(ser));
    CHECK(back.p == 11);
    CHECK(back.q == 13);
    CHECK(back.phi == 120);
    ser[ser.size() - 1] ^= 1;  // corrupt phi
    CHECK_THROWS_AS(parse_setup_secret(BytesView(ser)), Error);
}

TEST_CASE("operation counters observe exp and op calls") {
    Group toy = make_toy_group(23, 5);
    GroupElement e = exp(toy, toy.generator(), {7});
    OpCountScope scope;
    exp(toy, toy.generator(), {5});
    exp(toy, e, {3});
    op(toy, e, e);
    auto counts = scope.counters();
    CHECK(counts.exps == 2);
    CHECK(counts.ops == 1);
}
