#pragma once

#include <cstdint>
#include <string_view>

#include "zkset/bigint.hpp"
#include "zkset/errors.hpp"

namespace zkset {

enum class CurveId : uint8_t {
    ed25519 = 0,
    secp256r1 = 1,
    secp384r1 = 2,
    secp521r1 = 3,
    bls12_381_g1 = 4,
};

namespace detail {

enum class CurveForm { twisted_edwards, short_weierstrass };

// Constants cross-checked against their defining equations and OpenSSL by
// tests/oracles/ec_oracle.py; the same script emits the golden multiples
// pinned in test_group.cpp.
struct CurveSpec {
    const char* name;
    CurveForm form;
    const char* field_p_hex;
    const char* a_hex;  // edwards: unused (a = -1 fixed); weierstrass: curve a
    const char* b_hex;  // edwards: d; weierstrass: curve b
    const char* gx_hex;
    const char* gy_hex;
    const char* order_hex;
    const char* cofactor_hex;
    size_t element_byte_len;
    size_t scalar_byte_len;
};

inline const CurveSpec& curve_spec(CurveId id) {
    static const CurveSpec ed25519{
        "ed25519",
        CurveForm::twisted_edwards,
        "7fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffed",
        "",
        "52036cee2b6ffe738cc740797779e89800700a4d4141d8ab75eb4dca135978a3",
        "216936d3cd6e53fec0a4e231fdd6dc5c692cc7609525a7b2c9562d608f25d51a",
        "6666666666666666666666666666666666666666666666666666666666666658",
        "1000000000000000000000000000000014def9dea2f79cd65812631a5cf5d3ed",
        "8",
        32, 32};
    static const CurveSpec secp256r1{
        "secp256r1",
        CurveForm::short_weierstrass,
        "ffffffff00000001000000000000000000000000ffffffffffffffffffffffff",
        "ffffffff00000001000000000000000000000000fffffffffffffffffffffffc",
        "5ac635d8aa3a93e7b3ebbd55769886bc651d06b0cc53b0f63bce3c3e27d2604b",
        "6b17d1f2e12c4247f8bce6e563a440f277037d812deb33a0f4a13945d898c296",
        "4fe342e2fe1a7f9b8ee7eb4a7c0f9e162bce33576b315ececbb6406837bf51f5",
        "ffffffff00000000ffffffffffffffffbce6faada7179e84f3b9cac2fc632551",
        "1",
        33, 32};
    static const CurveSpec secp384r1{
        "secp384r1",
        CurveForm::short_weierstrass,
        "fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffeffffffff00000000"
        "00000000ffffffff",
        "fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffeffffffff00000000"
        "00000000fffffffc",
        "b3312fa7e23ee7e4988e056be3f82d19181d9c6efe8141120314088f5013875ac656398d8a2ed19d"
        "2a85c8edd3ec2aef",
        "aa87ca22be8b05378eb1c71ef320ad746e1d3b628ba79b9859f741e082542a385502f25dbf55296c"
        "3a545e3872760ab7",
        "3617de4a96262c6f5d9e98bf9292dc29f8f41dbd289a147ce9da3113b5f0b8c00a60b1ce1d7e819d"
        "7a431d7c90ea0e5f",
        "ffffffffffffffffffffffffffffffffffffffffffffffffc7634d81f4372ddf581a0db248b0a77a"
        "ecec196accc52973",
        "1",
        49, 48};
    static const CurveSpec secp521r1{
        "secp521r1",
        CurveForm::short_weierstrass,
        "01ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff"
        "ffffffffffffffffffffffffffffffffffffffffffffffffff",
        "01ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff"
        "fffffffffffffffffffffffffffffffffffffffffffffffffc",
        "0051953eb9618e1c9a1f929a21a0b68540eea2da725b99b315f3b8b489918ef109e156193951ec7e"
        "937b1652c0bd3bb1bf073573df883d2c34f1ef451fd46b503f00",
        "00c6858e06b70404e9cd9e3ecb662395b4429c648139053fb521f828af606b4d3dbaa14b5e77efe7"
        "5928fe1dc127a2ffa8de3348b3c1856a429bf97e7e31c2e5bd66",
        "011839296a789a3bc0045c8a5fb42c7d1bd998f54449579b446817afbd17273e662c97ee72995ef4"
        "2640c550b9013fad0761353c7086a272c24088be94769fd16650",
        "01fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffa51868783bf2f"
        "966b7fcc0148f709a5d03bb5c9b8899c47aebb6fb71e91386409",
        "1",
        67, 66};
    static const CurveSpec bls12_381_g1{
        "bls12-381-g1",
        CurveForm::short_weierstrass,
        "1a0111ea397fe69a4b1ba7b6434bacd764774b84f38512bf6730d2a0f6b0f6241eabfffeb153ffff"
        "b9feffffffffaaab",
        "0",
        "4",
        "17f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aef"
        "fb3af00adb22c6bb",
        "08b3f481e3aaa0f1a09e30ed741d8ae4fcf5e095d5d00af600db18cb2c04b3edd03cc744a2888ae4"
        "0caa232946c5e7e1",
        "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001",
        "396c8c005555e1568c00aaab0000aaab",
        48, 32};
    switch (id) {
        case CurveId::ed25519: return ed25519;
        case CurveId::secp256r1: return secp256r1;
        case CurveId::secp384r1: return secp384r1;
        case CurveId::secp521r1: return secp521r1;
        case CurveId::bls12_381_g1: return bls12_381_g1;
    }
    fail(ErrorKind::unsupported_backend, "unknown curve id");
}

inline BigInt hex_int(const char* hex) { return BigInt("0x" + std::string(hex)); }

}  // namespace detail

inline std::string_view curve_name(CurveId id) { return detail::curve_spec(id).name; }

inline CurveId curve_from_name(std::string_view name) {
    for (auto id : {CurveId::ed25519, CurveId::secp256r1, CurveId::secp384r1,
                    CurveId::secp521r1, CurveId::bls12_381_g1}) {
        if (name == curve_name(id)) return id;
    }
    fail(ErrorKind::unsupported_backend, "unknown curve: " + std::string(name));
}

}  // namespace zkset
