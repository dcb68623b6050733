#!/usr/bin/env python3
"""Independent reference implementation of the curve backends.

Validates every curve constant from its defining equation (field prime
formulas, d = -121665/121666, BLS parameterization, generator-on-curve,
order*G == identity) and prints golden scalar-multiplication vectors that
the C++ tests pin. Pure-Python affine arithmetic; shares no code with the
library.
"""

import sys

# ---------------------------------------------------------------- ed25519

ED_P = 2**255 - 19
ED_D = (-121665 * pow(121666, -1, ED_P)) % ED_P
ED_L = 2**252 + 27742317777372353535851937790883648493
ED_BY = (4 * pow(5, -1, ED_P)) % ED_P


def ed_recover_x(y, sign):
    xx = (y * y - 1) * pow(ED_D * y * y + 1, -1, ED_P) % ED_P
    x = pow(xx, (ED_P + 3) // 8, ED_P)
    if (x * x - xx) % ED_P != 0:
        x = x * pow(2, (ED_P - 1) // 4, ED_P) % ED_P
    if (x * x - xx) % ED_P != 0:
        raise ValueError("not a square")
    if x % 2 != sign:
        x = ED_P - x
    return x


ED_BX = ed_recover_x(ED_BY, 0)


def ed_add(P, Q):
    (x1, y1), (x2, y2) = P, Q
    num_x = (x1 * y2 + y1 * x2) % ED_P
    num_y = (y1 * y2 + x1 * x2) % ED_P
    t = ED_D * x1 * x2 * y1 * y2 % ED_P
    x3 = num_x * pow(1 + t, -1, ED_P) % ED_P
    y3 = num_y * pow(1 - t, -1, ED_P) % ED_P
    return (x3, y3)


def ed_mul(k, P):
    R = (0, 1)
    while k:
        if k & 1:
            R = ed_add(R, P)
        P = ed_add(P, P)
        k >>= 1
    return R


def ed_encode(P):
    x, y = P
    b = bytearray(y.to_bytes(32, "little"))
    if x & 1:
        b[31] |= 0x80
    return bytes(b)


def ed_on_curve(P):
    x, y = P
    return (-x * x + y * y - 1 - ED_D * x * x * y * y) % ED_P == 0


# ----------------------------------------------- short Weierstrass curves

WS_CURVES = {
    "secp256r1": dict(
        p=2**256 - 2**224 + 2**192 + 2**96 - 1,
        a=-3,
        b=0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B,
        gx=0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
        gy=0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5,
        n=0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551,
        h=1,
    ),
    "secp384r1": dict(
        p=2**384 - 2**128 - 2**96 + 2**32 - 1,
        a=-3,
        b=0xB3312FA7E23EE7E4988E056BE3F82D19181D9C6EFE8141120314088F5013875AC656398D8A2ED19D2A85C8EDD3EC2AEF,
        gx=0xAA87CA22BE8B05378EB1C71EF320AD746E1D3B628BA79B9859F741E082542A385502F25DBF55296C3A545E3872760AB7,
        gy=0x3617DE4A96262C6F5D9E98BF9292DC29F8F41DBD289A147CE9DA3113B5F0B8C00A60B1CE1D7E819D7A431D7C90EA0E5F,
        n=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFC7634D81F4372DDF581A0DB248B0A77AECEC196ACCC52973,
        h=1,
    ),
    "secp521r1": dict(
        p=2**521 - 1,
        a=-3,
        b=0x0051953EB9618E1C9A1F929A21A0B68540EEA2DA725B99B315F3B8B489918EF109E156193951EC7E937B1652C0BD3BB1BF073573DF883D2C34F1EF451FD46B503F00,
        gx=0x00C6858E06B70404E9CD9E3ECB662395B4429C648139053FB521F828AF606B4D3DBAA14B5E77EFE75928FE1DC127A2FFA8DE3348B3C1856A429BF97E7E31C2E5BD66,
        gy=0x011839296A789A3BC0045C8A5FB42C7D1BD998F54449579B446817AFBD17273E662C97EE72995EF42640C550B9013FAD0761353C7086A272C24088BE94769FD16650,
        n=0x1FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFA51868783BF2F966B7FCC0148F709A5D03BB5C9B8899C47AEBB6FB71E91386409,
        h=1,
    ),
}

# BLS12-381: everything follows from the parameter x.
BLS_X = -0xD201000000010000
BLS_P = (BLS_X - 1) ** 2 * (BLS_X**4 - BLS_X**2 + 1) // 3 + BLS_X
BLS_R = BLS_X**4 - BLS_X**2 + 1
BLS_H = (BLS_X - 1) ** 2 // 3
WS_CURVES["bls12-381-g1"] = dict(
    p=BLS_P,
    a=0,
    b=4,
    gx=0x17F1D3A73197D7942695638C4FA9AC0FC3688C4F9774B905A14E3A3F171BAC586C55E83FF97A1AEFFB3AF00ADB22C6BB,
    gy=0x08B3F481E3AAA0F1A09E30ED741D8AE4FCF5E095D5D00AF600DB18CB2C04B3EDD03CC744A2888AE40CAA232946C5E7E1,
    n=BLS_R,
    h=BLS_H,
)


def ws_add(cv, P, Q):
    p, a = cv["p"], cv["a"]
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + a) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    y3 = (lam * (x1 - x3) - y1) % p
    return (x3, y3)


def ws_mul(cv, k, P):
    R = None
    while k:
        if k & 1:
            R = ws_add(cv, R, P)
        P = ws_add(cv, P, P)
        k >>= 1
    return R


def ws_on_curve(cv, P):
    if P is None:
        return True
    x, y = P
    return (y * y - x * x * x - cv["a"] * x - cv["b"]) % cv["p"] == 0


def sec1_compressed(cv, P, width):
    x, y = P
    return bytes([0x02 | (y & 1)]) + x.to_bytes(width, "big")


def bls_compressed(cv, P):
    # zcash serialization: 48 bytes, flags in the top three bits of byte 0
    if P is None:
        b = bytearray(48)
        b[0] = 0xC0
        return bytes(b)
    x, y = P
    b = bytearray(x.to_bytes(48, "big"))
    b[0] |= 0x80
    if y > (cv["p"] - 1) // 2:
        b[0] |= 0x20
    return bytes(b)


def main():
    ok = True

    def check(name, cond):
        nonlocal ok
        print(f"  [{'ok' if cond else 'FAIL'}] {name}")
        ok = ok and cond

    print("ed25519:")
    check("p = 2^255-19 prime form", ED_P % 4 == 1 and ED_P % 8 == 5)
    check("base on curve", ed_on_curve((ED_BX, ED_BY)))
    check(
        "Bx matches RFC 8032 decimal",
        ED_BX == 15112221349535400772501151409588531511454012693041857206046113283949847762202,
    )
    check(
        "By matches RFC 8032 decimal",
        ED_BY == 46316835694926478169428394003475163141307993866256225615783033603165251855960,
    )
    check(
        "d matches RFC 8032 decimal",
        ED_D == 37095705934669439343138083508754565189542113879843219016388785533085940283555,
    )
    check("ell * B == identity", ed_mul(ED_L, (ED_BX, ED_BY)) == (0, 1))
    for k in (2, 3, 9, 0xDEADBEEF):
        P = ed_mul(k, (ED_BX, ED_BY))
        check(f"{k}B on curve", ed_on_curve(P))
        print(f"  golden ed25519 {k}B = {ed_encode(P).hex()}")

    for name, cv in WS_CURVES.items():
        print(f"{name}:")
        G = (cv["gx"], cv["gy"])
        check("generator on curve", ws_on_curve(cv, G))
        check("n*G == infinity", ws_mul(cv, cv["n"], G) is None)
        if name == "bls12-381-g1":
            check("p from parameterization", BLS_P.bit_length() == 381)
            check(
                "r matches known hex",
                BLS_R == 0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001,
            )
            print(f"  p = {BLS_P:#x}")
            print(f"  h = {BLS_H:#x}")
        width = (cv["p"].bit_length() + 7) // 8
        for k in (2, 3, 9, 0xDEADBEEF):
            P = ws_mul(cv, k, G)
            check(f"{k}G on curve", ws_on_curve(cv, P))
            if name == "bls12-381-g1":
                enc = bls_compressed(cv, P)
            else:
                enc = sec1_compressed(cv, P, width)
            print(f"  golden {name} {k}G = {enc.hex()}")

    print("all-ok" if ok else "FAILURES")
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
