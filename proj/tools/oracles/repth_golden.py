#!/usr/bin/env python3
"""Independent oracle for the character-level virtual-module layer.

Derives the frozen expectations for the frame-shape / Adams-trace tests:
  * v_b from divisor traces by Moebius inversion,
  * u_d (root-of-unity multiplicities) via exact Ramanujan sums,
  * both closed forms of tr(g | Lambda_{-t} U) as dense polynomials,
  * the power-map and weight lemmas on brute-force eigenvalue data,
  * character-table decomposition round trips.

Everything is exact (fractions); asserts are the gates.  Run: python3 repth_golden.py
"""

import math
import random
from fractions import Fraction
from functools import reduce


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def moebius(n):
    m, res = n, 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    if m > 1:
        res = -res
    return res


def phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


# ---------------------------------------------------------------- trace tables

def trace_at(n, traces, k):
    """tr(g^k) for integral-trace data: depends only on gcd(k, n)."""
    return traces[math.gcd(k, n)]


def vb_from_traces(n, traces):
    """v_b = (1/b) sum_{d|b} mu(b/d) tr(g^d); integrality asserted."""
    vb = {}
    for b in divisors(n):
        s = sum(moebius(b // d) * trace_at(n, traces, d) for d in divisors(b))
        assert s % b == 0, (n, traces, b, s)
        if s // b:
            vb[b] = s // b
    return vb


def ramanujan(d, k):
    """Sum of k-th powers of the primitive d-th roots of unity (exact)."""
    g = math.gcd(k, d)
    return moebius(d // g) * phi(d) // phi(d // g)


def traces_from_ud(n, ud):
    """Forward direction: eigenvalue multiplicities -> divisor traces."""
    return {e: sum(ud.get(d, 0) * ramanujan(d, e) for d in divisors(n))
            for e in divisors(n)}


def ud_from_vb(n, vb):
    """u_d = sum over multiples e of d (e | n) of v_e."""
    return {d: sum(vb.get(e, 0) for e in divisors(n) if e % d == 0)
            for d in divisors(n)}


# ---------------------------------------------------------- dense poly helpers

def poly_mul(a, b, prec):
    out = [Fraction(0)] * prec
    for i, x in enumerate(a):
        if x == 0 or i >= prec:
            continue
        for j, y in enumerate(b):
            if i + j >= prec:
                break
            out[i + j] += x * y
    return out


def poly_inv(a, prec):
    assert a[0] != 0
    out = [Fraction(0)] * prec
    out[0] = 1 / a[0]
    for k in range(1, prec):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, k + 1)) / a[0]
    return out


def poly_pow(a, e, prec):
    if e < 0:
        return poly_pow(poly_inv(a, prec), -e, prec)
    out = [Fraction(0)] * prec
    out[0] = Fraction(1)
    base = list(a) + [Fraction(0)] * (prec - len(a))
    while e:
        if e & 1:
            out = poly_mul(out, base, prec)
        base = poly_mul(base, base, prec)
        e >>= 1
    return out


def poly_exp(a, prec):
    assert a[0] == 0
    out = [Fraction(0)] * prec
    out[0] = Fraction(1)
    # f' = a' f  =>  k f_k = sum_{j} j a_j f_{k-j}
    for k in range(1, prec):
        out[k] = sum(j * a[j] * out[k - j] for j in range(1, k + 1)) / k
    return out


def lambda_trace_product(n, traces, sign, prec):
    vb = vb_from_traces(n, traces)
    out = [Fraction(0)] * prec
    out[0] = Fraction(1)
    for b, v in vb.items():
        base = [Fraction(0)] * prec
        base[0] = Fraction(1)
        if b < prec:
            base[b] = Fraction(-1)
        out = poly_mul(out, poly_pow(base, sign * v, prec), prec)
    return out


def lambda_trace_exp(n, traces, sign, prec):
    a = [Fraction(0)] * prec
    for k in range(1, prec):
        a[k] = Fraction(-sign * trace_at(n, traces, k), k)
    return poly_exp(a, prec)


# ------------------------------------------------------------------- the gates

def gate_frame_shapes():
    # regular representation of Z/2
    assert vb_from_traces(2, {1: 0, 2: 2}) == {2: 1}
    # trivial g
    assert vb_from_traces(1, {1: 7}) == {1: 7}
    # order-2 element on the 248-dimensional module with tr(g) = -8
    vb248 = vb_from_traces(2, {1: -8, 2: 248})
    assert vb248 == {1: -8, 2: 128}
    assert sum(b * v for b, v in vb248.items()) == 248
    ud248 = ud_from_vb(2, vb248)
    assert ud248 == {1: 120, 2: 128}
    assert traces_from_ud(2, ud248) == {1: -8, 2: 248}
    # regular Z/N: u_d = 1 for all d | N
    for N in (1, 2, 3, 4, 6, 12):
        tr = {d: (N if d == N else 0) for d in divisors(N)}
        vb = vb_from_traces(N, tr)
        assert vb == {N: 1}, (N, vb)
        assert ud_from_vb(N, vb) == {d: 1 for d in divisors(N)}
    print("frame shapes: regular Z/2 -> 2^1, trivial, 248 -> 1^-8 2^128,",
          "u = (120, 128), regular Z/N -> N^1  all pass")


def gate_vb_ud_consistency():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randrange(1, 25)
        ud = {d: rng.randrange(-9, 10) for d in divisors(n)}
        traces = traces_from_ud(n, ud)
        vb = vb_from_traces(n, traces)
        # v_b = sum_a mu(a) u_{ab}
        for b in divisors(n):
            s = sum(moebius(a) * ud.get(a * b, 0)
                    for a in range(1, n // b + 1) if (a * b) in ud)
            assert vb.get(b, 0) == s, (n, ud, b)
        assert ud_from_vb(n, vb) == ud
    print("vb/ud Moebius consistency on 300 random tables: pass")


def gate_lambda_trace():
    prec = 24
    cases = [
        (1, {1: 1}),          # trivial module of dimension 1
        (2, {1: 0, 2: 2}),    # regular Z/2
        (2, {1: -8, 2: 248}),
        (4, {1: 0, 2: 0, 4: 4}),
        (6, {1: 1, 2: -3, 3: 4, 6: 12}),
    ]
    for n, traces in cases:
        for sign in (+1, -1):
            assert (lambda_trace_product(n, traces, sign, prec)
                    == lambda_trace_exp(n, traces, sign, prec)), (n, traces, sign)
    # trivial dim 1: 1 - t and its reciprocal
    lt = lambda_trace_product(1, {1: 1}, +1, 6)
    assert lt == [1, -1, 0, 0, 0, 0]
    st = lambda_trace_product(1, {1: 1}, -1, 6)
    assert st == [1, 1, 1, 1, 1, 1]
    # regular Z/2: 1 - t^2 both ways
    assert lambda_trace_product(2, {1: 0, 2: 2}, +1, 6) == [1, 0, -1, 0, 0, 0]
    # Lambda . S = 1 and additivity
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(1, 13)
        ud1 = {d: rng.randrange(-5, 6) for d in divisors(n)}
        ud2 = {d: rng.randrange(-5, 6) for d in divisors(n)}
        t1, t2 = traces_from_ud(n, ud1), traces_from_ud(n, ud2)
        lam = lambda_trace_product(n, t1, +1, 21)
        sym = lambda_trace_product(n, t1, -1, 21)
        one = poly_mul(lam, sym, 21)
        assert one[0] == 1 and all(c == 0 for c in one[1:])
        tsum = {d: t1[d] + t2[d] for d in divisors(n)}
        assert (lambda_trace_product(n, tsum, +1, 21)
                == poly_mul(lam, lambda_trace_product(n, t2, +1, 21), 21))
    print("lambda trace: product == exp, trivial/Z2 anchors,",
          "Lambda*S = 1 and additivity on 50 random pairs: pass")


def gate_eta_product_match():
    # doubled 248 data: prod_b prod_j (1 - q^{jb})^{2 v_b} as the eta-quotient
    # (1-q)^{-16} expansion times (1-q^2)^{256} expansion, vs the n-fold
    # substitution of the single lambda-trace factor
    prec = 20
    n, traces = 2, {1: -16, 2: 496}
    vb = vb_from_traces(n, traces)
    assert vb == {1: -16, 2: 256}
    full = [Fraction(0)] * prec
    full[0] = Fraction(1)
    for b, v in vb.items():
        for j in range(1, prec):
            if j * b >= prec:
                break
            base = [Fraction(0)] * prec
            base[0] = Fraction(1)
            base[j * b] = Fraction(-1)
            full = poly_mul(full, poly_pow(base, v, prec), prec)
    lam = lambda_trace_product(n, traces, +1, prec)
    sub = [Fraction(0)] * prec
    sub[0] = Fraction(1)
    for j in range(1, prec):
        lj = [Fraction(0)] * prec
        for i, c in enumerate(lam):
            if i * j < prec:
                lj[i * j] = c
        sub = poly_mul(sub, lj, prec)
    assert full == sub
    print("eta-product factorization (doubled 248 data, 20 terms): pass")


def gate_power_map():
    def check(n, traces, p):
        vb = vb_from_traces(n, traces)
        np_, tp = n // p, {}
        for d in divisors(n // p):
            tp[d] = trace_at(n, traces, p * d)
        vbp = vb_from_traces(np_, tp)
        for b in range(1, n + 1):
            want = p * vb.get(b * p, 0) + (0 if b % p == 0 else vb.get(b, 0))
            assert vbp.get(b, 0) == want, (n, traces, p, b)

    # regular Z/2, p=2: v_1(g^2) = 2 v_2(g) + v_1(g) = 2
    check(2, {1: 0, 2: 2}, 2)
    vb_e = vb_from_traces(1, {1: 2})
    assert vb_e == {1: 2}
    # regular Z/4 at the order-4 class, p=2: eigenvalues {1, i, -1, -i}
    tr4 = {1: 0, 2: 0, 4: 4}
    assert vb_from_traces(4, tr4) == {4: 1}
    check(4, tr4, 2)
    assert vb_from_traces(2, {1: 0, 2: 4}) == {2: 2}  # v(g^2): 2 = 2*v_4(g)
    # 248 data, p=2: v_1(e) = 248 = 2*128 + (-8)
    check(2, {1: -8, 2: 248}, 2)
    assert vb_from_traces(1, {1: 248}) == {1: 248}
    # random data, all primes
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randrange(2, 25)
        ud = {d: rng.randrange(-7, 8) for d in divisors(n)}
        traces = traces_from_ud(n, ud)
        for p in (2, 3, 5, 7, 11, 13):
            if n % p == 0:
                check(n, traces, p)
    print("power-map lemma: Z/2, Z/4, 248 anchors + 200 random tables: pass")


def gate_weight_identity():
    def both_sides(n, traces, N):
        lhs = Fraction(sum(phi(N // d) * trace_at(n, traces, d)
                           for d in divisors(N)), N)
        vb = vb_from_traces(n, traces)
        rhs = sum(vb.get(d, 0) for d in divisors(N))
        return lhs, rhs

    lhs, rhs = both_sides(2, {1: -8, 2: 248}, 2)
    assert lhs == rhs == 120
    lhs, rhs = both_sides(2, {1: 0, 2: 2}, 2)
    assert lhs == rhs == 1
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randrange(1, 25)
        ud = {d: rng.randrange(-7, 8) for d in divisors(n)}
        traces = traces_from_ud(n, ud)
        for N in range(1, 30):
            lhs, rhs = both_sides(n, traces, N)
            assert lhs == rhs, (n, traces, N, lhs, rhs)
    print("weight identity: 248 -> 120, regular Z/2 -> 1, 200 random tables",
          "x N<30: pass")


def gate_decompose():
    # S3: classes e, (12), (123) with sizes 1, 3, 2
    sizes = [1, 3, 2]
    chars = {"triv": [1, 1, 1], "sgn": [1, -1, 1], "std": [2, 0, -1]}
    order = sum(sizes)

    def inner(f, chi):
        return Fraction(sum(s * a * b for s, a, b in zip(sizes, f, chi)), order)

    # orthogonality
    names = list(chars)
    for i in names:
        for j in names:
            assert inner(chars[i], chars[j]) == (1 if i == j else 0)
    # trace vector (2, 0) on Z/2: trivial + sign
    z2 = {"triv": [1, 1], "sgn": [1, -1]}
    f = [2, 0]
    got = {k: Fraction(sum(s * a * b for s, a, b in zip([1, 1], f, z2[k])), 2)
           for k in z2}
    assert got == {"triv": 1, "sgn": 1}
    # random integer combinations on S3 round-trip
    rng = random.Random(13)
    for _ in range(100):
        m = {k: rng.randrange(-9, 10) for k in names}
        f = [sum(m[k] * chars[k][c] for k in names) for c in range(3)]
        rec = {k: inner(f, chars[k]) for k in names}
        assert rec == m
    # regular character of Z/3 -> one copy of each irreducible (omega = e(1/3);
    # exact arithmetic in Z[omega] with omega^2 = -1 - omega, conj flips)
    def w_mul(a, b):  # (x + y w)(u + v w), w^2 = -1 - w
        x, y = a
        u, v = b
        return (x * u - y * v, x * v + y * u - y * v)

    regular = [(3, 0), (0, 0), (0, 0)]  # at e, g, g^2
    omega_chars = [[(1, 0), (1, 0), (1, 0)],
                   [(1, 0), (0, 1), (-1, -1)],   # chi(g) = w, chi(g^2) = w^2
                   [(1, 0), (-1, -1), (0, 1)]]
    for chi in omega_chars:
        tot = (0, 0)
        for c in range(3):
            conj = (chi[c][0] - chi[c][1], -chi[c][1])  # conj(x+yw) = (x-y) - yw
            t = w_mul(regular[c], conj)
            tot = (tot[0] + t[0], tot[1] + t[1])
        assert tot == (3, 0)  # multiplicity 1 after dividing by |G| = 3
    print("decompose: S3 orthogonality + 100 round trips, Z/2 (2,0),",
          "Z/3 regular -> (1,1,1): pass")


def main():
    gate_frame_shapes()
    gate_vb_ud_consistency()
    gate_lambda_trace()
    gate_eta_product_match()
    gate_power_map()
    gate_weight_identity()
    gate_decompose()
    print("all repth oracle gates passed")


if __name__ == "__main__":
    main()
