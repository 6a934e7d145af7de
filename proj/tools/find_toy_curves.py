#!/usr/bin/env python3
"""Search for the toy curves shipped in data/curves/.

Weierstrass: y^2 = x^3 + a*x + b over the largest prime p < 2^28 with
p % 4 == 3, a = -3, smallest b >= 1 giving a prime group order (cofactor 1).

Twisted Edwards: -x^2 + y^2 = 1 + d*x^2*y^2 over the largest prime
p < 2^30 with p % 4 == 1 (so a = -1 is a square), smallest non-square d >= 2
whose group order is 4 * prime.

The group order is found by taking a point P and scanning the Hasse
interval [p + 1 - 2 sqrt(p), p + 1 + 2 sqrt(p)] for m with m*P = O. When
ord(P) exceeds the interval width the hit is unique and equals #E.

Usage: python3 tools/find_toy_curves.py [outdir]
"""
import math
import sys


def is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sqrt_mod(a, p):
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


class Weierstrass:
    def __init__(self, p, a, b):
        self.p, self.a, self.b = p, a % p, b % p
        self.O = None

    def add(self, P, Q):
        p = self.p
        if P is None:
            return Q
        if Q is None:
            return P
        if P[0] == Q[0] and (P[1] + Q[1]) % p == 0:
            return None
        if P == Q:
            lam = (3 * P[0] * P[0] + self.a) * pow(2 * P[1], -1, p) % p
        else:
            lam = (Q[1] - P[1]) * pow(Q[0] - P[0], -1, p) % p
        x = (lam * lam - P[0] - Q[0]) % p
        return (x, (lam * (P[0] - x) - P[1]) % p)

    def lift(self, x):
        y = sqrt_mod(x * x * x + self.a * x + self.b, self.p)
        return None if y is None else (x, min(y, self.p - y))


class Edwards:
    def __init__(self, p, a, d):
        self.p, self.a, self.d = p, a % p, d % p
        self.O = (0, 1)

    def add(self, P, Q):
        p = self.p
        x1, y1 = P
        x2, y2 = Q
        t = self.d * x1 * x2 * y1 * y2 % p
        x = (x1 * y2 + y1 * x2) * pow(1 + t, -1, p) % p
        y = (y1 * y2 - self.a * x1 * x2) * pow(1 - t, -1, p) % p
        return (x, y)

    def lift(self, x):
        num = (1 - self.a * x * x) % self.p
        den = (1 - self.d * x * x) % self.p
        y = sqrt_mod(num * pow(den, -1, self.p), self.p)
        return None if y is None else (x, min(y, self.p - y))


def mul(curve, k, P):
    R = curve.O
    while k:
        if k & 1:
            R = curve.add(R, P)
        P = curve.add(P, P)
        k >>= 1
    return R


def group_order(curve, P):
    p = curve.p
    w = 2 * math.isqrt(p) + 2
    lo = p + 1 - w
    Q = mul(curve, lo, P)
    hits = []
    for i in range(2 * w + 1):
        if Q == curve.O:
            hits.append(lo + i)
        Q = curve.add(Q, P)
    return hits[0] if len(hits) == 1 else None


def first_point(curve, start=1):
    x = start
    while True:
        P = curve.lift(x)
        if P is not None and P[0] != 0 and P[1] != 0:
            return P
        x += 1


def prev_prime(n, residue, mod):
    n -= 1
    while not (is_prime(n) and n % mod == residue):
        n -= 1
    return n


def find_weierstrass(bits):
    p = prev_prime(1 << bits, 3, 4)
    b = 1
    while True:
        curve = Weierstrass(p, -3, b)
        if (4 * (-3) ** 3 + 27 * b * b) % p:
            P = first_point(curve)
            n = group_order(curve, P)
            if n and is_prime(n):
                return dict(form="weierstrass", prime=p, a=p - 3, b=b,
                            gx=P[0], gy=P[1], order=n, cofactor=1)
        b += 1


def find_edwards(bits):
    p = prev_prime(1 << bits, 1, 4)
    d = 2
    while True:
        if pow(d, (p - 1) // 2, p) == p - 1:
            curve = Edwards(p, -1, d)
            P = first_point(curve)
            n = group_order(curve, P)
            if n and n % 4 == 0 and is_prime(n // 4):
                G = mul(curve, 4, P)
                x = 2
                while G == curve.O:
                    G = mul(curve, 4, first_point(curve, x))
                    x += 1
                assert mul(curve, n // 4, G) == curve.O
                return dict(form="twisted_edwards", prime=p, a=p - 1, d=d,
                            gx=G[0], gy=G[1], order=n // 4, cofactor=4)
        d += 1


def write(path, label, c):
    coeff = "b" if c["form"] == "weierstrass" else "d"
    with open(path, "w") as f:
        f.write(f"# generated by tools/find_toy_curves.py\n")
        f.write(f"label = {label}\n")
        f.write(f"form = {c['form']}\n")
        f.write(f"prime = {c['prime']}\n")
        f.write(f"a = {c['a']}\n")
        f.write(f"{coeff} = {c[coeff]}\n")
        f.write(f"gx = {c['gx']}\n")
        f.write(f"gy = {c['gy']}\n")
        f.write(f"order = {c['order']}\n")
        f.write(f"cofactor = {c['cofactor']}\n")
        f.write(f"attackable = true\n")


if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "data/curves"
    w = find_weierstrass(28)
    print(w)
    write(f"{out}/toy_weierstrass_28.curve", "toy-weierstrass-28", w)
    e = find_edwards(30)
    print(e)
    write(f"{out}/toy_edwards_28.curve", "toy-edwards-28", e)
