"""Integer polynomials and exact resultants.

Polynomials are lists of int coefficients in ascending degree order
with a nonzero last entry (the zero polynomial is the empty list).

Three independent resultant routes live here:

  * resultant_mod_p   -- euclidean remainder sequence over F_p,
  * resultant_exact   -- CRT over machine-word primes, with a fast
                         evaluation path when the monic argument is
                         1 + x + ... + x^(d-1),
  * resultant_prs     -- subresultant pseudo-remainder sequence over Z.

The last is deliberately kept algorithmically disjoint from the first
two so it can serve as a cross-check oracle.
"""

from __future__ import annotations

import math

import numpy as np

from .arith import factorize, is_prime

IntPoly = list[int]

# numpy path keeps products of two residues inside int64, so moduli
# must stay below 2**31; degree gate chosen by benchmark.
_NP_MAX_MOD = 1 << 31
_NP_MIN_DEG = 128


def normalize(coeffs: list[int]) -> IntPoly:
    """Strip trailing zeros; the zero polynomial becomes []."""
    k = len(coeffs)
    while k and coeffs[k - 1] == 0:
        k -= 1
    return list(coeffs[:k])


def degree(p: IntPoly) -> int:
    """Degree, with the zero polynomial at -1."""
    return len(p) - 1


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return normalize(out)


def poly_eval(p: IntPoly, x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def psi_poly(n: int) -> IntPoly:
    """1 + x + ... + x^(n-1), the derivative of the degree-n truncated log."""
    if n < 2:
        raise ValueError(f"psi_poly requires n >= 2, got {n}")
    return [1] * n


def product_bound(g: list[int], d: int) -> int:
    """Bound |prod g(theta_i)| over d points on the unit circle.

    Valid whenever the monic polynomial whose roots are evaluated has
    all roots of modulus 1, as |g(theta)| <= sum |g_k| there.
    """
    if d < 0:
        raise ValueError("point count must be >= 0")
    return sum(abs(c) for c in g) ** d


def _reduce_mod(p: list[int], m: int) -> list[int]:
    return normalize([c % m for c in p])


def _polymod_py(a: list[int], b: list[int], p: int) -> list[int]:
    """a mod b over F_p; both already reduced, b nonzero."""
    db = len(b) - 1
    if len(a) - 1 < db:
        return list(a)
    r = list(a)
    inv = pow(b[-1], -1, p)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = c * inv % p
            for j in range(db):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % p
    return normalize(r[:db])


def _resultant_mod_p_py(a: list[int], b: list[int], p: int) -> int:
    res = 1
    while True:
        if not b:
            return 0
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, p) % p
        r = _polymod_py(a, b, p)
        if not r:
            return 0
        if da & db & 1:
            res = p - res
        res = res * pow(b[-1], da - (len(r) - 1), p) % p
        a, b = b, r


def _polymod_np(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    db = len(b) - 1
    if len(a) - 1 < db:
        return a
    r = a.copy()
    inv = pow(int(b[-1]), -1, p)
    bl = b[:db]
    for i in range(len(r) - 1, db - 1, -1):
        c = int(r[i])
        if c:
            c = c * inv % p
            seg = r[i - db : i]
            seg -= c * bl
            seg %= p
    nz = np.flatnonzero(r[:db])
    return r[: nz[-1] + 1] if nz.size else r[:0]


def _resultant_mod_p_np(a: np.ndarray, b: np.ndarray, p: int) -> int:
    res = 1
    while True:
        if not len(b):
            return 0
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(int(b[0]), da, p) % p
        r = _polymod_np(a, b, p)
        if not len(r):
            return 0
        if da & db & 1:
            res = p - res
        res = res * pow(int(b[-1]), da - (len(r) - 1), p) % p
        a, b = b, r


def resultant_mod_p(f: list[int], g: list[int], p: int) -> int:
    """Res(f, g) mod p for f monic modulo p of degree >= 1.

    Handles any drop in the degree of g mod p; returns 0 exactly when
    f and g share a root over F_p (or g vanishes identically mod p).
    """
    a = _reduce_mod(f, p)
    if len(a) < 2 or a[-1] != 1:
        raise ValueError("f must be monic of degree >= 1 modulo p")
    b = _reduce_mod(g, p)
    if p < _NP_MAX_MOD and max(len(a), len(b)) >= _NP_MIN_DEG:
        return _resultant_mod_p_np(
            np.array(a, dtype=np.int64), np.array(b, dtype=np.int64), p
        )
    return _resultant_mod_p_py(a, b, p)


_WORD_PRIME_TOP = (1 << 31) - 1


def _descending_primes(top: int = _WORD_PRIME_TOP):
    """Odd primes downward from top (top assumed odd)."""
    c = top
    while c > 2:
        if is_prime(c):
            yield c
        c -= 2


def _descending_primes_1_mod_n(n: int, top: int = _WORD_PRIME_TOP):
    """Primes p = 1 (mod n) downward from top; may exhaust."""
    c = top - (top - 1) % n
    while c > max(n, 2):
        if is_prime(c):
            yield c
        c -= n


def _order_n_root(n: int, p: int, n_factors: dict[int, int]) -> int:
    """An element of exact multiplicative order n mod p, for p = 1 (mod n)."""
    e = (p - 1) // n
    for a in range(2, p):
        z = pow(a, e, p)
        if z == 1:
            continue
        if all(pow(z, n // q, p) != 1 for q in n_factors):
            return z
    raise ArithmeticError(f"no order-{n} element mod {p}")  # unreachable for prime p


def _all_ones_residues(n: int, g: list[int], primes: list[int]) -> list[int]:
    """Res(1 + x + ... + x^(n-1), g) mod p for each p = 1 (mod n).

    The roots are the nontrivial n-th roots of unity, all of which exist
    in F_p, so the resultant is a product of n - 1 evaluations of g.
    Work is batched across primes as int64 arrays.
    """
    n_factors = factorize(n)
    P = np.array(primes, dtype=np.int64)
    C = np.array([[c % p for p in primes] for c in g], dtype=np.int64)
    Z = np.array(
        [_order_n_root(n, p, n_factors) for p in primes], dtype=np.int64
    )
    pts = np.empty((len(primes), n - 1), dtype=np.int64)
    pts[:, 0] = Z
    for k in range(1, n - 1):
        pts[:, k] = pts[:, k - 1] * Z % P
    Pc = P[:, None]
    acc = np.broadcast_to(C[-1][:, None], pts.shape).copy()
    for j in range(len(g) - 2, -1, -1):
        acc = acc * pts % Pc
        acc += C[j][:, None]
        acc -= Pc * (acc >= Pc)
    # fold the row products pairwise to stay inside int64
    while acc.shape[1] > 1:
        half = acc.shape[1] // 2
        head = acc[:, :half] * acc[:, half : 2 * half] % Pc
        if acc.shape[1] & 1:
            head = np.concatenate([head, acc[:, -1:]], axis=1)
        acc = head
    return [int(v) for v in acc[:, 0]]


def _is_all_ones(f: list[int]) -> bool:
    return len(f) >= 2 and all(c == 1 for c in f)


def resultant_exact(f: list[int], g: list[int], bound: int) -> int:
    """Exact Res(f, g) for monic f, via CRT over word-size primes.

    The caller must supply bound >= |Res(f, g)|; moduli are accumulated
    until their product exceeds 2 * bound, after which the symmetric
    residue is the exact integer.  A bound below the true magnitude
    would be silently wrong, so it is the caller's contract to supply a
    rigorous one (see product_bound).
    """
    f = normalize(f)
    g = normalize(g)
    if len(f) < 2 or f[-1] != 1:
        raise ValueError("f must be monic of degree >= 1")
    if bound < 0:
        raise ValueError("bound must be >= 0")
    if not g:
        return 0
    target = 2 * bound
    n = len(f)

    residues: list[int] = []
    moduli: list[int] = []
    M = 1
    if _is_all_ones(f):
        for p in _descending_primes_1_mod_n(n):
            moduli.append(p)
            M *= p
            if M > target:
                break
        for i in range(0, len(moduli), 512):
            residues.extend(_all_ones_residues(n, g, moduli[i : i + 512]))
    if M <= target:
        # generic euclidean route; also the tail if the 1 (mod n)
        # progression ran out of word-size primes
        seen = set(moduli)
        for p in _descending_primes():
            if p in seen:
                continue
            residues.append(resultant_mod_p(f, g, p))
            moduli.append(p)
            M *= p
            if M > target:
                break

    R = 0
    Mi = 1
    for r, m in zip(residues, moduli):
        t = (r - R) % m * pow(Mi, -1, m) % m
        R += Mi * t
        Mi *= m
    # symmetric representative; an actual zero resultant lands on 0 here
    return R - Mi if R > Mi // 2 else R


def _content(p: list[int]) -> int:
    return math.gcd(*(abs(c) for c in p)) if len(p) > 1 else abs(p[0])


def _prem(A: list[int], B: list[int], c: int) -> list[int]:
    """Pseudo-remainder of A by B, scaled by c = lc(B) to power dA-dB+1."""
    dA, dB = len(A) - 1, len(B) - 1
    steps = dA - dB + 1
    R = list(A)
    while R and len(R) - 1 >= dB:
        lead = R[-1]
        R = [c * x for x in R[:-1]]
        off = len(R) - dB
        for j in range(dB):
            R[off + j] -= lead * B[j]
        R = normalize(R)
        steps -= 1
    if steps > 0 and R:
        scale = c**steps
        R = [scale * x for x in R]
    return R


def resultant_prs(f: list[int], g: list[int]) -> int:
    """Res(f, g) over Z by the subresultant pseudo-remainder sequence.

    Independent of the modular machinery above: pure integer pseudo-
    division with the classical content/sign bookkeeping.
    """
    A = normalize(f)
    B = normalize(g)
    if not A or not B:
        return 0
    s = 1
    if degree(A) < degree(B):
        if degree(A) & degree(B) & 1:
            s = -1
        A, B = B, A
    if degree(B) == 0:
        return s * B[0] ** degree(A)
    ca, cb = _content(A), _content(B)
    A = [x // ca for x in A]
    B = [x // cb for x in B]
    t = ca ** degree(B) * cb ** degree(A)
    g_, h = 1, 1
    while True:
        dA, dB = degree(A), degree(B)
        delta = dA - dB
        if dA & dB & 1:
            s = -s
        R = _prem(A, B, B[-1])
        if not R:
            return 0
        A = B
        denom = g_ * h**delta
        B = [x // denom for x in R]
        g_ = A[-1]
        if delta == 1:
            h = g_
        elif delta > 1:
            h = g_**delta // h ** (delta - 1)
        if degree(B) == 0:
            dA = degree(A)
            return s * t * (B[0] ** dA // h ** (dA - 1))
