"""Exact real-root counting (Sturm chains) and certified complex root finding.

The Sturm side is exact rational arithmetic; the numeric side runs a
simultaneous Aberth-Ehrlich iteration in mpmath at the requested binary
precision and certifies every root by its residual. Realness of a root is
never decided numerically: the Sturm count is the only authority.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp

from .exact import IntPolynomial, poly_gcd, squarefree_part

DEFAULT_PRECISION_BITS = 256


class NotSquarefreeError(ValueError):
    """find_roots requires a squarefree polynomial."""


class PrecisionError(ArithmeticError):
    """Requested certification could not be reached at the working precision."""


# ---------------------------------------------------------------------------
# Sturm chains


@dataclass(frozen=True)
class SturmChain:
    """Signed remainder sequence p, p', -rem(...), stored as primitive
    integer polynomials (content removal only ever scales by positive
    constants, so sign data is preserved)."""

    polynomials: tuple

    def length(self) -> int:
        return len(self.polynomials)

    def variations_at_minus_inf(self) -> int:
        signs = [_sign(p.leading()) * (-1) ** p.degree for p in self.polynomials]
        return _sign_variations(signs)

    def variations_at_plus_inf(self) -> int:
        signs = [_sign(p.leading()) for p in self.polynomials]
        return _sign_variations(signs)

    def variations_at(self, x: Fraction) -> int:
        return _sign_variations([_sign(p(Fraction(x))) for p in self.polynomials])


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_variations(signs) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a * b < 0)


def _neg_rem_primitive(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """-(a mod b), cleared to a primitive integer polynomial.

    Only positive rational scalings are applied, so the sign sequence of
    the chain at any point is unchanged.
    """
    ra = [Fraction(c) for c in a.coeffs]
    rb = [Fraction(c) for c in b.coeffs]
    db = len(rb) - 1
    lb = rb[-1]
    r = list(ra)
    while len(r) - 1 >= db:
        if r[-1] == 0:
            r.pop()
            if not r:
                break
            continue
        f = r[-1] / lb
        shift = len(r) - 1 - db
        for i in range(db + 1):
            r[shift + i] -= f * rb[i]
        r.pop()
    if not r or all(x == 0 for x in r):
        return IntPolynomial((0,))
    from math import gcd, lcm

    den = 1
    for x in r:
        den = lcm(den, x.denominator)
    ints = [int(-x * den) for x in r]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return IntPolynomial(tuple(ints))


def sturm_chain(p: IntPolynomial) -> SturmChain:
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [p.primitive()]
    d = p.derivative()
    if not d.is_zero():
        chain.append(d.primitive())
        while chain[-1].degree >= 1:
            nxt = _neg_rem_primitive(chain[-2], chain[-1])
            if nxt.is_zero():
                break
            chain.append(nxt)
    return SturmChain(tuple(chain))


def count_real_roots(p: IntPolynomial) -> int:
    """Number of distinct real roots of p, exactly."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree == 0:
        return 0
    q = squarefree_part(p)
    if q.degree == 0:
        return 0
    chain = sturm_chain(q)
    return chain.variations_at_minus_inf() - chain.variations_at_plus_inf()


def count_real_roots_in(p: IntPolynomial, a: Fraction, b: Fraction) -> int:
    """Distinct real roots in the half-open interval (a, b]."""
    q = squarefree_part(p)
    if q.degree == 0:
        return 0
    chain = sturm_chain(q)
    return chain.variations_at(a) - chain.variations_at(b)


# ---------------------------------------------------------------------------
# complex roots


@dataclass(frozen=True)
class RootSet:
    """Roots of a squarefree polynomial with a residual certificate.

    pairing lists index pairs (i, j) with roots[i] = conj(roots[j]) and
    Im(roots[i]) > 0; real_indices are the Sturm-certified real roots.
    """

    roots: tuple
    residual_bound: object  # mpf
    pairing: tuple
    real_indices: tuple
    precision_bits: int

    def selected_default(self) -> tuple:
        """One root index per conjugate pair: the positive-imaginary one."""
        return tuple(i for i, _ in self.pairing)

    def min_separation(self):
        n = len(self.roots)
        sep = mp.inf
        for i in range(n):
            for j in range(i + 1, n):
                d = abs(self.roots[i] - self.roots[j])
                if d < sep:
                    sep = d
        return sep


def _cauchy_bound(p: IntPolynomial):
    lead = abs(p.leading())
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / mp.mpf(lead) if p.degree >= 1 else mp.mpf(1)


def _horner_mpc(coeffs, z):
    acc = mp.mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def find_roots(p: IntPolynomial, precision_bits: int = DEFAULT_PRECISION_BITS) -> RootSet:
    """All complex roots of a squarefree integer polynomial.

    Simultaneous Aberth-Ehrlich iteration started on a circle of radius
    equal to the Cauchy bound. The returned residual bound is the maximum
    of |p(root)| over all roots, recomputed by Horner evaluation with the
    exact integer coefficients, and must satisfy

        residual_bound <= 2^(-precision_bits/2) * (1 + max |coeff|)

    otherwise PrecisionError is raised.
    """
    if p.is_zero() or p.degree < 1:
        raise ValueError("need degree >= 1")
    if poly_gcd(p, p.derivative()).degree != 0:
        raise NotSquarefreeError(f"{p} has repeated roots")
    n = p.degree

    work_prec = precision_bits + 64 + 4 * n
    with mp.workprec(work_prec):
        coeffs = [mp.mpf(c) for c in p.coeffs]
        deriv = [mp.mpf(c) for c in p.derivative().coeffs]
        radius = _cauchy_bound(p)
        # slightly irrational-looking offset breaks symmetric stalls
        z = [
            radius * mp.expjpi(mp.mpf(2 * k) / n + mp.mpf(1) / (2 * n) + mp.mpf(k) / (n * n + 7))
            for k in range(n)
        ]
        target = mp.mpf(2) ** (-(precision_bits + 8))
        for _ in range(2000):
            worst = mp.mpf(0)
            for k in range(n):
                pk = _horner_mpc(coeffs, z[k])
                dk = _horner_mpc(deriv, z[k])
                if pk == 0:
                    continue
                if dk == 0:
                    z[k] += mp.mpf(1) / (1 << 20)
                    worst = mp.inf
                    continue
                newton = pk / dk
                s = mp.mpc(0)
                for j in range(n):
                    if j != k:
                        s += 1 / (z[k] - z[j])
                denom = 1 - newton * s
                step = newton if denom == 0 else newton / denom
                z[k] -= step
                rel = abs(step) / max(mp.mpf(1), abs(z[k]))
                if rel > worst:
                    worst = rel
            if worst < target:
                break
        else:
            raise PrecisionError("root iteration did not converge")

        order = sorted(range(n), key=lambda k: (mp.re(z[k]), mp.im(z[k])))
        roots = [z[k] for k in order]

        residual = max(abs(_horner_mpc(coeffs, r)) for r in roots)
        allowed = mp.mpf(2) ** (-precision_bits // 2) * (1 + p.max_abs_coeff())
        if residual > allowed:
            raise PrecisionError(
                f"residual {mp.nstr(residual, 8)} exceeds contract {mp.nstr(allowed, 8)}"
            )

        n_real = count_real_roots(p)
        sep = mp.inf
        for i in range(n):
            for j in range(i + 1, n):
                d = abs(roots[i] - roots[j])
                if d < sep:
                    sep = d

        by_imag = sorted(range(n), key=lambda i: abs(mp.im(roots[i])))
        real_idx = sorted(by_imag[:n_real])
        for i in real_idx:
            if abs(mp.im(roots[i])) > sep / 4:
                raise PrecisionError("cannot separate certified real roots numerically")
        complex_idx = sorted(set(range(n)) - set(real_idx))
        if len(complex_idx) % 2:
            raise PrecisionError("odd number of non-real roots; classification failed")

        pairing = []
        unmatched = [i for i in complex_idx if mp.im(roots[i]) > 0]
        lower = [i for i in complex_idx if mp.im(roots[i]) <= 0]
        if 2 * len(unmatched) != len(complex_idx):
            raise PrecisionError("conjugate pairing failed: halves are unbalanced")
        used = set()
        for i in unmatched:
            best_j, best_d = None, mp.inf
            for j in lower:
                if j in used:
                    continue
                d = abs(mp.conj(roots[i]) - roots[j])
                if d < best_d:
                    best_j, best_d = j, d
            if best_j is None or best_d > sep / 2:
                raise PrecisionError("conjugate pairing failed: match distance too large")
            used.add(best_j)
            pairing.append((i, best_j))
        pairing.sort()

        return RootSet(
            roots=tuple(+r for r in roots),
            residual_bound=+residual,
            pairing=tuple(pairing),
            real_indices=tuple(real_idx),
            precision_bits=precision_bits,
        )
