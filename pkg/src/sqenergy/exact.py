"""Exact spectra and square energies of structured families, and the binomial
identities behind Kneser-graph symmetry.  Everything here is Python ``int`` or
``fractions.Fraction`` arithmetic, so results are exact at any size.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable

from .spectral import Inertia


def binom(n: int, k: int) -> int:
    """Binomial coefficient with C(n, k) = 0 for k < 0 or k > n (n >= 0)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class RationalSpectrum:
    """Exact spectrum as (eigenvalue, multiplicity) pairs, eigenvalues descending and distinct."""

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "RationalSpectrum":
        merged: dict[int, int] = defaultdict(int)
        for eig, mult in pairs:
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} for eigenvalue {eig}")
            if mult:
                merged[eig] += mult
        return cls(tuple(sorted(merged.items(), key=lambda p: -p[0])))

    @property
    def n(self) -> int:
        return sum(m for _, m in self.pairs)

    @property
    def trace(self) -> int:
        return sum(e * m for e, m in self.pairs)

    @property
    def spectral_radius(self) -> int:
        return max(abs(e) for e, _ in self.pairs)

    def values(self) -> list[int]:
        """Eigenvalues with multiplicity, descending."""
        return [e for e, m in self.pairs for _ in range(m)]

    def inertia(self) -> Inertia:
        pos = sum(m for e, m in self.pairs if e > 0)
        neg = sum(m for e, m in self.pairs if e < 0)
        return Inertia(pos, self.n - pos - neg, neg)


@dataclass(frozen=True)
class ExactEnergies:
    s_plus: int
    s_minus: int

    @property
    def spread(self) -> int:
        return self.s_plus - self.s_minus

    @property
    def two_m(self) -> int:
        return self.s_plus + self.s_minus

    @property
    def ratio_max(self) -> Fraction | None:
        if self.s_plus == 0 or self.s_minus == 0:
            return None
        return max(Fraction(self.s_plus, self.s_minus), Fraction(self.s_minus, self.s_plus))


@dataclass(frozen=True)
class SrgSpectrumParams:
    """Three-eigenvalue spectrum k^1 r^f s^g of a strongly regular graph."""

    family: str
    n: int
    k: int
    r: int
    s: int
    f: int
    g: int

    def spectrum(self) -> RationalSpectrum:
        return RationalSpectrum.from_pairs([(self.k, 1), (self.r, self.f), (self.s, self.g)])


def exact_square_energies(spec: RationalSpectrum) -> ExactEnergies:
    sp = sum(m * e * e for e, m in spec.pairs if e > 0)
    sm = sum(m * e * e for e, m in spec.pairs if e < 0)
    return ExactEnergies(sp, sm)


# Kneser graphs ------------------------------------------------------------

def _check_kneser(n: int, k: int) -> None:
    if k < 1 or n < 2 * k:
        raise ValueError(f"Kneser parameters need n >= 2k >= 2, got n={n}, k={k}")


def kneser_spectrum(n: int, k: int) -> RationalSpectrum:
    """Eigenvalue (-1)^i C(n-k-i, k-i) with multiplicity C(n, i) - C(n, i-1), i = 0..k."""
    _check_kneser(n, k)
    return RationalSpectrum.from_pairs(
        ((-1) ** i * binom(n - k - i, k - i), binom(n, i) - binom(n, i - 1)) for i in range(k + 1)
    )


def kneser_edge_count(n: int, k: int) -> int:
    _check_kneser(n, k)
    return comb(n, k) * comb(n - k, k) // 2


def kneser_inertia(n: int, k: int) -> Inertia:
    _check_kneser(n, k)
    return Inertia(binom(n - 1, k), 0, binom(n - 1, k - 1))


def _check_kj(k: int, j: int) -> None:
    if not k > j >= 1:
        raise ValueError(f"need k > j >= 1, got k={k}, j={j}")


def kneser_symmetry_value(k: int, j: int) -> int:
    """Common value of s+ = s- for K(2k+2j, k): C(2k+2j, k) C(k+2j, k) / 2."""
    _check_kj(k, j)
    twice = comb(2 * k + 2 * j, k) * comb(k + 2 * j, k)
    assert twice % 2 == 0
    return twice // 2


# Ruiz identities and the squared-binomial polynomial ---------------------

def ruiz_identity(n: int, x) -> Fraction:
    """sum_{i=0}^{n} (-1)^i C(n,i) (x-i)^n; equals n! for every x."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x = Fraction(x)
    return sum(((-1) ** i * comb(n, i) * (x - i) ** n for i in range(n + 1)), Fraction(0))


def ruiz_derivative_identity(n: int, x, j: int) -> Fraction:
    """sum_{i=0}^{n} (-1)^i C(n,i) (x-i)^(n-j); zero for 1 <= j <= n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= j <= n:
        raise ValueError(f"need 1 <= j <= n, got j={j}, n={n}")
    x = Fraction(x)
    return sum(((-1) ** i * comb(n, i) * (x - i) ** (n - j) for i in range(n + 1)), Fraction(0))


def _binom_poly(a: int, k: int) -> Fraction:
    """C(a, k) as the polynomial a(a-1)...(a-k+1)/k!, valid for negative a too."""
    num = 1
    for t in range(k):
        num *= a - t
    return Fraction(num, factorial(k))


def p_polynomial(j: int, a: int) -> Fraction:
    """C(a, 2j)^2 + C(a-1, 2j)^2 with binomials read as polynomials in a."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return _binom_poly(a, 2 * j) ** 2 + _binom_poly(a - 1, 2 * j) ** 2


def _poly_mul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for k, y in enumerate(q):
                out[i + k] += x * y
    return out


def _poly_eval(coeffs: list[Fraction], y) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


def q_coefficients(j: int) -> list[Fraction]:
    """Coefficients c_0..c_{4j} of Q(y) with P(a) = Q(a - j).

    Expands 2/((2j)!)^2 * y^2 (y^2 + j^2) * prod_{m=1}^{j-1} (y^2 - m^2)^2 and
    checks the expansion against :func:`p_polynomial` at 4j+1 points.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    poly = [Fraction(0), Fraction(0), Fraction(2, factorial(2 * j) ** 2)]  # 2/(2j)!^2 * y^2
    poly = _poly_mul(poly, [Fraction(j * j), Fraction(0), Fraction(1)])
    for m in range(1, j):
        factor = [Fraction(-m * m), Fraction(0), Fraction(1)]
        poly = _poly_mul(poly, _poly_mul(factor, factor))
    assert len(poly) == 4 * j + 1
    for a in range(-j, 3 * j + 1):
        if _poly_eval(poly, a - j) != p_polynomial(j, a):
            raise ArithmeticError(f"Q expansion disagrees with P at a={a}, j={j}")
    return poly


@dataclass(frozen=True)
class KneserSymmetryWitness:
    k: int
    j: int
    n: int
    s_plus: int
    s_minus: int
    closed_form: int
    grouped_sum: Fraction       # alternating sum over i = 0..k
    full_sum: Fraction          # alternating sum of Q(k+j-i) over i = 0..2k+2j

    @property
    def holds(self) -> bool:
        return (self.s_plus == self.s_minus == self.closed_form
                and self.grouped_sum == 0 and self.full_sum == 0)


def verify_kneser_symmetry(k: int, j: int) -> KneserSymmetryWitness:
    """Check s+ = s- for K(2k+2j, k) two ways: from the exact spectrum, and through
    the alternating binomial sums that reduce the claim to the Ruiz corollary."""
    _check_kj(k, j)
    n = 2 * k + 2 * j
    energies = exact_square_energies(kneser_spectrum(n, k))
    grouped = sum(
        ((-1) ** i * comb(n, i) * (binom(k + 2 * j - i, 2 * j) ** 2 + binom(k + 2 * j - 1 - i, 2 * j) ** 2)
         for i in range(k + 1)),
        Fraction(0),
    )
    q = q_coefficients(j)
    full = sum(((-1) ** i * comb(n, i) * _poly_eval(q, k + j - i) for i in range(n + 1)), Fraction(0))
    return KneserSymmetryWitness(k, j, n, energies.s_plus, energies.s_minus,
                                 kneser_symmetry_value(k, j), grouped, full)


# strongly regular families ------------------------------------------------

def gq_spectrum(s: int, t: int) -> SrgSpectrumParams:
    """Collinearity graph of a generalised quadrangle of order (s, t)."""
    if s < 1 or t < 1:
        raise ValueError("GQ order needs s, t >= 1")
    f_num = s * (s + 1) * t * (t + 1)
    g_num = s * s * (s * t + 1)
    if f_num % (s + t) or g_num % (s + t):
        raise ValueError(f"(s+t) = {s + t} does not divide the multiplicities; not a GQ order")
    params = SrgSpectrumParams(
        family=f"GQ({s},{t})", n=(s + 1) * (s * t + 1), k=s * (t + 1), r=s - 1, s=-t - 1,
        f=f_num // (s + t), g=g_num // (s + t),
    )
    _check_srg(params)
    return params


def taylor_spectrum(q: int) -> SrgSpectrumParams:
    """Taylor's strongly regular graph T_q on q^3 vertices (q an odd prime power; primality unchecked)."""
    if q < 3 or q % 2 == 0:
        raise ValueError(f"Taylor graph needs odd q >= 3, got {q}")
    params = SrgSpectrumParams(
        family=f"Taylor({q})", n=q ** 3, k=(q - 1) * (q * q + 1) // 2, r=(q - 1) // 2,
        s=-(q * q + 1) // 2, f=(q - 1) * (q * q + 1), g=q * (q - 1),
    )
    _check_srg(params)
    return params


def _check_srg(p: SrgSpectrumParams) -> None:
    if 1 + p.f + p.g != p.n:
        raise ArithmeticError(f"{p.family}: multiplicities do not sum to n")
    if p.k + p.r * p.f + p.s * p.g != 0:
        raise ArithmeticError(f"{p.family}: nonzero trace")
    if p.k * p.k + p.r * p.r * p.f + p.s * p.s * p.g != p.n * p.k:
        raise ArithmeticError(f"{p.family}: sum of squares differs from 2m = nk")


def taylor_spread_formula(q: int) -> Fraction:
    """-q^4/2 + q^3/2 - q^2/2 + q/2."""
    return Fraction(-q ** 4 + q ** 3 - q ** 2 + q, 2)


def blowup_spectrum(spec: RationalSpectrum, t: int) -> RationalSpectrum:
    """Eigenvalues scaled by t plus (t-1)n extra zeros."""
    if t < 1:
        raise ValueError("blowup factor must be >= 1")
    return RationalSpectrum.from_pairs(
        [(t * e, m) for e, m in spec.pairs] + [(0, (t - 1) * spec.n)]
    )
