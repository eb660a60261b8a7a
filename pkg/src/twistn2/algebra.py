"""The twisted N=2 superconformal algebra as data.

Generators: Virasoro modes L_m (m integer), current modes T_r (r half-odd),
fermionic modes G_p (p any half-integer), and the central element C.  The
super-bracket is total on ordered pairs; Kronecker terms are exact integer
comparisons on doubled indices, so no floating point enters anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .halfint import HalfInt

EVEN, ODD = 0, 1


@dataclass(frozen=True)
class Gen:
    """A basis generator: kind in {L, T, G, C}, index absent for C."""

    kind: str
    idx: HalfInt | None = None

    def __post_init__(self):
        if self.kind == "C":
            if self.idx is not None:
                raise ValueError("central element carries no index")
            return
        if self.kind not in ("L", "T", "G"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if not isinstance(self.idx, HalfInt):
            object.__setattr__(self, "idx", HalfInt.of(self.idx))
        if self.kind == "L" and not self.idx.is_integer():
            raise ValueError(f"L index must be an integer, got {self.idx}")
        if self.kind == "T" and not self.idx.is_half_odd():
            raise ValueError(f"T index must be half-odd, got {self.idx}")

    def __str__(self) -> str:
        return "C" if self.kind == "C" else f"{self.kind}({self.idx})"

    def sort_key(self):
        return (self.kind, self.idx.doubled if self.idx is not None else 0)


def L(i) -> Gen:
    return Gen("L", HalfInt.of(i))


def T(i) -> Gen:
    return Gen("T", HalfInt.of(i))


def G(i) -> Gen:
    return Gen("G", HalfInt.of(i))


C = Gen("C")


def parity(g: Gen) -> int:
    """Z2-grading: G modes are odd, everything else is even."""
    return ODD if g.kind == "G" else EVEN


# A finite bracket value: generator -> exact rational coefficient.
GenSum = dict


def _add_term(out: GenSum, g: Gen, coeff: Fraction) -> None:
    if not coeff:
        return
    acc = out.get(g)
    new = coeff if acc is None else acc + coeff
    if new:
        out[g] = new
    elif acc is not None:
        del out[g]


def bracket(g1: Gen, g2: Gen) -> GenSum:
    """Super-bracket of two basis generators.

    Mixed orders are defined through super-antisymmetry
    [y, x] = -(-1)^(|x||y|) [x, y], so the relation holds by construction.
    """
    k1, k2 = g1.kind, g2.kind
    if k1 == "C" or k2 == "C":
        return {}

    out: GenSum = {}
    if k1 == "L" and k2 == "L":
        m, n = g1.idx.value, g2.idx.value
        _add_term(out, L(m + n), m - n)
        if g1.idx.doubled + g2.idx.doubled == 0:
            _add_term(out, C, (m**3 - m) / 12)
        return out
    if k1 == "L" and k2 == "T":
        m, r = g1.idx.value, g2.idx.value
        _add_term(out, T(r + m), -r)
        return out
    if k1 == "L" and k2 == "G":
        m, p = g1.idx.value, g2.idx.value
        _add_term(out, G(p + m), m / 2 - p)
        return out
    if k1 == "T" and k2 == "T":
        r = g1.idx.value
        if g1.idx.doubled + g2.idx.doubled == 0:
            _add_term(out, C, r / 3)
        return out
    if k1 == "T" and k2 == "G":
        r, p = g1.idx.value, g2.idx.value
        _add_term(out, G(p + r), Fraction(1))
        return out
    if k1 == "G" and k2 == "G":
        p, q = g1.idx.value, g2.idx.value
        sign = Fraction(-1) if g1.idx.is_half_odd() else Fraction(1)  # (-1)^(2p)
        if (g1.idx + g2.idx).is_integer():
            _add_term(out, L(p + q), 2 * sign)
            if g1.idx.doubled + g2.idx.doubled == 0:
                _add_term(out, C, sign * (p * p - Fraction(1, 4)) / 3)
        else:
            _add_term(out, T(p + q), -sign * (p - q))
        return out

    # reversed kinds: flip through super-antisymmetry
    rev = bracket(g2, g1)
    sign = Fraction(-1) if parity(g1) and parity(g2) else Fraction(1)
    return {g: -sign * c for g, c in rev.items()}


def _bracket_gen_sum(g: Gen, summ: GenSum) -> GenSum:
    out: GenSum = {}
    for h, c in summ.items():
        for h2, c2 in bracket(g, h).items():
            _add_term(out, h2, c * c2)
    return out


def generators_in_window(window: int) -> list[Gen]:
    """All generators with |doubled index| <= 2*window, plus C."""
    bound = 2 * window
    gens: list[Gen] = [C]
    gens += [L(HalfInt(d)) for d in range(-bound, bound + 1) if d % 2 == 0]
    gens += [T(HalfInt(d)) for d in range(-bound, bound + 1) if d % 2 == 1]
    gens += [G(HalfInt(d)) for d in range(-bound, bound + 1)]
    return gens


@dataclass
class JacobiReport:
    window: int
    triples_checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def super_jacobi_sweep(window: int) -> JacobiReport:
    """Exhaustively check the graded Jacobi identity on a window.

    For homogeneous x, y, z the identity reads
        [x,[y,z]] = [[x,y],z] + (-1)^(|x||y|) [y,[x,z]].
    Violations are collected (none are expected); nothing is thrown.
    """
    gens = generators_in_window(window)
    violations = []
    count = 0
    for x, y, z in product(gens, repeat=3):
        count += 1
        res = jacobi_residual(x, y, z)
        if res:
            violations.append((x, y, z, {str(g): c for g, c in res.items()}))
    return JacobiReport(window, count, violations)


def jacobi_residual(x: Gen, y: Gen, z: Gen) -> GenSum:
    lhs = _bracket_gen_sum(x, bracket(y, z))
    rhs1: GenSum = {}
    for h, c in bracket(x, y).items():
        for h2, c2 in bracket(h, z).items():
            _add_term(rhs1, h2, c * c2)
    sign = Fraction(-1) if parity(x) and parity(y) else Fraction(1)
    rhs2 = _bracket_gen_sum(y, bracket(x, z))
    out = dict(lhs)
    for g, c in rhs1.items():
        _add_term(out, g, -c)
    for g, c in rhs2.items():
        _add_term(out, g, -sign * c)
    return out
