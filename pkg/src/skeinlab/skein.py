"""The skein algebra of F_n and Z^n at the classical specialization.

Elements are canonical polynomials: over F_n in the subset-trace variables
t_S (computed by the trace engine), over Z^n in the generators u_i = [e_i]
and v_jk = [e_j + e_k] (dyadic mode) or in the full family of 0/1-vector
classes (integral mode).  Multiplication of canonical forms is plain
polynomial multiplication; the defining product relation
[g][h] = [gh] + [gh^-1] is already baked into the canonicalization, and the
two routes are reconciled by the test suite.

The abelian canonicalization follows the symmetric-Laurent argument: write
x^v + x^(-v) over a_i = x_i + x_i^(-1), b_i = x_i - x_i^(-1); terms of odd
total b-degree cancel; eliminate the b's pairwise via b_i^2 = a_i^2 - 4 and
b_j b_k = 2 v_jk - u_j u_k, pairing leftover b's sorted-adjacent.  The
integral variant instead pulls the vector back to the word
g_1^(v_1) ... g_n^(v_n) in F_n and reuses the integral-mode trace engine,
which lands exactly on the 0/1-vector generator classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import trace_engine
from .exactpoly import LaurentPoly, Poly
from .trace_engine import ReductionMode
from .words import AbelianVector, GroupWord, reduce_word


class SkeinError(ValueError):
    pass


class AbelianVar:
    """Generator class of S(Z^n): u_i, v_jk, or w_S for a 0/1-support set S.

    The support is a sorted tuple of indices; sizes 1 and 2 print as the
    u/v generators, larger supports (integral mode only) print as w[...].
    """

    __slots__ = ("indices", "_key", "_hash")
    _registry: dict[tuple[int, ...], "AbelianVar"] = {}

    def __new__(cls, indices: Iterable[int]) -> "AbelianVar":
        key = tuple(sorted(set(indices)))
        cached = cls._registry.get(key)
        if cached is not None:
            return cached
        if not key or key[0] < 1:
            raise SkeinError(f"support must be a nonempty set of positive ints: {key}")
        self = object.__new__(cls)
        self.indices = key
        self._key = (len(key), key)
        self._hash = hash((cls.__name__, key))
        cls._registry[key] = self
        return self

    @property
    def sort_key(self) -> tuple:
        return self._key

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return self is other or (
            isinstance(other, AbelianVar) and self.indices == other.indices
        )

    def __lt__(self, other: "AbelianVar") -> bool:
        return self._key < other._key

    def __repr__(self) -> str:
        return f"AbelianVar({self.indices})"

    def __str__(self) -> str:
        if len(self.indices) == 1:
            return f"u{self.indices[0]}"
        prefix = "v" if len(self.indices) == 2 else "w"
        return prefix + "[" + ",".join(map(str, self.indices)) + "]"


def parse_abelian_var(name: str) -> AbelianVar:
    """Inverse of str(AbelianVar), for the JSON schema."""
    if name.startswith("u") and name[1:].isdigit():
        return AbelianVar((int(name[1:]),))
    if name[0] in "vw" and name[1:].startswith("[") and name.endswith("]"):
        return AbelianVar(int(s) for s in name[2:-1].split(","))
    raise SkeinError(f"bad abelian variable name {name!r}")


AbelianPoly = Poly  # canonical abelian forms are Polys over AbelianVar


@dataclass(frozen=True)
class SkeinElement:
    """Canonical element of S(F_n) (group='free') or S(Z^n) (group='abelian')."""

    rank: int
    mode: ReductionMode
    group: str
    poly: Poly

    def __post_init__(self) -> None:
        if self.group not in ("free", "abelian"):
            raise SkeinError(f"unknown group kind {self.group!r}")

    def _compatible(self, other: "SkeinElement") -> None:
        if (self.rank, self.mode, self.group) != (other.rank, other.mode, other.group):
            raise SkeinError(
                f"mismatched elements: ({self.rank},{self.mode.value},{self.group})"
                f" vs ({other.rank},{other.mode.value},{other.group})"
            )

    def __add__(self, other: "SkeinElement") -> "SkeinElement":
        self._compatible(other)
        return SkeinElement(self.rank, self.mode, self.group, self.poly + other.poly)

    def __sub__(self, other: "SkeinElement") -> "SkeinElement":
        self._compatible(other)
        return SkeinElement(self.rank, self.mode, self.group, self.poly - other.poly)

    def __rmul__(self, scalar) -> "SkeinElement":
        if isinstance(scalar, (int, Fraction)):
            return SkeinElement(self.rank, self.mode, self.group, scalar * self.poly)
        return NotImplemented


def from_word(w: GroupWord, mode: ReductionMode = ReductionMode.INTEGRAL) -> SkeinElement:
    """Canonical form of the class [w] in S(F_rank)."""
    mode = ReductionMode(mode)
    return SkeinElement(w.rank, mode, "free", trace_engine.reduce_trace(w, mode))


def multiply(x: SkeinElement, y: SkeinElement) -> SkeinElement:
    """Product in the skein algebra; canonical forms multiply as polynomials."""
    x._compatible(y)
    return SkeinElement(x.rank, x.mode, x.group, x.poly * y.poly)


def abelian_multiply(x: SkeinElement, y: SkeinElement) -> SkeinElement:
    if x.group != "abelian" or y.group != "abelian":
        raise SkeinError("abelian_multiply needs abelian elements")
    return multiply(x, y)


def _vector_canonical_dyadic(v: AbelianVector) -> Poly:
    # Formal expansion in a_i (tau-even) and b_i (tau-odd) variables; a-vars
    # sort before b-vars so monomial keys stay canonical.
    class _FormalVar:
        __slots__ = ("kind", "index", "sort_key")

        def __init__(self, kind: str, index: int):
            self.kind = kind
            self.index = index
            self.sort_key = (kind, index)

        def __hash__(self):
            return hash(self.sort_key)

        def __eq__(self, other):
            return isinstance(other, _FormalVar) and self.sort_key == other.sort_key

        def __lt__(self, other):
            return self.sort_key < other.sort_key

    a_vars = {i: _FormalVar("a", i) for i in range(1, v.rank + 1)}
    b_vars = {i: _FormalVar("b", i) for i in range(1, v.rank + 1)}

    expansion = Poly.const(1)
    total = 0
    for i, e in enumerate(v.coords, start=1):
        if e == 0:
            continue
        sign = 1 if e > 0 else -1
        base = Poly.variable(a_vars[i]) + sign * Poly.variable(b_vars[i])
        expansion = expansion * base ** abs(e)
        total += abs(e)

    denom = Fraction(1, 2**total)
    pieces = []
    for mono, coeff in expansion.terms.items():
        alphas: list[tuple[int, int]] = []
        betas: list[tuple[int, int]] = []
        for var, power in mono:
            (alphas if var.kind == "a" else betas).append((var.index, power))
        if sum(p for _, p in betas) % 2 == 1:
            continue  # cancels against the tau-image
        factor = Poly.const(2 * coeff * denom)
        for i, power in alphas:
            factor = factor * Poly.variable(AbelianVar((i,))) ** power
        leftovers: list[int] = []
        for i, power in sorted(betas):
            half, odd = divmod(power, 2)
            if half:
                u_i = Poly.variable(AbelianVar((i,)))
                factor = factor * (u_i * u_i - 4) ** half
            if odd:
                leftovers.append(i)
        for j, k in zip(leftovers[0::2], leftovers[1::2]):
            u_j = Poly.variable(AbelianVar((j,)))
            u_k = Poly.variable(AbelianVar((k,)))
            v_jk = Poly.variable(AbelianVar((j, k)))
            factor = factor * (2 * v_jk - u_j * u_k)
        pieces.append(factor)
    return Poly.sum(pieces)


def _vector_canonical_integral(v: AbelianVector) -> Poly:
    # Pull back along F_n ->> Z^n: the subset generators map onto the
    # 0/1-vector classes, so the integral trace reduction is exactly the
    # integral abelian canonicalization.
    pairs = [(i, e) for i, e in enumerate(v.coords, start=1) if e != 0]
    word = reduce_word(pairs, v.rank)
    poly = trace_engine.reduce_trace(word, ReductionMode.INTEGRAL)
    return poly.map_variables(lambda var: AbelianVar(var.subset))


def abelian_from_vector(
    v: AbelianVector, mode: ReductionMode = ReductionMode.DYADIC
) -> SkeinElement:
    """Canonical form of [v] in S(Z^rank); the zero vector maps to 2."""
    mode = ReductionMode(mode)
    if mode is ReductionMode.DYADIC:
        poly = _vector_canonical_dyadic(v)
    else:
        poly = _vector_canonical_integral(v)
    return SkeinElement(v.rank, mode, "abelian", poly)


def to_laurent(x: SkeinElement) -> LaurentPoly:
    """Image under the symmetric-Laurent isomorphism; abelian elements only."""
    if x.group != "abelian":
        raise SkeinError("to_laurent is defined for abelian elements only")
    rank = x.rank
    powers: dict[tuple[AbelianVar, int], LaurentPoly] = {}

    def image_power(var: AbelianVar, power: int) -> LaurentPoly:
        cached = powers.get((var, power))
        if cached is None:
            if power == 1:
                ev = [0] * rank
                for i in var.indices:
                    ev[i - 1] = 1
                cached = LaurentPoly.monomial(rank, ev) + LaurentPoly.monomial(
                    rank, [-e for e in ev]
                )
            else:
                half = image_power(var, power // 2)
                cached = half * half
                if power % 2:
                    cached = cached * image_power(var, 1)
            powers[(var, power)] = cached
        return cached

    # Horner evaluation on the largest variable present; monomial tuples are
    # sorted, so each monomial's largest variable is its last pair.
    def horner(terms: dict) -> LaurentPoly:
        if not terms:
            return LaurentPoly.zero(rank)
        if len(terms) == 1 and () in terms:
            return LaurentPoly.const(rank, terms[()])
        vmax = max(m[-1][0] for m in terms if m)
        groups: dict[int, dict] = {}
        for m, c in terms.items():
            if m and m[-1][0] == vmax:
                groups.setdefault(m[-1][1], {})[m[:-1]] = c
            else:
                groups.setdefault(0, {})[m] = c
        exps = sorted(groups, reverse=True)
        acc = horner(groups[exps[0]])
        prev = exps[0]
        for e in exps[1:]:
            acc = acc * image_power(vmax, prev - e) + horner(groups[e])
            prev = e
        if prev:
            acc = acc * image_power(vmax, prev)
        return acc

    return horner(x.poly.terms)
