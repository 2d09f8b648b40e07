"""Exact integer SL2 matrices: the independent ground truth for every symbolic identity.

Random matrices are products of elementary unitriangular matrices with small
integer entries, so determinants are exactly 1 and every comparison in the
fuzzing harness is exact integer equality; no tolerances anywhere.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .words import AbelianVector, GroupWord, format_word, reduce_word, subset_word
from .exactpoly import is_integral


class OracleError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class SL2IntMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise OracleError(f"determinant is not 1: {self}")

    @classmethod
    def identity(cls) -> "SL2IntMatrix":
        return cls(1, 0, 0, 1)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __mul__(self, other: "SL2IntMatrix") -> "SL2IntMatrix":
        return SL2IntMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "SL2IntMatrix":
        # Adjugate of a determinant-1 matrix.
        return SL2IntMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "SL2IntMatrix":
        if n < 0:
            return self.inverse() ** (-n)
        result = SL2IntMatrix.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result


@dataclass(frozen=True, slots=True)
class Representation:
    """Homomorphism F_rank -> SL2(Z), determined freely by generator images."""

    rank: int
    images: tuple[SL2IntMatrix, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.rank:
            raise OracleError(
                f"need {self.rank} generator images, got {len(self.images)}"
            )


def sample_sl2(rng: random.Random, walk_length: int) -> SL2IntMatrix:
    """Product of walk_length elementary matrices with entries in [-3, 3]."""
    if walk_length < 1:
        raise OracleError("walk_length must be >= 1")
    m = SL2IntMatrix.identity()
    for _ in range(walk_length):
        entry = rng.randint(-3, 3)
        if rng.randrange(2) == 0:
            step = SL2IntMatrix(1, entry, 0, 1)
        else:
            step = SL2IntMatrix(1, 0, entry, 1)
        m = m * step
    return m


def sample_representation(
    rng: random.Random, rank: int, walk_length: int = 6
) -> Representation:
    return Representation(
        rank, tuple(sample_sl2(rng, walk_length) for _ in range(rank))
    )


def eval_word(w: GroupWord, rep: Representation) -> SL2IntMatrix:
    """Exact matrix value of a word under a representation."""
    if w.rank != rep.rank:
        raise OracleError(f"word rank {w.rank} != representation rank {rep.rank}")
    m = SL2IntMatrix.identity()
    for letter in w.letters:
        m = m * rep.images[letter.index - 1] ** letter.exponent
    return m


def subset_trace_assignment(rep: Representation, variables) -> dict:
    """Map each SubsetVar to the trace of its subset word under rep."""
    out = {}
    for var in variables:
        out[var] = eval_word(subset_word(var.subset, rep.rank), rep).trace
    return out


def random_word(rng: random.Random, rank: int, max_len: int) -> GroupWord:
    """Random reduced word with symbol length at most max_len, exponents in [-3, 3]."""
    budget = rng.randint(0, max_len)
    pairs = []
    while budget > 0:
        index = rng.randint(1, rank)
        exponent = rng.choice((-3, -2, -1, 1, 2, 3))
        if abs(exponent) > budget:
            exponent = budget if exponent > 0 else -budget
        pairs.append((index, exponent))
        budget -= abs(exponent)
    return reduce_word(pairs, rank)


@dataclass
class FuzzReport:
    count: int
    mode: str
    seed: int
    failures: list = field(default_factory=list)
    rule_stats: dict = field(default_factory=dict)
    all_values_integral: bool = True
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        # No timing fields: stdout must be byte-identical across runs.
        return {
            "count": self.count,
            "mode": self.mode,
            "seed": self.seed,
            "failures": self.failures,
            "failure_count": len(self.failures),
            "all_values_integral": self.all_values_integral,
            "rule_stats": dict(sorted(self.rule_stats.items())),
        }


def fuzz_check(
    count: int,
    max_rank: int,
    max_len: int,
    mode,
    seed: int,
    engine=None,
) -> FuzzReport:
    """Compare tr(rho(w)) with the canonical polynomial evaluated at subset traces.

    Every trial is an exact integer comparison; failures land in the report
    rather than raising.
    """
    from . import trace_engine

    if count < 1 or max_rank < 1 or max_len < 1:
        raise OracleError("fuzz parameters must be positive")
    mode = trace_engine.ReductionMode(mode)
    if engine is None:
        engine = trace_engine.get_engine(mode)
    rng = random.Random(f"skeinlab-fuzz-{seed}")
    report = FuzzReport(count=count, mode=mode.value, seed=seed)
    start = time.monotonic()
    for _ in range(count):
        rank = rng.randint(1, max_rank)
        rep = sample_representation(rng, rank)
        w = random_word(rng, rank, max_len)
        expected = eval_word(w, rep).trace
        poly = engine.reduce(w)
        assignment = subset_trace_assignment(rep, poly.variables())
        got = poly.evaluate(assignment)
        if not is_integral(got):
            report.all_values_integral = False
        if got != expected:
            report.failures.append(
                {
                    "word": format_word(w),
                    "rank": rank,
                    "expected": expected,
                    "got": str(got),
                }
            )
    report.rule_stats = dict(engine.stats)
    report.elapsed = time.monotonic() - start
    return report


def random_nonzero_rational(rng: random.Random, bound: int = 9) -> Fraction:
    num = rng.randint(1, bound) * rng.choice((-1, 1))
    den = rng.randint(1, bound)
    return Fraction(num, den)


@dataclass
class CharacterCheckReport:
    count: int
    seed: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "failures": self.failures,
            "failure_count": len(self.failures),
        }


def laurent_character_check(
    vectors: Sequence[AbelianVector], seed: int
) -> CharacterCheckReport:
    """Check abelian canonical forms against diagonal characters.

    For x_i -> diag(lambda_i, 1/lambda_i) with random nonzero rational
    lambda_i, the canonical form of [v] must evaluate to
    lambda^v + lambda^(-v), exactly.
    """
    from . import skein

    rng = random.Random(f"skeinlab-character-{seed}")
    report = CharacterCheckReport(count=len(vectors), seed=seed)
    for v in vectors:
        lams = [random_nonzero_rational(rng) for _ in range(v.rank)]
        direct = Fraction(1)
        inv = Fraction(1)
        for lam, e in zip(lams, v.coords):
            direct *= Fraction(lam) ** e
            inv *= Fraction(lam) ** (-e)
        expected = direct + inv
        element = skein.abelian_from_vector(v)
        got = skein.to_laurent(element).evaluate(lams)
        if got != expected:
            report.failures.append(
                {
                    "vector": list(v.coords),
                    "lambdas": [str(x) for x in lams],
                    "expected": str(expected),
                    "got": str(got),
                }
            )
    return report
