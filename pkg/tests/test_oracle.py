import random
from fractions import Fraction

import pytest

from skeinlab.oracle import (
    OracleError,
    Representation,
    SL2IntMatrix,
    eval_word,
    fuzz_check,
    laurent_character_check,
    random_word,
    sample_representation,
    sample_sl2,
    subset_trace_assignment,
)
from skeinlab.trace_engine import ReductionMode, TraceEngine
from skeinlab.words import AbelianVector, parse_word


class _StubRng:
    """Deterministic rng stub: fixed entry, always the upper elementary side."""

    def __init__(self, entry):
        self.entry = entry

    def randint(self, a, b):
        return self.entry

    def randrange(self, n):
        return 0


def test_sample_identity_walk():
    assert sample_sl2(_StubRng(0), 5) == SL2IntMatrix.identity()


def test_sample_single_elementary_step():
    m = sample_sl2(_StubRng(2), 1)
    assert (m.a, m.b, m.c, m.d) == (1, 2, 0, 1)


def test_determinant_enforced():
    with pytest.raises(OracleError):
        SL2IntMatrix(1, 0, 0, 2)
    rng = random.Random(7)
    for _ in range(100):
        m = sample_sl2(rng, 6)
        n = sample_sl2(rng, 6)
        for result in (m * n, m.inverse(), m**3, n**-2):
            assert result.a * result.d - result.b * result.c == 1


def test_sample_determinism():
    a = sample_sl2(random.Random(11), 8)
    b = sample_sl2(random.Random(11), 8)
    assert a == b


def test_eval_word_examples():
    rep = Representation(
        2, (SL2IntMatrix(1, 1, 0, 1), SL2IntMatrix(1, 0, 1, 1))
    )
    assert eval_word(parse_word("e", 2), rep) == SL2IntMatrix.identity()
    assert eval_word(parse_word("e", 2), rep).trace == 2
    a = rep.images[0]
    assert eval_word(parse_word("a^-1", 2), rep) == SL2IntMatrix(
        a.d, -a.b, -a.c, a.a
    )
    ab = eval_word(parse_word("a b", 2), rep)
    assert (ab.a, ab.b, ab.c, ab.d) == (2, 1, 1, 1)
    assert ab.trace == 3
    with pytest.raises(OracleError):
        eval_word(parse_word("a", 1), rep)


def test_trace_identities_random_pairs():
    rng = random.Random(8)
    for _ in range(200):
        m = sample_sl2(rng, 6)
        n = sample_sl2(rng, 6)
        assert m.trace == m.inverse().trace
        assert (m * n).trace == (n * m).trace
        assert m.trace * n.trace == (m * n).trace + (m * n.inverse()).trace


def test_fuzz_check_small_runs_clean():
    for mode in ReductionMode:
        report = fuzz_check(count=150, max_rank=4, max_len=10, mode=mode, seed=5)
        assert report.ok
        assert report.all_values_integral
        assert report.rule_stats
        payload = report.to_dict()
        assert payload["failure_count"] == 0
        assert payload["mode"] == mode.value


def test_fuzz_single_word_instance():
    # One fixed word checked against one explicit representation.
    rng = random.Random(9)
    rep = sample_representation(rng, 2)
    w = parse_word("a b^-1 a b", 2)
    engine = TraceEngine(ReductionMode.INTEGRAL)
    poly = engine.reduce(w)
    assignment = subset_trace_assignment(rep, poly.variables())
    assert poly.evaluate(assignment) == eval_word(w, rep).trace


def test_fuzz_rejects_bad_parameters():
    with pytest.raises(OracleError):
        fuzz_check(count=0, max_rank=2, max_len=4, mode=ReductionMode.INTEGRAL, seed=0)


def test_random_word_respects_budget():
    rng = random.Random(10)
    for _ in range(200):
        w = random_word(rng, 4, 12)
        assert w.symbol_length() <= 12
        assert all(1 <= l.index <= 4 for l in w.letters)


def test_laurent_character_examples():
    from skeinlab.skein import abelian_from_vector, to_laurent

    u1 = to_laurent(abelian_from_vector(AbelianVector(1, (1,))))
    assert u1.evaluate([3]) == Fraction(10, 3)
    v11 = to_laurent(abelian_from_vector(AbelianVector(2, (1, 1))))
    assert v11.evaluate([2, 3]) == Fraction(37, 6)


def test_laurent_character_check_random():
    rng = random.Random(12)
    vectors = [
        AbelianVector(n, tuple(rng.randint(-5, 5) for _ in range(n)))
        for n in (rng.randint(1, 4) for _ in range(500))
    ]
    report = laurent_character_check(vectors, seed=4)
    assert report.ok
    assert report.to_dict()["failure_count"] == 0
