import statistics

import pytest

from sp4cert.errors import BadPrime, UnknownName
from sp4cert.groups import GroupLabel, member
from sp4cert.matrices import Mat2, Mat4
from sp4cert.sampling import SampleSpec, sample


def test_zero_length_is_identity():
    assert sample(SampleSpec(GroupLabel.GAMMA_1P, 3, 1, 0)) == Mat4.identity()
    assert sample(SampleSpec(GroupLabel.SL2Z, 3, 1, 0)) == Mat2.identity()


def test_determinism():
    for label in (
        GroupLabel.GAMMA_1P,
        GroupLabel.GAMMA_TILDE_1P,
        GroupLabel.GAMMA_P2,
        GroupLabel.SL2Z,
        GroupLabel.GAMMA1_OF_P,
        GroupLabel.GAMMA1PRIME_P2,
        GroupLabel.SP_LAMBDA_Z,
    ):
        spec = SampleSpec(label, 5, 12345, 9)
        assert sample(spec) == sample(spec)


def test_validity_large_batch():
    p = 5
    for i in range(1000):
        m = sample(SampleSpec(GroupLabel.GAMMA_1P, p, i, i % 21))
        assert member(m, GroupLabel.GAMMA_1P, p)


@pytest.mark.parametrize(
    "label",
    [
        GroupLabel.GAMMA_TILDE_1P,
        GroupLabel.GAMMA_P2,
        GroupLabel.GAMMA1_OF_P,
        GroupLabel.GAMMA1PRIME_P2,
        GroupLabel.SP_LAMBDA_Z,
    ],
)
def test_validity_other_groups(label):
    p = 3
    for i in range(60):
        m = sample(SampleSpec(label, p, 40 + i, i % 11))
        assert member(m, label, p)


def test_entry_magnitudes_grow_with_length():
    p = 3

    def median_max_entry(length):
        tops = []
        for i in range(60):
            m = sample(SampleSpec(GroupLabel.GAMMA_1P, p, 100 + i, length))
            tops.append(max(abs(x.numerator) for row in m.rows for x in row))
        return statistics.median(tops)

    assert median_max_entry(20) > median_max_entry(5)


def test_seed_changes_output():
    a = sample(SampleSpec(GroupLabel.GAMMA_1P, 3, 1, 12))
    b = sample(SampleSpec(GroupLabel.GAMMA_1P, 3, 2, 12))
    assert a != b


def test_bad_prime_rejected():
    with pytest.raises(BadPrime):
        sample(SampleSpec(GroupLabel.GAMMA_1P, 6, 1, 3))


def test_unsupported_group_rejected():
    with pytest.raises(UnknownName):
        sample(SampleSpec(GroupLabel.GAMMA0_1P, 3, 1, 3))
