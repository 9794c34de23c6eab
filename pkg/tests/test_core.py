import numpy as np
import pytest
from hypothesis import given, strategies as st

from monopmf.core import (
    CountVector,
    DimensionMismatchError,
    FlatSpec,
    GroupedEstimate,
    Pmf,
    expand,
    group_counts,
    group_pmf,
    mixture_of_uniforms,
    validate_monotone_with_flats,
)

MIX1 = [(0.2, 4), (0.8, 8)]
MIX2 = [(0.15, 4), (0.1, 8), (0.75, 12)]
MIX3 = [(0.25, 2), (0.2, 4), (0.15, 6), (0.4, 8)]


class TestTypes:
    def test_pmf_rejects_bad_sums_and_negatives(self):
        with pytest.raises(ValueError):
            Pmf([0.5, 0.4])
        with pytest.raises(ValueError):
            Pmf([1.1, -0.1])
        with pytest.raises(ValueError):
            Pmf([])

    def test_pmf_is_read_only(self):
        p = Pmf([0.5, 0.5])
        with pytest.raises(ValueError):
            p.probs[0] = 1.0

    def test_flatspec_derives_first_indices(self):
        spec = FlatSpec([2, 3, 1])
        assert spec.q.tolist() == [1, 3, 6]
        assert spec.k == 6 and spec.m == 3

    @pytest.mark.parametrize("w", [[0, 2], [2, -1], [1.5, 2], []])
    def test_flatspec_rejects(self, w):
        with pytest.raises(ValueError):
            FlatSpec(np.array(w))

    def test_counts(self):
        c = CountVector([3, 0, 2])
        assert c.n == 5 and c.k == 3
        with pytest.raises(ValueError):
            CountVector([0, 0])
        with pytest.raises(ValueError):
            CountVector([1, -1, 2])

    def test_counts_from_samples(self):
        assert CountVector.from_samples([1, 1, 2]).counts.tolist() == [2, 1]
        assert CountVector.from_samples([2], k=4).counts.tolist() == [0, 1, 0, 0]
        with pytest.raises(ValueError):
            CountVector.from_samples([0, 1])
        with pytest.raises(DimensionMismatchError):
            CountVector.from_samples([5], k=4)

    def test_expansion_matrix(self):
        A = FlatSpec([2, 1]).expansion_matrix()
        np.testing.assert_array_equal(A, [[1, 0], [1, 0], [0, 1]])

    def test_grouped_constraint(self):
        with pytest.raises(ValueError):
            GroupedEstimate([0.3, 0.3], FlatSpec([2, 2]))
        with pytest.raises(DimensionMismatchError):
            GroupedEstimate([0.5], FlatSpec([1, 1]))


class TestValidate:
    def test_mixture_one(self):
        p = Pmf([0.15] * 4 + [0.1] * 4)
        assert validate_monotone_with_flats(p, FlatSpec([4, 4]))

    def test_single_region(self):
        assert validate_monotone_with_flats(Pmf([0.5, 0.5]), FlatSpec([2]))

    def test_first_region_not_flat(self):
        assert not validate_monotone_with_flats(Pmf([0.5, 0.3, 0.2]), FlatSpec([2, 1]))

    def test_boundary_must_drop(self):
        p = Pmf([0.25] * 4)
        assert not validate_monotone_with_flats(p, FlatSpec([2, 2]))
        assert validate_monotone_with_flats(p, FlatSpec([2, 2]), strict=False)

    def test_increasing_rejected_even_weakly(self):
        p = Pmf([0.2, 0.2, 0.3, 0.3])
        assert not validate_monotone_with_flats(p, FlatSpec([2, 2]), strict=False)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            validate_monotone_with_flats(Pmf([0.5, 0.5]), FlatSpec([3]))


class TestMixture:
    def test_mixture_one(self):
        p, spec = mixture_of_uniforms(MIX1)
        np.testing.assert_allclose(p.probs, [0.15] * 4 + [0.1] * 4, atol=1e-15)
        assert spec.w.tolist() == [4, 4]

    def test_mixture_two(self):
        p, spec = mixture_of_uniforms(MIX2)
        np.testing.assert_allclose(p.probs, [0.1125] * 4 + [0.075] * 4 + [0.0625] * 4, atol=1e-15)
        assert spec.w.tolist() == [4, 4, 4]

    def test_mixture_three(self):
        p, spec = mixture_of_uniforms(MIX3)
        np.testing.assert_allclose(p.probs, [0.25] * 2 + [0.125] * 2 + [0.075] * 2 + [0.05] * 2,
                                   atol=1e-15)
        assert spec.w.tolist() == [2, 2, 2, 2]

    def test_single_uniform(self):
        p, spec = mixture_of_uniforms([(1.0, 3)])
        np.testing.assert_allclose(p.probs, [1 / 3] * 3)
        assert spec.w.tolist() == [3]

    @pytest.mark.parametrize("comps", [
        [(0.5, 4), (0.4, 8)],
        [(0.5, 4), (0.5, 4)],
        [(0.5, 8), (0.5, 4)],
        [(1.2, 2), (-0.2, 4)],
        [],
    ])
    def test_rejects(self, comps):
        with pytest.raises(ValueError):
            mixture_of_uniforms(comps)


class TestGrouping:
    def test_group_counts(self):
        spec = FlatSpec([2, 3])
        assert group_counts(CountVector([3, 5, 2, 6, 4]), spec).tolist() == [8, 12]
        assert group_counts(CountVector([1, 0, 0]), FlatSpec([1, 1, 1])).tolist() == [1, 0, 0]
        assert group_counts(CountVector([2, 2, 2, 2]), FlatSpec([4])).tolist() == [8]

    def test_group_counts_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            group_counts(CountVector([1, 2, 3]), FlatSpec([2, 2]))

    def test_expand_values_matches_matrix(self):
        spec = FlatSpec([2, 3])
        got = spec.expand_values([0.2, 0.1])
        np.testing.assert_allclose(got, [0.2, 0.2, 0.1, 0.1, 0.1])
        np.testing.assert_allclose(got, spec.expansion_matrix() @ [0.2, 0.1])
        # weighted sum is 0.7, so it is not a grouped pmf
        with pytest.raises(ValueError):
            GroupedEstimate([0.2, 0.1], spec)

    def test_expand(self):
        got = expand(GroupedEstimate([0.15, 0.1], FlatSpec([4, 4])))
        np.testing.assert_allclose(got.probs, [0.15] * 4 + [0.1] * 4)
        assert expand(GroupedEstimate([1.0], FlatSpec([1]))).probs.tolist() == [1.0]


@st.composite
def mixtures(draw):
    m = draw(st.integers(1, 5))
    tops = np.cumsum(draw(st.lists(st.integers(1, 5), min_size=m, max_size=m)))
    raw = np.array(draw(st.lists(st.floats(0.05, 1.0), min_size=m, max_size=m)))
    masses = raw / raw.sum()
    masses[-1] = 1.0 - masses[:-1].sum()
    return list(zip(masses.tolist(), tops.tolist()))


@given(mixtures())
def test_mixture_passes_its_own_validation(comps):
    p, spec = mixture_of_uniforms(comps)
    assert validate_monotone_with_flats(p, spec)


@given(mixtures())
def test_expand_inverts_grouping(comps):
    p, spec = mixture_of_uniforms(comps)
    g = group_pmf(p, spec)
    np.testing.assert_allclose(expand(g).probs, p.probs, atol=1e-15)
    assert abs(expand(g).probs.sum() - np.dot(spec.w, g.values)) < 1e-12


@given(st.lists(st.integers(1, 6), min_size=1, max_size=6), st.data())
def test_group_counts_preserves_total(w, data):
    k = sum(w)
    counts = data.draw(st.lists(st.integers(0, 20), min_size=k, max_size=k).filter(lambda c: sum(c) > 0))
    c = CountVector(counts)
    assert group_counts(c, FlatSpec(np.array(w))).sum() == c.n
