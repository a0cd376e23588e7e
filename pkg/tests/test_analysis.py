import numpy as np
import pytest

from bglab import analysis as A
from bglab import constructions as C
from bglab import corpus
from bglab import terms as T
from bglab.checker import check_identity_exhaustive
from bglab.core import FiniteAlgebra, mult_reduct
from bglab.errors import NotAnIdeal, NotASubgroup, NotBrandt, SubgroupEnumerationBudget


def left_zero(n):
    return FiniteAlgebra("semigroup", tuple(f"l{i}" for i in range(n)),
                         [[i] * n for i in range(n)])


def rectangular_band():
    elems = [(i, j) for i in range(2) for j in range(2)]
    ix = {e: k for k, e in enumerate(elems)}
    table = [[ix[(a[0], b[1])] for b in elems] for a in elems]
    return FiniteAlgebra("semigroup", tuple(map(str, elems)), table)


def chain_semilattice(n):
    return FiniteAlgebra("semigroup", tuple(f"c{i}" for i in range(n)),
                         [[min(i, j) for j in range(n)] for i in range(n)])


def all_ideals(alg):
    """Oracle: every non-empty two-sided ideal, by scanning all subsets."""
    n = alg.size
    out = []
    for mask in range(1, 1 << n):
        members = {x for x in range(n) if mask >> x & 1}
        if all(int(alg.mul[i, s]) in members and int(alg.mul[s, i]) in members
               for i in members for s in range(n)):
            out.append(frozenset(members))
    return out


class TestIdempotentsAndCore:
    def test_b21_idempotents(self, b21_mul, b21):
        got = {b21.labels[i] for i in A.idempotents(b21_mul)}
        assert got == {"0", "1", "e", "f"}

    def test_power_semiring_idempotents_are_subgroups_plus_empty(self, ps3_mul, s3):
        # oracle: nonempty product-closed subsets of a finite group = subgroups
        closed = [m for m in range(1, 64)
                  if all((1 << int(s3.mul[i, j])) & m
                         for i in range(6) if m >> i & 1
                         for j in range(6) if m >> j & 1)]
        assert A.idempotents(ps3_mul) == [0] + closed
        assert len(closed) == 6

    def test_group_has_one_idempotent(self, s3):
        assert A.idempotents(s3) == [0]

    def test_idempotent_generated_core(self, ps3_mul):
        core_set = A.idempotent_generated(ps3_mul)
        assert len(core_set) == 13
        assert set(A.idempotents(ps3_mul)) <= set(core_set)


class TestBlockGroup:
    def test_power_semiring_is_block_group(self, ps3_mul):
        assert A.is_block_group(ps3_mul)

    def test_hall_reduct_is_block_group(self, hall2):
        assert A.is_block_group(mult_reduct(hall2))

    def test_left_zero_fails_with_least_witness(self):
        assert A.block_group_violation(left_zero(2)) == (0, 1)

    def test_inverses_in_b21(self, b21_mul, b21):
        assert A.inverses_of(b21_mul, b21.index("a")) == [b21.index("b")]
        assert A.inverses_of(b21_mul, b21.index("0")) == [b21.index("0")]

    def test_group_inverse_is_the_unique_inverse(self, s3):
        inv = C.group_inverses(s3)
        for g in range(6):
            assert A.inverses_of(s3, g) == [inv[g]]

    def test_rectangular_band_has_many_inverses(self):
        band = rectangular_band()
        assert not A.unique_inverse_check(band)
        a, b, c = A.unique_inverse_violation(band)
        for x in (b, c):
            assert band.mul[band.mul[a, x], a] == a
            assert band.mul[band.mul[x, a], x] == x

    def test_inverse_report_entries_replay(self, b21_mul):
        rep = A.inverse_report(b21_mul)
        mul = b21_mul.mul
        for a, invs in enumerate(rep):
            for b in range(6):
                is_inv = mul[mul[a, b], a] == a and mul[mul[b, a], b] == b
                assert (b in invs) == is_inv


class TestJTriviality:
    def test_idempotent_core_of_power_semiring(self, ps3_mul):
        core_set = A.idempotent_generated(ps3_mul)
        ok, witness = A.j_trivial(ps3_mul, core_set)
        assert ok and witness is None

    def test_groups_are_not_j_trivial(self, s3):
        ok, witness = A.j_trivial(s3)
        assert not ok and witness is not None
        a, b = witness
        assert A.principal_ideal(s3, a) == A.principal_ideal(s3, b)

    def test_chain_semilattice_is_j_trivial(self):
        ok, _ = A.j_trivial(chain_semilattice(3))
        assert ok


class TestPrincipalSeries:
    def test_b21_series_exact(self, b21_mul, b21):
        rep = A.principal_series(b21_mul)
        named = [[b21.labels[i] for i in ideal] for ideal in rep.chain]
        assert named == [["0"], ["0", "a", "b", "e", "f"],
                         ["0", "1", "a", "b", "e", "f"]]
        assert [f["kind"] for f in rep.factors] == ["group", "brandt", "brandt"]
        assert rep.factors[1] == {"kind": "brandt", "group_order": 1, "index_count": 2}
        assert rep.factors[2] == {"kind": "brandt", "group_order": 1, "index_count": 1}
        assert (rep.h, rep.m, rep.k, rep.q, rep.r) == (2, 1, 1, 4, 5)
        assert rep.k_floored and rep.brandt_series

    def test_group_series_has_height_zero(self, s3):
        rep = A.principal_series(s3)
        assert rep.h == 0
        assert rep.factors == [{"kind": "group", "order": 6}]
        assert (rep.m, rep.k, rep.q, rep.r) == (6, 2, 6, 2)

    def test_brandt_over_z2_series(self, bz2):
        rep = A.principal_series(bz2)
        assert (rep.h, rep.m, rep.k, rep.q, rep.r) == (1, 2, 1, 4, 3)
        assert [f["kind"] for f in rep.factors] == ["group", "brandt"]

    def test_power_semiring_series(self, ps3_mul):
        rep = A.principal_series(ps3_mul)
        assert (rep.h, rep.m, rep.k) == (9, 6, 2)
        assert (rep.q, rep.r) == (3072, 29)
        assert not rep.k_floored
        assert rep.brandt_series

    @pytest.mark.parametrize("fixture", ["b21_mul", "b2", "bz2"])
    def test_chain_is_maximal_against_ideal_oracle(self, fixture, request):
        alg = request.getfixturevalue(fixture)
        rep = A.principal_series(alg)
        ideals = set(all_ideals(alg))
        chain = [frozenset(c) for c in rep.chain]
        assert all(c in ideals for c in chain)
        assert chain[0] == min(ideals, key=len)  # the kernel is the least ideal
        for lo, hi in zip(chain, chain[1:]):
            between = [i for i in ideals if lo < i < hi]
            assert between == []

    def test_every_corpus_algebra_gets_a_full_chain(self):
        for table in corpus.all_semigroups_upto(3):
            alg = corpus.as_algebra(table)
            rep = A.principal_series(alg)
            assert rep.chain[-1] == list(range(alg.size))
            q, r = (2**rep.h) * rep.m, rep.k * rep.h + rep.h + rep.k
            assert (rep.q, rep.r) == (q, r)


class TestBrandtRecognition:
    def test_recognizes_constructed_brandt(self, bz2, z2):
        rec = A.is_brandt(bz2)
        assert rec is not None
        assert rec.index_count == 2 and rec.group.size == 2
        iso = np.array(rec.iso)
        assert np.array_equal(iso[bz2.mul], rec.target.mul[np.ix_(iso, iso)])

    def test_null_semigroup_is_not_brandt(self):
        null = FiniteAlgebra("semigroup", ("0", "n"), [[0, 0], [0, 0]])
        assert A.is_brandt(null) is None

    def test_b21_is_not_brandt(self, b21_mul):
        assert A.is_brandt(b21_mul) is None

    def test_two_element_group_with_zero_is_brandt_with_one_index(self):
        alg = FiniteAlgebra("semigroup", ("0", "1"), [[0, 0], [0, 1]])
        rec = A.is_brandt(alg)
        assert rec is not None and rec.index_count == 1 and rec.group.size == 1


class TestMaximalSubgroups:
    def test_brandt_over_z2(self, bz2, z2):
        locals_ = dict(A.maximal_subgroups(bz2))
        e11 = bz2.labels.index("(1,e,1)")
        e22 = bz2.labels.index("(2,e,2)")
        assert set(locals_) == {0, e11, e22}
        assert locals_[0] == [0]
        assert len(locals_[e11]) == 2 and len(locals_[e22]) == 2

    def test_power_semiring_normalizer_quotients(self, ps3_mul, s3):
        locals_ = dict(A.maximal_subgroups(ps3_mul))
        h_mask = (1 << 0) | (1 << s3.index("(12)"))
        assert locals_[h_mask] == [h_mask]
        singletons = sorted(1 << g for g in range(6))
        assert locals_[1 << 0] == singletons
        a3_mask = (1 << 0) | (1 << s3.index("(123)")) | (1 << s3.index("(132)"))
        assert len(locals_[a3_mask]) == 2  # N(A3)/A3 has order 2

    def test_group_is_its_own_maximal_subgroup(self, s3):
        assert A.maximal_subgroups(s3) == [(0, list(range(6)))]


def brute_subgroups(alg):
    """Oracle: all product-closed subsets containing the identity that are
    closed under inversion, found by scanning every subset."""
    n = alg.size
    inv = C.group_inverses(alg)
    out = []
    for mask in range(1, 1 << n):
        members = [x for x in range(n) if mask >> x & 1]
        if 0 not in members:
            continue
        if any(inv[x] not in members for x in members):
            continue
        if all(int(alg.mul[x, y]) in members for x in members for y in members):
            out.append(frozenset(members))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


class TestGroupAnalytics:
    def test_subgroup_enumeration_matches_brute_force(self, s3, q8, z4):
        for g in (s3, q8, z4):
            assert A.subgroups_of(g) == brute_subgroups(g)

    def test_s3(self, s3):
        ga = A.group_analytics(s3)
        assert (ga.exponent, ga.derived_length, ga.solvable, ga.dedekind,
                ga.has_quaternion_subgroup) == (6, 2, True, False, False)

    def test_q8(self, q8):
        ga = A.group_analytics(q8)
        assert (ga.exponent, ga.derived_length, ga.solvable, ga.dedekind,
                ga.has_quaternion_subgroup) == (4, 2, True, True, True)

    def test_z4(self, z4):
        ga = A.group_analytics(z4)
        assert (ga.exponent, ga.derived_length, ga.solvable, ga.dedekind,
                ga.has_quaternion_subgroup) == (4, 1, True, True, False)

    def test_derived_series_of_s3_descends_through_a3(self, s3):
        series = A.derived_series(s3)
        assert [len(s) for s in series] == [6, 3, 1]

    def test_dihedral_4_is_not_dedekind_has_no_quaternion(self):
        ga = A.group_analytics(C.dihedral_group(4))
        assert (ga.dedekind, ga.has_quaternion_subgroup) == (False, False)

    def test_size_budget(self):
        with pytest.raises(SubgroupEnumerationBudget):
            A.subgroups_of(C.symmetric_group(5))


class TestNormalizer:
    def test_non_normal_subgroup_is_self_normalizing(self, s3):
        H = [0, s3.index("(12)")]
        # oracle: compare the two cosets directly for every g
        expected = [g for g in range(6)
                    if {int(s3.mul[g, h]) for h in H}
                    == {int(s3.mul[h, g]) for h in H}]
        assert A.normalizer(s3, H) == expected == H

    def test_whole_group_and_normal_subgroup(self, s3):
        assert A.normalizer(s3, range(6)) == list(range(6))
        a3 = [0, s3.index("(123)"), s3.index("(132)")]
        assert A.normalizer(s3, a3) == list(range(6))

    def test_rejects_non_subgroup(self, s3):
        with pytest.raises(NotASubgroup):
            A.normalizer(s3, [0, s3.index("(123)")])


class TestFdProperty:
    def test_b21_with_brandt_ideal(self, b21_mul, b21):
        ideal = [b21.index(x) for x in ("0", "a", "b", "e", "f")]
        assert A.fd_property(b21_mul, ideal) == (True, None)

    def test_whole_brandt_semigroup(self, bz2):
        assert A.fd_property(bz2, range(bz2.size)) == (True, None)

    def test_non_ideal_rejected(self, b21_mul, b21):
        with pytest.raises(NotAnIdeal):
            A.fd_property(b21_mul, [b21.index("a")])

    def test_non_brandt_ideal_rejected(self):
        lz = C.adjoin_zero(left_zero(2))
        with pytest.raises(NotBrandt):
            A.fd_property(lz, [0])


class TestCorpusInvariants:
    def test_three_way_equivalence_small_orders(self):
        for table in corpus.all_semigroups_upto(3):
            alg = corpus.as_algebra(table)
            bg = A.is_block_group(alg)
            assert bg == A.unique_inverse_check(alg)
            assert bg == A.j_trivial(alg, A.idempotent_generated(alg))[0]

    def test_regular_core_elements_are_idempotent_in_block_groups(self):
        for table in corpus.all_semigroups_upto(3):
            alg = corpus.as_algebra(table)
            if not A.is_block_group(alg):
                continue
            idem = set(A.idempotents(alg))
            for a in A.idempotent_generated(alg):
                if A.inverses_of(alg, a):
                    assert a in idem

    def test_block_groups_have_brandt_series_and_conversely(self):
        for table in corpus.all_semigroups_upto(3):
            alg = corpus.as_algebra(table)
            assert A.principal_series(alg).brandt_series == A.is_block_group(alg)

    def test_j_trivial_word_products_collapse(self):
        # in an aperiodic J-trivial semigroup, w^p only depends on the set of
        # variables once p stabilizes powers
        rng = np.random.default_rng(11)
        checked = 0
        for table in corpus.all_semigroups_upto(3):
            alg = corpus.as_algebra(table)
            if not A.j_trivial(alg)[0]:
                continue
            p = A.stabilizing_power(alg)
            assert p is not None
            for _ in range(3):
                length = int(rng.integers(1, 7))
                picks = [int(rng.integers(1, 4)) for _ in range(length)]
                width = max(picks)
                w = T.Word(tuple(T.Variable((i,), width) for i in picks))
                u = T.Word(tuple(T.Variable((i,), width)
                                 for i in sorted(set(picks))))
                verdict = check_identity_exhaustive(
                    alg, T.PowerOf(w, p), T.PowerOf(u, p))
                assert verdict.status == "holds"
                checked += 1
        assert checked >= 50

    def test_constructed_block_groups_satisfy_the_power_law(
            self, b2, b3, bz2, b21_mul, ps3_mul, hall2):
        for alg in (b2, b3, bz2, b21_mul, ps3_mul, mult_reduct(hall2)):
            rep = A.principal_series(alg)
            e = (2**rep.h) * rep.m
            ok, bad = A.satisfies_power_identity(alg, e, 2 * e)
            assert ok, f"failed at element {bad}"


class TestStabilizingPower:
    def test_chain_semilattice_is_stable_immediately(self):
        assert A.stabilizing_power(chain_semilattice(3)) == 1

    def test_groups_are_not_aperiodic(self, z4):
        assert A.stabilizing_power(z4) is None

    def test_b21_stabilizes_at_two(self, b21_mul):
        # a^2 = 0 for the non-idempotents, so p = 2
        assert A.stabilizing_power(b21_mul) == 2
