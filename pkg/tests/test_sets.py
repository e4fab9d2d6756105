"""Freeness detection vs the exhaustive grid oracle, plus constructions."""

import numpy as np
import pytest

from addlab.groups import CyclicCtx, FieldCtx, VectorCtx
from addlab.sets import (
    SetA,
    FreenessError,
    GridWitness,
    equation_free_greedy,
    erdos_turan_sidon,
    find_kst_violation,
    find_kst_violation_exhaustive,
    greedy_kst_free,
    is_kst_free,
    load_set,
    random_subset,
    rep_diff,
    rep_tuple,
    save_set,
    subset_rep_aggregates,
    subspace_set,
    construct,
)
from addlab.util import spawn_rng


def brute_rep_diff(A):
    """Plain double-loop difference counts."""
    counts = {}
    for a in A:
        for b in A:
            d = int(A.ctx.sub(a, b))
            counts[d] = counts.get(d, 0) + 1
    return counts


class TestRepFunctions:
    def test_rep_diff_example(self):
        A = SetA(CyclicCtx(4), [0, 1])
        assert rep_diff(A).values.tolist() == [2, 1, 0, 1]

    def test_rep_diff_properties(self):
        rng = spawn_rng(1, 1)
        for ctx in (CyclicCtx(50), VectorCtx(FieldCtx(3, 1), 3)):
            picks = np.nonzero(rng.random(ctx.N) < 0.3)[0]
            A = SetA(ctx, picks)
            r = rep_diff(A).values
            assert r[0] == len(A)
            assert int(r.sum()) == len(A) ** 2
            oracle = brute_rep_diff(A)
            for d, c in oracle.items():
                assert r[d] == c

    def test_rep_diff_full_group(self):
        ctx = CyclicCtx(9)
        A = SetA(ctx, range(9))
        assert np.all(rep_diff(A).values == 9)

    def test_rep_tuple_examples(self):
        A = SetA(CyclicCtx(8), [0, 1, 2, 3])
        assert rep_tuple(A, (0, 1)) == 2  # shifts {6, 7}
        B = SetA(CyclicCtx(4), [0, 1])
        assert rep_tuple(B, (0, 0)) == 1
        sidon = erdos_turan_sidon(7)
        elems = list(sidon.indices)
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                assert rep_tuple(sidon, (elems[i], elems[j])) <= 1

    def test_rep_tuple_brute_oracle(self):
        rng = spawn_rng(2, 7)
        ctx = CyclicCtx(40)
        A = SetA(ctx, np.nonzero(rng.random(40) < 0.35)[0])
        elems = [int(a) for a in A.indices]
        for _ in range(30):
            tpl = [elems[i] for i in rng.integers(0, len(elems), size=3)]
            expect = sum(
                1
                for d in range(1, 40)
                if all(int(ctx.sub(a, d)) in A for a in tpl)
            )
            assert rep_tuple(A, tpl) == expect

    def test_rep_tuple_requires_membership(self):
        A = SetA(CyclicCtx(10), [0, 2])
        with pytest.raises(ValueError, match="not in A"):
            rep_tuple(A, (0, 1))


class TestFreeness:
    def test_spec_examples(self):
        Z20 = CyclicCtx(20)
        assert is_kst_free(SetA(Z20, [0, 1, 3, 7]), 2, 2)
        w = find_kst_violation(SetA(Z20, [0, 1, 2, 3]), 2, 2)
        assert w == GridWitness(b=(0, 1), c=(0, 2))
        assert is_kst_free(SetA(Z20, [0]), 2, 2)  # |A| < s

    def test_zero_shift_grid_detected(self):
        # max nonzero-shift count is t-1 here, yet a grid exists (zero shift)
        A = SetA(CyclicCtx(20), [0, 1, 2])
        assert subset_rep_aggregates(A, 2, 2).max_rep == 1
        w = find_kst_violation(A, 2, 2)
        assert w is not None and w.verify(A, 2, 2)
        assert find_kst_violation_exhaustive(A, 2, 2) is not None

    def test_witness_always_verifies(self):
        rng = spawn_rng(3, 0)
        for trial in range(60):
            ctx = CyclicCtx(int(rng.integers(16, 48)))
            A = SetA(ctx, np.nonzero(rng.random(ctx.N) < 0.4)[0])
            for s, t in ((2, 2), (2, 3)):
                w = find_kst_violation(A, s, t)
                if w is not None:
                    assert w.verify(A, s, t)

    @pytest.mark.parametrize("s,t", [(2, 2), (2, 3), (3, 3)])
    def test_matches_exhaustive_oracle(self, s, t):
        rng = spawn_rng(17, s, t)
        checked = 0
        for trial in range(220):
            kind = trial % 3
            if kind == 0:
                ctx = CyclicCtx(int(rng.integers(12, 40)))
                A = SetA(ctx, np.nonzero(rng.random(ctx.N) < rng.uniform(0.15, 0.5))[0])
            elif kind == 1:
                A = greedy_kst_free(
                    s, t, int(rng.integers(16, 40)),
                    seed=int(rng.integers(1 << 30)), max_size=14
                )
            else:
                ctx = VectorCtx(FieldCtx(3, 1), 3)
                A = SetA(ctx, np.nonzero(rng.random(ctx.N) < 0.3)[0])
            if len(A) > 14:
                A = SetA(A.ctx, A.indices[: 14])
            free_fast = find_kst_violation(A, s, t) is None
            free_oracle = find_kst_violation_exhaustive(A, s, t) is None
            assert free_fast == free_oracle, (
                f"disagreement on |A|={len(A)} in {A.ctx!r}"
            )
            checked += 1
        assert checked >= 200

    def test_free_iff_shift_threshold(self):
        # free <=> every distinct tuple admits at most t-1 shifts counting 0
        rng = spawn_rng(23, 1)
        for _ in range(80):
            ctx = CyclicCtx(int(rng.integers(14, 36)))
            A = SetA(ctx, np.nonzero(rng.random(ctx.N) < 0.35)[0])
            if len(A) < 2:
                continue
            s, t = 2, 2
            free = find_kst_violation(A, s, t) is None
            max_with_zero = subset_rep_aggregates(A, s, t).max_rep + 1
            assert free == (max_with_zero <= t - 1)
            if free:
                # the one-sided bound from the shift-count argument
                assert subset_rep_aggregates(A, s, t).max_rep <= t - 1


class TestConstructions:
    def test_erdos_turan_values(self):
        A = erdos_turan_sidon(5)
        assert [int(a) for a in A.indices] == [0, 11, 24, 34, 41]
        assert A.ctx.M >= 55
        assert is_kst_free(A, 2, 2)
        # the minimal modulus from the construction happens to work at p = 5
        assert is_kst_free(erdos_turan_sidon(5, M=55), 2, 2)

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_erdos_turan_sidon_family(self, p):
        A = erdos_turan_sidon(p)
        assert len(A) == p
        r = rep_diff(A).values
        assert r[1:].max() <= 1

    def test_erdos_turan_rejects_nonprime(self):
        with pytest.raises(ValueError, match="prime"):
            erdos_turan_sidon(9)

    @pytest.mark.parametrize("s,t", [(2, 2), (2, 3), (3, 3)])
    def test_greedy_post_checked(self, s, t):
        A = greedy_kst_free(s, t, 60, seed=5)
        assert is_kst_free(A, s, t)
        assert len(A) >= s
        assert A.provenance["seed"] == 5

    def test_greedy_deterministic(self):
        a = greedy_kst_free(2, 3, 80, seed=9)
        b = greedy_kst_free(2, 3, 80, seed=9)
        assert np.array_equal(a.indices, b.indices)

    def test_greedy_in_vector_ctx(self):
        ctx = VectorCtx(FieldCtx(3, 1), 3)
        A = greedy_kst_free(2, 2, ctx.N, seed=4, ctx=ctx)
        assert is_kst_free(A, 2, 2)

    def test_subspace_empty_basis(self):
        ctx = VectorCtx(FieldCtx(3, 1), 2)
        A = subspace_set(ctx, [])
        assert [int(a) for a in A.indices] == [0]

    def test_subspace_sizes(self):
        ctx = VectorCtx(FieldCtx(3, 1), 3)
        A = subspace_set(ctx, [ctx.parse_element("1 0 0"), ctx.parse_element("0 1 0")])
        assert len(A) == 9

    def test_equation_free_greedy(self):
        from addlab.counting import EquationSpec, count_equation_solutions

        eq = EquationSpec([1, 1, 1, -1, -2])
        A = equation_free_greedy(eq, 40, seed=2)
        assert count_equation_solutions(eq, A) == len(A)

    def test_random_subset_density(self):
        A = random_subset(400, 0.25, seed=8)
        assert 40 <= len(A) <= 160

    def test_construct_dispatcher(self):
        A = construct("erdos_turan_sidon", {"p": 5})
        assert len(A) == 5
        B = construct("greedy_kst_free", {"s": 2, "t": 2, "N": 30}, seed=3)
        assert is_kst_free(B, 2, 2)
        with pytest.raises(ValueError, match="unknown construction"):
            construct("nope", {})


def test_set_file_roundtrip(tmp_path):
    for A in (erdos_turan_sidon(5),
              greedy_kst_free(2, 2, 81, seed=1, ctx=VectorCtx(FieldCtx(3, 2), 2))):
        path = tmp_path / "a.set"
        save_set(A, path)
        back = load_set(path)
        assert back.ctx == A.ctx
        assert np.array_equal(back.indices, A.indices)
        assert back.model_n == A.model_n


def test_freeness_error_carries_witness():
    from addlab.energy import verify_kst_energy_bound

    A = SetA(CyclicCtx(20), [0, 1, 2, 3])
    with pytest.raises(FreenessError) as exc:
        verify_kst_energy_bound(A, 2, 2)
    assert exc.value.witness.verify(A, 2, 2)
