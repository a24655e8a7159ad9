import functools
import itertools

import numpy as np
import pytest

from smallq.endo.decompose import (IsoClassLabel, RetryExhausted, TensorPowerDecomposer, composition_factors,
                                   decompose, decompose_tensor_power, group_into_blocks, identify_summand,
                                   is_isomorphic, is_local_end, make_rng, socle_series)
from smallq.reps import hom_space, natural_module, projective_P, simple_L, tensor_power
from smallq.scalars import make_field
from smallq.weights import bar_blocks, predicted_catalog


def idempotent_ranks(M, p):
    """Ranks of all idempotents of End(M) over F_p, by enumerating End(M)."""
    H = np.array([[[x.v for x in row] for row in h.matrix.rows] for h in hom_space(M, M)], dtype=np.int64)
    ranks = set()
    for c in itertools.product(range(p), repeat=len(H)):
        e = np.tensordot(np.array(c), H, axes=1) % p
        if np.array_equal(e @ e % p, e):
            ranks.add(rank_mod_p(e.tolist(), p))
    return ranks


def rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    rank = 0
    for col in range(len(rows[0])):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(int(rows[rank][col]), -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("r,ranks", [(2, {0, 1, 3, 4}), (3, {0, 2, 6, 8})])
def test_summand_dims_against_idempotent_enumeration(r, ranks):
    F = make_field(3, "prime", 7)
    M = tensor_power(F, r)
    assert idempotent_ranks(M, 7) == ranks
    D = decompose(M)
    dims = sorted(s.dim for s in D.summands for _ in range(s.multiplicity))
    # every partial sum of summand dims is an idempotent rank and nothing else is
    partial = {sum(c) for k in range(len(dims) + 1) for c in itertools.combinations(dims, k)}
    assert partial == ranks


def test_decompose_small_cases():
    F = make_field(3)
    D1 = decompose(tensor_power(F, 1))
    assert [(str(s.label), s.multiplicity) for s in D1.summands] == [("L(1,0)", 1)]
    D2 = decompose(tensor_power(F, 2))
    assert sorted((s.dim, s.multiplicity) for s in D2.summands) == [(1, 1), (3, 1)]
    D3 = decompose(tensor_power(F, 3))
    assert sorted((s.label.kind, s.label.bar_weight, s.dim, s.multiplicity) for s in D3.summands) == [
        ("projective", (2, 1), 6, 1), ("simple", (2, 1), 2, 1)]


@pytest.mark.parametrize("mode", ["cyclotomic", "prime"])
def test_idempotents_resolve_identity(mode):
    F = make_field(3, mode)
    for r in (2, 3, 4):
        M = tensor_power(F, r)
        D = decompose(M)
        assert D.total_dim() == 2 ** r
        I = D.idempotents()
        assert functools.reduce(lambda a, b: a + b, I).is_identity()
        for i, e in enumerate(I):
            assert e @ e == e
            assert M.E @ e == e @ M.E and M.F @ e == e @ M.F
            for f in I[i + 1:]:
                assert (e @ f).is_zero()
        for s in D.summands:
            for inc, proj in zip(s.inclusions, s.projections):
                assert (proj @ inc).is_identity()


def test_recursive_maps_resolve_identity():
    F = make_field(5, "prime")
    T = TensorPowerDecomposer(F, with_maps=True)
    D = T.decomposition(6)
    I = D.idempotents()
    assert functools.reduce(lambda a, b: a + b, I).is_identity()
    M = tensor_power(F, 6)
    assert all(M.E @ e == e @ M.E for e in I[:4])


def test_summands_are_local_and_distinct():
    F = make_field(3)
    D = decompose(tensor_power(F, 4))
    for s in D.summands:
        assert is_local_end([h.matrix for h in hom_space(s.module, s.module)])
    for a, b in itertools.combinations(D.summands, 2):
        assert not is_isomorphic(a.module, b.module)


def test_locality_certificate():
    F = make_field(5)
    assert is_local_end([h.matrix for h in hom_space(projective_P(F, 2), projective_P(F, 2))])
    T = tensor_power(F, 2)
    assert not is_local_end([h.matrix for h in hom_space(T, T)])


def test_is_isomorphic_examples():
    F = make_field(3)
    assert is_isomorphic(projective_P(F, 2), projective_P(F, 2))
    assert not is_isomorphic(simple_L(F, 1), simple_L(F, 2))
    D3 = decompose(tensor_power(F, 3))
    big = next(s for s in D3.summands if s.dim == 6)
    from smallq.reps import restrict_to_sl2
    assert is_isomorphic(restrict_to_sl2(big.module), projective_P(F, 2))


def test_identify_examples():
    F = make_field(3)
    D4 = decompose(tensor_power(F, 4))
    steinberg = [s for s in D4.summands if s.dim == 3]
    assert len(steinberg) == 1
    lab = identify_summand(steinberg[0].module)
    assert lab == IsoClassLabel("simple", (0, 1), 3, 3)
    assert identify_summand(natural_module(F)).sl2_type == "L2"


@pytest.mark.parametrize("l,r", [(3, r) for r in range(1, 8)] + [(5, r) for r in range(5, 8)])
def test_catalog_prime_mode(l, r):
    T = TensorPowerDecomposer(make_field(l, "prime"))
    got = {s.label.key for s in T.level(r)}
    assert got == set(predicted_catalog(l, r))
    assert sum(s.dim * s.multiplicity for s in T.level(r)) == 2 ** r


def test_direct_and_recursive_agree():
    F = make_field(3)
    a = sorted((str(s.label), s.multiplicity) for s in decompose(tensor_power(F, 4)).summands)
    b = sorted((str(s.label), s.multiplicity) for s in decompose_tensor_power(F, 4).summands)
    assert a == b


def test_determinism():
    F = make_field(5, "prime")
    runs = []
    for _ in range(2):
        T = TensorPowerDecomposer(F, seed=11)
        runs.append([(str(s.label), s.multiplicity, s.module.E.flat()) for s in T.level(6)])
    assert runs[0] == runs[1]
    a = make_rng(3, 1, 2).integers(0, 1000, 5)
    b = make_rng(3, 1, 2).integers(0, 1000, 5)
    assert list(a) == list(b)


def test_composition_factors_and_socle_series():
    F = make_field(5)
    for j in range(1, 5):
        cf = composition_factors(projective_P(F, j))
        assert {k.sl2_type: v for k, v in cf.items()} == {f"L{j}": 2, f"L{5 - j}": 2}
        assert [{k.sl2_type: v for k, v in c.items()} for c in socle_series(simple_L(F, j))] == [{f"L{j}": 1}]
    G = make_field(3)
    cf = composition_factors(tensor_power(G, 2))
    assert sorted(cf.values()) == [1, 1] and len(cf) == 2


def test_loewy_layers_of_projective_summands():
    F = make_field(3)
    T = TensorPowerDecomposer(F)
    got = {}
    for s in T.level(6):
        if s.label.kind == "projective":
            got[s.label.bar_weight] = [{(k.bar_weight, v) for k, v in c.items()} for c in socle_series(s.module)]
    assert got == {(0, 0): [{((0, 0), 1)}, {((2, 1), 2)}, {((0, 0), 1)}],
                   (2, 1): [{((2, 1), 1)}, {((0, 0), 2)}, {((2, 1), 1)}]}


def test_group_into_blocks():
    F = make_field(3)
    D3 = decompose_tensor_power(F, 3)
    groups = [(b, ss) for b, ss in group_into_blocks(D3, 3, 3) if ss]
    assert len(groups) == 1 and len(groups[0][1]) == 2
    assert groups[0][0].bar_weights == {(2, 1), (0, 0)}
    D2 = decompose_tensor_power(F, 2)
    groups = [(b, ss) for b, ss in group_into_blocks(D2, 3, 2) if ss]
    assert len(groups) == 2 and all(len(ss) == 1 for _, ss in groups)
    D6 = decompose_tensor_power(F, 6)
    groups = {frozenset(b.bar_weights): [str(s.label) for s in ss] for b, ss in group_into_blocks(D6, 3, 6)}
    assert groups[frozenset({(1, 2)})] == ["L(1,2)"]
    assert len(bar_blocks(3, 6)) == 2


def test_retry_cap_exists():
    assert issubclass(RetryExhausted, RuntimeError)
