import pytest

from smallq.linalg import Matrix
from smallq.reps import (BadIndex, FlavorMismatch, Submodule, alpha_maps, canonical_submodules,
                         check_relations, direct_sum, hom_dim, hom_space, independent_maps, module_radical,
                         natural_module, projective_P, quotient, relation_report, restrict_to_sl2, simple_gl,
                         simple_L, socle, sub_module, submodule_closure, subquotient, tensor, tensor_power)
from smallq.scalars import make_field


def ints(M, p):
    return [[x.v % p for x in row] for row in M.rows]


def rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def naive_hom_dim(M, N, p):
    """dim of {X : X g_M = g_N X for g in E, F, K}, all n*m entries unknown."""
    m, n = M.dim, N.dim
    eqs = []
    for gM, gN in ((M.E, N.E), (M.F, N.F), (M.gen_K, N.gen_K)):
        a, b = ints(gM, p), ints(gN, p)
        for i in range(n):
            for j in range(m):
                row = [0] * (n * m)
                # (X gM)_{ij} = sum_k X_ik gM_kj ; (gN X)_{ij} = sum_k gN_ik X_kj
                for k in range(m):
                    row[i * m + k] += a[k][j]
                for k in range(n):
                    row[k * m + j] -= b[i][k]
                eqs.append([x % p for x in row])
    return n * m - rank_mod_p(eqs, p)


@pytest.mark.parametrize("l", [3, 5, 7])
def test_relations_of_catalog_modules(l):
    F = make_field(l)
    mods = [natural_module(F)] + [simple_L(F, j) for j in range(1, l + 1)]
    mods += [projective_P(F, j) for j in range(1, l)]
    for M in mods:
        rep = relation_report(M)
        assert all(rep.values()), (M.name, [k for k, v in rep.items() if not v])


def test_tensor_powers_satisfy_relations():
    F = make_field(3)
    for r in range(1, 7):
        assert check_relations(tensor_power(F, r))
    G = make_field(5, "prime")
    assert check_relations(tensor_power(G, 5))


def test_relation_report_catches_a_broken_module():
    F = make_field(3)
    M = natural_module(F)
    bad = type(M)(F, M.E.scale(2), M.F, M.weights, M.flavor, M.labels, M.gl_weights)
    assert not check_relations(bad)


@pytest.mark.parametrize("pair", [("nat", "nat"), ("P1", "P2"), ("P1", "P1"), ("L2", "P1"), ("T2", "T2"),
                                  ("T3", "T3"), ("T3", "P2")])
def test_hom_space_against_naive_solver(pair):
    F = make_field(3, "prime", 7)
    build = {"nat": lambda: restrict_to_sl2(natural_module(F)),
             "P1": lambda: projective_P(F, 1), "P2": lambda: projective_P(F, 2),
             "L2": lambda: simple_L(F, 2),
             "T2": lambda: restrict_to_sl2(tensor_power(F, 2)),
             "T3": lambda: restrict_to_sl2(tensor_power(F, 3))}
    M, N = build[pair[0]](), build[pair[1]]()
    H = hom_space(M, N)
    assert len(H) == naive_hom_dim(M, N, 7)
    assert all(h.is_intertwiner() for h in H)


@pytest.mark.parametrize("l", [3, 5, 7])
def test_alpha_maps_span_hom(l):
    F = make_field(l)
    for j in range(1, l):
        al = alpha_maps(F, j)
        assert all(a.is_intertwiner() for a in al)
        assert hom_dim(projective_P(F, j), projective_P(F, l - j)) == 2
        assert independent_maps(list(al)) == 2
        assert hom_dim(projective_P(F, j), projective_P(F, j)) == 2


@pytest.mark.parametrize("l", [3, 5])
def test_simples_are_schur(l):
    F = make_field(l)
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            assert hom_dim(simple_L(F, i), simple_L(F, j)) == (i == j)


@pytest.mark.parametrize("l", [3, 5, 7])
def test_canonical_submodules(l):
    F = make_field(l)
    for j in range(1, l):
        P, V, Mj, Nj = canonical_submodules(F, j)
        assert V.is_stable() and Mj.is_stable() and Nj.is_stable()
        assert (Mj + Nj).dim == 2 * l - j
        assert Mj.intersection(Nj) == V
        assert hom_dim(sub_module(P, V), simple_L(F, j)) == 1
        assert sub_module(P, V).dim == j
        Q = subquotient(P, Mj, V)
        assert Q.dim == l - j and hom_dim(Q, simple_L(F, l - j)) == 1
        assert module_radical(P, [simple_L(F, j), simple_L(F, l - j)]) == Mj + Nj


def test_socle_of_projective():
    F = make_field(5)
    P = projective_P(F, 2)
    S, found = socle(P, [simple_L(F, 2), simple_L(F, 3)])
    assert S.dim == 2
    assert [(L.dim, m) for L, m in found] == [(2, 1)]


def test_quotient_and_closure():
    F = make_field(3)
    P = projective_P(F, 1)
    v = [F.zero] * P.dim
    v[0] = F.one
    S = submodule_closure(P, [v])
    assert S.is_stable()
    Q = quotient(P, S)
    assert Q.dim + S.dim == P.dim
    assert check_relations(Q)


def test_tensor_and_sum_dims():
    F = make_field(5)
    O = natural_module(F)
    T = tensor(O, O)
    assert T.dim == 4 and check_relations(T)
    D = direct_sum([O, T])
    assert D.dim == 6 and check_relations(D)
    with pytest.raises(FlavorMismatch):
        tensor(O, simple_L(F, 2))


def test_bad_index():
    F = make_field(3)
    with pytest.raises(BadIndex):
        projective_P(F, 3)
    with pytest.raises(BadIndex):
        simple_L(F, 0)


def test_gl_and_sl_hom_dims_agree_on_small_tensor_power():
    F = make_field(3)
    T = tensor_power(F, 3)
    assert hom_dim(T, T) == hom_dim(restrict_to_sl2(T), restrict_to_sl2(T)) == 5


def test_simple_gl_weights():
    F = make_field(5)
    L = simple_gl(F, (3, 1))
    assert L.dim == 3 and check_relations(L)


def test_submodule_equality_ignores_basis():
    F = make_field(3)
    P = projective_P(F, 1)
    a = Submodule(P, [[F.one if i == k else F.zero for i in range(P.dim)] for k in (0, 1)])
    b = Submodule(P, [[F.one if i in (0, 1) else F.zero for i in range(P.dim)],
                      [F.one if i == 1 else F.zero for i in range(P.dim)]])
    assert a == b
    assert isinstance(P.E, Matrix)
