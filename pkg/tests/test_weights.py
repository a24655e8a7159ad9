import pytest

from smallq.weights import (NON_SEMISIMPLE, SEMISIMPLE, STEINBERG, NotInGamma, a_formula, bar, bar_blocks,
                            block_hat, blocks, corollary_block_size, counts, gamma, in_P1, is_steinberg,
                            predicted_catalog, s_minus, s_plus, sets_I_J, split_restricted,
                            steinberg_closed_form, steinberg_set)

GRID = [(l, r) for l in (3, 5, 7) for r in range(1, 21)]


def gamma_oracle(l, r):
    """Weights mu + l*nu of degree r, mu restricted, nu in N^2."""
    out = set()
    for m2 in range(l):
        for d in range(l):
            mu = (m2 + d, m2)
            rest = r - mu[0] - mu[1]
            if rest < 0 or rest % l:
                continue
            k = rest // l
            for n1 in range(k + 1):
                out.add((mu[0] + l * n1, mu[1] + l * (k - n1)))
    return out


def orbit_oracle(lam, l, r):
    """{s^m . lam : |m| <= 2r + 4} intersected with Gamma."""
    G = gamma_oracle(l, r)
    out = set()
    for step in (s_plus, s_minus):
        cur = lam
        for _ in range(2 * r + 5):
            if cur in G:
                out.add(cur)
            cur = step(cur, l)
    return out


@pytest.mark.parametrize("l,r", GRID)
def test_gamma_matches_enumeration(l, r):
    assert set(gamma(l, r)) == gamma_oracle(l, r)


def test_gamma_example():
    assert gamma(3, 6) == [(6, 0), (5, 1), (4, 2), (3, 3), (2, 4), (0, 6)]


def test_restricted_split():
    assert split_restricted((7, 2), 3) == ((4, 2), (1, 0))
    for l in (3, 5):
        for lam in gamma(l, 11):
            mu, nu = split_restricted(lam, l)
            assert in_P1(mu, l) and min(nu) >= 0
            assert (mu[0] + l * nu[0], mu[1] + l * nu[1]) == lam


@pytest.mark.parametrize("l,r", GRID)
def test_steinberg_closed_form_agrees(l, r):
    _, cf = steinberg_closed_form(l, r)
    assert cf == steinberg_set(l, r)


def test_steinberg_examples():
    assert steinberg_set(3, 2) == {(2, 0)}
    assert steinberg_set(3, 3) == frozenset()
    assert steinberg_set(3, 4) == {(3, 1)}
    assert steinberg_closed_form(3, 4)[0] == "1"


@pytest.mark.parametrize("l,r", GRID)
def test_blocks_partition_gamma_and_sizes(l, r):
    bl = blocks(l, r)
    members = [w for b in bl for w in b.weights]
    assert sorted(members) == sorted(gamma(l, r))
    assert len(set(members)) == len(members)
    for b in bl:
        for w in b.weights:
            if not is_steinberg(w, l):
                assert corollary_block_size(w, l) == b.size


@pytest.mark.parametrize("l,r", [(3, 6), (3, 9), (5, 12), (7, 15)])
def test_blocks_are_orbits(l, r):
    for b in blocks(l, r):
        assert set(b.weights) == orbit_oracle(b.weights[0], l, r)


@pytest.mark.parametrize("l,r", [(l, r) for l, r in GRID if r >= l])
def test_classification_is_a_partition(l, r):
    I, J = sets_I_J(l, r)
    S = steinberg_set(l, r)
    assert not (I & J or I & S or J & S)
    for b in blocks(l, r):
        assert b.cls in (STEINBERG, SEMISIMPLE, NON_SEMISIMPLE)


def test_block_examples():
    b = block_hat((3, 3), 3, 6)
    assert b.size == 5 and b.cls == NON_SEMISIMPLE and b.figure_case == "Fig3"
    assert b.bar_weights == {(0, 0), (2, 1)}
    assert block_hat((4, 2), 3, 6).cls == STEINBERG
    assert block_hat((2, 1), 3, 3).figure_case == "Fig2"
    with pytest.raises(NotInGamma):
        block_hat((1, 5), 3, 6)
    # two s-blocks at l=3, r=6 (sizes 5 and 1)
    assert sorted(b.size for b in blocks(3, 6)) == [1, 5]


def test_semisimple_below_l():
    for l in (5, 7):
        for r in range(1, l):
            assert all(b.cls != NON_SEMISIMPLE for b in blocks(l, r))


@pytest.mark.parametrize("l,r", GRID)
def test_bar_blocks_are_disjoint(l, r):
    bb = bar_blocks(l, r)
    seen = set()
    for b in bb:
        assert not (b.bar_weights & seen)
        seen |= b.bar_weights
    assert seen == {bar(w, l) for w in gamma(l, r)}


# Cells where the closed count of semisimple factors disagrees with the
# enumeration, computed once by the filter and frozen here.
A_MISMATCHES = {(3, 3), (5, 5), (5, 7), (7, 7), (7, 9), (7, 11)}


def test_a_formula_mismatch_class():
    found = set()
    for l in (3, 5, 7):
        for r in range(l, 21):
            c = counts(l, r)
            assert c.J_agrees, (l, r)
            if not c.a_agrees:
                found.add((l, r))
                assert not steinberg_set(l, r)
    assert found == A_MISMATCHES


def test_a_formula_values():
    assert a_formula(3, 2) is None
    assert a_formula(3, 4) == 1
    assert a_formula(7, 8) == 3
    assert a_formula(7, 9) == 2


def test_predicted_catalog_example():
    assert predicted_catalog(3, 3) == {("simple", (2, 1)), ("projective", (2, 1))}
    assert ("simple", (0, 1)) in predicted_catalog(3, 4)
