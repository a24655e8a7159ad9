"""Weight combinatorics for the rank-one small quantum group.

Weights are integer pairs (l1, l2); bar weights are pairs of residues mod l.
The enumeration-and-filter descriptions are treated as ground truth; closed
forms are computed separately so disagreements show up in reports.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Weight = tuple[int, int]
BarWeight = tuple[int, int]

STEINBERG = "Steinberg-semisimple"
SEMISIMPLE = "semisimple-non-Steinberg"
NON_SEMISIMPLE = "non-semisimple"


class NotInDomain(ValueError):
    pass


class NotInGamma(ValueError):
    pass


def in_P1(lam: Weight, l: int) -> bool:
    """Restricted weights: 0 <= l1 - l2 <= l-1 and 0 <= l2 <= l-1."""
    return 0 <= lam[0] - lam[1] <= l - 1 and 0 <= lam[1] <= l - 1


def split_restricted(lam: Weight, l: int) -> tuple[Weight, Weight]:
    mu2 = lam[1] % l
    mu1 = mu2 + (lam[0] - mu2) % l
    nu1, nu2 = (lam[0] - mu1) // l, (lam[1] - mu2) // l
    if nu1 < 0 or nu2 < 0:
        raise NotInDomain(f"{lam} has no restricted split for l={l}")
    return (mu1, mu2), (nu1, nu2)


def in_gamma(lam: Weight, l: int, r: int) -> bool:
    if lam[0] + lam[1] != r:
        return False
    try:
        split_restricted(lam, l)
    except NotInDomain:
        return False
    return True


def gamma(l: int, r: int) -> list[Weight]:
    """All weights of degree r with a restricted split, l1 descending."""
    return [(a, r - a) for a in range(r, -1, -1) if in_gamma((a, r - a), l, r)]


def bar(lam: Weight, l: int) -> BarWeight:
    return (lam[0] % l, lam[1] % l)


def s_minus(lam: Weight, l: int) -> Weight:
    m = (lam[0] - lam[1] + 1) // l
    return (lam[1] - 1 + m * l, lam[0] + 1 - m * l)


def s_plus(lam: Weight, l: int) -> Weight:
    m, s = divmod(lam[0] - lam[1] + 1, l)
    if s == 0:
        return lam
    return (lam[1] - 1 + (m + 1) * l, lam[0] + 1 - (m + 1) * l)


def s_shift(lam: Weight, m: int, l: int) -> Weight:
    step = s_plus if m > 0 else s_minus
    for _ in range(abs(m)):
        lam = step(lam, l)
    return lam


def is_steinberg(lam: Weight, l: int) -> bool:
    return (lam[0] - lam[1] + 1) % l == 0


# -- Steinberg weights ---------------------------------------------------------

def steinberg_set(l: int, r: int) -> frozenset[Weight]:
    """Filter oracle: weights of Gamma with l | l1 - l2 + 1."""
    return frozenset(lam for lam in gamma(l, r) if is_steinberg(lam, l))


def steinberg_closed_form(l: int, r: int) -> tuple[str, frozenset[Weight]]:
    """Case label and the set given by the four closed-form cases."""
    s, t = divmod(r, l)
    half = Fraction(1, 2)

    def pts(base, shift, ms):
        out = set()
        for m in ms:
            a = base[0] + l * shift(m)[0]
            b = base[1] + l * shift(m)[1]
            if a.denominator != 1 or b.denominator != 1:
                raise ArithmeticError(f"non-integral closed-form point at l={l}, r={r}, m={m}")
            out.add((int(a), int(b)))
        return frozenset(out)

    if s == 0:
        return "4", frozenset({(l - 1, 0)}) if r == l - 1 else frozenset()
    if t % 2 == 1:
        base = (l + (t - 1) * half, (t + 1) * half)
        return "1", pts(base, lambda m: ((s + m - 2) * half, (s - m) * half), range(s, -s + 1, -2))
    if t != l - 1:
        base = ((3 * l - 1 + t) * half, (t + l + 1) * half)
        return "2", pts(base, lambda m: ((s + m - 3) * half, (s - m - 1) * half), range(s - 1, -s + 2, -2))
    base = (Fraction(l - 1), Fraction(0))
    return "3", pts(base, lambda m: ((s + m - 1) * half, (s - m + 1) * half), range(s + 1, -s, -2))


@dataclass(frozen=True)
class SteinbergReport:
    oracle: frozenset
    closed_form: frozenset
    case: str
    agrees: bool


def steinberg_report(l: int, r: int) -> SteinbergReport:
    case, cf = steinberg_closed_form(l, r)
    orc = steinberg_set(l, r)
    return SteinbergReport(orc, cf, case, orc == cf)


# -- I, J and blocks -------------------------------------------------------------

def sets_I_J(l: int, r: int) -> tuple[frozenset, frozenset]:
    I, J = set(), set()
    for i in range(0, l - 1):
        if (r - i) % 2:
            continue
        lam = ((r + i) // 2, (r - i) // 2)
        if i < 2 * l - r - 2:
            if r - i >= 0:
                I.add(lam)
        else:
            J.add(lam)
    return frozenset(I), frozenset(J)


@dataclass(frozen=True)
class BlockData:
    weights: tuple  # s^m chain, m ascending
    bar_weights: frozenset
    cls: str
    figure_case: str = "none"
    j_weight: Weight | None = None  # the element of J in a non-semisimple block

    @property
    def size(self) -> int:
        return len(self.weights)

    def sorted_bars(self) -> list:
        return sorted(self.bar_weights)


def _chain(lam: Weight, l: int, r: int) -> list[Weight]:
    if is_steinberg(lam, l):
        return [lam]
    members = {0: lam}
    # lam1 - lam2 + 1 moves monotonically with m, so walk until it leaves
    # the range attainable inside N^2
    for sign in (1, -1):
        cur, m = lam, 0
        while True:
            cur = s_shift(cur, sign, l)
            m += sign
            if abs(cur[0] - cur[1] + 1) > r + 2 * l + 2:
                break
            if in_gamma(cur, l, r):
                members[m] = cur
    return [members[m] for m in sorted(members)]


def classify_block(lam: Weight, l: int, r: int) -> str:
    return block_hat(lam, l, r).cls


def block_hat(lam: Weight, l: int, r: int) -> BlockData:
    if not in_gamma(lam, l, r):
        raise NotInGamma(f"{lam} not in Gamma(l={l}, r={r})")
    chain = tuple(_chain(lam, l, r))
    I, J = sets_I_J(l, r)
    members = set(chain)
    tags = []
    if is_steinberg(lam, l):
        tags.append(STEINBERG)
    if members & I:
        tags.append(SEMISIMPLE)
    jw = sorted(members & J)
    if jw:
        tags.append(NON_SEMISIMPLE)
    if len(tags) != 1:
        raise AssertionError(f"block of {lam} (l={l}, r={r}) has classification {tags}")
    fig = "none"
    if jw:
        fig = "Fig2" if in_P1(jw[0], l) else "Fig3"
    return BlockData(chain, frozenset(bar(w, l) for w in chain), tags[0], fig, jw[0] if jw else None)


def block_bar(lam: Weight, l: int, r: int) -> frozenset:
    return block_hat(lam, l, r).bar_weights


def corollary_block_size(lam: Weight, l: int) -> int:
    """Block size predicted for a non-Steinberg weight from its split."""
    (mu1, _), (nu1, nu2) = split_restricted(lam, l)
    if mu1 <= l - 2:
        return 2 * (nu1 + nu2) + 1
    return 2 * (nu1 + nu2 + 1) + 1


def blocks(l: int, r: int) -> list[BlockData]:
    """The s-blocks partitioning Gamma, in order of first appearance."""
    seen, out = set(), []
    for lam in gamma(l, r):
        if lam in seen:
            continue
        b = block_hat(lam, l, r)
        seen.update(b.weights)
        out.append(b)
    return out


@dataclass(frozen=True)
class BarBlock:
    """A block of the little q-Schur algebra: a set of bar weights."""
    bar_weights: frozenset
    cls: str
    figure_case: str
    hat_blocks: tuple = field(default=())
    j_weight: Weight | None = None


def bar_blocks(l: int, r: int) -> list[BarBlock]:
    groups: list[list[BlockData]] = []
    for b in blocks(l, r):
        hit = [g for g in groups if any(b.bar_weights & h.bar_weights for h in g)]
        merged = [b]
        for g in hit:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    out = []
    for g in groups:
        classes = {b.cls for b in g}
        bars = frozenset().union(*(b.bar_weights for b in g))
        if NON_SEMISIMPLE in classes:
            cls = NON_SEMISIMPLE
        else:
            cls = STEINBERG if classes == {STEINBERG} else SEMISIMPLE
        js = sorted(b.j_weight for b in g if b.j_weight is not None)
        fig = "none"
        if js:
            fig = "Fig2" if in_P1(js[0], l) else "Fig3"
        out.append(BarBlock(bars, cls, fig, tuple(g), js[0] if js else None))
    out.sort(key=lambda b: sorted(b.bar_weights))
    return out


def bar_block_index(l: int, r: int) -> dict:
    return {w: i for i, b in enumerate(bar_blocks(l, r)) for w in b.bar_weights}


# -- counts ------------------------------------------------------------------

@dataclass(frozen=True)
class Counts:
    l: int
    r: int
    a_formula: int | None
    a_enum: int
    J_bar_count: int
    J_bar_formula: int | None

    @property
    def a_agrees(self) -> bool | None:
        return None if self.a_formula is None else self.a_formula == self.a_enum

    @property
    def J_agrees(self) -> bool | None:
        return None if self.J_bar_formula is None else self.J_bar_formula == self.J_bar_count


def a_formula(l: int, r: int) -> int | None:
    if r < l:
        return None
    if r >= 2 * l - 2:
        return 1
    return l - r // 2 if r % 2 == 0 else l - (r + 1) // 2


def J_bar_formula(l: int, r: int) -> int | None:
    if r < l:
        return None
    if r >= 2 * l - 2:
        return (l - 1) // 2
    return (r - l + 1) // 2 if r % 2 == 0 else (r - l + 2) // 2


def counts(l: int, r: int) -> Counts:
    I, J = sets_I_J(l, r)
    st_bar = {bar(w, l) for w in steinberg_set(l, r)}
    i_bar = {bar(w, l) for w in I}
    j_bar = {bar(w, l) for w in J}
    return Counts(l, r, a_formula(l, r), len(st_bar) + len(i_bar), len(j_bar), J_bar_formula(l, r))


# -- predicted summand catalog ---------------------------------------------------------

def sl2_index(lam_bar: BarWeight, l: int) -> int:
    """j with L_j the restriction of the simple of highest weight lam_bar."""
    return (lam_bar[0] - lam_bar[1]) % l + 1


def predicted_catalog(l: int, r: int) -> frozenset:
    """Labels (kind, bar weight) of the indecomposable summands of the r-th tensor power."""
    I, J = sets_I_J(l, r)
    out = set()
    for lam in I | J:
        out.add(("simple", bar(lam, l)))
    for lam in steinberg_set(l, r):
        out.add(("simple", bar(lam, l)))
    for lam in J:
        b = block_hat(lam, l, r)
        out.add(("projective", bar(lam, l)))
        if b.size >= 5:
            out.add(("projective", bar(s_plus(lam, l), l)))
    return frozenset(out)
