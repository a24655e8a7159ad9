"""Krull-Schmidt decomposition by Fitting splitting, isomorphism tests and
identification of summands of tensor powers of the natural module."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..linalg import Matrix, field_roots, inverse, is_nilpotent, krylov_relation, nullspace, rank
from ..reps import (GL2, SL2, Module, ModuleMap, Submodule, candidate_simples, hom_space, natural_module,
                    projective_P, quotient, restrict_to_sl2, simple_L, socle, sub_module, tensor)
from ..scalars import CYCLOTOMIC, FieldConfig
from ..weights import bar_block_index, bar_blocks

RETRY_CAP = 64


class RetryExhausted(RuntimeError):
    pass


class UnrecognizedSummand(ValueError):
    pass


class MixedBlockSummand(ValueError):
    pass


# -- randomness -----------------------------------------------------------------------

def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Counter-based Philox stream; `key` gives independent sub-streams."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(key))
    return np.random.Generator(np.random.Philox(ss))


def random_scalar(fld: FieldConfig, rng: np.random.Generator):
    if fld.mode == CYCLOTOMIC:
        return fld(int(rng.integers(-30, 31)))
    return fld(int(rng.integers(0, fld.p)))


def random_combination(maps: Sequence[Matrix], rng) -> Matrix:
    fld = maps[0].field
    acc = maps[0].scale(random_scalar(fld, rng))
    for m in maps[1:]:
        acc = acc + m.scale(random_scalar(fld, rng))
    return acc


# -- locality and splitting ---------------------------------------------------------------

def _trace_product(A: Matrix, B: Matrix):
    t = A.field.zero
    for i, row in enumerate(A.nz()):
        for k, a in row:
            b = B.rows[k][i]
            if b:
                t = t + a * b
    return t


def is_local_end(basis: Sequence[Matrix]) -> bool:
    """End(M) (given by a basis containing the identity in its span) is local.

    R = trace-zero part.  A subspace closed under products and consisting of
    trace-zero matrices contains no idempotent (rank = trace), hence is
    nilpotent; so End is local iff R is closed under products, i.e. every
    product of two elements of R has trace zero.
    """
    n = basis[0].nrows
    if len(basis) == 1:
        return True
    traces = [m.trace() for m in basis]
    piv = next(i for i, t in enumerate(traces) if t)
    R = []
    for i, m in enumerate(basis):
        if i == piv:
            continue
        c = traces[i] / traces[piv]
        R.append(m - basis[piv].scale(c) if c else m)
    del n
    for i in range(len(R)):
        for j in range(len(R)):
            if _trace_product(R[i], R[j]):
                return False
    return True


def _fitting_split(X: Module, psi: Matrix):
    """Kernel and image of a high power of psi as Submodules of X."""
    n = X.dim
    P = psi
    k = 1
    while k < n:
        P = P @ P
        k *= 2
    ker = Submodule(X, nullspace(P)).echelon()
    im = Submodule(X, P.columns()).echelon()
    return ker, im


def _poly_at(coeffs, A: Matrix) -> Matrix:
    fld = A.field
    n = A.nrows
    out = Matrix.zeros(fld, n, n)
    I = Matrix.identity(fld, n)
    for c in reversed(coeffs):
        out = out @ A + I.scale(c)
    return out


def _find_splitter(X: Module, H: Sequence[Matrix], rng) -> Matrix | None:
    """A non-nilpotent, non-invertible endomorphism of X, or None."""
    fld = X.field
    n = X.dim
    I = Matrix.identity(fld, n)
    classes = sorted(X.weight_classes().values(), key=len)
    for attempt in range(RETRY_CAP):
        phi = random_combination(H, rng)
        idx = classes[attempt % len(classes)]
        v = [fld.zero] * n
        for i in idx:
            v[i] = random_scalar(fld, rng) or fld.one
        g = krylov_relation(phi.apply, v, fld)
        for lam in field_roots(fld, g):
            psi = phi - I.scale(lam)
            if not is_nilpotent(psi):
                return psi
        # annihilator of a weight vector: psi with psi(e_i) = 0
        i = idx[int(rng.integers(0, len(idx)))]
        ann = _annihilator(H, i)
        if ann:
            psi = random_combination(ann, rng)
            if not is_nilpotent(psi):
                return psi
    return None


def _annihilator(H: Sequence[Matrix], i: int) -> list[Matrix]:
    fld = H[0].field
    # solve sum c_k H_k[:, i] = 0
    A = Matrix.from_columns(fld, [h.col(i) for h in H], H[0].nrows)
    out = []
    for c in nullspace(A):
        acc = None
        for ck, h in zip(c, H):
            if ck:
                acc = h.scale(ck) if acc is None else acc + h.scale(ck)
        if acc is not None:
            out.append(acc)
    return out


@dataclass
class Piece:
    module: Module
    inc: Matrix   # ambient.dim x module.dim
    proj: Matrix  # module.dim x ambient.dim


def _sub_with_maps(X: Module, S: Submodule, comp: Submodule):
    """Module on S plus inclusion and projection along comp."""
    fld = X.field
    U = sub_module(X, S)
    B = Matrix.from_columns(fld, S.basis() + comp.basis(), X.dim)
    Binv = inverse(B)
    inc = Matrix.from_columns(fld, S.basis(), X.dim)
    proj = Binv.submatrix(range(S.dim), range(X.dim))
    return U, inc, proj


def split_indecomposables(M: Module, rng) -> list[Piece]:
    """Fitting splitting down to modules with local endomorphism rings."""
    fld = M.field
    stack = [Piece(M, Matrix.identity(fld, M.dim), Matrix.identity(fld, M.dim))]
    done = []
    while stack:
        pc = stack.pop()
        X = pc.module
        if X.dim == 0:
            continue
        H = [h.matrix for h in hom_space(X, X)]
        if is_local_end(H):
            done.append(pc)
            continue
        psi = _find_splitter(X, H, rng)
        if psi is None:
            raise RetryExhausted(f"no splitting endomorphism found for {X!r}")
        ker, im = _fitting_split(X, psi)
        for S, C in ((ker, im), (im, ker)):
            U, inc, proj = _sub_with_maps(X, S, C)
            stack.append(Piece(U, pc.inc @ inc, proj @ pc.proj))
    # deterministic order: by dimension then weights
    done.sort(key=lambda p: (p.module.dim, p.module.weight_multiset()))
    return done


# -- isomorphism ------------------------------------------------------------------------------

def iso_map_local(M: Module, N: Module) -> Matrix | None:
    """An isomorphism M -> N, assuming End(M) is local; None if M, N are not isomorphic.

    With End(M) local, M = N iff some g o h (h: M -> N, g: N -> M) lies
    outside rad End(M), i.e. is not nilpotent; then h itself is invertible.
    """
    if M.dim != N.dim or M.weight_multiset() != N.weight_multiset():
        return None
    H = hom_space(M, N)
    if not H:
        return None
    G = hom_space(N, M)
    for h in H:
        for g in G:
            if not is_nilpotent(g.matrix @ h.matrix):
                return h.matrix
    return None


def is_isomorphic(M: Module, N: Module, seed: int = 0) -> bool:
    if M.dim != N.dim or M.weight_multiset() != N.weight_multiset():
        return False
    H = [h.matrix for h in hom_space(M, N)]
    if not H:
        return M.dim == 0
    for h in H:
        if rank(h) == M.dim:
            return True
    rng = make_rng(seed, 1)
    for _ in range(8):
        if rank(random_combination(H, rng)) == M.dim:
            return True
    if is_local_end([h.matrix for h in hom_space(M, M)]):
        return iso_map_local(M, N) is not None
    # fall back to comparing Krull-Schmidt decompositions
    dm, dn = decompose(M, seed), decompose(N, seed)
    if sorted(s.multiplicity for s in dm.summands) != sorted(s.multiplicity for s in dn.summands):
        return False
    left = list(dn.summands)
    for s in dm.summands:
        hit = next((t for t in left if t.multiplicity == s.multiplicity
                    and iso_map_local(s.module, t.module) is not None), None)
        if hit is None:
            return False
        left.remove(hit)
    return True


# -- labels ------------------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class IsoClassLabel:
    kind: str                   # "simple" | "projective"
    bar_weight: tuple | None    # gl2 highest weight residues, None for sl2-only modules
    dim: int
    sl2_index: int

    @property
    def sl2_type(self) -> str:
        return ("L" if self.kind == "simple" else "P") + str(self.sl2_index)

    @property
    def key(self):
        return (self.kind, self.bar_weight)

    def __str__(self):
        if self.bar_weight is None:
            return self.sl2_type
        return f"{'L' if self.kind == 'simple' else 'P'}({self.bar_weight[0]},{self.bar_weight[1]})"

    def to_json(self):
        return {"kind": self.kind, "bar_weight": list(self.bar_weight) if self.bar_weight else None,
                "dim": self.dim, "sl2_type": self.sl2_type, "name": str(self)}


def simple_label(L: Module) -> IsoClassLabel:
    """Label of a simple module built by simple_L / simple_gl (v_0 highest)."""
    j = L.dim
    bw = L.weights[0] if L.flavor == GL2 else None
    return IsoClassLabel("simple", bw, j, j)


def _ker_E_weights(M: Module) -> list:
    """gl2 weights (or sl2 weights) carrying a nonzero E-kernel."""
    out = []
    wc = M.weight_classes()
    for w, idx in sorted(wc.items()):
        tgt = wc.get(M.shift(w, "E"), [])
        if not tgt or rank(M.E.submatrix(tgt, idx)) < len(idx):
            out.append(w)
    return out


def identify_summand(E: Module) -> IsoClassLabel:
    fld = E.field
    l = fld.l
    if E.flavor != GL2:
        raise UnrecognizedSummand("identification needs gl2 weights")
    S = restrict_to_sl2(E)
    hws = _ker_E_weights(E)
    if E.dim <= l:
        L = simple_L(fld, E.dim)
        if iso_map_local(L, S) is not None:
            if len(hws) != 1:
                raise UnrecognizedSummand("simple module with several highest weights")
            return IsoClassLabel("simple", hws[0], E.dim, E.dim)
    if E.dim == 2 * l:
        for j in range(1, l):
            P = projective_P(fld, j)
            if P.weight_multiset() != S.weight_multiset():
                continue
            if iso_map_local(P, S) is not None:
                top = [w for w in hws if (w[0] - w[1]) % l == j - 1]
                if len(top) != 1:
                    raise UnrecognizedSummand("ambiguous top weight")
                return IsoClassLabel("projective", top[0], E.dim, j)
    raise UnrecognizedSummand(f"no catalog entry for a summand of dim {E.dim}")


# -- decompositions ---------------------------------------------------------------------------

@dataclass
class Summand:
    module: Module
    multiplicity: int
    label: IsoClassLabel | None = None
    inclusions: list = field(default_factory=list)   # Matrices source.dim x module.dim
    projections: list = field(default_factory=list)  # Matrices module.dim x source.dim

    @property
    def dim(self) -> int:
        return self.module.dim


@dataclass
class Decomposition:
    source_dim: int
    summands: list
    source: Module | None = None
    field: FieldConfig | None = None

    def total_dim(self) -> int:
        return sum(s.multiplicity * s.dim for s in self.summands)

    def labels(self) -> dict:
        return {s.label: s.multiplicity for s in self.summands}

    def idempotents(self) -> list[Matrix]:
        return [inc @ proj for s in self.summands for inc, proj in zip(s.inclusions, s.projections)]


def _group(pieces: Sequence[Piece]) -> list[Summand]:
    groups: list[Summand] = []
    for pc in pieces:
        for g in groups:
            theta = iso_map_local(g.module, pc.module)
            if theta is not None:
                g.multiplicity += 1
                # copy of the representative: rep --theta--> piece --inc--> M
                g.inclusions.append(pc.inc @ theta)
                g.projections.append(inverse(theta) @ pc.proj)
                break
        else:
            groups.append(Summand(pc.module, 1, None, [pc.inc], [pc.proj]))
    return groups


def decompose(M: Module, seed: int = 0, identify: bool = True) -> Decomposition:
    rng = make_rng(seed, 0, M.dim)
    summands = _group(split_indecomposables(M, rng))
    if identify and M.flavor == GL2:
        for s in summands:
            try:
                s.label = identify_summand(s.module)
            except UnrecognizedSummand:
                s.label = None
    return Decomposition(M.dim, summands, M, M.field)


class TensorPowerDecomposer:
    """Decomposes Omega^r for r = 1, 2, ... using

        Omega^r = (+)_i m_i (E_i (x) Omega)   with Omega^(r-1) = (+)_i m_i E_i,

    so only the small modules E_i (x) Omega are ever split.  The splittings of
    each E_i (x) Omega are cached.
    """

    def __init__(self, fld: FieldConfig, seed: int = 0, with_maps: bool = False):
        self.field = fld
        self.seed = seed
        self.with_maps = with_maps
        self.omega = natural_module(fld)
        I2 = Matrix.identity(fld, 2)
        first = Summand(self.omega, 1, None, [I2] if with_maps else [], [I2] if with_maps else [])
        first.label = identify_summand(self.omega)
        self.levels = {1: [first]}
        self._split_cache: dict = {}

    def level(self, r: int) -> list[Summand]:
        while max(self.levels) < r:
            self._step(max(self.levels) + 1)
        return self.levels[r]

    def decomposition(self, r: int) -> Decomposition:
        return Decomposition(2 ** r, self.level(r), None, self.field)

    def _pieces(self, r: int, idx: int, E: Module) -> list[Piece]:
        key = id(E)
        if key not in self._split_cache:
            T = tensor(E, self.omega)
            rng = make_rng(self.seed, r, idx)
            self._split_cache[key] = (E, split_indecomposables(T, rng))
        return self._split_cache[key][1]

    def _step(self, r: int):
        fld = self.field
        I2 = Matrix.identity(fld, 2)
        prev = self.levels[r - 1]
        out: list[Summand] = []
        for idx, s in enumerate(prev):
            for pc in self._pieces(r, idx, s.module):
                lab = identify_summand(pc.module)
                hit = None
                for g in out:
                    if g.label == lab:
                        theta = iso_map_local(g.module, pc.module)
                        if theta is None:
                            raise AssertionError("equal labels but non-isomorphic summands")
                        hit = (g, theta)
                        break
                if hit is None:
                    g = Summand(pc.module, 0, lab)
                    out.append(g)
                    theta = Matrix.identity(fld, pc.module.dim)
                else:
                    g, theta = hit
                g.multiplicity += s.multiplicity
                if self.with_maps:
                    thinv = inverse(theta)
                    for inc, proj in zip(s.inclusions, s.projections):
                        g.inclusions.append(inc.kron(I2) @ (pc.inc @ theta))
                        g.projections.append((thinv @ pc.proj) @ proj.kron(I2))
        out.sort(key=lambda g: (g.label.kind, g.label.bar_weight))
        self.levels[r] = out


def decompose_tensor_power(fld: FieldConfig, r: int, seed: int = 0, with_maps: bool = False) -> Decomposition:
    return TensorPowerDecomposer(fld, seed, with_maps).decomposition(r)


# -- socle series -----------------------------------------------------------------------------

def socle_series(M: Module) -> list[Counter]:
    """Ascending socle layers as Counters of simple labels."""
    layers = []
    Q = M
    while Q.dim:
        S, found = socle(Q, candidate_simples(Q))
        if S.dim == 0:
            raise AssertionError("nonzero module with zero socle")
        layers.append(Counter({simple_label(L): m for L, m in found}))
        Q = quotient(Q, S)
    return layers


def composition_factors(M: Module) -> Counter:
    out = Counter()
    for layer in socle_series(M):
        out.update(layer)
    return out


def module_top(M: Module) -> Counter:
    """Labels of M / rad M."""
    out = Counter()
    for L in candidate_simples_top(M):
        k = len(hom_space(M, L))
        if k:
            out[simple_label(L)] = k
    return out


def candidate_simples_top(M: Module) -> list[Module]:
    # lowest weight vectors (ker F) of a simple quotient sit in weights of M;
    # every highest weight of a simple quotient is a weight of M
    from ..reps import simple_gl
    fld = M.field
    out = []
    for w in sorted(M.weight_classes()):
        out.append(simple_gl(fld, w) if M.flavor == GL2 else simple_L(fld, w % fld.l + 1))
    return out


# -- blocks ------------------------------------------------------------------------------------

def group_into_blocks(D: Decomposition, l: int, r: int) -> list[tuple]:
    """[(BarBlock, [summands])] for every bar block, following composition factors."""
    bb = bar_blocks(l, r)
    index = bar_block_index(l, r)
    groups = [(b, []) for b in bb]
    for s in D.summands:
        ids = set()
        for lab in composition_factors(s.module):
            if lab.bar_weight not in index:
                raise MixedBlockSummand(f"factor {lab} outside every block")
            ids.add(index[lab.bar_weight])
        if len(ids) != 1:
            raise MixedBlockSummand(f"summand {s.label} meets blocks {sorted(ids)}")
        groups[ids.pop()][1].append(s)
    return groups
