"""Finite-dimensional algebras: endomorphism algebras given by structure
constants, their radical layers and Cartan matrices, quivers with relations,
and matching of the former against the latter.

Multiplication is composition: mul(x, y) = x o y.  Paths in a quiver are
written diagrammatically (leftmost arrow first), so the path a b is sent to
b o a.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from ..linalg import Matrix, RowSpace, inverse
from ..reps import Module, direct_sum, hom_space
from ..scalars import CYCLOTOMIC, FieldConfig
from .decompose import make_rng, random_scalar

PATH_CAP = 64


class ModeUnsupported(ValueError):
    pass


class NotFiniteDimensional(RuntimeError):
    pass


def _sparse(v):
    return {k: a for k, a in enumerate(v) if a}


def _span(fld, vectors) -> RowSpace:
    rs = RowSpace(fld)
    for v in vectors:
        rs.add(_sparse(v))
    return rs


def _rs_basis(rs: RowSpace, n: int) -> list:
    z = rs.field.zero
    out = []
    for p in sorted(rs.rows):
        d = [z] * n
        for k, a in rs.rows[p].items():
            d[k] = a
        out.append(d)
    return out


# -- algebras from structure constants -----------------------------------------------------

@dataclass
class AlgebraTable:
    field: FieldConfig
    mats: list                       # basis as matrices acting on `module`
    const: list                      # const[a][b][m]: coefficient of b_m in b_a o b_b
    unit: list
    idempotents: list = field(default_factory=list)   # coordinates, primitive and orthogonal
    vertex_labels: list = field(default_factory=list)
    module: Module | None = None
    _pos: list = field(default=None, repr=False)
    _posinv: Matrix | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.mats)

    @property
    def basis_dim(self) -> int:
        return self.dim

    def zero(self) -> list:
        return [self.field.zero] * self.dim

    def basis_vector(self, k: int) -> list:
        v = self.zero()
        v[k] = self.field.one
        return v

    def mul(self, x: Sequence, y: Sequence) -> list:
        out = self.zero()
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = self.const[a]
            for b, yb in enumerate(y):
                if not yb:
                    continue
                c = xa * yb
                for m, s in enumerate(row[b]):
                    if s:
                        out[m] = out[m] + c * s
        return out

    def add(self, x, y) -> list:
        return [a + b for a, b in zip(x, y)]

    def scale(self, x, c) -> list:
        return [a * c for a in x]

    def to_matrix(self, x: Sequence) -> Matrix:
        n = self.mats[0].nrows
        acc = Matrix.zeros(self.field, n, n)
        for c, m in zip(x, self.mats):
            if c:
                acc = acc + m.scale(c)
        return acc

    def coordinates(self, X: Matrix) -> list:
        """Coordinates of a matrix lying in the span of the basis."""
        vals = [X.rows[i][j] for i, j in self._pos]
        return self._posinv.apply(vals)

    def check_laws(self) -> dict:
        d = self.dim
        basis = [self.basis_vector(k) for k in range(d)]
        assoc = all(self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))
                    for x in basis for y in basis for z in basis)
        unit = all(self.mul(self.unit, x) == x and self.mul(x, self.unit) == x for x in basis)
        return {"associative": assoc, "unit": unit}


def _from_matrices(fld: FieldConfig, mats: list, module: Module, idem_mats=(), labels=()) -> AlgebraTable:
    d = len(mats)
    n = mats[0].nrows
    # positions (i, j) giving an invertible d x d coordinate system
    rs = RowSpace(fld)
    pos = []
    for i in range(n):
        for j in range(n):
            col = {k: m.rows[i][j] for k, m in enumerate(mats) if m.rows[i][j]}
            if col and rs.add(col):
                pos.append((i, j))
                if len(pos) == d:
                    break
        if len(pos) == d:
            break
    S = Matrix(fld, [[m.rows[i][j] for m in mats] for i, j in pos], d)
    A = AlgebraTable(fld, mats, [], [], module=module)
    A._pos, A._posinv = pos, inverse(S)
    A.const = [[A.coordinates(x @ y) for y in mats] for x in mats]
    A.unit = A.coordinates(Matrix.identity(fld, n))
    A.idempotents = [A.coordinates(e) for e in idem_mats] or [A.unit]
    A.vertex_labels = list(labels) or ["1"]
    return A


def end_algebra(M: Module) -> AlgebraTable:
    mats = [h.matrix for h in hom_space(M, M)]
    return _from_matrices(M.field, mats, M)


def end_algebra_of_sum(mods: Sequence[Module], labels: Sequence = ()) -> AlgebraTable:
    """End of the direct sum, with basis adapted to Hom(mods[s], mods[t])
    and the summand projections as vertex idempotents."""
    fld = mods[0].field
    N = direct_sum(list(mods))
    n = N.dim
    offs = [0]
    for m in mods:
        offs.append(offs[-1] + m.dim)
    mats = []
    for s, Ms in enumerate(mods):
        for t, Mt in enumerate(mods):
            for h in hom_space(Ms, Mt):
                ent = [(offs[t] + i, offs[s] + j, a) for i, row in enumerate(h.matrix.nz()) for j, a in row]
                mats.append(Matrix.from_sparse(fld, n, n, ent))
    idem = []
    for s, m in enumerate(mods):
        idem.append(Matrix.from_sparse(fld, n, n, [(offs[s] + i, offs[s] + i, fld.one) for i in range(m.dim)]))
    labels = list(labels) or [m.name for m in mods]
    return _from_matrices(fld, mats, N, idem, labels)


# -- radical, layers, Cartan ---------------------------------------------------------------

def radical(A: AlgebraTable) -> list:
    """Basis (coordinates) of the Jacobson radical: the kernel of the trace
    form (x, y) -> trace of left multiplication by xy."""
    if A.field.mode != CYCLOTOMIC:
        raise ModeUnsupported("the trace-form radical needs characteristic zero")
    fld = A.field
    d = A.dim
    t = [sum((A.const[m][j][j] for j in range(d)), fld.zero) for m in range(d)]
    rs = RowSpace(fld)
    for a in range(d):
        row = {}
        for b in range(d):
            v = sum((A.const[a][b][m] * t[m] for m in range(d) if t[m]), fld.zero)
            if v:
                row[b] = v
        if row:
            rs.add(row)
    out = []
    for v in rs.nullspace(d):
        dv = A.zero()
        for k, a in v.items():
            dv[k] = a
        out.append(dv)
    return out


def radical_powers(A: AlgebraTable) -> list[list]:
    """[rad, rad^2, ...] down to 0 (bases in coordinates); checks nilpotence."""
    R = radical(A)
    out = [R]
    cur = R
    while cur:
        nxt = _rs_basis(_span(A.field, [A.mul(x, y) for x in cur for y in R]), A.dim)
        if len(nxt) == len(cur):
            raise AssertionError("radical is not nilpotent")
        out.append(nxt)
        cur = nxt
    return out


def radical_layers(A: AlgebraTable) -> list[int]:
    """dim rad^i / rad^(i+1) for i = 0, 1, ... (rad^0 = A), trailing zeros dropped."""
    dims = [A.dim] + [len(p) for p in radical_powers(A)]
    return [dims[i] - dims[i + 1] for i in range(len(dims) - 1)]


def _corner(A: AlgebraTable, t: int, s: int, vectors) -> list:
    es, et = A.idempotents[s], A.idempotents[t]
    return _rs_basis(_span(A.field, [A.mul(et, A.mul(v, es)) for v in vectors]), A.dim)


def cartan(A: AlgebraTable) -> list[list[int]]:
    """C[s][t] = dim e_t A e_s (maps from vertex s to vertex t)."""
    basis = [A.basis_vector(k) for k in range(A.dim)]
    n = len(A.idempotents)
    return [[len(_corner(A, t, s, basis)) for t in range(n)] for s in range(n)]


# -- quivers with relations -----------------------------------------------------------------

@dataclass(frozen=True)
class PresentedAlgebra:
    name: str
    vertices: tuple
    arrows: tuple        # (name, source, target)
    relations: tuple     # each a tuple of (integer coefficient, path as tuple of arrow names)

    def __post_init__(self):
        ends = {a: (s, t) for a, s, t in self.arrows}
        for rel in self.relations:
            spans = set()
            for _, path in rel:
                for a, b in zip(path, path[1:]):
                    if ends[a][1] != ends[b][0]:
                        raise ValueError(f"{self.name}: path {path} is not composable")
                spans.add((ends[path[0]][0], ends[path[-1]][1], len(path)))
            if len(spans) != 1:
                raise ValueError(f"{self.name}: relation {rel} is not homogeneous with fixed endpoints")

    def arrow_ends(self, name):
        for a, s, t in self.arrows:
            if a == name:
                return s, t
        raise KeyError(name)


def _rel(*terms):
    return tuple((c, tuple(p.split())) for c, p in terms)


K_ALGEBRA = PresentedAlgebra("k", ("v",), (), ())

ALGEBRA_A = PresentedAlgebra(
    "A", ("X0", "X1"),
    (("alpha1", "X0", "X1"), ("alpha2", "X0", "X1"), ("beta1", "X1", "X0"), ("beta2", "X1", "X0")),
    (_rel((1, "alpha1 beta2")), _rel((1, "alpha2 beta1")),
     _rel((1, "alpha1 beta1"), (-1, "alpha2 beta2")),
     _rel((1, "beta1 alpha2")), _rel((1, "beta2 alpha1")),
     _rel((1, "beta1 alpha1"), (-1, "beta2 alpha2"))))

FIG2 = PresentedAlgebra(
    "Fig2", ("X", "Y"),
    (("alpha", "X", "Y"), ("beta", "Y", "X")),
    (_rel((1, "beta alpha")),))

FIG3 = PresentedAlgebra(
    "Fig3", ("X", "Y", "Z"),
    (("alpha1", "X", "Y"), ("alpha2", "X", "Y"), ("beta1", "Y", "X"), ("beta2", "Y", "X"),
     ("delta", "Y", "Z"), ("gamma", "Z", "Y")),
    (_rel((1, "alpha1 beta2")), _rel((1, "alpha2 beta1")),
     _rel((1, "alpha1 beta1"), (-1, "alpha2 beta2")),
     _rel((1, "beta1 alpha2")), _rel((1, "beta2 alpha1")),
     _rel((1, "gamma delta")),
     _rel((1, "gamma beta1")), _rel((1, "gamma beta2")),
     _rel((1, "alpha1 delta")), _rel((1, "alpha2 delta")),
     _rel((1, "beta1 alpha1"), (-1, "beta2 alpha2")),
     _rel((1, "beta1 alpha1"), (-1, "delta gamma"))))

PRESENTATIONS = {p.name: p for p in (K_ALGEBRA, FIG2, ALGEBRA_A, FIG3)}


def _paths(P: PresentedAlgebra, n: int) -> list:
    """Paths of length n >= 1 as arrow-name tuples."""
    out = [(a,) for a, _, _ in P.arrows]
    for _ in range(n - 1):
        out = [p + (a,) for p in out for a, s, _ in P.arrows if s == P.arrow_ends(p[-1])[1]]
    return out


@dataclass(frozen=True)
class PresentedStructure:
    dim: int
    layers: tuple            # dims of the graded pieces, degree 0 first
    cartan: tuple            # cartan[s][t] = number of independent paths s -> t
    arrow_counts: tuple      # arrow_counts[s][t]


def presented_structure(P: PresentedAlgebra, cap: int = PATH_CAP) -> PresentedStructure:
    """Graded dimensions of kQ/I, degree by degree, until a degree vanishes.

    Relations are homogeneous, so I is graded and each degree is the span of
    the paths of that length modulo the words u r v of that length.
    """
    from ..scalars import make_field
    fld = make_field(3)  # integer relations; any characteristic-zero field works
    V = list(P.vertices)
    vi = {v: i for i, v in enumerate(V)}
    nv = len(V)
    C = [[1 if s == t else 0 for t in range(nv)] for s in range(nv)]
    arrows = [[0] * nv for _ in range(nv)]
    for _, s, t in P.arrows:
        arrows[vi[s]][vi[t]] += 1
    layers = [nv]
    ends = {a: (vi[s], vi[t]) for a, s, t in P.arrows}
    n = 1
    while True:
        if n > cap:
            raise NotFiniteDimensional(f"{P.name}: degree {cap} still nonzero")
        paths = _paths(P, n)
        if not paths:
            break
        index = {p: i for i, p in enumerate(paths)}
        rs = RowSpace(fld)
        for rel in P.relations:
            k = len(rel[0][1])
            if k > n:
                continue
            s0, t0 = ends[rel[0][1][0]][0], ends[rel[0][1][-1]][1]
            for a in range(n - k + 1):
                us = [()] if a == 0 else [u for u in _paths(P, a) if ends[u[-1]][1] == s0]
                vs = [()] if n - k - a == 0 else [v for v in _paths(P, n - k - a) if ends[v[0]][0] == t0]
                for u in us:
                    for v in vs:
                        vec = {}
                        for c, path in rel:
                            i = index[u + path + v]
                            vec[i] = vec.get(i, fld.zero) + fld(c)
                        rs.add(vec)
        # non-pivot paths give a basis of the quotient in this degree
        free = [p for i, p in enumerate(paths) if i not in rs.rows]
        if not free:
            break
        for p in free:
            C[ends[p[0]][0]][ends[p[-1]][1]] += 1
        layers.append(len(free))
        n += 1
    return PresentedStructure(sum(layers), tuple(layers), tuple(map(tuple, C)), tuple(map(tuple, arrows)))


def presented_algebra_dim(P: PresentedAlgebra) -> int:
    return presented_structure(P).dim


# -- matching -------------------------------------------------------------------------------

@dataclass
class MatchReport:
    presentation: str
    passed: bool
    failed_check: str | None = None
    detail: str = ""
    vertex_map: dict = field(default_factory=dict)   # presentation vertex -> algebra vertex label
    arrows: dict = field(default_factory=dict)       # arrow -> coordinates in A
    checks: dict = field(default_factory=dict)

    def to_json(self):
        return {"presentation": self.presentation, "status": "PASS" if self.passed else "FAIL",
                "failed_check": self.failed_check, "detail": self.detail,
                "vertex_map": {k: str(v) for k, v in self.vertex_map.items()}, "checks": self.checks}


def _fail(P, name, detail, checks):
    checks[name] = False
    return MatchReport(P.name, False, name, detail, checks=checks)


def _unknown_set(P: PresentedAlgebra) -> set:
    """Largest set of arrows meeting every relation path at most once."""
    names = [a for a, _, _ in P.arrows]
    paths = [p for rel in P.relations for _, p in rel]
    for k in range(len(names), -1, -1):
        for U in itertools.combinations(names, k):
            if all(sum(a in U for a in p) <= 1 for p in paths):
                return set(U)
    return set()


def _eval_path(A: AlgebraTable, path, values) -> list:
    # diagrammatic: a1 a2 ... ak  ->  ak o ... o a1
    acc = values[path[0]]
    for a in path[1:]:
        acc = A.mul(values[a], acc)
    return acc


def _affine_solve(fld, eqs, nvars):
    """Solve sum_j coeffs[j] x_j + const = 0 for every (coeffs, const) in eqs.

    Returns (particular solution, nullspace basis) or None if inconsistent.
    """
    rs = RowSpace(fld)
    for coeffs, const in eqs:
        v = dict(coeffs)
        if const:
            v[nvars] = const
        v = {k: a for k, a in v.items() if a}
        if v:
            rs.add(v)
    if nvars in rs.rows:
        return None
    part = [fld.zero] * nvars
    for p, row in rs.rows.items():
        c = row.get(nvars)
        if c:
            part[p] = -c
    null = []
    for vec in rs.nullspace(nvars):
        d = [fld.zero] * nvars
        for k, a in vec.items():
            if k < nvars:
                d[k] = a
        null.append(d)
    return part, null


def _realize(A: AlgebraTable, P: PresentedAlgebra, sigma: dict, rad: list, rad2: list, rng, attempts: int = 8):
    fld = A.field
    U = _unknown_set(P)
    corner = {}
    comp = {}
    for a, s, t in P.arrows:
        key = (sigma[s], sigma[t])
        if key not in corner:
            full = _corner(A, key[1], key[0], rad)
            sq = _span(fld, _corner(A, key[1], key[0], rad2))
            cb = []
            for v in full:
                if sq.add(_sparse(v)):
                    cb.append(v)
            corner[key], comp[key] = full, cb
    for _ in range(attempts):
        values = {}
        for a, s, t in P.arrows:
            if a in U:
                continue
            vecs = comp[(sigma[s], sigma[t])]
            acc = A.zero()
            for v in vecs:
                acc = A.add(acc, A.scale(v, random_scalar(fld, rng)))
            values[a] = acc
        # unknown arrows: coefficients over the full corner of rad
        var = {}
        for a, s, t in P.arrows:
            if a in U:
                for k in range(len(corner[(sigma[s], sigma[t])])):
                    var[(a, k)] = len(var)
        nvars = len(var)
        eqs = []
        for rel in P.relations:
            const = A.zero()
            lin = {}
            for c, path in rel:
                us = [i for i, a in enumerate(path) if a in U]
                if not us:
                    const = A.add(const, A.scale(_eval_path(A, path, values), fld(c)))
                    continue
                i = us[0]
                a = path[i]
                s, t = P.arrow_ends(a)
                for k, v in enumerate(corner[(sigma[s], sigma[t])]):
                    vals = dict(values)
                    vals[a] = v
                    w = A.scale(_eval_path(A, path, vals), fld(c))
                    j = var[(a, k)]
                    lin[j] = A.add(lin[j], w) if j in lin else w
            for m in range(A.dim):
                eqs.append(({j: w[m] for j, w in lin.items() if w[m]}, const[m]))
        sol = _affine_solve(fld, eqs, nvars) if nvars else ([], [])
        if sol is None:
            continue
        part, null = sol
        x = list(part)
        for nv in null:
            c = random_scalar(fld, rng)
            x = [a + c * b for a, b in zip(x, nv)]
        for a, s, t in P.arrows:
            if a in U:
                acc = A.zero()
                for k, v in enumerate(corner[(sigma[s], sigma[t])]):
                    if x[var[(a, k)]]:
                        acc = A.add(acc, A.scale(v, x[var[(a, k)]]))
                values[a] = acc
        # independence modulo rad^2, corner by corner
        ok = True
        for key in set((sigma[s], sigma[t]) for _, s, t in P.arrows):
            sq = _span(fld, _corner(A, key[1], key[0], rad2))
            for a, s, t in P.arrows:
                if (sigma[s], sigma[t]) == key and not sq.add(_sparse(values[a])):
                    ok = False
        if not ok:
            continue
        if all(not any(_rel_value(A, rel, values)) for rel in P.relations):
            return values
    return None


def _rel_value(A, rel, values):
    acc = A.zero()
    for c, path in rel:
        acc = A.add(acc, A.scale(_eval_path(A, path, values), A.field(c)))
    return acc


def match_presentation(A: AlgebraTable, P: PresentedAlgebra, seed: int = 0) -> MatchReport:
    checks: dict = {}
    S = presented_structure(P)
    if A.dim != S.dim:
        return _fail(P, "dimension", f"dim A = {A.dim}, presented dim = {S.dim}", checks)
    checks["dimension"] = True
    nv = len(P.vertices)
    if len(A.idempotents) != nv:
        return _fail(P, "vertices", f"{len(A.idempotents)} idempotents, {nv} vertices", checks)
    checks["vertices"] = True
    CA = cartan(A)
    sigmas = [perm for perm in itertools.permutations(range(nv))
              if all(CA[perm[s]][perm[t]] == S.cartan[s][t] for s in range(nv) for t in range(nv))]
    if not sigmas:
        return _fail(P, "cartan", f"Cartan {CA} vs {[list(r) for r in S.cartan]}", checks)
    checks["cartan"] = True
    if nv == 1 and not P.arrows and A.dim == 1:
        checks["layers"] = checks["relations"] = True
        return MatchReport(P.name, True, None, "", {P.vertices[0]: A.vertex_labels[0]}, {}, checks)
    powers = radical_powers(A)
    dims = [A.dim] + [len(p) for p in powers]
    layers = tuple(dims[i] - dims[i + 1] for i in range(len(dims) - 1))
    if layers != S.layers:
        return _fail(P, "layers", f"radical layers {list(layers)} vs {list(S.layers)}", checks)
    checks["layers"] = True
    rad = powers[0]
    rad2 = powers[1] if len(powers) > 1 else []
    rng = make_rng(seed, 7)
    arrow_ok = False
    for perm in sigmas:
        sigma = {P.vertices[i]: perm[i] for i in range(nv)}
        counts_ok = True
        for s in range(nv):
            for t in range(nv):
                top = len(_corner(A, perm[t], perm[s], rad)) - len(_corner(A, perm[t], perm[s], rad2))
                if top != S.arrow_counts[s][t]:
                    counts_ok = False
        if not counts_ok:
            continue
        arrow_ok = True
        values = _realize(A, P, sigma, rad, rad2, rng)
        if values is not None:
            checks["arrows"] = checks["relations"] = True
            vmap = {v: A.vertex_labels[sigma[v]] for v in P.vertices}
            return MatchReport(P.name, True, None, "", vmap, values, checks)
    if not arrow_ok:
        return _fail(P, "arrows", "rad/rad^2 does not match the arrows", checks)
    checks["arrows"] = True
    return _fail(P, "relations", "no arrow representatives satisfy the relations", checks)


def identify_presentation(A: AlgebraTable, seed: int = 0) -> MatchReport | None:
    """First fixed presentation matched by A, or None."""
    for P in PRESENTATIONS.values():
        rep = match_presentation(A, P, seed)
        if rep.passed:
            return rep
    return None
