"""Modules over the small quantum group of gl2 / sl2 at a root of unity.

Every Module is stored on a weight basis: each basis vector carries a weight
(a pair of residues for the gl2 flavor, the K-exponent residue for sl2), so
K, K1, K2 act diagonally and E, F shift weights.  Intertwiner systems then
split into independent weight blocks.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

from .linalg import Matrix, RowSpace, inverse, independent_columns, rank
from .scalars import FieldConfig, Scalar, q_binom, q_int

GL2 = "gl2"
SL2 = "sl2"


class FlavorMismatch(ValueError):
    pass


class BadIndex(ValueError):
    pass


class NotASubmodule(ValueError):
    pass


class Module:
    """A finite-dimensional module given by E, F and a weight for each basis vector."""

    def __init__(self, field: FieldConfig, E: Matrix, F: Matrix, weights: Sequence,
                 flavor: str = GL2, labels: Sequence[str] | None = None,
                 gl_weights: Sequence | None = None, name: str = ""):
        n = len(weights)
        if E.shape != (n, n) or F.shape != (n, n):
            raise ValueError("generator shapes do not match the number of weights")
        l = field.l
        if flavor == GL2:
            weights = tuple((a % l, b % l) for a, b in weights)
        elif flavor == SL2:
            weights = tuple(k % l for k in weights)
        else:
            raise ValueError(f"unknown flavor {flavor!r}")
        self.field = field
        self.E = E
        self.F = F
        self.weights = weights
        self.flavor = flavor
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(n))
        if gl_weights is None and flavor == GL2:
            gl_weights = weights
        self.gl_weights = tuple(gl_weights) if gl_weights is not None else None
        self.name = name
        self._classes = None

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim}, {self.flavor})"

    @property
    def dim(self) -> int:
        return len(self.weights)

    # weights ---------------------------------------------------------------
    def k_exponent(self, i: int) -> int:
        w = self.weights[i]
        return (w[0] - w[1]) % self.field.l if self.flavor == GL2 else w

    def shift(self, w, gen: str):
        l = self.field.l
        sgn = 1 if gen == "E" else -1
        if self.flavor == GL2:
            return ((w[0] + sgn) % l, (w[1] - sgn) % l)
        return (w + 2 * sgn) % l

    def weight_classes(self) -> dict:
        if self._classes is None:
            d = defaultdict(list)
            for i, w in enumerate(self.weights):
                d[w].append(i)
            self._classes = dict(d)
        return self._classes

    def weight_multiset(self) -> tuple:
        return tuple(sorted((w, len(ix)) for w, ix in self.weight_classes().items()))

    # generator matrices ------------------------------------------------------
    @property
    def gen_E(self) -> Matrix:
        return self.E

    @property
    def gen_F(self) -> Matrix:
        return self.F

    @property
    def gen_K(self) -> Matrix:
        return Matrix.diag(self.field, [self.field.eps_pow(self.k_exponent(i)) for i in range(self.dim)])

    @property
    def gen_K_inv(self) -> Matrix:
        return Matrix.diag(self.field, [self.field.eps_pow(-self.k_exponent(i)) for i in range(self.dim)])

    @property
    def gen_K1(self) -> Matrix | None:
        if self.flavor != GL2:
            return None
        return Matrix.diag(self.field, [self.field.eps_pow(w[0]) for w in self.weights])

    @property
    def gen_K2(self) -> Matrix | None:
        if self.flavor != GL2:
            return None
        return Matrix.diag(self.field, [self.field.eps_pow(w[1]) for w in self.weights])

    def generators(self) -> dict:
        g = {"E": self.E, "F": self.F, "K": self.gen_K}
        if self.flavor == GL2:
            g["K1"] = self.gen_K1
            g["K2"] = self.gen_K2
        return g

    def act(self, gen: str, v: Sequence[Scalar]) -> list:
        return (self.E if gen == "E" else self.F).apply(v)


class ModuleMap:
    def __init__(self, source: Module, target: Module, matrix: Matrix):
        if matrix.shape != (target.dim, source.dim):
            raise ValueError("matrix shape does not match source/target")
        self.source = source
        self.target = target
        self.matrix = matrix

    def __repr__(self):
        return f"ModuleMap({self.source!r} -> {self.target!r})"

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """self o first."""
        return ModuleMap(first.source, self.target, self.matrix @ first.matrix)

    def __add__(self, other):
        return ModuleMap(self.source, self.target, self.matrix + other.matrix)

    def scale(self, c):
        return ModuleMap(self.source, self.target, self.matrix.scale(c))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_intertwiner(self) -> bool:
        gs, gt = self.source.generators(), self.target.generators()
        X = self.matrix
        for name, g in gs.items():
            if name not in gt:
                continue
            if X @ g != gt[name] @ X:
                return False
        return True

    def is_invertible(self) -> bool:
        return self.source.dim == self.target.dim and rank(self.matrix) == self.source.dim


# -- constructions ------------------------------------------------------------------

def natural_module(field: FieldConfig) -> Module:
    z, o = field.zero, field.one
    E = Matrix(field, [[z, o], [z, z]])
    F = Matrix(field, [[z, z], [o, z]])
    return Module(field, E, F, [(1, 0), (0, 1)], GL2, ["w1", "w2"], name="Omega")


def _check_pair(M: Module, N: Module):
    if M.field != N.field:
        raise ValueError("modules over different fields")
    if M.flavor != N.flavor:
        raise FlavorMismatch(f"{M.flavor} vs {N.flavor}")


def tensor(M: Module, N: Module) -> Module:
    """M (x) N with E -> E(x)K + 1(x)E, F -> F(x)1 + K^-1(x)F, K_i -> K_i(x)K_i."""
    _check_pair(M, N)
    f = M.field
    m, n = M.dim, N.dim
    kN = [f.eps_pow(N.k_exponent(i)) for i in range(n)]
    kMinv = [f.eps_pow(-M.k_exponent(i)) for i in range(m)]
    e_ent, f_ent = [], []
    for i, row in enumerate(M.E.nz()):
        for j, a in row:
            for b in range(n):
                e_ent.append((i * n + b, j * n + b, a * kN[b]))
    for i in range(m):
        for b, row in enumerate(N.E.nz()):
            for c, a in row:
                e_ent.append((i * n + b, i * n + c, a))
    for i, row in enumerate(M.F.nz()):
        for j, a in row:
            for b in range(n):
                f_ent.append((i * n + b, j * n + b, a))
    for i in range(m):
        for b, row in enumerate(N.F.nz()):
            for c, a in row:
                f_ent.append((i * n + b, i * n + c, kMinv[i] * a))
    E = Matrix.from_sparse(f, m * n, m * n, e_ent)
    F = Matrix.from_sparse(f, m * n, m * n, f_ent)
    if M.flavor == GL2:
        wts = [(a[0] + b[0], a[1] + b[1]) for a in M.weights for b in N.weights]
    else:
        wts = [a + b for a in M.weights for b in N.weights]
    gl = None
    if M.gl_weights is not None and N.gl_weights is not None:
        l = f.l
        gl = [((a[0] + b[0]) % l, (a[1] + b[1]) % l) for a in M.gl_weights for b in N.gl_weights]
    labels = [f"{x}{y}" if len(x) == 1 or len(y) == 1 else f"{x}.{y}" for x in M.labels for y in N.labels]
    return Module(f, E, F, wts, M.flavor, labels, gl, name=f"({M.name}x{N.name})")


def tensor_power(field: FieldConfig, r: int) -> Module:
    if r < 1:
        raise BadIndex("r must be >= 1")
    Om = natural_module(field)
    M = Om
    for _ in range(r - 1):
        M = tensor(M, Om)
    M.labels = tuple(_lex_labels(r))
    M.name = f"Omega^{r}"
    return M


def _lex_labels(r: int):
    from itertools import product
    return ["w" + "".join(t) for t in product("12", repeat=r)]


def direct_sum(mods: Sequence[Module], name: str = "") -> Module:
    from .linalg import block_diag
    f = mods[0].field
    fl = mods[0].flavor
    for M in mods:
        _check_pair(mods[0], M)
    wts, labels, gl = [], [], []
    has_gl = all(M.gl_weights is not None for M in mods)
    for k, M in enumerate(mods):
        wts.extend(M.weights)
        labels.extend(f"{k}:{x}" for x in M.labels)
        if has_gl:
            gl.extend(M.gl_weights)
    E = block_diag(f, [M.E for M in mods])
    F = block_diag(f, [M.F for M in mods])
    return Module(f, E, F, wts, fl, labels, gl if has_gl else None,
                  name=name or "+".join(M.name or "?" for M in mods))


def simple_L(field: FieldConfig, j: int) -> Module:
    """The j-dimensional sl2 simple on v_0..v_{j-1}."""
    if not 1 <= j <= field.l:
        raise BadIndex(f"j={j} outside 1..{field.l}")
    E, F = _string_action(field, j)
    return Module(field, E, F, [j - 1 - 2 * i for i in range(j)], SL2,
                  [f"v{i}" for i in range(j)], name=f"L{j}")


def simple_gl(field: FieldConfig, hw) -> Module:
    """gl2 simple with highest weight hw (residues mod l)."""
    l = field.l
    j = (hw[0] - hw[1]) % l + 1
    E, F = _string_action(field, j)
    return Module(field, E, F, [(hw[0] - i, hw[1] + i) for i in range(j)], GL2,
                  [f"v{i}" for i in range(j)], name=f"L({hw[0] % l},{hw[1] % l})")


def _string_action(field, j):
    ent_e = [(i - 1, i, q_int(field, j - i)) for i in range(1, j)]
    ent_f = [(i + 1, i, q_int(field, i + 1)) for i in range(j - 1)]
    return Matrix.from_sparse(field, j, j, ent_e), Matrix.from_sparse(field, j, j, ent_f)


def projective_P(field: FieldConfig, j: int) -> Module:
    """The 2l-dimensional sl2 projective P_j on v_0..v_{l-1}, w_0..w_{l-1}."""
    l = field.l
    if not 1 <= j <= l - 1:
        raise BadIndex(f"j={j} outside 1..{l - 1}")
    v = lambda s: s if 0 <= s < l else None  # noqa: E731
    w = lambda s: l + s if 0 <= s < l else None  # noqa: E731
    e_ent, f_ent = [], []
    for s in range(l):
        if v(s - 1) is not None:
            e_ent.append((v(s - 1), v(s), q_int(field, l - j - s)))
            e_ent.append((w(s - 1), w(s), q_int(field, j - s)))
        if v(s - j - 1 + l) is not None:
            e_ent.append((v(s - j - 1 + l), w(s), q_binom(field, l - j - 1 + s, s)))
        if v(s + 1) is not None:
            f_ent.append((v(s + 1), v(s), q_int(field, s + 1)))
            f_ent.append((w(s + 1), w(s), q_int(field, s + 1)))
    E = Matrix.from_sparse(field, 2 * l, 2 * l, e_ent)
    F = Matrix.from_sparse(field, 2 * l, 2 * l, f_ent)
    wts = [l - j - 2 * s - 1 for s in range(l)] + [j - 2 * s - 1 for s in range(l)]
    labels = [f"v{s}" for s in range(l)] + [f"w{s}" for s in range(l)]
    return Module(field, E, F, wts, SL2, labels, name=f"P{j}")


def restrict_to_sl2(M: Module) -> Module:
    if M.flavor != GL2:
        raise FlavorMismatch("restriction needs a gl2 module")
    wts = [M.k_exponent(i) for i in range(M.dim)]
    return Module(M.field, M.E, M.F, wts, SL2, M.labels, M.gl_weights, name=M.name)


def alpha_maps(field: FieldConfig, j: int) -> tuple[ModuleMap, ModuleMap]:
    """The two basis maps P_j -> P_{l-j}."""
    l = field.l
    if not 1 <= j <= l - 1:
        raise BadIndex(f"j={j} outside 1..{l - 1}")
    P, Q = projective_P(field, j), projective_P(field, l - j)
    a1 = [(s, l + s, field.one) for s in range(l)]
    a2 = []
    for s in range(l - j):
        a2.append((s + j, s, q_int(field, j) * q_binom(field, s + j, s)))
    for t in range(j):
        a2.append((l + t + l - j, l + t, q_int(field, l - j) * q_binom(field, l + t - j, t)))
    return (ModuleMap(P, Q, Matrix.from_sparse(field, 2 * l, 2 * l, a1)),
            ModuleMap(P, Q, Matrix.from_sparse(field, 2 * l, 2 * l, a2)))


# -- relations ----------------------------------------------------------------------

def relation_report(M: Module) -> dict:
    f = M.field
    e = f.eps
    E, F, K, Kinv = M.E, M.F, M.gen_K, M.gen_K_inv
    n = M.dim
    I = Matrix.identity(f, n)
    out = {}
    if M.flavor == GL2:
        K1, K2 = M.gen_K1, M.gen_K2
        out["K1K2=K2K1"] = K1 @ K2 == K2 @ K1
        out["K=K1K2^-1"] = K @ K2 == K1
        out["K1^l=1"] = K1.power(f.l) == I
        out["K2^l=1"] = K2.power(f.l) == I
        out["K1E=eps.EK1"] = K1 @ E == (E @ K1).scale(e)
        out["K2E=eps^-1.EK2"] = K2 @ E == (E @ K2).scale(e.inv())
        out["K1F=eps^-1.FK1"] = K1 @ F == (F @ K1).scale(e.inv())
        out["K2F=eps.FK2"] = K2 @ F == (F @ K2).scale(e)
    out["K^l=1"] = K.power(f.l) == I
    out["KE=eps^2.EK"] = K @ E == (E @ K).scale(e * e)
    out["KF=eps^-2.FK"] = K @ F == (F @ K).scale((e * e).inv())
    out["EF-FE=(K-K^-1)/(eps-eps^-1)"] = E @ F - F @ E == (K - Kinv).scale((e - e.inv()).inv())
    out["E^l=0"] = E.power(f.l).is_zero()
    out["F^l=0"] = F.power(f.l).is_zero()
    return out


def check_relations(M: Module) -> bool:
    return all(relation_report(M).values())


# -- Hom spaces ------------------------------------------------------------------------

def hom_space(M: Module, N: Module) -> list[ModuleMap]:
    """Basis of Hom(M, N), solving X g_M = g_N X weight block by weight block."""
    _check_pair(M, N)
    f = M.field
    wN = N.weight_classes()
    var = {}
    for w, js in M.weight_classes().items():
        for i in wN.get(w, ()):
            for j in js:
                var[(i, j)] = len(var)
    if not var:
        return []
    rs = RowSpace(f)
    for gen in ("E", "F"):
        gM = M.E if gen == "E" else M.F
        gN = N.E if gen == "E" else N.F
        cols = gM.T.nz()
        rowsN = gN.nz()
        for j in range(M.dim):
            wt = M.shift(M.weights[j], gen)
            for i in wN.get(wt, ()):
                eq = {}
                for k, a in cols[j]:
                    v = var.get((i, k))
                    if v is not None:
                        eq[v] = eq[v] + a if v in eq else a
                for k, b in rowsN[i]:
                    v = var.get((k, j))
                    if v is not None:
                        eq[v] = eq[v] - b if v in eq else -b
                if eq:
                    rs.add(eq)
    inv = {k: ij for ij, k in var.items()}
    out = []
    for vec in rs.nullspace(len(var)):
        X = Matrix.from_sparse(f, N.dim, M.dim, ((inv[k][0], inv[k][1], a) for k, a in vec.items()))
        out.append(ModuleMap(M, N, X))
    return out


def hom_dim(M: Module, N: Module) -> int:
    return len(hom_space(M, N))


# -- submodules and quotients ----------------------------------------------------------

class Submodule:
    """A subspace of M spanned by weight vectors; not necessarily E,F-stable."""

    def __init__(self, ambient: Module, vectors: Iterable[Sequence[Scalar]] = ()):
        self.ambient = ambient
        self._spaces: dict = {}  # weight -> RowSpace over indices of M
        self._basis: list = []
        self._bweights: list = []
        for v in vectors:
            for w, comp in _weight_components(ambient, v):
                self._add(w, comp)

    def _add(self, w, vec: dict) -> dict | None:
        rs = self._spaces.get(w)
        if rs is None:
            rs = self._spaces[w] = RowSpace(self.ambient.field)
        red = rs.reduce(vec)
        if not red:
            return None
        rs._insert(dict(red), min(red))
        self._basis.append(red)
        self._bweights.append(w)
        return red

    @property
    def dim(self) -> int:
        return len(self._basis)

    def basis(self) -> list[list]:
        z = self.ambient.field.zero
        out = []
        for v in self._basis:
            d = [z] * self.ambient.dim
            for k, a in v.items():
                d[k] = a
            out.append(d)
        return out

    def contains(self, v: Sequence) -> bool:
        for w, comp in _weight_components(self.ambient, v):
            rs = self._spaces.get(w)
            if rs is None or not rs.contains(comp):
                return False
        return True

    def contains_sub(self, other: "Submodule") -> bool:
        return all(self.contains(v) for v in other.basis())

    def echelon(self) -> "Submodule":
        """Same subspace with its reduced echelon basis (pivot entries 1)."""
        S = Submodule(self.ambient)
        for w in sorted(self._spaces):
            rows = self._spaces[w].rows
            for p in sorted(rows):
                S._add(w, dict(rows[p]))
        S._echelon = True
        return S

    def __eq__(self, other):
        return isinstance(other, Submodule) and self.dim == other.dim and self.contains_sub(other)

    __hash__ = None

    def __add__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.ambient, self.basis() + other.basis())

    def intersection(self, other: "Submodule") -> "Submodule":
        f = self.ambient.field
        vecs = []
        for w in set(self._bweights) & set(other._bweights):
            A = [v for v, ww in zip(self._basis, self._bweights) if ww == w]
            B = [v for v, ww in zip(other._basis, other._bweights) if ww == w]
            # solve sum x_a A_a - sum y_b B_b = 0
            na = len(A)
            rs = RowSpace(f)
            idx = self.ambient.weight_classes()[w]
            for i in idx:
                eq = {}
                for k, a in enumerate(A):
                    if i in a:
                        eq[k] = a[i]
                for k, b in enumerate(B):
                    if i in b:
                        eq[na + k] = -b[i]
                if eq:
                    rs.add(eq)
            for sol in rs.nullspace(na + len(B)):
                v = {}
                for k, c in sol.items():
                    if k < na:
                        for i, a in A[k].items():
                            v[i] = v.get(i, f.zero) + c * a
                vecs.append(_dense(v, self.ambient.dim, f.zero))
        return Submodule(self.ambient, vecs)

    def is_stable(self) -> bool:
        M = self.ambient
        return all(self.contains(M.act(g, v)) for v in self.basis() for g in ("E", "F"))

    def coordinates(self, v: Sequence) -> list:
        """Coordinates of v in the stored basis (v must lie in the span)."""
        f = self.ambient.field
        n = self.dim
        if getattr(self, "_echelon", False):
            out = [v[min(b)] for b in self._basis]
            if not self.contains(v):
                raise ValueError("vector not in span")
            return out
        rs = RowSpace(f)
        # equations sum_k c_k b_k = v, solved by elimination on the transposed system
        for i in range(self.ambient.dim):
            eq = {}
            for k, b in enumerate(self._basis):
                if i in b:
                    eq[k] = b[i]
            if v[i]:
                eq[n] = v[i]
            if eq:
                rs.add(eq)
        if n in rs.rows:
            raise ValueError("vector not in span")
        out = [f.zero] * n
        for p, row in rs.rows.items():
            out[p] = row.get(n, f.zero)
        return out


def _dense(v: dict, n: int, zero):
    out = [zero] * n
    for k, a in v.items():
        out[k] = a
    return out


def _weight_components(M: Module, v: Sequence):
    comps = defaultdict(dict)
    for i, a in enumerate(v):
        if a:
            comps[M.weights[i]][i] = a
    return list(comps.items())


def span(M: Module, vectors: Iterable[Sequence]) -> Submodule:
    return Submodule(M, vectors)


def basis_span(M: Module, indices: Iterable[int]) -> Submodule:
    f = M.field
    vecs = []
    for i in indices:
        v = [f.zero] * M.dim
        v[i] = f.one
        vecs.append(v)
    return Submodule(M, vecs)


def submodule_closure(M: Module, vectors: Iterable[Sequence]) -> Submodule:
    S = Submodule(M)
    queue = []
    for v in vectors:
        queue.extend(_weight_components(M, v))
    f = M.field
    while queue:
        w, vec = queue.pop()
        red = S._add(w, vec)
        if red is None:
            continue
        dv = _dense(red, M.dim, f.zero)
        for g in ("E", "F"):
            u = M.act(g, dv)
            comp = {i: a for i, a in enumerate(u) if a}
            if comp:
                queue.append((M.shift(w, g), comp))
    return S


def _restricted_action(M: Module, S: Submodule):
    """Matrices of E, F on the basis of a stable subspace S."""
    f = M.field
    cols_e, cols_f = [], []
    for v in S.basis():
        cols_e.append(S.coordinates(M.act("E", v)))
        cols_f.append(S.coordinates(M.act("F", v)))
    n = S.dim
    return Matrix.from_columns(f, cols_e, n), Matrix.from_columns(f, cols_f, n)


def sub_module(M: Module, S: Submodule) -> Module:
    if not getattr(S, "_echelon", False):
        S = S.echelon()
    if not S.is_stable():
        raise NotASubmodule("subspace is not E,F-stable")
    E, F = _restricted_action(M, S)
    gl = None
    if M.gl_weights is not None:
        gl = [M.gl_weights[min(v)] for v in S._basis]
    return Module(M.field, E, F, list(S._bweights), M.flavor, [f"s{i}" for i in range(S.dim)], gl,
                  name=f"sub({M.name})")


def complement_indices(M: Module, S: Submodule) -> list[int]:
    """Standard basis indices completing a basis of S to one of M."""
    out = []
    for w, idx in M.weight_classes().items():
        rs = RowSpace(M.field)
        srs = S._spaces.get(w)
        if srs is not None:
            for row in srs.rows.values():
                rs.add(dict(row))
        for i in idx:
            if rs.add({i: M.field.one}):
                out.append(i)
    return sorted(out)


def quotient(M: Module, S: Submodule) -> Module:
    if not S.is_stable():
        raise NotASubmodule("subspace is not E,F-stable")
    f = M.field
    comp = complement_indices(M, S)
    n, d = M.dim, len(comp)
    # full basis [S | complement]; coordinates via one inverse
    cols = S.basis()
    for i in comp:
        v = [f.zero] * n
        v[i] = f.one
        cols.append(v)
    B = Matrix.from_columns(f, cols, n)
    Binv = inverse(B)
    k = S.dim
    sel = list(range(k, k + d))
    E = (Binv @ M.E).submatrix(sel, list(range(n))) @ B.submatrix(list(range(n)), sel)
    F = (Binv @ M.F).submatrix(sel, list(range(n))) @ B.submatrix(list(range(n)), sel)
    gl = [M.gl_weights[i] for i in comp] if M.gl_weights is not None else None
    return Module(f, E, F, [M.weights[i] for i in comp], M.flavor, [M.labels[i] for i in comp], gl,
                  name=f"{M.name}/S")


def subquotient(M: Module, big: Submodule, small: Submodule) -> Module:
    big = big.echelon()
    B = sub_module(M, big)
    inner = Submodule(B, [big.coordinates(v) for v in small.basis()])
    return quotient(B, inner)


def image(phi: ModuleMap) -> Submodule:
    return Submodule(phi.target, phi.matrix.columns())


def kernel(phi: ModuleMap) -> Submodule:
    from .linalg import nullspace
    return Submodule(phi.source, nullspace(phi.matrix))


# -- Lemma 3.1 subspaces -------------------------------------------------------------------

def canonical_submodules(field: FieldConfig, j: int):
    """(P_j, V_j, M_j, N_j) with the three spans as Submodules of P_j."""
    l = field.l
    P = projective_P(field, j)
    V = basis_span(P, range(l - j, l))
    Mj = basis_span(P, range(l))
    Nj = basis_span(P, list(range(l - j, l)) + [l + s for s in range(j, l)])
    return P, V, Mj, Nj


def module_radical(M: Module, simples: Sequence[Module]) -> Submodule:
    """Intersection of kernels of all maps to the given simple modules."""
    from .linalg import nullspace
    rows = []
    for L in simples:
        for h in hom_space(M, L):
            rows.extend(h.matrix.rows)
    if not rows:
        return basis_span(M, range(M.dim))
    return Submodule(M, nullspace(Matrix(M.field, rows, M.dim)))


def socle(M: Module, simples: Sequence[Module]) -> tuple[Submodule, list]:
    """Socle as span of images of maps from simples; returns (socle, [(simple, mult)])."""
    vecs, found = [], []
    for L in simples:
        hs = hom_space(L, M)
        if hs:
            found.append((L, len(hs)))
            for h in hs:
                vecs.extend(h.matrix.columns())
    return Submodule(M, vecs), found


def candidate_simples(M: Module) -> list[Module]:
    """Simples whose highest weight occurs among highest-weight vectors of M."""
    f = M.field
    out = []
    for w, idx in sorted(M.weight_classes().items()):
        # is ker E nonzero on this weight space?
        tgt = M.weight_classes().get(M.shift(w, "E"), [])
        sub = M.E.submatrix(tgt, idx) if tgt else None
        if sub is None or rank(sub) < len(idx):
            if M.flavor == GL2:
                out.append(simple_gl(f, w))
            else:
                out.append(simple_L(f, w % f.l + 1))
    return out


def independent_maps(maps: Sequence[ModuleMap]) -> int:
    if not maps:
        return 0
    return len(independent_columns(maps[0].source.field, [m.matrix.flat() for m in maps]))
