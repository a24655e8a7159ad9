"""Basic algebra of End(Omega^r): one summand per isomorphism class, split by blocks."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..reps import hom_dim
from ..scalars import CYCLOTOMIC, FieldConfig, make_field
from ..weights import NON_SEMISIMPLE, a_formula
from .algebras import (FIG2, FIG3, K_ALGEBRA, PRESENTATIONS, AlgebraTable, cartan, end_algebra_of_sum,
                       identify_presentation, match_presentation, radical_layers)
from .decompose import Decomposition, TensorPowerDecomposer, group_into_blocks


@dataclass
class Factor:
    bar_weights: list
    cls: str
    labels: list
    dim: int
    expected: str
    matched: str | None
    match: object = None
    cartan: list = field(default_factory=list)
    layers: list = field(default_factory=list)
    algebra: AlgebraTable | None = None

    @property
    def ok(self) -> bool:
        return self.matched == self.expected

    def to_json(self):
        return {"bar_weights": [list(w) for w in self.bar_weights], "class": self.cls,
                "summands": [str(x) for x in self.labels], "dim": self.dim,
                "expected": self.expected, "matched": self.matched,
                "cartan": self.cartan, "radical_layers": self.layers,
                "match": self.match.to_json() if self.match is not None else None}


@dataclass
class BasicAlgebraReport:
    l: int
    r: int
    field: str
    algebra_field: str
    lambda_dim: int
    end_dim_check: int
    factors: list
    a_observed: int
    a_formula: int | None
    decomposition: Decomposition

    @property
    def ok(self) -> bool:
        return self.lambda_dim == self.end_dim_check and all(f.ok for f in self.factors)

    def to_json(self):
        return {"l": self.l, "r": self.r, "field": self.field, "algebra_field": self.algebra_field,
                "lambda_dim": self.lambda_dim, "end_dim_check": self.end_dim_check,
                "a_observed": self.a_observed, "a_formula": self.a_formula,
                "factors": [f.to_json() for f in self.factors], "ok": self.ok}


def _expected(block) -> str:
    if block.cls != NON_SEMISIMPLE:
        return K_ALGEBRA.name
    return FIG2.name if block.figure_case == "Fig2" else FIG3.name


def basic_algebra_report(l: int, r: int, fld: FieldConfig | None = None, seed: int = 0,
                         decomposer: TensorPowerDecomposer | None = None) -> BasicAlgebraReport:
    """Lambda_r = End(N) factor by factor.

    The radical needs characteristic zero, so in prime-field mode the
    algebra part is computed from a cyclotomic decomposition.
    """
    fld = fld or make_field(l)
    alg_fld = fld if fld.mode == CYCLOTOMIC else make_field(l)
    if decomposer is None or decomposer.field is not alg_fld:
        decomposer = TensorPowerDecomposer(alg_fld, seed)
    D = decomposer.decomposition(r)
    factors = []
    for block, summands in group_into_blocks(D, l, r):
        if not summands:
            continue
        mods = [s.module for s in summands]
        labels = [s.label for s in summands]
        A = end_algebra_of_sum(mods, labels)
        exp = _expected(block)
        rep = match_presentation(A, PRESENTATIONS[exp], seed)
        if not rep.passed:
            other = identify_presentation(A, seed)
            rep = other or rep
        matched = rep.presentation if rep.passed else None
        factors.append(Factor(sorted(block.bar_weights), block.cls, labels, A.dim, exp, matched, rep,
                              cartan(A), radical_layers(A), A))
    mods = [s.module for s in D.summands]
    end_dim = sum(hom_dim(a, b) for a in mods for b in mods)
    a_obs = sum(1 for f in factors if f.cls != NON_SEMISIMPLE)
    return BasicAlgebraReport(l, r, fld.mode if fld.mode == CYCLOTOMIC else f"fp:{fld.p}", alg_fld.mode,
                              sum(f.dim for f in factors), end_dim, factors, a_obs, a_formula(l, r), D)
