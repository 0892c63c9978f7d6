"""Solver-agnostic two-stage robust problem statement.

min_x c'x + max_xi min_y { q'y : T x + W y + C xi >= h, y >= 0 } with x
constrained to a polyhedron with optional integrality marks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionError

CANONICAL_DIGITS = 12


def canonical_key(xi) -> tuple[float, ...]:
    """Rounded tuple used for duplicate detection and stable scenario ids."""
    return tuple(round(float(v) + 0.0, CANONICAL_DIGITS) for v in np.asarray(xi).ravel())


@dataclass
class Scenario:
    xi: np.ndarray
    id: int

    def key(self) -> tuple[float, ...]:
        return canonical_key(self.xi)


@dataclass
class UncertaintySet:
    """Either a finite scenario list or a coordinate box (lo <= xi <= hi)."""

    kind: str  # "finite" or "box"
    scenarios: list[np.ndarray] = field(default_factory=list)
    lo: np.ndarray | None = None
    hi: np.ndarray | None = None

    @classmethod
    def finite(cls, vectors) -> "UncertaintySet":
        vecs = [np.asarray(v, dtype=float) for v in vectors]
        if not vecs:
            raise DimensionError("finite uncertainty set must be nonempty")
        seen = set()
        for v in vecs:
            k = canonical_key(v)
            if k in seen:
                raise DimensionError(f"duplicate scenario {k}")
            seen.add(k)
        return cls("finite", scenarios=vecs)

    @classmethod
    def box(cls, lo, hi) -> "UncertaintySet":
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if lo.shape != hi.shape or np.any(lo > hi):
            raise DimensionError("box bounds inconsistent")
        return cls("box", lo=lo, hi=hi)

    @property
    def dim(self) -> int:
        if self.kind == "finite":
            return len(self.scenarios[0])
        return len(self.lo)

    def as_scenarios(self) -> list[Scenario]:
        if self.kind != "finite":
            raise DimensionError("only finite sets enumerate scenarios")
        return [Scenario(v, i) for i, v in enumerate(self.scenarios)]


@dataclass
class FirstStage:
    """Linear constraints A x (sense) b with bounds and integrality marks."""

    A: np.ndarray
    b: np.ndarray
    sense: list[str]
    integer: list[int] = field(default_factory=list)
    bounds: list[tuple[float, float]] | None = None

    def num_vars(self) -> int:
        if self.A.ndim == 2 and self.A.shape[1]:
            return self.A.shape[1]
        return len(self.bounds) if self.bounds else 0


@dataclass
class TwoStageProblem:
    c: np.ndarray
    q: np.ndarray
    T_mat: np.ndarray
    W: np.ndarray
    C: np.ndarray
    h: np.ndarray
    first_stage: FirstStage
    uncertainty: UncertaintySet

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        self.q = np.asarray(self.q, dtype=float)
        self.T_mat = np.atleast_2d(np.asarray(self.T_mat, dtype=float))
        self.W = np.atleast_2d(np.asarray(self.W, dtype=float))
        self.C = np.atleast_2d(np.asarray(self.C, dtype=float))
        self.h = np.asarray(self.h, dtype=float)
        r = self.h.shape[0]
        if self.T_mat.shape != (r, self.c.shape[0]):
            raise DimensionError("T_mat shape inconsistent with h and c")
        if self.W.shape != (r, self.q.shape[0]):
            raise DimensionError("W shape inconsistent with h and q")
        if self.C.shape[0] != r:
            raise DimensionError("C row count inconsistent with h")
        if self.uncertainty.dim != self.C.shape[1]:
            raise DimensionError("uncertainty dimension inconsistent with C")
        if self.first_stage.num_vars() != self.c.shape[0]:
            raise DimensionError("first-stage variable count inconsistent with c")

    @property
    def n(self) -> int:
        return self.c.shape[0]

    @property
    def m(self) -> int:
        return self.q.shape[0]

    @property
    def r(self) -> int:
        return self.h.shape[0]


_INF_BOUND = 1e30  # JSON carries null for infinite bounds


def _bound_from_json(v, default):
    return default if v is None else float(v)


def problem_to_json(problem: TwoStageProblem) -> str:
    fs = problem.first_stage
    bounds = fs.bounds or [(0.0, np.inf)] * problem.n
    doc = {
        "c": problem.c.tolist(),
        "q": problem.q.tolist(),
        "Tmat": problem.T_mat.tolist(),
        "W": problem.W.tolist(),
        "C": problem.C.tolist(),
        "h": problem.h.tolist(),
        "first_stage": {
            "A": fs.A.tolist(),
            "b": fs.b.tolist(),
            "sense": list(fs.sense),
            "integer": list(fs.integer),
            "bounds": [[None if not np.isfinite(lo) else lo,
                        None if not np.isfinite(hi) else hi] for lo, hi in bounds],
        },
    }
    if problem.uncertainty.kind == "finite":
        doc["uncertainty"] = {"finite": [v.tolist() for v in problem.uncertainty.scenarios]}
    else:
        doc["uncertainty"] = {"box": {"lo": problem.uncertainty.lo.tolist(),
                                      "hi": problem.uncertainty.hi.tolist()}}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def problem_from_json(text: str) -> TwoStageProblem:
    doc = json.loads(text)
    fsd = doc["first_stage"]
    bounds = [(_bound_from_json(lo, -np.inf), _bound_from_json(hi, np.inf))
              for lo, hi in fsd.get("bounds", [])]
    A = np.asarray(fsd["A"], dtype=float)
    if A.size == 0:
        A = np.zeros((0, len(bounds) if bounds else len(doc["c"])))
    fs = FirstStage(
        A=np.atleast_2d(A),
        b=np.asarray(fsd["b"], dtype=float),
        sense=list(fsd["sense"]),
        integer=[int(j) for j in fsd.get("integer", [])],
        bounds=bounds or None,
    )
    unc = doc["uncertainty"]
    if "finite" in unc:
        uset = UncertaintySet.finite(unc["finite"])
    else:
        uset = UncertaintySet.box(unc["box"]["lo"], unc["box"]["hi"])
    return TwoStageProblem(
        c=doc["c"], q=doc["q"], T_mat=doc["Tmat"], W=doc["W"], C=doc["C"],
        h=doc["h"], first_stage=fs, uncertainty=uset)
