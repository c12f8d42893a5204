"""Stretch guarantees of the form d <= alpha * dist + additive(heavy edges)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

KINDS = ("none", "2W1", "min(2W1,4W2)", "sum")


@dataclass(frozen=True)
class MixedGuarantee:
    """Multiplicative factor ``alpha`` plus an additive term over heavy path edges.

    ``sum`` means ``coef * (W_1 + ... + W_terms)``, where W_i is the i-th
    heaviest edge weight on the shortest path in question.
    """

    alpha: float
    additive: str = "none"
    coef: float = 0.0
    terms: int = 0
    provenance: str = ""

    def __post_init__(self):
        if self.additive not in KINDS:
            raise ValueError(f"additive form must be one of {KINDS}")
        if self.additive == "sum" and self.terms < 1:
            raise ValueError("a sum form needs at least one term")

    @property
    def heavy_needed(self) -> int:
        return {"none": 0, "2W1": 1, "min(2W1,4W2)": 2}.get(self.additive, self.terms)

    def label(self) -> str:
        if self.additive == "sum":
            names = "+".join(f"W{i}" for i in range(1, self.terms + 1))
            return f"{self.coef:g}*({names})"
        return self.additive


def evaluate_guarantee(gspec: MixedGuarantee, delta: float, heavy: Sequence[float],
                       path_edges: int | None = None) -> float:
    """Upper bound allowed for a pair at distance ``delta``.

    ``heavy`` lists path edge weights heaviest first. For the min(2W1, 4W2)
    form a one-edge path has no second edge, so the 2W1 branch is used.
    """
    need = gspec.heavy_needed
    single = gspec.additive == "min(2W1,4W2)" and path_edges is not None and path_edges < 2
    if single:
        need = 1
    if len(heavy) < need:
        raise ValueError(f"need {need} heavy-edge weights, got {len(heavy)}")
    base = gspec.alpha * delta
    if gspec.additive == "none":
        return base
    if gspec.additive == "2W1" or single:
        return base + 2 * heavy[0]
    if gspec.additive == "min(2W1,4W2)":
        return base + min(2 * heavy[0], 4 * heavy[1])
    return base + gspec.coef * sum(heavy[:gspec.terms])


def tradeoff_guarantee(k: int, a: float = 1.0, b: float = 1.0) -> MixedGuarantee:
    """Averaging the +2(W1..W_{k+1}) and (9k+4)/(3k+2) guarantees with weights a, b."""
    if a <= 0 or b <= 0:
        raise ValueError("weights must be positive")
    alpha = ((9 * k + 4) * a + (3 * k + 2) * b) / ((a + b) * (3 * k + 2))
    return MixedGuarantee(alpha, "sum", 2 * b / (a + b), k + 1, "tradeoff")


def guarantee_for(algo: str, k: int = 1, ell: int = 1, eps: float = 0.0,
                  a: float = 1.0, b: float = 1.0) -> MixedGuarantee:
    """The guarantee each algorithm promises for its parameters."""
    if algo == "plus2w1" or (algo == "plus2wi" and k == 0):
        return MixedGuarantee(1.0, "2W1", provenance=algo)
    if algo == "plus2wi":
        return MixedGuarantee(1.0, "sum", 2.0, k + 1, algo)
    if algo == "frac73":
        return MixedGuarantee(7 / 3 + eps, provenance=algo)
    if algo == "framework":
        return MixedGuarantee((3 * ell + 4) / (ell + 2) + eps, provenance=algo)
    if algo == "near-additive":
        return MixedGuarantee(1.0 + eps, "min(2W1,4W2)", provenance=algo)
    if algo == "tradeoff":
        return tradeoff_guarantee(k, a, b)
    if algo == "exact":
        return MixedGuarantee(1.0, provenance=algo)
    raise ValueError(f"unknown algorithm {algo!r}")
