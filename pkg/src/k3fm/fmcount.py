"""Twisted Fourier-Mukai partner counts from lattice data.

The count is a sum over O_Hodge-orbits of isotropic order-d elements x of
D_NS.  Each orbit contributes the double-coset numbers tau(x, M) over the
genus of the overlattice M_x, with weight eps(d) on the members whose
orientation-reversing kernel isometries are missing.  Only the cases where
every ingredient is determined by the lattice data are evaluated; all
others come back as mode ``Unsupported`` with a reason.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .discform import (
    DEFAULT_CAP,
    DiscElement,
    DiscriminantForm,
    FiniteIsometry,
    double_coset_count,
    group_closure,
    isometry_group,
    isotropic_elements,
    orbits,
)
from .errors import BadSignature, InvariantViolation, UnsupportedCase
from .lattice import (
    EvenLattice,
    contains_u_summand,
    discriminant_form,
    is_two_elementary,
    nikulin_singleton,
)
from .overlattice import overlattice
from .picard1 import closed_count, euler_phi

G1, G2, UNKNOWN, IRRELEVANT = "G1", "G2", "Unknown", "Irrelevant"

PICARD_ONE = "PicardOne"
JACOBIAN = "Jacobian"
TWO_ELEMENTARY = "TwoElementary"
GENERAL_SMALL_D = "GeneralSmallD"
EMPTY = "Empty"
UNSUPPORTED = "Unsupported"


class HodgeGenericityWarning(UserWarning):
    pass


@dataclass(frozen=True)
class HodgeGroupSpec:
    """O_Hodge(T(S)) transported to D_NS: trivial, {+-id}, or explicit generators."""

    variant: str = "pm"  # "trivial" | "pm" | "explicit"
    generators: tuple = ()

    def __post_init__(self):
        if self.variant not in ("trivial", "pm", "explicit"):
            raise ValueError(f"unknown Hodge group variant {self.variant!r}")

    @classmethod
    def trivial(cls):
        return cls("trivial")

    @classmethod
    def plus_minus(cls):
        return cls("pm")

    @classmethod
    def explicit(cls, generators: Sequence[FiniteIsometry]):
        return cls("explicit", tuple(generators))

    def elements(self, D: DiscriminantForm) -> List[FiniteIsometry]:
        ident = FiniteIsometry.identity(D.factors)
        if self.variant == "trivial":
            return [ident]
        if self.variant == "pm":
            return sorted({ident, FiniteIsometry.negation(D.factors)})
        for g in self.generators:
            if not g.preserves(D):
                raise ValueError(f"{g.images} is not an isometry of D_NS")
        return group_closure(self.generators, D.factors)

    def check(self, D: DiscriminantForm, rank_t: int) -> List[str]:
        """Warnings for a group that cannot occur as O_Hodge of a generic T."""
        if self.variant != "explicit":
            return []
        G = self.elements(D)
        out = []
        if not any(g.order() == len(G) for g in G):
            out.append(f"Hodge group of order {len(G)} is not cyclic")
        if rank_t <= 0 or rank_t % euler_phi(len(G)):
            out.append(f"phi(|O_Hodge|) = {euler_phi(len(G))} does not divide rk T = {rank_t}")
        if len(G) >= 3:
            out.append("explicit Hodge group of order >= 3: experimental")
        return out


def epsilon(d: int) -> int:
    if d < 1:
        raise ValueError("d must be >= 1")
    return 1 if d <= 2 else 2


def hodge_stabilizer(G: Sequence[FiniteIsometry], x: DiscElement) -> List[FiniteIsometry]:
    """Elements of G fixing x (the Hodge isometries preserving the twist)."""
    return [g for g in G if g(x) == x]


def tau(stab: Sequence[FiniteIsometry], O_DM: Sequence[FiniteIsometry],
        im_OM: Sequence[FiniteIsometry]) -> int:
    """#(stab \\ O(D_M) / r(O(M)))."""
    return double_coset_count(O_DM, stab, im_OM)


def classify_orientation(M: EvenLattice) -> str:
    """G1 / G2 membership of M where the lattice data decides it, else Unknown."""
    if contains_u_summand(M):
        return G1
    if M.rank == 1:
        m = abs(M.gram[0][0]) // 2
        # O(<2m>) = {+-id}; -id reverses orientation and is trivial on Z/2m iff m = 1
        return G1 if m == 1 else G2
    return UNKNOWN


@dataclass
class OrbitEntry:
    x: DiscElement
    d_check: bool
    M_gram: List[List[int]]
    tau: Optional[int]
    g_class: str

    def as_json(self):
        return {"x": list(self.x), "d_check": self.d_check, "M_gram": self.M_gram,
                "tau": self.tau, "g_class": self.g_class}


@dataclass
class FmCountReport:
    d: int
    mode: str
    orbits: List[OrbitEntry]
    total: Optional[int]
    reason: Optional[str] = None
    warnings: List[str] = field(default_factory=list)

    def recomputed_total(self) -> Optional[int]:
        if any(e.tau is None for e in self.orbits):
            return None
        eps = epsilon(self.d)
        return sum(e.tau * (eps if e.g_class == G2 else 1) for e in self.orbits)

    def as_json(self):
        out = {"d": self.d, "mode": self.mode, "orbits": [e.as_json() for e in self.orbits],
               "total": self.total}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_json(), sort_keys=False)


def _entry(NS, x, d, tau_value, g_class):
    D, _ = discriminant_form(NS)
    M = overlattice(NS, x).M
    return OrbitEntry(x, D.order_of(x) == d, [list(r) for r in M.gram], tau_value, g_class)


def _picard_one_entries(NS, reps, G, d, cap):
    entries = []
    for x in reps:
        ov = overlattice(NS, x)
        M = ov.M
        D_M, _ = discriminant_form(M)
        stab = [ov.transfer(g) for g in hodge_stabilizer(G, x)]
        O_DM = isometry_group(D_M, cap)
        # O(<2m>) = {+-id} acts on D_M through +-id
        im_OM = sorted({FiniteIsometry.identity(D_M.factors), FiniteIsometry.negation(D_M.factors)})
        entries.append(OrbitEntry(x, ov.d == d, [list(r) for r in M.gram],
                                  tau(sorted(set(stab)), O_DM, im_OM), classify_orientation(M)))
    return entries


def count_fm(NS: EvenLattice, d: int, G: Optional[HodgeGroupSpec] = None,
             cap: int = DEFAULT_CAP) -> FmCountReport:
    """Evaluate #FM^d(S) for NS(S) = NS and O_Hodge(T(S)) = G."""
    if d < 1:
        raise ValueError("d must be >= 1")
    p, n = NS.signature
    if p != 1:
        raise BadSignature(f"NS must have signature (1, rank-1), got {NS.signature}")
    G = G or HodgeGroupSpec.plus_minus()
    notes = []
    if NS.rank == 1 and G.variant != "pm":
        notes.append("Picard rank one forces O_Hodge(T) = {+-id}; supplied group ignored")
        G = HodgeGroupSpec.plus_minus()
    D, _ = discriminant_form(NS)
    notes += G.check(D, 22 - NS.rank)
    for msg in notes:
        warnings.warn(msg, HodgeGenericityWarning, stacklevel=2)
    Gel = G.elements(D)
    reps = orbits(Gel, isotropic_elements(D, d, cap))
    eps = epsilon(d)

    def report(mode, entries, total, reason=None):
        rep = FmCountReport(d, mode, entries, total, reason, notes)
        if total is not None and rep.recomputed_total() != total:
            raise InvariantViolation("report total disagrees with its orbit entries")
        return rep

    if NS.rank == 1:
        entries = _picard_one_entries(NS, reps, Gel, d, cap)
        total = sum(e.tau * (eps if e.g_class == G2 else 1) for e in entries)
        n_half = NS.gram[0][0] // 2
        expected = closed_count(n_half, d)
        if total != expected:
            raise InvariantViolation(
                f"generic engine gives {total}, closed formula gives {expected} for n={n_half}, d={d}")
        return report(PICARD_ONE, entries, total)

    if contains_u_summand(NS):
        entries = [_entry(NS, x, d, 1, G1) for x in reps]
        return report(JACOBIAN, entries, len(entries))

    if is_two_elementary(NS):
        # every element has order <= 2, so reps is empty for d >= 3
        entries = [_entry(NS, x, d, 1, IRRELEVANT) for x in reps]
        return report(TWO_ELEMENTARY, entries, len(entries))

    if not reps:
        return report(EMPTY, [], 0)

    singleton = {x: nikulin_singleton(overlattice(NS, x).M) for x in reps}
    if d <= 2 and all(singleton.values()):
        entries = [_entry(NS, x, d, 1, IRRELEVANT) for x in reps]
        return report(GENERAL_SMALL_D, entries, len(entries))

    missing = []
    if not all(singleton.values()):
        missing.append("genus enumeration and the image r(O(M_x)) (Nikulin's criterion fails"
                       " for some M_x)")
    if d >= 3:
        classes = {classify_orientation(overlattice(NS, x).M) for x in reps}
        if UNKNOWN in classes:
            missing.append("the G1/G2 class of M_x (needed since eps(d) = 2)")
    entries = []
    for x in reps:
        ov = overlattice(NS, x)
        entries.append(OrbitEntry(x, ov.d == d, [list(r) for r in ov.M.gram],
                                  1 if singleton[x] else None, classify_orientation(ov.M)
                                  if d >= 3 else IRRELEVANT))
    return FmCountReport(d, UNSUPPORTED, entries, None,
                         "not computable from lattice data: " + "; ".join(missing), notes)


def count_fm_d1(NS: EvenLattice, G: Optional[HodgeGroupSpec] = None,
                cap: int = DEFAULT_CAP) -> int:
    """Untwisted partner count (d = 1)."""
    rep = count_fm(NS, 1, G, cap)
    if rep.total is None:
        raise UnsupportedCase(rep.reason)
    return rep.total
