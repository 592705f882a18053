"""Energy bounds and the metric-tapered symmetry defect.

The central quantity is the minorant-weighted gradient energy

    E(u)^2 = sum over canonical edges of min(1/q(o), 1/q(t)) a(e) |du(e)|^2

which, under the self-adjointness conditions, is controlled by the norms of
u and Hu alone.  The tapered symmetry defect weights the pointwise defect
(Hu) conj(v) - u conj(Hv) by a ramp that vanishes beyond metric radius s
from a base vertex; its size is controlled by E(u), E(v) and 1/s, and it
recovers the plain defect (which vanishes for finitely supported inputs) as
s grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .criteria import lipschitz_best_constant, positive_part
from .errors import InputError, MinorantViolationError
from .functions import VertexFunction, norm_w
from .graphs import vertex_sort_key
from .metric import AnchorFunction, WITH_Q
from .operators import differential, schrodinger_apply, _incident_edge_keys, _one_hop_closure

SLACK_TOL = 1e-10


def _require_real(phi: VertexFunction, name="phi"):
    for x, v in phi.items():
        if isinstance(v, complex):
            if v.imag != 0:
                raise InputError(f"{name} must be real-valued; {name}({x!r}) = {v!r}")
        elif not isinstance(v, (int, float)):
            raise InputError(f"{name} must be real-valued; {name}({x!r}) = {v!r}")


def _require_minorant(g, region, context):
    bad = []
    for x in region:
        rec = g.vertex(x)
        if rec.potential < -rec.minorant:
            bad.append((x, rec.potential + rec.minorant))
    if bad:
        raise MinorantViolationError(
            f"{context}: W >= -q fails at {len(bad)} vertex(es), first at "
            f"{bad[0][0]!r} by {-bad[0][1]}", violations=bad)


def minorant_weighted_energy(g, u: VertexFunction):
    """The squared energy and its per-edge contributions.

    Returns ``(value, contributions)`` where contributions maps each
    normalized edge to min(1/q(o), 1/q(t)) a(e) |du(e)|^2.
    """
    du = differential(g, u)
    contributions = {}
    total = 0.0
    for k, v in du.items():
        ro = g.vertex(k.origin)
        rt = g.vertex(k.terminus)
        qinv = 1.0 / max(ro.minorant, rt.minorant)
        term = qinv * g.edge_data(k).weight * abs(v) ** 2
        contributions[tuple(k)] = term
        total += term
    return total, contributions


def weighted_gradient_energy(g, u: VertexFunction, phi: VertexFunction) -> float:
    """sqrt of sum over canonical edges of a(e) |du(e)|^2 mean(phi^2)(e)."""
    _require_real(phi)
    du = differential(g, u)
    total = 0.0
    for k, v in du.items():
        avg = (phi(k.origin) ** 2 + phi(k.terminus) ** 2) / 2
        total += g.edge_data(k).weight * abs(v) ** 2 * avg
    return math.sqrt(total)


@dataclass
class GradientEnergyReport:
    energy_sq: float  # left-hand side
    operator_term: float  # |(phi^2 Hu, u)|
    minorant_term: float  # (phi^2 q u, u)
    commutator_term: float  # 2 I (sum a |dphi|^2 |phased-mean(conj u)|^2)^(1/2)
    slack: float
    passed: bool

    @property
    def bound(self) -> float:
        return self.operator_term + self.minorant_term + self.commutator_term


def gradient_energy_inequality(g, u: VertexFunction, phi: VertexFunction) -> GradientEnergyReport:
    """Check the localization inequality for the phi-weighted gradient energy.

    Requires W >= -q on the support of phi and its one-hop neighborhood,
    since the minorant term absorbs the potential there.
    """
    _require_real(phi)
    region = _one_hop_closure(g, [phi.support])
    _require_minorant(g, region, "gradient energy inequality")

    energy = weighted_gradient_energy(g, u, phi)
    energy_sq = energy ** 2

    Hu = schrodinger_apply(g, u)
    op_term = 0
    minorant_term = 0.0
    for x in sorted(set(Hu.support) | set(u.support) | set(phi.support), key=vertex_sort_key):
        rec = g.vertex(x)
        phi2 = phi(x) ** 2
        if phi2 == 0:
            continue
        op_term = op_term + rec.weight * phi2 * Hu(x) * u(x).conjugate()
        minorant_term += rec.weight * phi2 * rec.minorant * abs(u(x)) ** 2
    op_term = abs(op_term)

    cross = 0.0
    for k in _incident_edge_keys(g, [phi.support]):
        data = g.edge_data(k)
        dphi = phi(k[1]) - phi(k[0])
        if dphi == 0:
            continue
        phased = (data.phase * u(k[1]).conjugate() + u(k[0]).conjugate()) / 2
        cross += data.weight * abs(dphi) ** 2 * abs(phased) ** 2
    commutator_term = 2.0 * energy * math.sqrt(cross)

    bound = op_term + minorant_term + commutator_term
    slack = bound - energy_sq
    scale = max(energy_sq, bound, 1.0)
    return GradientEnergyReport(
        energy_sq=energy_sq,
        operator_term=op_term,
        minorant_term=minorant_term,
        commutator_term=commutator_term,
        slack=slack,
        passed=slack >= -SLACK_TOL * scale,
    )


@dataclass
class EnergyBreakdown:
    energy_sq: float  # left-hand side
    bound: float  # 2 ((2 C^2 N + 1) |u|^2 + |Hu| |u|)
    lipschitz_constant: float
    degree_bound: int
    contributions: dict  # normalized edge -> per-edge share of the energy
    slack: float
    passed: bool


def energy_bound_check(g, u: VertexFunction, *, lipschitz_constant=None,
                       degree_bound=None) -> EnergyBreakdown:
    """Check the minorant-weighted energy against the operator-norm bound.

    The constants must be globally valid: the degree bound defaults to the
    graph's declared bound and the Lipschitz constant, when omitted, is the
    measured best constant (finite graphs only, where it is global).
    Refuses regions where W >= -q fails, since the bound presumes it.
    """
    region = _one_hop_closure(g, [u.support])
    _require_minorant(g, region, "energy bound")

    if degree_bound is None:
        degree_bound = g.degree_bound if g.degree_bound is not None else (
            max(g.degree(x) for x in g.vertices()) if g.is_finite else None)
    if degree_bound is None:
        raise InputError("a degree bound is required for graphs without a declared one")
    if lipschitz_constant is None:
        if not g.is_finite:
            raise InputError("a Lipschitz constant is required on infinite graphs")
        lipschitz_constant = lipschitz_best_constant(g, g.vertices()).constant

    energy_sq, contributions = minorant_weighted_energy(g, u)
    nu = norm_w(g, u)
    nHu = norm_w(g, schrodinger_apply(g, u))
    bound = 2.0 * ((2.0 * lipschitz_constant ** 2 * degree_bound + 1.0) * nu ** 2 + nHu * nu)
    slack = bound - energy_sq
    scale = max(energy_sq, bound, 1.0)
    return EnergyBreakdown(
        energy_sq=energy_sq,
        bound=bound,
        lipschitz_constant=lipschitz_constant,
        degree_bound=degree_bound,
        contributions=contributions,
        slack=slack,
        passed=slack >= -SLACK_TOL * scale,
    )


def anchor(g, x0, x, *, budget=None) -> float:
    """Weighted-metric distance from the base vertex x0 (the anchor profile)."""
    return AnchorFunction(g, x0, q_mode=WITH_Q, budget=budget)(x)


def tapered_symmetry_defect(g, u: VertexFunction, v: VertexFunction, x0, s,
                            *, budget=None, anchor_fn: Optional[AnchorFunction] = None):
    """The ramp-weighted symmetry defect at taper radius s.

    Sums (1 - P(x)/s)^+ ((Hu)(x) conj(v(x)) - u(x) conj((Hv)(x))) w(x) in
    ascending vertex order, with P the metric distance from x0.  The sum is
    finite because u and v are; vertices outside metric radius s contribute
    nothing.
    """
    if not s > 0:
        raise InputError(f"taper radius must be positive, got {s}")
    if anchor_fn is None:
        anchor_fn = AnchorFunction(g, x0, q_mode=WITH_Q, budget=budget)
    Hu = schrodinger_apply(g, u)
    Hv = schrodinger_apply(g, v)
    region = sorted(set(Hu.support) | set(u.support) | set(Hv.support) | set(v.support),
                    key=vertex_sort_key)
    total = 0
    for x in region:
        defect = Hu(x) * v(x).conjugate() - u(x) * Hv(x).conjugate()
        if defect == 0:
            continue
        ramp = positive_part(1.0 - anchor_fn(x) / s)
        if ramp == 0:
            continue
        total = total + ramp * defect * g.vertex(x).weight
    return total


@dataclass
class TaperedDefectReport:
    value: complex
    bound: float  # sqrt(N)/s (|v| E(u) + |u| E(v))
    slack: float
    passed: bool


def tapered_defect_bound(g, u: VertexFunction, v: VertexFunction, x0, s, *,
                         budget=None, degree_bound=None,
                         anchor_fn: Optional[AnchorFunction] = None) -> TaperedDefectReport:
    """Check the tapered defect against its energy bound at radius s."""
    if degree_bound is None:
        degree_bound = g.degree_bound if g.degree_bound is not None else (
            max(g.degree(x) for x in g.vertices()) if g.is_finite else None)
    if degree_bound is None:
        raise InputError("a degree bound is required for graphs without a declared one")
    value = tapered_symmetry_defect(g, u, v, x0, s, budget=budget, anchor_fn=anchor_fn)
    eu = math.sqrt(minorant_weighted_energy(g, u)[0])
    ev = math.sqrt(minorant_weighted_energy(g, v)[0])
    bound = math.sqrt(degree_bound) / s * (norm_w(g, v) * eu + norm_w(g, u) * ev)
    slack = bound - abs(value)
    scale = max(abs(value), bound, 1.0)
    return TaperedDefectReport(
        value=value,
        bound=bound,
        slack=slack,
        passed=slack >= -SLACK_TOL * scale,
    )
