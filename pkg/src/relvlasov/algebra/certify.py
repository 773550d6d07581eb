"""Machine verification of the vector-field algebra.

Every identity is checked in exact rational arithmetic; an identity is
PROVED only when its residual reduces to the literal zero expression or
zero operator.  FAILED entries carry the nonzero residual and indicate
an implementation bug, never a tolerance issue.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .expr import Expr, W as w_, dot_xv
from .operators import FieldOp, derivation
from . import weights as wt


@dataclass
class IdentityResult:
    identity_id: str
    block: str
    status: str  # "PROVED" | "FAILED"
    detail: str = ""
    residual_terms: list = field(default_factory=list)


@dataclass
class CertificateReport:
    results: list
    elapsed_seconds: float

    @property
    def all_proved(self):
        return all(r.status == "PROVED" for r in self.results)

    def counts(self):
        out = {}
        for r in self.results:
            blk = out.setdefault(r.block, {"PROVED": 0, "FAILED": 0})
            blk[r.status] += 1
        return out

    def to_json(self):
        return json.dumps(
            {
                "all_proved": self.all_proved,
                "elapsed_seconds": self.elapsed_seconds,
                "identities": [
                    {
                        "identity_id": r.identity_id,
                        "block": r.block,
                        "status": r.status,
                        "detail": r.detail,
                        "residual_terms": r.residual_terms,
                    }
                    for r in self.results
                ],
            },
            indent=2,
        )

    def render_table(self):
        lines = []
        width = max(len(r.identity_id) for r in self.results) + 2
        current = None
        for r in self.results:
            if r.block != current:
                current = r.block
                lines.append(f"-- {current} " + "-" * max(0, 60 - len(current)))
            row = f"  {r.identity_id:<{width}} {r.status}"
            if r.detail:
                row += f"   {r.detail}"
            lines.append(row)
        counts = self.counts()
        total = sum(v["PROVED"] + v["FAILED"] for v in counts.values())
        proved = sum(v["PROVED"] for v in counts.values())
        lines.append("-" * 64)
        lines.append(
            f"  {proved}/{total} PROVED in {self.elapsed_seconds:.2f} s"
            + ("" if proved == total else "   *** FAILURES PRESENT ***")
        )
        return "\n".join(lines)


def _expr_result(identity_id, block, residual: Expr, detail="") -> IdentityResult:
    if residual.is_zero():
        return IdentityResult(identity_id, block, "PROVED", detail)
    return IdentityResult(
        identity_id, block, "FAILED", detail, residual.residual_terms()
    )


def _op_result(identity_id, block, residual: FieldOp, detail="") -> IdentityResult:
    if residual.is_zero():
        return IdentityResult(identity_id, block, "PROVED", detail)
    return IdentityResult(
        identity_id, block, "FAILED", detail, residual.residual_terms()
    )


# ------------------------------------------------------------------ blocks

def transport_annihilation_block():
    """T(w) = 0 for the 11 weights of k0 and for the Morawetz-type weight."""
    T = wt.transport()
    results = []
    for wid in wt.WEIGHT_IDS:
        results.append(
            _expr_result(f"T({wid})=0", "transport-annihilation", T.apply(wt.weight(wid)))
        )
    results.append(
        _expr_result("T(morawetz)=0", "transport-annihilation", T.apply(wt.morawetz()))
    )
    return results


def lift_membership_block():
    """Zhat(v0*w) lies in +-v0*k0 U {0} for every Zhat in the commutation set;
    when w is in k (no z0k), the image stays in +-v0*k U {0}."""
    fields = wt.commutation_fields()
    candidates = [(wid, w_ * wt.weight(wid)) for wid in wt.WEIGHT_IDS]
    results = []
    for fname, op in fields.items():
        for wid in wt.WEIGHT_IDS:
            img = op.apply(w_ * wt.weight(wid))
            ident = f"{fname}(v0*{wid})"
            if img.is_zero():
                results.append(
                    IdentityResult(ident, "lift-membership", "PROVED", "-> 0")
                )
                continue
            match = None
            for cid, cexpr in candidates:
                if img.equals(cexpr):
                    match = f"+v0*{cid}"
                    matched_id = cid
                    break
                if img.equals(-cexpr):
                    match = f"-v0*{cid}"
                    matched_id = cid
                    break
            if match is None:
                results.append(
                    IdentityResult(
                        ident,
                        "lift-membership",
                        "FAILED",
                        "no match in +-v0*k0 U {0}",
                        img.residual_terms(),
                    )
                )
                continue
            # closure of the boost-free subset k
            if wid in wt.K_IDS and matched_id not in wt.K_IDS:
                results.append(
                    IdentityResult(
                        ident,
                        "lift-membership",
                        "FAILED",
                        f"left k: -> {match}",
                        img.residual_terms(),
                    )
                )
            else:
                results.append(
                    IdentityResult(ident, "lift-membership", "PROVED", f"-> {match}")
                )
    return results


def commutator_block():
    """[T, Zhat] = 0 for translations and lifted rotations; [T,S] = T; [T,S_v] = -T."""
    T = wt.transport()
    results = []
    for name in ("d_t", "d_1", "d_2", "d_3"):
        var = {"d_t": "t", "d_1": "x1", "d_2": "x2", "d_3": "x3"}[name]
        results.append(
            _op_result(f"[T,{name}]=0", "commutators", T.commutator(derivation(var)))
        )
    for i, j in wt.ROT_PAIRS:
        results.append(
            _op_result(
                f"[T,Ohat{i}{j}]=0",
                "commutators",
                T.commutator(wt.lifted_rotation(i, j)),
            )
        )
    results.append(
        _op_result("[T,S]=T", "commutators", T.commutator(wt.scaling()) - T)
    )
    results.append(
        _op_result(
            "[T,S_v]=-T", "commutators", T.commutator(wt.velocity_scaling()) + T
        )
    )
    return results


def null_decomposition_block():
    """The three cleared-denominator decompositions of v^1 d_2 - v^2 d_1 into
    rotations plus weight-multiplied translations."""
    v1, v2 = Expr.var("v1"), Expr.var("v2")
    x1, x2, x3 = (Expr.var(f"x{i}") for i in (1, 2, 3))
    d1, d2, d3 = derivation("x1"), derivation("x2"), derivation("x3")
    Y12 = d2.scale(v1) - d1.scale(v2)  # v^1 d_2 - v^2 d_1 (unnormalized)
    O12 = wt.rotation(1, 2)
    O13 = wt.rotation(1, 3)
    O23 = wt.rotation(2, 3)
    v0z12 = w_ * wt.weight("z12")  # = x^1 v^2 - x^2 v^1

    results = []
    res = Y12.scale(x3) + O23.scale(v1) - O13.scale(v2) + d3.scale(v0z12)
    results.append(_op_result("null-decomp[x3]", "null-decomposition", res))
    res = Y12.scale(x1) - O12.scale(v1) + d1.scale(v0z12)
    results.append(_op_result("null-decomp[x1]", "null-decomposition", res))
    res = Y12.scale(x2) - O12.scale(v2) + d2.scale(v0z12)
    results.append(_op_result("null-decomp[x2]", "null-decomposition", res))
    return results


def radial_recovery_block():
    """Cleared-denominator identity expressing v0(t^2-r^2) d_t through
    s, the scaling field, transport and the angular remainder, with
    v^r = (x.v)/r:

        v0 (t^2-r^2) d_t = v0 t s d_t + r v^r S - r^2 T
                           + r^2 (v^i d_i - v^r d_r).
    """
    T = wt.transport()
    S = wt.scaling()
    dt = derivation("t")
    u = Expr.var("u")
    r2 = u * u
    s = wt.weight("s")
    xv = dot_xv()  # r * v^r
    vr_dr = wt.radial_derivative().scale(xv / u)  # v^r d_r
    v_di = FieldOp(
        {f"x{i}": Expr.var(f"v{i}") for i in (1, 2, 3)}
    )  # v^i d_i
    lhs = dt.scale(w_ * (t_sq_minus_r2()))
    rhs = (
        dt.scale(w_ * Expr.var("t") * s)
        + S.scale(xv)
        - T.scale(r2)
        + (v_di - vr_dr).scale(r2)
    )
    return [_op_result("radial-recovery", "radial-recovery", lhs - rhs)]


def t_sq_minus_r2() -> Expr:
    t = Expr.var("t")
    u = Expr.var("u")
    return t * t - u * u


def run_catalog() -> CertificateReport:
    """Run every identity block in fixed order and assemble the certificate."""
    start = time.perf_counter()
    results = []
    results += transport_annihilation_block()
    results += lift_membership_block()
    results += commutator_block()
    results += null_decomposition_block()
    results += radial_recovery_block()
    return CertificateReport(results, time.perf_counter() - start)
