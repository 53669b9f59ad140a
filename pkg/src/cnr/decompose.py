"""Splitting A = P + D with P positive semidefinite and D trace-zero diagonal.

Such a split exists exactly when the dual of the range-minimum problem has a
nonnegative optimum: the dual of  min normalized_trace(S B)  over correlation
matrices B (S the Hermitian part of A) is  max mean(y)  over real diagonals y
with S - diag(y) PSD, and strong duality holds (B = I is strictly feasible).
A nonnegative dual optimum yields the split directly:

    P = S - diag(y) + mean(y) I,     D = diag(y) - mean(y) I + i Im(A),

where the (diagonal, trace-zero) imaginary part of A rides along in D.  The
rank-one factors of P give a sum-of-squares certificate for the group-algebra
element attached to A: spectral factors q_k with P = sum_k q_k q_k*, read as
squares of linear words in the generators, witness nonnegativity modulo
trace-zero diagonals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .crange import SolveConfig, SupportResult, polish_dual
from .errors import NotDecomposableError

MARGIN_TOL = 1e-9
RANK_CUT = 1e-10
OFFDIAG_TOL = 1e-8
TRACE_TOL = 1e-9


@dataclass
class NonnegativityResult:
    """Certified verdict on whether the range lies in [0, inf)."""

    nonnegative: bool
    margin: float  # certified lower bound on the minimum of the range
    attained: float  # value attained by the witness correlation matrix
    support: SupportResult

    @property
    def flags(self) -> tuple[str, ...]:
        return self.support.flags


@dataclass
class Decomposition:
    """A = P + D with P Hermitian PSD and D diagonal, trace zero."""

    P: np.ndarray
    D: np.ndarray
    margin: float
    dual_y: np.ndarray
    flags: tuple[str, ...] = ()


@dataclass
class SosCertificate:
    """Vectors q_k with sum_k q_k q_k* = P and the diagonal shift D.

    Each q_k encodes the linear word built from the generators with the
    conjugated entries of q_k as coefficients; the certificate asserts that
    the element attached to A equals a sum of squares of those words, up to
    a trace-zero diagonal."""

    coeffs: list[np.ndarray]
    diagonal: np.ndarray
    residual: float

    @property
    def n(self) -> int:
        return len(self.diagonal)


@dataclass
class VerificationReport:
    valid: bool
    offdiag_max: float
    trace_abs: float
    entry_max: float


def nonnegativity_test(a, cfg: SolveConfig | None = None) -> NonnegativityResult:
    """Screen the imaginary part, then certify the sign of the range minimum.

    margin is the dual lower bound on the minimum; the verdict is
    margin >= -1e-9.  Raises RangeNotRealError when the range is not real.
    """
    res = _min_support(a, cfg)
    margin = -float(np.mean(res.dual_y))
    return NonnegativityResult(
        nonnegative=margin >= -MARGIN_TOL,
        margin=margin,
        attained=res.minimum,
        support=res,
    )


def _min_support(a, cfg: SolveConfig | None) -> SupportResult:
    from .crange import min_real_value

    return min_real_value(a, cfg)


def decompose(a, cfg: SolveConfig | None = None) -> Decomposition:
    """Construct the PSD + trace-zero-diagonal split, or prove none exists.

    The dual diagonal comes from the same solve that certifies the range
    minimum (warm start y_i from the slackness candidate), then is tightened
    by the barrier polish so that P inherits the full certified margin.
    """
    a = matcore.as_matrix(a)
    nn = nonnegativity_test(a, cfg)
    cfg = cfg or SolveConfig()
    s, k = matcore.hermitian_parts(a)
    if not nn.nonnegative:
        raise NotDecomposableError(
            f"range minimum is certified below zero (margin {nn.margin:.3e})",
            witness=nn.support.correlation(),
            attained=nn.attained,
            margin=nn.margin,
        )
    # feasible dual for S - diag(y) >= 0, mean(y) = certified lower bound
    y = -np.asarray(nn.support.dual_y, dtype=float)
    if nn.attained - float(np.mean(y)) > cfg.tol / 4.0:
        y = -polish_dual(-s, -y, -nn.attained, stop_tol=cfg.tol / 4.0)
    lam = matcore.hermitian_eigs(s - np.diag(y)).eigenvalues[0]
    if lam < 0.0:
        y = y + lam  # uniform shift keeps S - diag(y) exactly PSD
    mean_y = float(np.mean(y))
    p = s - np.diag(y) + mean_y * np.eye(len(y))
    p = (p + p.conj().T) / 2.0
    d = np.diag(y - mean_y).astype(np.complex128) + 1j * np.diag(np.diag(k))
    return Decomposition(P=p, D=d, margin=float(np.mean(y)), dual_y=y, flags=nn.flags)


def sos_certificate(dec: Decomposition) -> SosCertificate:
    """Spectral rank-one factorization of P; eigenvalues below 1e-10 * ||P||
    are dropped, keeping the certificate at numerical rank."""
    eig = matcore.hermitian_eigs(dec.P)
    lam = eig.eigenvalues
    cut = RANK_CUT * max(float(lam[-1]), 0.0)
    coeffs = [
        np.sqrt(lam[j]) * eig.eigenvectors[:, j]
        for j in range(len(lam))
        if lam[j] > cut and lam[j] > 0.0
    ]
    rebuilt = sum((np.outer(q, q.conj()) for q in coeffs), start=np.zeros_like(dec.P))
    residual = matcore.frobenius(dec.P - rebuilt)
    return SosCertificate(coeffs=coeffs, diagonal=np.diag(dec.D).copy(), residual=float(residual))


def verify_certificate(a, cert: SosCertificate) -> VerificationReport:
    """Check that A minus the rank-one sum is a trace-zero diagonal.

    That is exactly the condition under which the certificate's squares
    reproduce the element attached to A (diagonal trace-zero shifts do not
    change it).  The report also carries the entrywise residual against the
    certificate's own diagonal."""
    a = matcore.as_matrix(a)
    n = a.shape[0]
    rebuilt = sum((np.outer(q, q.conj()) for q in cert.coeffs), start=np.zeros_like(a))
    z = a - rebuilt
    off = z - np.diag(np.diag(z))
    offdiag_max = float(np.max(np.abs(off))) if n > 1 else 0.0
    trace_abs = float(abs(np.trace(z)))
    r = z - np.diag(np.asarray(cert.diagonal))
    entry_max = float(np.max(np.abs(r)))
    return VerificationReport(
        valid=offdiag_max <= OFFDIAG_TOL and trace_abs <= TRACE_TOL,
        offdiag_max=offdiag_max,
        trace_abs=trace_abs,
        entry_max=entry_max,
    )


def certificate_to_obj(cert: SosCertificate) -> dict:
    """JSON-ready form: {"n": ..., "q": [[{re, im}, ...], ...], "D": [...],
    "residual": ...}."""
    return {
        "n": cert.n,
        "q": [[{"re": float(x.real), "im": float(x.imag)} for x in q] for q in cert.coeffs],
        "D": [{"re": float(x.real), "im": float(x.imag)} for x in cert.diagonal],
        "residual": float(cert.residual),
    }


def certificate_from_obj(obj: dict) -> SosCertificate:
    n = int(obj["n"])
    if n < 1:
        raise ValueError("certificate dimension must be positive")
    coeffs = []
    for q in obj["q"]:
        if len(q) != n:
            raise ValueError("certificate vector length does not match n")
        coeffs.append(np.array([complex(x["re"], x["im"]) for x in q]))
    diag = np.array([complex(x["re"], x["im"]) for x in obj["D"]])
    if len(diag) != n:
        raise ValueError("certificate diagonal length does not match n")
    if not all(math.isfinite(v) for q in coeffs for x in q for v in (x.real, x.imag)):
        raise ValueError("certificate entries must be finite")
    return SosCertificate(coeffs=coeffs, diagonal=diag, residual=float(obj.get("residual", 0.0)))
