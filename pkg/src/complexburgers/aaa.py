"""AAA rational approximation and pole tracking from real-line data.

The approximant is kept in barycentric form

    r(z) = sum_j w_j f_j / (z - z_j)  /  sum_j w_j / (z - z_j),

with the support points z_j chosen greedily. The weights are the smallest
right singular vector of the Loewner matrix on the remaining sample points.
Poles are the finite generalized eigenvalues of an arrowhead pencil.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .core import Method, PoleTrajectory, TrajectorySample
from .errors import DegenerateData, EigensolveFailure, EmptyPoleSet, InvalidInput, RankDeficiency


@dataclass(frozen=True)
class BarycentricRational:
    support: np.ndarray
    values: np.ndarray
    weights: np.ndarray
    errors: tuple = field(default=(), repr=False)

    @property
    def degree(self) -> int:
        return len(self.support) - 1

    def __call__(self, z):
        return rational_eval(self, z)


@dataclass(frozen=True)
class PoleResidue:
    pole: complex
    residue: complex


def aaa_fit(points, values, rel_tol: float = 1e-13, max_degree: int = 100) -> BarycentricRational:
    """Greedy AAA fit of ``values`` sampled at ``points``.

    ``errors`` on the result records the max residual after each support
    insertion.
    """
    Z = np.asarray(points, dtype=complex).ravel()
    F = np.asarray(values, dtype=complex).ravel()
    if Z.shape != F.shape:
        raise InvalidInput("points and values differ in length")
    if len(Z) < 2:
        raise InvalidInput("need at least two sample points")
    if not np.all(np.isfinite(F)) or not np.all(np.isfinite(Z)):
        raise InvalidInput("non-finite data")
    if len(np.unique(Z)) != len(Z):
        raise InvalidInput("sample points must be distinct")
    scale = float(np.max(np.abs(F)))
    if np.all(F == F[0]):
        # constant (or identically zero) data: a single support point does it
        return BarycentricRational(Z[:1].copy(), F[:1].copy(), np.ones(1, dtype=complex), (0.0,))
    mask = np.ones(len(Z), dtype=bool)
    R = np.full(len(Z), F.mean())
    sup, errs = [], []
    w = None
    for _ in range(min(max_degree + 1, len(Z) - 1)):
        j = int(np.argmax(np.abs(F - R) * mask))
        sup.append(j)
        mask[j] = False
        zs, fs = Z[sup], F[sup]
        C = 1.0 / (Z[mask, None] - zs[None, :])
        A = (F[mask, None] - fs[None, :]) * C
        try:
            _, _, Vh = np.linalg.svd(A, full_matrices=False)
        except np.linalg.LinAlgError as exc:
            raise RankDeficiency(f"SVD of the Loewner matrix failed: {exc}") from exc
        w = Vh[-1].conj()
        if not np.all(np.isfinite(w)):
            raise RankDeficiency("non-finite weights")
        R = F.copy()
        den = C @ w
        R[mask] = (C @ (w * fs)) / den
        err = float(np.max(np.abs(F - R)))
        errs.append(err)
        if err <= rel_tol * scale:
            break
    return BarycentricRational(Z[sup].copy(), F[sup].copy(), w, tuple(errs))


def rational_eval(r: BarycentricRational, z):
    """Evaluate r at scalar or array ``z``; support points return stored values."""
    zz = np.asarray(z, dtype=complex)
    flat = np.atleast_1d(zz).ravel()
    diff = flat[:, None] - r.support[None, :]
    hit = diff == 0
    diff[hit] = 1.0
    C = 1.0 / diff
    out = (C @ (r.weights * r.values)) / (C @ r.weights)
    rows, cols = np.nonzero(hit)
    out[rows] = r.values[cols]
    if zz.ndim == 0:
        return complex(out[0])
    return out.reshape(zz.shape)


def _pencil_eigs(nodes, weights) -> np.ndarray:
    m = len(nodes)
    E = np.zeros((m + 1, m + 1), dtype=complex)
    E[0, 1:] = weights
    E[1:, 0] = 1.0
    E[1:, 1:] = np.diag(nodes)
    B = np.eye(m + 1, dtype=complex)
    B[0, 0] = 0.0
    try:
        ev = scipy.linalg.eigvals(E, B)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise EigensolveFailure(str(exc)) from exc
    return ev[np.isfinite(ev) & (np.abs(ev) < 1e12)]


def poles_residues(r: BarycentricRational) -> list[PoleResidue]:
    """Poles (pencil eigenvalues) with residues N(p)/D'(p)."""
    if r.degree < 1:
        raise InvalidInput("a degree-0 approximant has no poles")
    out = []
    for p in _pencil_eigs(r.support, r.weights):
        d = p - r.support
        if np.any(d == 0):
            continue
        num = np.sum(r.weights * r.values / d)
        dden = -np.sum(r.weights / d**2)
        out.append(PoleResidue(complex(p), complex(num / dden)))
    return out


def zeros(r: BarycentricRational) -> np.ndarray:
    """Zeros of r: the pencil with weights w_j f_j."""
    if r.degree < 1:
        return np.zeros(0, dtype=complex)
    return _pencil_eigs(r.support, r.weights * r.values)


def aaa_track(snapshots, seed: complex, residue_floor: float = 1e-4, rel_tol: float = 1e-11,
              max_degree: int = 100) -> PoleTrajectory:
    """Backtrack one pole through time from the last snapshot.

    Each snapshot is fitted separately; poles with |residue| below
    ``residue_floor`` are discarded, and the pole at each earlier time is the
    surviving one closest to the pole found at the following time (ties go to
    the larger |residue|).
    """
    snaps = sorted(snapshots, key=lambda s: s.t)
    if not snaps:
        raise InvalidInput("no snapshots")
    samples = []
    ref = complex(seed)
    note = ""
    for snap in reversed(snaps):
        if snap.t == 0:
            continue
        r = aaa_fit(snap.nodes, snap.values, rel_tol, max_degree)
        try:
            cands = [pr for pr in poles_residues(r) if abs(pr.residue) >= residue_floor] if r.degree else []
            if not cands:
                raise EmptyPoleSet(f"no poles above the residue floor at t={snap.t}")
        except (EmptyPoleSet, EigensolveFailure) as exc:
            note = f"truncated: {exc}"
            break
        best = min(cands, key=lambda pr: (round(abs(pr.pole - ref), 12), -abs(pr.residue)))
        samples.append(TrajectorySample(snap.t, best.pole, best.residue, True))
        ref = best.pole
    return PoleTrajectory(Method.AAA, samples, note)


def fit_snapshot(snap, rel_tol: float = 1e-13, max_degree: int = 100) -> BarycentricRational:
    return aaa_fit(snap.nodes, snap.values, rel_tol, max_degree)


__all__ = ["BarycentricRational", "PoleResidue", "aaa_fit", "rational_eval", "poles_residues",
           "zeros", "aaa_track", "fit_snapshot", "DegenerateData"]
