"""Truncated half-line moment problem: feasibility, atomic-measure recovery,
and the separability decision it induces for diagonal restricted-Dicke states.

A coefficient sequence (p_0..p_n) is feasible exactly when the two moment
Hankel matrices (p_{k+l}) and (p_{k+l+1}) are positive semidefinite; the
measure may place an extra nonnegative mass M on the top moment p_n.  A
feasible sequence is certified constructively: Gauss-quadrature nodes and
weights are extracted from the moment sequence through the classical
three-term recurrence (Chebyshev algorithm -> Jacobi matrix -> eigenvalues),
preferring the fewest atoms that reproduce every moment within tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ppt import DEFAULT_PSD_TOL, MARGINAL, NOT_PSD, PsdCheck, is_m_ppt, is_psd
from .states import StateSpec

DEFAULT_RESIDUAL_TOL = 1e-9

# Relative cutoff: a three-term-recurrence coefficient this far below the
# running scale is treated as the exact zero of a finitely-atomic measure.
RANK_TOL = 1e-9


class RecoveryError(RuntimeError):
    """Conditioning prevented recovery of a representing measure."""


def moment_hankels(p) -> tuple[np.ndarray, np.ndarray]:
    """The two Hankel matrices (p_{k+l}), size floor(n/2)+1, and (p_{k+l+1}),
    size floor((n-1)/2)+1, whose joint PSD-ness decides feasibility."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or len(p) == 0:
        raise ValueError("expected a nonempty 1-d coefficient sequence")
    n = len(p) - 1
    n0 = n // 2
    n1 = (n - 1) // 2
    even_idx = np.arange(n0 + 1)
    h_even = p[even_idx[:, None] + even_idx[None, :]]
    if n1 < 0:
        h_odd = np.zeros((0, 0))
    else:
        odd_idx = np.arange(n1 + 1)
        h_odd = p[odd_idx[:, None] + odd_idx[None, :] + 1]
    return h_even, h_odd


@dataclass(frozen=True)
class MomentCheck:
    verdict: str  # "yes" | "no" | "marginal"
    strict: bool  # both Hankels strictly positive definite
    even: PsdCheck
    odd: PsdCheck


def is_generalized_moment_solution(p, tol: float = DEFAULT_PSD_TOL) -> MomentCheck:
    h_even, h_odd = moment_hankels(p)
    even = is_psd(h_even, tol)
    odd = is_psd(h_odd, tol)
    statuses = {even.status, odd.status}
    if NOT_PSD in statuses:
        verdict = "no"
    elif MARGINAL in statuses:
        verdict = "marginal"
    else:
        verdict = "yes"

    def _strict(chk: PsdCheck) -> bool:
        if chk.lam_min is None:
            return True
        return chk.lam_min > tol * max(1.0, chk.lam_max)

    return MomentCheck(verdict, _strict(even) and _strict(odd), even, odd)


@dataclass(frozen=True)
class MeasureAtoms:
    """Finitely-atomic measure on [0, inf) plus a mass M on the top moment."""

    atoms: tuple[tuple[float, float], ...]  # (node, weight), weights > 0
    top_mass: float
    moment_residual: float

    def moments(self, count: int) -> np.ndarray:
        """First `count` raw moments of the measure (top mass not included)."""
        out = np.zeros(count)
        for t, w in self.atoms:
            out += w * t ** np.arange(count)
        return out

    def reproduced(self, n: int) -> np.ndarray:
        """Moments p_0..p_n this measure encodes, with M added to p_n."""
        out = self.moments(n + 1)
        out[n] += self.top_mass
        return out


def _recurrence_from_moments(mom: np.ndarray, K: int):
    """Three-term recurrence coefficients (alphas, betas) of the orthogonal
    polynomials of the measure behind `mom`, via the Chebyshev algorithm.

    Returns up to K coefficient pairs with betas[0] = mom[0]; stops early at
    the numerical rank of the measure (vanishing squared norm).  Requires
    len(mom) >= 2K.
    """
    L = len(mom) - 1
    if 2 * K - 1 > L:
        raise ValueError("not enough moments for the requested recurrence length")
    if K == 0 or mom[0] <= 0:
        return np.zeros(0), np.zeros(0)
    alphas = [mom[1] / mom[0]]
    betas = [mom[0]]
    sig_km2 = np.zeros(L + 2)
    sig_km1 = np.concatenate([mom.astype(float), [0.0]])
    for k in range(1, K):
        sig_k = np.zeros(L + 2)
        for l in range(k, 2 * K - k):
            sig_k[l] = (
                sig_km1[l + 1] - alphas[k - 1] * sig_km1[l] - betas[k - 1] * sig_km2[l]
            )
        norm_sq = sig_k[k]
        scale = max(1.0, max(a * a for a in alphas), max(betas[1:], default=0.0))
        if not np.isfinite(norm_sq) or norm_sq <= RANK_TOL * scale * sig_km1[k - 1]:
            break
        betas.append(norm_sq / sig_km1[k - 1])
        alphas.append(sig_k[k + 1] / sig_k[k] - sig_km1[k] / sig_km1[k - 1])
        sig_km2, sig_km1 = sig_km1, sig_k
    return np.array(alphas), np.array(betas)


def _gauss_rule(mom: np.ndarray, q: int):
    """Gauss nodes/weights for the measure behind `mom`, at most q points.

    Nodes are Jacobi-matrix eigenvalues; weights are the squared first
    eigenvector components scaled by the total mass.
    """
    alphas, betas = _recurrence_from_moments(mom, q)
    r = len(alphas)
    if r == 0:
        return np.zeros(0), np.zeros(0)
    J = np.diag(alphas)
    if r > 1:
        off = np.sqrt(betas[1:])
        J += np.diag(off, 1) + np.diag(off, -1)
    nodes, vecs = np.linalg.eigh(J)
    weights = betas[0] * vecs[0, :] ** 2
    return nodes, weights


def _refit_weights(nodes: np.ndarray, p: np.ndarray) -> np.ndarray | None:
    """Least-squares weights on the Vandermonde system over the exact moments
    p_0..p_{n-1}; returns None unless strictly positive."""
    n = len(p) - 1
    if n < 1 or len(nodes) == 0:
        return None
    V = nodes[None, :] ** np.arange(n)[:, None]
    weights, *_ = np.linalg.lstsq(V, p[:n], rcond=None)
    if np.any(weights <= 0):
        return None
    return weights


def _clean_atoms(nodes: np.ndarray, weights: np.ndarray, scale: float):
    """Clip slightly-negative nodes to 0, drop negligible weights, merge
    duplicates; returns None if a node is decisively negative."""
    node_clip = 1e-8 * (1.0 + float(np.max(np.abs(nodes), initial=0.0)))
    merged: dict[float, float] = {}
    for t, w in zip(nodes, weights):
        if w <= 1e-12 * max(1.0, scale):
            continue
        if t < -node_clip:
            return None
        t = max(float(t), 0.0)
        merged[t] = merged.get(t, 0.0) + float(w)
    return sorted(merged.items())


def _evaluate_candidate(atom_list, p: np.ndarray, bound: float) -> MeasureAtoms | None:
    """Check an atom list against the full sequence; absorb the top-moment
    surplus into M when nonnegative."""
    n = len(p) - 1
    candidate = MeasureAtoms(tuple(atom_list), 0.0, 0.0)
    mom = candidate.moments(n + 1)
    top_mass = p[n] - mom[n]
    if top_mass < -bound:
        return None
    if top_mass <= bound:
        top_mass = 0.0
    reproduced = mom.copy()
    reproduced[n] += top_mass
    residual = float(np.max(np.abs(reproduced - p), initial=0.0))
    if residual > bound:
        return None
    return MeasureAtoms(tuple(atom_list), float(top_mass), residual)


def recover_atomic_measure(p, tol: float = DEFAULT_RESIDUAL_TOL) -> MeasureAtoms:
    """Atomic measure (plus top mass) reproducing a feasible moment sequence.

    Candidates are tried in a fixed order and the first one meeting the
    residual bound wins: for even-length data, a rule with one node pinned
    at 0 built from the shifted sequence (p_1, ..., p_n), which matches all
    moments exactly whenever possible; then plain Gauss rules of increasing
    size with the surplus on the top moment.  Raises RecoveryError when no
    candidate meets the bound (the feasibility verdict is unaffected).
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or len(p) == 0:
        raise ValueError("expected a nonempty 1-d coefficient sequence")
    n = len(p) - 1
    scale = float(np.max(np.abs(p), initial=0.0))
    if scale == 0.0:
        return MeasureAtoms((), 0.0, 0.0)
    bound = tol * scale

    candidates = []
    if n >= 2 and n % 2 == 0:
        candidates.append(("radau", n // 2))
    for r in range((n + 1) // 2 + 1):
        candidates.append(("gauss", r))

    for kind, q in candidates:
        if kind == "radau":
            # p_1..p_n are the raw moments of t*dsigma; dividing its Gauss
            # weights by the nodes recovers sigma away from 0, and the mass
            # balance pins the weight at 0.
            nodes, u = _gauss_rule(p[1:], q)
            if len(nodes) and np.min(nodes) <= 1e-10 * (1.0 + np.max(nodes)):
                continue
            weights = u / nodes if len(nodes) else u
            w0 = p[0] - float(np.sum(weights))
            if w0 < -1e-10 * max(1.0, p[0]):
                continue
            if w0 > 1e-12 * max(1.0, p[0]):
                nodes = np.concatenate([[0.0], nodes])
                weights = np.concatenate([[w0], weights])
        else:
            if q == 0:
                nodes, weights = np.zeros(0), np.zeros(0)
            else:
                nodes, weights = _gauss_rule(p[: 2 * q], q)
                if len(nodes) < q:
                    # rank-deficient subproblem: the truncated nodes are kept
                    # and the weights re-solved against all exact moments
                    refit = _refit_weights(nodes, p)
                    if refit is not None:
                        weights = refit
        atom_list = _clean_atoms(nodes, weights, scale)
        if atom_list is None:
            continue
        result = _evaluate_candidate(atom_list, p, bound)
        if result is not None:
            return result
    raise RecoveryError(
        "no atomic measure met the residual bound "
        f"{bound:.3e}; the sequence may be too ill-conditioned"
    )


@dataclass(frozen=True)
class SeparabilityVerdict:
    verdict: str  # "separable" | "entangled" | "marginal"
    basis: str  # "even-hankel" | "odd-hankel" | "both"
    even: PsdCheck
    odd: PsdCheck
    atoms: MeasureAtoms | None = None
    witness: object | None = None  # WitnessSpec when entangled


def is_separable(
    spec: StateSpec,
    tol: float = DEFAULT_RESIDUAL_TOL,
    psd_tol: float = DEFAULT_PSD_TOL,
) -> SeparabilityVerdict:
    """Full separability of the diagonal restricted-Dicke state: equivalent to
    moment-problem feasibility of its coefficient sequence.

    Separable verdicts carry a recovered measure when conditioning permits;
    entangled verdicts carry a detecting witness.
    """
    check = is_generalized_moment_solution(spec.p, psd_tol)
    if check.verdict == "no":
        from .witnesses import find_detecting_witness

        if check.even.status == NOT_PSD and check.odd.status == NOT_PSD:
            basis = "both"
        elif check.even.status == NOT_PSD:
            basis = "even-hankel"
        else:
            basis = "odd-hankel"
        witness = find_detecting_witness(spec, psd_tol)
        return SeparabilityVerdict("entangled", basis, check.even, check.odd, None, witness)
    if check.verdict == "marginal":
        return SeparabilityVerdict("marginal", "both", check.even, check.odd)
    try:
        atoms = recover_atomic_measure(spec.p, tol)
    except RecoveryError:
        atoms = None
    return SeparabilityVerdict("separable", "both", check.even, check.odd, atoms)


@dataclass(frozen=True)
class MainTheoremRecord:
    """Joint run of the three equivalent classifications (separability,
    half-party PPT, moment feasibility) with an agreement flag; marginal
    verdicts are excluded from the agreement comparison."""

    m: int
    separable: str
    ppt: str
    moment: str
    agree: bool


def check_main_theorem(
    spec: StateSpec,
    tol: float = DEFAULT_RESIDUAL_TOL,
    psd_tol: float = DEFAULT_PSD_TOL,
) -> MainTheoremRecord:
    N, d = spec.N, spec.d
    if N % 2 == 0:
        m = N // 2
    elif d == 2:
        m = (N - 1) // 2
    else:
        raise ValueError(
            "the equivalence requires N even, or d = 2 with N odd; "
            f"got N={N}, d={d}"
        )
    sep = is_separable(spec, tol, psd_tol)
    ppt_report = is_m_ppt(spec, m, psd_tol)
    moment_check = is_generalized_moment_solution(spec.p, psd_tol)
    votes = []
    if sep.verdict != "marginal":
        votes.append(sep.verdict == "separable")
    if ppt_report.verdict != "marginal":
        votes.append(ppt_report.verdict == "ppt")
    if moment_check.verdict != "marginal":
        votes.append(moment_check.verdict == "yes")
    agree = len(set(votes)) <= 1
    return MainTheoremRecord(m, sep.verdict, ppt_report.verdict, moment_check.verdict, agree)
