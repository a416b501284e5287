"""Total-degree homotopy continuation for the cleared critical equations.

Paths of H(x, t) = (1 - t) * gamma * g(x) + t * f(x), g_j = x_j^D_j - 1, are
tracked from t = 0 to t = 1 in lockstep over a numpy batch, each path with
its own step size: RK4 predictor, Newton corrector, step halving down to a
floor, then Newton on f at t = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
import logging
from typing import Callable, Sequence

import numpy as np

from logdisc.config import DEFAULT_SOLVER, SolverSettings
from logdisc.model.arrangement import Arrangement

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]

MAX_LOOPS = 20000
CORRECTOR_ITERS = 3
CORRECTOR_TOL = 1e-9
ENDGAME_ITERS = 8


class ClearedSystem:
    """Vectorized values and Jacobians of G_j = sum_{i in S_j} u_i a_ij prod_{k in S_j - i} l_k."""

    def __init__(self, arr: Arrangement, u: Sequence[complex]) -> None:
        self.d = arr.d
        self.A = np.array([[float(a) for a in row] for row in arr.A], dtype=complex)
        self.b = np.array([float(v) for v in arr.b], dtype=complex)
        self.u = np.asarray(u, dtype=complex)
        self.supports = [arr.involved(j) for j in range(arr.d)]

    @property
    def degrees(self) -> list[int]:
        return [len(s) - 1 for s in self.supports]

    def forms(self, x: np.ndarray) -> np.ndarray:
        return x @ self.A.T + self.b

    def evaluate(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        ell = self.forms(x)
        P = x.shape[0]
        F = np.zeros((P, self.d), dtype=complex)
        J = np.zeros((P, self.d, self.d), dtype=complex)
        for j, support in enumerate(self.supports):
            for i in support:
                c = self.u[i] * self.A[i, j]
                others = [k for k in support if k != i]
                F[:, j] += c * np.prod(ell[:, others], axis=1) if others else c
                for k in others:
                    rest = [q for q in others if q != k]
                    partial = np.prod(ell[:, rest], axis=1) if rest else np.ones(P, dtype=complex)
                    J[:, j, :] += c * partial[:, None] * self.A[k][None, :]
        return F, J

    def scaled_residual(self, x: np.ndarray) -> np.ndarray:
        """max_j |G_j| / sum of term magnitudes, per point."""
        ell = self.forms(x)
        F, _ = self.evaluate(x)
        scale = np.zeros_like(F, dtype=float)
        for j, support in enumerate(self.supports):
            for i in support:
                others = [k for k in support if k != i]
                term = np.abs(self.u[i] * self.A[i, j])
                scale[:, j] += term * (np.prod(np.abs(ell[:, others]), axis=1) if others else 1.0)
        return np.max(np.abs(F) / np.maximum(scale, 1e-300), axis=1)


@dataclass(slots=True)
class TrackResult:
    endpoints: np.ndarray
    finished: int
    diverged: int
    failed: int
    stalled: int = 0

    @property
    def paths(self) -> int:
        return self.finished + self.diverged + self.failed + self.stalled


def start_solutions(degrees: Sequence[int]) -> np.ndarray:
    roots = [np.exp(2j * np.pi * np.arange(D) / D) for D in degrees]
    return np.array(list(product(*roots)), dtype=complex).reshape(-1, len(degrees))


def _start_eval(x: np.ndarray, degrees: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    G = x**degrees - 1.0
    diag = degrees * x ** (degrees - 1)
    Jg = np.zeros(x.shape + (x.shape[1],), dtype=complex)
    idx = np.arange(x.shape[1])
    Jg[:, idx, idx] = diag
    return G, Jg


def _batch_solve(M: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Solve M x = rhs per path; singular systems flagged in the mask."""
    ok = np.ones(M.shape[0], dtype=bool)
    try:
        return np.linalg.solve(M, rhs[..., None])[..., 0], ok
    except np.linalg.LinAlgError:
        out = np.zeros_like(rhs)
        for p in range(M.shape[0]):
            try:
                out[p] = np.linalg.solve(M[p], rhs[p])
            except np.linalg.LinAlgError:
                ok[p] = False
        return out, ok


def track(
    target: Evaluator,
    degrees: Sequence[int],
    rng: np.random.Generator,
    settings: SolverSettings = DEFAULT_SOLVER,
) -> TrackResult:
    deg = np.asarray(degrees, dtype=float)
    x = start_solutions(degrees)
    P = x.shape[0]
    gamma = np.exp(2j * np.pi * rng.uniform())
    t = np.zeros(P)
    h = np.full(P, min(0.02, settings.step_max))
    status = np.zeros(P, dtype=int)  # 0 active, 1 finished, 2 diverged, 3 failed, 4 stalled

    def homotopy(xs: np.ndarray, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        f, Jf = target(xs)
        g, Jg = _start_eval(xs, deg)
        s = ts[:, None]
        H = (1.0 - s) * gamma * g + s * f
        Hx = (1.0 - s)[..., None] * gamma * Jg + s[..., None] * Jf
        Ht = f - gamma * g
        return H, Hx, Ht

    def velocity(xs: np.ndarray, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        _, Hx, Ht = homotopy(xs, ts)
        return _batch_solve(Hx, -Ht)

    loops = 0
    while (status == 0).any() and loops < MAX_LOOPS:
        loops += 1
        act = np.flatnonzero(status == 0)
        xa, ta = x[act], t[act]
        ha = np.minimum(h[act], 1.0 - ta)
        with np.errstate(all="ignore"):
            k1, ok1 = velocity(xa, ta)
            k2, ok2 = velocity(xa + 0.5 * ha[:, None] * k1, ta + 0.5 * ha)
            k3, ok3 = velocity(xa + 0.5 * ha[:, None] * k2, ta + 0.5 * ha)
            k4, ok4 = velocity(xa + ha[:, None] * k3, ta + ha)
            xp = xa + (ha[:, None] / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            tn = ta + ha
            good = ok1 & ok2 & ok3 & ok4 & np.isfinite(xp).all(axis=1)
            converged = np.zeros(len(act), dtype=bool)
            for _ in range(CORRECTOR_ITERS):
                H, Hx, _ = homotopy(xp, tn)
                dx, ok = _batch_solve(Hx, -H)
                good &= ok & np.isfinite(dx).all(axis=1)
                xp = np.where(good[:, None], xp + dx, xp)
                norm = np.linalg.norm(dx, axis=1)
                converged = good & (norm < CORRECTOR_TOL * (1.0 + np.linalg.norm(xp, axis=1)))
                if converged.all():
                    break
        accept = converged
        x[act[accept]] = xp[accept]
        t[act[accept]] = tn[accept]
        h[act[accept]] = np.minimum(h[act[accept]] * 1.6, settings.step_max)
        h[act[~accept]] *= 0.5

        norms = np.linalg.norm(x[act], axis=1)
        status[act[norms > settings.divergence_radius]] = 2
        status[act[(t[act] >= 1.0 - 1e-14) & (status[act] == 0)]] = 1
        tiny = (h[act] < settings.step_floor) & (status[act] == 0)
        status[act[tiny]] = 3
    status[status == 0] = 3
    # Paths stalling just before t = 1 usually end on a wall; their positions stay candidates.
    status[(status == 3) & (t > 0.999)] = 4

    done = np.flatnonzero((status == 1) | (status == 4))
    ends = x[done]
    with np.errstate(all="ignore"):
        for _ in range(ENDGAME_ITERS):
            if ends.size == 0:
                break
            F, J = target(ends)
            dx, ok = _batch_solve(J, -F)
            ends = np.where((ok & np.isfinite(dx).all(axis=1))[:, None], ends + dx, ends)

    result = TrackResult(
        endpoints=ends,
        finished=int((status == 1).sum()),
        diverged=int((status == 2).sum()),
        failed=int((status == 3).sum()),
        stalled=int((status == 4).sum()),
    )
    logger.debug(
        "tracked %d paths: %d finished, %d diverged, %d failed", result.paths, result.finished, result.diverged, result.failed
    )
    return result
