"""Error-bound formulas for the randomized quaternion SVD.

Two families live here.  The a-priori bounds take a known singular spectrum
(sigma, truncation index k, oversampling p) and return computable numbers:
expected Frobenius / spectral error of the rank-(k+p) sketch, deviation
bounds that hold up to an explicit failure probability, and a simplified
spectral deviation bound with fixed constants.  The second family covers the
quaternion Gaussian test matrix itself: moments and tail probabilities of
the pseudoinverse norms, plus Monte Carlo validators that estimate the same
quantities empirically so the formulas can be checked end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import QMatrix, mat_mul
from .decomp import eig_hermitian, qsvd, spectral_norm
from .randomized import sample_gaussian

_E = math.e


@dataclass(frozen=True)
class SpectrumTail:
    """Singular spectrum split at index k.

    sigma holds the full spectrum in non-increasing order (zeros allowed);
    the bounds only ever look at sigma[k - 1 + 1:] = the tail strictly
    beyond the kept part, so sigma must have at least k + 1 entries.
    """

    sigma: np.ndarray
    k: int

    def __post_init__(self):
        s = np.asarray(self.sigma, dtype=np.float64).copy()
        if s.ndim != 1 or s.size < 2:
            raise ValueError("sigma must be a 1-d array with at least 2 entries")
        if np.any(s < 0):
            raise ValueError("singular values must be nonnegative")
        slack = 1e-12 * max(float(s[0]), 1.0)
        if np.any(np.diff(s) > slack):
            raise ValueError("sigma must be sorted in non-increasing order")
        if not 1 <= self.k < s.size:
            raise ValueError("need 1 <= k < len(sigma)")
        s.setflags(write=False)
        object.__setattr__(self, "sigma", s)

    @property
    def sigma_next(self) -> float:
        """The first discarded singular value (1-based sigma_{k+1})."""
        return float(self.sigma[self.k])

    @property
    def tail(self) -> np.ndarray:
        return self.sigma[self.k:]

    @property
    def tail_fro(self) -> float:
        """Frobenius norm of the discarded part, the best possible error."""
        return float(np.linalg.norm(self.tail))

    def tail_pow(self, r: int) -> float:
        """(sum of tail sigma_j^(2r))^(1/2), computed via ratios to avoid
        overflow for large powers."""
        s1 = self.sigma_next
        if s1 == 0.0:
            return 0.0
        ratios = self.tail / s1
        return s1 ** r * float(np.sqrt(np.sum(ratios ** (2 * r))))


def eta(k: int, p: int) -> float:
    """Spectral pseudoinverse scale e sqrt(4k+4p+2) / (4p+4) that shows up
    in every deviation bound."""
    return _E * math.sqrt(4 * k + 4 * p + 2) / (4 * p + 4)


def expected_fro_bound(tail: SpectrumTail, p: int) -> float:
    """Mean Frobenius error bound sqrt(1 + 4k/(4p+2)) * tail_fro for the
    power-free sketch."""
    if p < 1:
        raise ValueError("oversampling p must be >= 1")
    k = tail.k
    return math.sqrt(1.0 + 4.0 * k / (4 * p + 2)) * tail.tail_fro


def expected_spec_bound(tail: SpectrumTail, p: int, q: int = 0) -> float:
    """Mean spectral error bound.

    For q = 0 this is c1 sigma_{k+1} + c2 tail_fro with
    c1 = 1 + 3 sqrt(k/(4p+2)) and c2 = 3 e sqrt(4k+4p+2) / (2p+2).  With q
    power rounds the same combination is applied to the (2q+1)-th powers of
    the spectrum and the (2q+1)-th root is taken, so the bound contracts
    toward sigma_{k+1} as q grows.
    """
    if p < 1:
        raise ValueError("oversampling p must be >= 1")
    if q < 0:
        raise ValueError("power rounds q must be >= 0")
    k = tail.k
    c1 = 1.0 + 3.0 * math.sqrt(k / (4 * p + 2))
    c2 = 3.0 * _E * math.sqrt(4 * k + 4 * p + 2) / (2 * p + 2)
    s1 = tail.sigma_next
    if q == 0:
        return c1 * s1 + c2 * tail.tail_fro
    r = 2 * q + 1
    if s1 == 0.0:
        return 0.0
    # factor out s1^r so the bracket stays O(1)
    inner = c1 + c2 * (tail.tail_pow(r) / s1 ** r)
    return s1 * inner ** (1.0 / r)


@dataclass(frozen=True)
class DeviationBounds:
    """One-sided error bounds holding except with probability fail_prob."""

    fro: float
    spec: float
    fail_prob: float


def deviation_bounds(tail: SpectrumTail, p: int, u: float, t: float) -> DeviationBounds:
    """Large-deviation bounds for the power-free sketch.

    Valid for u >= 0 and t >= 1; both errors stay below the returned values
    except with probability 2 t^(-4p) + exp(-u^2/2).
    """
    if p < 1:
        raise ValueError("oversampling p must be >= 1")
    if t < 1.0 or u < 0.0:
        raise ValueError("need t >= 1 and u >= 0")
    k = tail.k
    s1 = tail.sigma_next
    tf = tail.tail_fro
    root3k = math.sqrt(3.0 * k / (p + 1))
    et = eta(k, p)
    fro = (1.0 + t * root3k) * tf + u * t * et * s1
    spec = (1.0 + 1.5 * t * root3k + u * t * et) * s1 + 3.0 * t * et * tf
    fail = 2.0 * t ** (-4.0 * p) + math.exp(-0.5 * u * u)
    return DeviationBounds(fro=fro, spec=spec, fail_prob=fail)


def simple_spec_deviation(tail: SpectrumTail, p: int) -> tuple[float, float]:
    """Parameter-free spectral deviation bound
    (1 + 18 sqrt(1 + k/(p+1))) sigma_{k+1} + 6 sqrt(4k+4p+2)/(p+1) tail_fro,
    together with its failure probability 3 exp(-4p).
    """
    if p < 1:
        raise ValueError("oversampling p must be >= 1")
    k = tail.k
    bound = (1.0 + 18.0 * math.sqrt(1.0 + k / (p + 1))) * tail.sigma_next \
        + 6.0 * math.sqrt(4 * k + 4 * p + 2) / (p + 1) * tail.tail_fro
    return bound, 3.0 * math.exp(-4.0 * p)


def bound_report(sigma: np.ndarray, k: int, p: int, q: int = 0,
                 u: float | None = None, t: float | None = None) -> dict:
    """All bounds for one (spectrum, k, p, q) cell as a flat dict.

    Defaults u = 2 sqrt(2p) and t = e give deviation bounds at the 99.99%
    level once p >= 4.  The deviation formulas only cover q = 0; for q > 0
    those entries are None.
    """
    tail = SpectrumTail(sigma, k)
    if u is None:
        u = 2.0 * math.sqrt(2.0 * p)
    if t is None:
        t = _E
    report = {
        "k": k,
        "p": p,
        "q": q,
        "u": u,
        "t": t,
        "sigma_next": tail.sigma_next,
        "tail_fro": tail.tail_fro,
        "expected_fro": expected_fro_bound(tail, p),
        "expected_spec": expected_spec_bound(tail, p, q),
        "deviation_fro": None,
        "deviation_spec": None,
        "deviation_fail_prob": None,
        "simple_spec": None,
        "simple_fail_prob": None,
    }
    if q == 0:
        dev = deviation_bounds(tail, p, u, t)
        simple, simple_fail = simple_spec_deviation(tail, p)
        report.update({
            "deviation_fro": dev.fro,
            "deviation_spec": dev.spec,
            "deviation_fail_prob": dev.fail_prob,
            "simple_spec": simple,
            "simple_fail_prob": simple_fail,
        })
    return report


# ---------------------------------------------------------------------------
# pseudoinverse of the quaternion Gaussian test matrix


def _check_mn(m: int, n: int) -> None:
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n (wide or square test matrix)")


@dataclass(frozen=True)
class PinvStats:
    """fro_sq_mean is exact; spec_mean is an upper bound on the mean."""

    fro_sq_mean: float
    spec_mean: float


def pinv_stats(m: int, n: int) -> PinvStats:
    """Moments of the pseudoinverse of an m-by-n quaternion Gaussian matrix:
    E||G+||_F^2 = m / (4(n-m)+2) exactly, and
    E||G+||_2 <= e sqrt(4n+2) / (2n-2m+2)."""
    _check_mn(m, n)
    fro_sq = m / (4.0 * (n - m) + 2.0)
    spec = _E * math.sqrt(4.0 * n + 2.0) / (2.0 * n - 2.0 * m + 2.0)
    return PinvStats(fro_sq_mean=fro_sq, spec_mean=spec)


def pinv_tail_probs(m: int, n: int, t: float) -> dict:
    """Tail thresholds and probabilities for the pseudoinverse norms.

    P{ ||G+||_F^2 > 3m t / (4(n-m+1)) } <= t^(-2(n-m)) and
    P{ ||G+||_2 > e sqrt(4n+2) t / (4(n-m+1)) } <=
        pi^(-3) / (4(n-m+1)(2n-2m+3)) * t^(-4(n-m+1)).

    The Frobenius statement is vacuous for square matrices, so n >= m + 1
    is required.
    """
    _check_mn(m, n)
    if n - m < 1:
        raise ValueError("Frobenius tail bound needs n >= m + 1")
    if t < 1.0:
        raise ValueError("tail parameter t must be >= 1")
    d = n - m
    fro_thresh = 3.0 * m * t / (4.0 * (d + 1))
    fro_prob = t ** (-2.0 * d)
    spec_thresh = _E * math.sqrt(4.0 * n + 2.0) * t / (4.0 * (d + 1))
    spec_prob = math.pi ** (-3) / (4.0 * (d + 1) * (2.0 * d + 3.0)) \
        * t ** (-4.0 * (d + 1))
    return {
        "fro_threshold": fro_thresh,
        "fro_prob": min(fro_prob, 1.0),
        "spec_threshold": spec_thresh,
        "spec_prob": min(spec_prob, 1.0),
    }


@dataclass(frozen=True)
class MonteCarlo:
    """Sample mean with its standard error over `trials` draws; resampled
    counts draws thrown away as numerically singular."""

    mean: float
    stderr: float
    trials: int
    resampled: int = 0


_MAX_RESAMPLE = 100


def _gram_eigs(m: int, n: int, seed: int, start_trial: int):
    """Eigenvalues of G G* for one Gaussian draw, resampling the (measure
    zero, numerically possible) singular cases.  Returns (lam, trials_used)."""
    trial = start_trial
    for attempt in range(_MAX_RESAMPLE):
        g = sample_gaussian(m, n, seed, trial)
        gram = mat_mul(g, g.adjoint())
        lam = eig_hermitian(gram).lam
        if lam[-1] > 1e-14 * max(lam[0], 1.0):
            return lam, attempt + 1
        trial += 1_000_000  # jump far away from the sequential trial ids
    raise RuntimeError("too many singular Gaussian draws; seed pathological")


def validate_pinv_fro(m: int, n: int, trials: int = 1000, seed: int = 0) -> MonteCarlo:
    """Monte Carlo estimate of E||G+||_F^2 via sum(1/lambda_i(G G*)).

    Requires m <= n - 1: for square G the summands have infinite variance
    and the standard error is meaningless.
    """
    _check_mn(m, n)
    if n - m < 1:
        raise ValueError("need m <= n - 1 for a finite-variance estimator")
    if trials < 1000:
        raise ValueError("need at least 1000 trials for a usable estimate")
    vals = np.empty(trials)
    resampled = 0
    for i in range(trials):
        lam, used = _gram_eigs(m, n, seed, i)
        resampled += used - 1
        vals[i] = float(np.sum(1.0 / lam))
    return MonteCarlo(mean=float(np.mean(vals)),
                      stderr=float(np.std(vals, ddof=1) / math.sqrt(trials)),
                      trials=trials, resampled=resampled)


def validate_pinv_spec(m: int, n: int, trials: int = 1000, seed: int = 0) -> MonteCarlo:
    """Monte Carlo estimate of E||G+||_2 via 1/sqrt(lambda_min(G G*))."""
    _check_mn(m, n)
    if trials < 1000:
        raise ValueError("need at least 1000 trials for a usable estimate")
    vals = np.empty(trials)
    resampled = 0
    for i in range(trials):
        lam, used = _gram_eigs(m, n, seed, i)
        resampled += used - 1
        vals[i] = 1.0 / math.sqrt(lam[-1])
    return MonteCarlo(mean=float(np.mean(vals)),
                      stderr=float(np.std(vals, ddof=1) / math.sqrt(trials)),
                      trials=trials, resampled=resampled)


def validate_scaled_norms(s: QMatrix, t: QMatrix, trials: int = 1000,
                          seed: int = 0) -> dict:
    """Monte Carlo check of the scaled Gaussian norm identities.

    For fixed S (a, m) and T (n, b) and Gaussian G (m, n):
    E||S G T||_F^2 = 4 ||S||_F^2 ||T||_F^2 exactly, and
    E||S G T||_2 <= 3 (||S||_2 ||T||_F + ||S||_F ||T||_2).
    """
    if trials < 1000:
        raise ValueError("need at least 1000 trials for a usable estimate")
    m = s.ncols
    n = t.nrows
    fro_sq = np.empty(trials)
    spec = np.empty(trials)
    for i in range(trials):
        g = sample_gaussian(m, n, seed, i)
        prod = mat_mul(mat_mul(s, g), t)
        fro_sq[i] = prod.norm() ** 2
        spec[i] = qsvd(prod).s[0]
    s2 = spectral_norm(s)
    t2 = spectral_norm(t)
    return {
        "fro_sq_mean": float(np.mean(fro_sq)),
        "fro_sq_stderr": float(np.std(fro_sq, ddof=1) / math.sqrt(trials)),
        "fro_sq_exact": 4.0 * s.norm() ** 2 * t.norm() ** 2,
        "spec_mean": float(np.mean(spec)),
        "spec_stderr": float(np.std(spec, ddof=1) / math.sqrt(trials)),
        "spec_bound": 3.0 * (s2 * t.norm() + s.norm() * t2),
        "trials": trials,
    }
