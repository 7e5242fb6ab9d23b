"""Exact simulation, classification, noise analysis, and certificates.

Evaluation multiplies out the 2x2 words V(x) for every input.  The ASP
of a circuit against a target function is the mean over inputs of the
probability of measuring f(x).  A toy noise model lets each entangling
gate fail independently; any failure scrambles the output bit, which
reproduces the closed form (1 + (1-eps)^L) / 2 for exact circuits.  The
linearity certificate extracts the phase data behind the determinant
argument: circuits whose words are exactly X or I can only compute
affine functions.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass

import numpy as np

from .boolfun import (
    AffineWitness,
    BooleanFunction,
    affine_test,
    classical_upper_bound,
)
from .circuits import LimitedSpaceCircuit, entangling_count

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_IX = 1j * _X

_CLASSIFY_TOL = 1e-8


class Classification(enum.Enum):
    TRUE_IMPL = "TrueImpl"
    RELATIVE_PHASE = "RelativePhase"
    APPROXIMATE = "Approximate"


class NotPhaseless(Exception):
    """The circuit's words carry phases, so the certificate does not apply."""


class TheoryViolation(Exception):
    """A phaseless circuit computed a non-affine function; simulator bug."""


@dataclass(frozen=True)
class NoiseModel:
    """Independent per-entangling-gate failure probability."""

    epsilon: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError("failure probability must lie in [0, 1)")


@dataclass(frozen=True)
class SimulationResult:
    """Words, one-probabilities, mean success, and the phase class."""

    n: int
    truth: np.ndarray
    words: np.ndarray
    p_one: np.ndarray
    asp: float
    classification: Classification

    def to_csv(self) -> str:
        """One row per input: bit string x_1..x_n, f(x), p(measure 1)."""
        buf = io.StringIO()
        buf.write("input_bits,f,p_one\n")
        for idx in range(1 << self.n):
            bits = "".join(str((idx >> k) & 1) for k in range(self.n))
            buf.write(f"{bits},{int(self.truth[idx])},{float(self.p_one[idx])!r}\n")
        return buf.getvalue()

    def save_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_csv())


def evaluate(c: LimitedSpaceCircuit, x) -> tuple[np.ndarray, float]:
    """V(x) and the probability of measuring 1 starting from |0>."""
    v = c.word(x)
    return v, float(min(1.0, abs(v[1, 0]) ** 2))


def asp(c: LimitedSpaceCircuit, f: BooleanFunction) -> SimulationResult:
    """Exhaustive success probability and implementation class."""
    if c.n != f.n:
        raise ValueError(f"circuit has n={c.n} but function has n={f.n}")
    words = c.words()
    p_one = np.clip(np.abs(words[:, 1, 0]) ** 2, 0.0, 1.0)
    truth = f.truth.astype(int)
    success = np.where(truth == 1, p_one, 1.0 - p_one)
    targets = np.where(truth[:, None, None] == 1, _IX, _I2)
    if np.max(np.abs(words - targets)) <= _CLASSIFY_TOL:
        kind = Classification.TRUE_IMPL
    else:
        amps = np.abs(words[np.arange(truth.size), truth, 0])
        if np.min(amps) >= 1.0 - _CLASSIFY_TOL:
            kind = Classification.RELATIVE_PHASE
        else:
            kind = Classification.APPROXIMATE
    return SimulationResult(
        n=c.n,
        truth=truth,
        words=words,
        p_one=p_one,
        asp=float(np.mean(success)),
        classification=kind,
    )


def noisy_asp_analytic(gate_count: int, epsilon: float) -> float:
    """Mean success of an exact circuit whose gates each fail with rate eps.

    A run with no failure succeeds with probability 1, any failure makes
    the output a fair coin, giving (1 + (1-eps)^L) / 2.
    """
    NoiseModel(epsilon)
    if gate_count < 0:
        raise ValueError("gate count must be nonnegative")
    return 0.5 * (1.0 + (1.0 - epsilon) ** gate_count)


def noisy_asp_mc(
    c: LimitedSpaceCircuit,
    f: BooleanFunction,
    epsilon: float,
    shots: int,
    seed: int,
) -> float:
    """Monte Carlo estimate of the noisy success probability.

    Each shot draws a uniform input, flips an independent failure coin
    for every entangling gate, and measures: a clean run samples the
    exact p_one(x), any failure replaces the output with a fair bit.
    """
    NoiseModel(epsilon)
    if c.n != f.n:
        raise ValueError(f"circuit has n={c.n} but function has n={f.n}")
    if shots < 1:
        raise ValueError("need at least one shot")
    rng = np.random.default_rng(seed)
    p_one = np.abs(c.words()[:, 1, 0]) ** 2
    ent = entangling_count(c)
    xs = rng.integers(0, 1 << c.n, size=shots)
    failures = rng.random((shots, ent)) < epsilon if ent else np.zeros((shots, 1), bool)
    scrambled = failures.any(axis=1)
    clean_bit = rng.random(shots) < p_one[xs]
    coin_bit = rng.integers(0, 2, size=shots).astype(bool)
    outcome = np.where(scrambled, coin_bit, clean_bit)
    return float(np.mean(outcome == (f.truth[xs] == 1)))


_CROSSOVER_CAP = 200


def advantage_crossover(epsilon: float, family: str = "ip") -> int | None:
    """Smallest arity where the noisy quantum circuit beats classical.

    Scans n up to 200 comparing (1 + (1-eps)^L) / 2 for the exact family
    circuit against the clamped classical upper bound from the largest
    Fourier coefficient.  The inner product uses L = 3n/2 on even n with
    coefficient magnitude 2^(-n/2); the weight-bit family uses L = 2n-1.
    Returns None when no arity up to the cap crosses.
    """
    NoiseModel(epsilon)
    if family == "ip":
        arities = range(2, _CROSSOVER_CAP + 1, 2)
    elif family == "slsb":
        arities = range(2, _CROSSOVER_CAP + 1)
    else:
        raise ValueError(f"unknown family {family!r}")
    for n in arities:
        if family == "ip":
            gates = 3 * n // 2
            gmax = 2.0 ** (-n / 2)
        else:
            gates = 2 * n - 1
            gmax = 2.0 ** (-n / 2) if n % 2 == 0 else 2.0 ** ((1 - n) / 2)
        quantum = noisy_asp_analytic(gates, epsilon)
        if quantum > classical_upper_bound(gmax):
            return n
    return None


@dataclass(frozen=True)
class DeterminantCertificate:
    """Phase bookkeeping showing a phaseless circuit is affine.

    alphas and betas hold per-gate determinant phases (uncontrolled and
    controlled contributions); gammas aggregates betas per input bit and
    must satisfy exp(i gamma_p) = (-1)^(f(e_p) + f(0)).
    """

    alphas: tuple[float, ...]
    betas: tuple[float, ...]
    gammas: tuple[float, ...]
    witness: AffineWitness


def linearity_certificate(
    c: LimitedSpaceCircuit, tol: float = _CLASSIFY_TOL
) -> DeterminantCertificate:
    """Extract the affine function computed by an X-or-identity circuit.

    Every word must be exactly X or I up to tol; otherwise the
    certificate does not apply and NotPhaseless is raised.  The
    extracted truth table is checked to be affine and the per-variable
    determinant phases are verified against it.  A failure of either
    check would contradict the determinant argument and raises
    TheoryViolation.
    """
    words = c.words()
    dist_x = np.abs(words - _X).max(axis=(1, 2))
    dist_i = np.abs(words - _I2).max(axis=(1, 2))
    nearest = np.minimum(dist_x, dist_i)
    if np.max(nearest) > tol:
        worst = int(np.argmax(nearest))
        raise NotPhaseless(
            f"word at input index {worst} is {nearest[worst]:.3e} from both X and I"
        )
    truth = (dist_x <= tol).astype(np.uint8)
    f = BooleanFunction(c.n, truth)
    witness = affine_test(f)
    if witness is None:
        raise TheoryViolation("phaseless circuit computed a non-affine function")
    alphas = []
    betas = []
    gamma = np.zeros(c.n)
    for g in c.gates:
        phase = float(np.angle(np.linalg.det(g.action)))
        if g.control is None:
            alphas.append(phase)
            betas.append(0.0)
        else:
            alphas.append(0.0)
            betas.append(phase)
            gamma[g.control - 1] += phase
    f0 = int(truth[0])
    for p in range(c.n):
        expected = (-1.0) ** (int(truth[1 << p]) ^ f0)
        if abs(np.exp(1j * gamma[p]) - expected) > tol:
            raise TheoryViolation(
                f"determinant phase for bit {p + 1} disagrees with the truth table"
            )
    return DeterminantCertificate(
        alphas=tuple(alphas),
        betas=tuple(betas),
        gammas=tuple(float(v) for v in gamma),
        witness=witness,
    )
