"""Classical computation with a read-only input and one writable scratch bit.

The gate set is: flip, reset(c), flip(j, b) which flips iff x_j = b, and
reset(j, b, c) which sets the scratch bit to c iff x_j = b.  Any program
over these gates is equivalent to a normal form with at most one
conditional reset per variable; the induced input partition has the
function affine on each part.  That structure drives both the membership
test and the exact best-agreement dynamic program.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .boolfun import (
    AffineWitness,
    BooleanFunction,
    SymmetricSpec,
    make_symmetric,
    popcount,
    walsh_spectrum,
)

RATIO_MAX_ARITY = 7


@dataclass(frozen=True)
class Instruction:
    """One scratch-bit gate.  kind is flip | reset | cflip | creset."""

    kind: str
    j: int | None = None
    b: int | None = None
    c: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("flip", "reset", "cflip", "creset"):
            raise ValueError(f"unknown instruction kind {self.kind!r}")
        if self.kind in ("cflip", "creset"):
            if self.j is None or self.j < 1 or self.b not in (0, 1):
                raise ValueError("conditional gates need a variable and a bit")
        if self.kind in ("reset", "creset") and self.c not in (0, 1):
            raise ValueError("reset gates need a constant")

    @classmethod
    def flip(cls) -> Instruction:
        return cls("flip")

    @classmethod
    def reset(cls, c: int) -> Instruction:
        return cls("reset", c=c)

    @classmethod
    def cflip(cls, j: int, b: int) -> Instruction:
        return cls("cflip", j=j, b=b)

    @classmethod
    def creset(cls, j: int, b: int, c: int) -> Instruction:
        return cls("creset", j=j, b=b, c=c)

    def __str__(self) -> str:
        if self.kind == "flip":
            return "flip"
        if self.kind == "reset":
            return f"reset({self.c})"
        if self.kind == "cflip":
            return f"flip({self.j},{self.b})"
        return f"reset({self.j},{self.b},{self.c})"


def run_program(instructions, n: int, x: int) -> int:
    """Execute a gate list on input index x; the scratch bit starts at 0."""
    if not 0 <= x < (1 << n):
        raise ValueError("input index out of range")
    s = 0
    for ins in instructions:
        if ins.kind == "flip":
            s ^= 1
        elif ins.kind == "reset":
            s = ins.c
        else:
            if ins.j > n:
                raise ValueError(f"instruction reads x_{ins.j} but n={n}")
            if (x >> (ins.j - 1)) & 1 == ins.b:
                s = s ^ 1 if ins.kind == "cflip" else ins.c
    return s


def program_truth(instructions, n: int) -> BooleanFunction:
    table = [run_program(instructions, n, x) for x in range(1 << n)]
    return BooleanFunction(n, table)


def _lift_mask(mask: int, j: int) -> int:
    low = mask & ((1 << (j - 1)) - 1)
    return ((mask >> (j - 1)) << j) | low


def _lift_witness(w: AffineWitness, j: int) -> AffineWitness:
    return AffineWitness(w.n + 1, w.constant, _lift_mask(w.mask, j))


def _xor_witness(a: AffineWitness, b: AffineWitness) -> AffineWitness:
    return AffineWitness(a.n, a.constant ^ b.constant, a.mask ^ b.mask)


@dataclass(frozen=True)
class NormalFormProgram:
    """Piecewise-affine normal form.

    Stage i is (j_i, b_i, l_i): inputs with x_{j_i} = b_i that missed all
    earlier stages evaluate to the affine function l_i; inputs missing
    every stage evaluate to the tail.  Stage 1 corresponds to the
    conditional reset executed last in time order.
    """

    n: int
    stages: tuple[tuple[int, int, AffineWitness], ...]
    tail: AffineWitness

    def __post_init__(self) -> None:
        seen = set()
        for j, b, w in self.stages:
            if not 1 <= j <= self.n:
                raise ValueError("stage variable out of range")
            if b not in (0, 1):
                raise ValueError("stage bit must be 0 or 1")
            if j in seen:
                raise ValueError("stage variables must be distinct")
            if w.n != self.n:
                raise ValueError("stage affine arity mismatch")
            seen.add(j)
        if self.tail.n != self.n:
            raise ValueError("tail affine arity mismatch")

    def evaluate(self, x: int) -> int:
        for j, b, w in self.stages:
            if (x >> (j - 1)) & 1 == b:
                return w.evaluate(x)
        return self.tail.evaluate(x)

    def truth(self) -> BooleanFunction:
        idx = np.arange(1 << self.n, dtype=np.uint32)
        out = self.tail.truth().copy()
        assigned = np.zeros(1 << self.n, dtype=bool)
        for j, b, w in self.stages:
            hit = ((idx >> (j - 1)) & 1) == b
            take = hit & ~assigned
            out[take] = w.truth()[take]
            assigned |= hit
        return BooleanFunction(self.n, out)

    def to_instructions(self) -> list[Instruction]:
        """Compile back to a flat gate list.

        With pieces l_1 .. l_{k+1} (tail last) the emitted program is
        P_k, reset(j_k, b_k, 0), ..., P_1, reset(j_1, b_1, 0), P_0 where
        P_i XORs a_i onto the scratch bit, a_0 = l_1 and a_i = l_i + l_{i+1};
        telescoping reproduces each piece on its part of the input space.
        """
        pieces = [w for _, _, w in self.stages] + [self.tail]
        k = len(self.stages)
        adders = [pieces[0]]
        for i in range(1, k + 1):
            adders.append(_xor_witness(pieces[i - 1], pieces[i]))

        def xor_block(w: AffineWitness) -> list[Instruction]:
            block = [Instruction.flip()] if w.constant else []
            block += [
                Instruction.cflip(p + 1, 1)
                for p in range(self.n)
                if (w.mask >> p) & 1
            ]
            return block

        out: list[Instruction] = []
        for i in range(k, 0, -1):
            out += xor_block(adders[i])
            j, b, _ = self.stages[i - 1]
            out.append(Instruction.creset(j, b, 0))
        out += xor_block(adders[0])
        return out

    def __str__(self) -> str:
        return "\n".join(str(ins) for ins in self.to_instructions())


@dataclass(frozen=True)
class RatioResult:
    value: Fraction
    agreements: int
    witness: NormalFormProgram


def _restrict_arr(truth: np.ndarray, j: int, b: int) -> np.ndarray:
    m = truth.size.bit_length() - 1
    idx = np.arange(1 << (m - 1), dtype=np.uint32)
    low = idx & ((1 << (j - 1)) - 1)
    lifted = ((idx >> (j - 1)) << j) | (np.uint32(b) << (j - 1)) | low
    return truth[lifted]


def _affine_arr(truth: np.ndarray) -> tuple[int, int] | None:
    m = truth.size.bit_length() - 1
    c = int(truth[0])
    mask = 0
    for p in range(m):
        if int(truth[1 << p]) ^ c:
            mask |= 1 << p
    idx = np.arange(1 << m, dtype=np.uint32)
    parity = (popcount(idx & np.uint32(mask)) & 1).astype(np.uint8)
    if np.array_equal(parity ^ c, truth):
        return c, mask
    return None


class _RatioSolver:
    """Memoized exact maximization of agreements over all programs.

    Best(g) = max(bestAffine(g), max_{j,b} bestAffine(g|x_j=b) + Best(g|x_j!=b)):
    either no conditional reset fires for any surviving input, or the last
    one to fire splits off an affine piece on a half-cube while the rest of
    the program acts as an unconstrained member on the complement.  Memo
    keys are relabeled truth tables, which is sound because the program
    family is closed under variable permutation.
    """

    def __init__(self) -> None:
        self.memo: dict[bytes, tuple[int, tuple]] = {}

    @staticmethod
    def _key(truth: np.ndarray) -> bytes:
        return truth.tobytes()

    @staticmethod
    def best_affine(truth: np.ndarray) -> tuple[int, int, int]:
        """(agreements, mask, complement) of the best affine approximation.

        Ties prefer the lowest mask, then the uncomplemented parity.
        """
        m = truth.size.bit_length() - 1
        w = walsh_spectrum(BooleanFunction(m, truth)).numerators
        cnt0 = ((1 << m) + w) // 2
        cnt1 = ((1 << m) - w) // 2
        best = int(max(cnt0.max(), cnt1.max()))
        ys0 = np.flatnonzero(cnt0 == best)
        ys1 = np.flatnonzero(cnt1 == best)
        if ys0.size and (not ys1.size or ys0[0] <= ys1[0]):
            return best, int(ys0[0]), 0
        return best, int(ys1[0]), 1

    def best(self, truth: np.ndarray) -> int:
        key = self._key(truth)
        hit = self.memo.get(key)
        if hit is not None:
            return hit[0]
        m = truth.size.bit_length() - 1
        count, mask, comp = self.best_affine(truth)
        choice: tuple = ("affine", mask, comp)
        if m >= 2:
            for j in range(1, m + 1):
                for b in (0, 1):
                    side = _restrict_arr(truth, j, b)
                    rest = _restrict_arr(truth, j, 1 - b)
                    cand = self.best_affine(side)[0] + self.best(rest)
                    if cand > count:
                        count = cand
                        choice = ("split", j, b)
        self.memo[key] = (count, choice)
        return count

    def build_program(self, truth: np.ndarray) -> NormalFormProgram:
        self.best(truth)
        _, choice = self.memo[self._key(truth)]
        m = truth.size.bit_length() - 1
        if choice[0] == "affine":
            _, mask, comp = choice
            return NormalFormProgram(m, (), AffineWitness(m, comp, mask))
        _, j, b = choice
        _, mask, comp = self.best_affine(_restrict_arr(truth, j, b))
        sub = self.build_program(_restrict_arr(truth, j, 1 - b))
        stages = ((j, b, _lift_witness(AffineWitness(m - 1, comp, mask), j)),)
        stages += tuple(
            (jv if jv < j else jv + 1, bv, _lift_witness(wv, j))
            for jv, bv, wv in sub.stages
        )
        return NormalFormProgram(m, stages, _lift_witness(sub.tail, j))


def approximation_ratio(g: BooleanFunction, _solver: _RatioSolver | None = None) -> RatioResult:
    """Exact best agreement fraction over all scratch-bit programs."""
    if g.n > RATIO_MAX_ARITY:
        raise ValueError(f"exact ratio supported for n <= {RATIO_MAX_ARITY}")
    solver = _solver if _solver is not None else _RatioSolver()
    agreements = solver.best(g.truth)
    witness = solver.build_program(g.truth)
    return RatioResult(Fraction(agreements, 1 << g.n), agreements, witness)


def omega_membership(f: BooleanFunction) -> NormalFormProgram | None:
    """Witness program computing f exactly, or None if no program exists."""
    memo: dict[bytes, NormalFormProgram | None] = {}

    def search(truth: np.ndarray) -> NormalFormProgram | None:
        key = truth.tobytes()
        if key in memo:
            return memo[key]
        m = truth.size.bit_length() - 1
        result: NormalFormProgram | None = None
        aff = _affine_arr(truth)
        if aff is not None:
            c, mask = aff
            result = NormalFormProgram(m, (), AffineWitness(m, c, mask))
        elif m >= 2:
            for j in range(1, m + 1):
                for b in (0, 1):
                    side = _affine_arr(_restrict_arr(truth, j, b))
                    if side is None:
                        continue
                    sub = search(_restrict_arr(truth, j, 1 - b))
                    if sub is None:
                        continue
                    c, mask = side
                    stages = ((j, b, _lift_witness(AffineWitness(m - 1, c, mask), j)),)
                    stages += tuple(
                        (jv if jv < j else jv + 1, bv, _lift_witness(wv, j))
                        for jv, bv, wv in sub.stages
                    )
                    result = NormalFormProgram(m, stages, _lift_witness(sub.tail, j))
                    break
                if result is not None:
                    break
        memo[key] = result
        return result

    return search(f.truth)


def hardest_symmetric(n: int) -> tuple[Fraction, list[SymmetricSpec]]:
    """Minimum exact ratio over all symmetric functions of arity n, with ties."""
    if not 3 <= n <= 6:
        raise ValueError("hardest_symmetric supports 3 <= n <= 6")
    solver = _RatioSolver()
    best: Fraction | None = None
    ties: list[SymmetricSpec] = []
    for bits in range(1 << (n + 1)):
        profile = tuple((bits >> w) & 1 for w in range(n + 1))
        spec = SymmetricSpec(n, profile)
        value = approximation_ratio(make_symmetric(spec), _solver=solver).value
        if best is None or value < best:
            best = value
            ties = [spec]
        elif value == best:
            ties.append(spec)
    assert best is not None
    return best, ties


def randomized_ratio_estimate(
    g: BooleanFunction, extra_bits: int = 2, trials: int = 10000, seed: int = 0
) -> float:
    """Best agreement found among sampled programs reading extra random bits.

    Samples normal-form programs on n + extra_bits variables uniformly over
    (stage count, stage variables, stage bits, affine pieces) and evaluates
    the agreement with g exactly over all inputs and random strings, so the
    returned value never exceeds the randomized ratio it estimates.
    """
    n = g.n
    total = n + extra_bits
    if total > 20:
        raise ValueError("n + extra_bits too large to enumerate")
    rng = np.random.default_rng(seed)
    idx = np.arange(1 << total, dtype=np.int64)
    gx = g.truth[idx & ((1 << n) - 1)]
    best = 0.0
    for _ in range(trials):
        k = int(rng.integers(0, total + 1))
        stage_vars = rng.permutation(total)[:k] + 1
        stage_bits = rng.integers(0, 2, size=k)
        consts = rng.integers(0, 2, size=k + 1)
        masks = rng.integers(0, 1 << total, size=k + 1, dtype=np.int64)
        out = ((popcount(idx & masks[k]) & 1) ^ consts[k]).astype(np.uint8)
        assigned = np.zeros(idx.size, dtype=bool)
        for i in range(k):
            hit = ((idx >> (int(stage_vars[i]) - 1)) & 1) == stage_bits[i]
            take = hit & ~assigned
            out[take] = ((popcount(idx[take] & masks[i]) & 1) ^ consts[i]).astype(np.uint8)
            assigned |= hit
        best = max(best, float(np.mean(out == gx)))
    return best
