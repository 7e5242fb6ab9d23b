"""Quantum signal processing synthesis of symmetric Boolean functions.

A single qubit is driven by L interleaved x-rotations through the signal
angle phi and fixed z-rotations:

    U(phi) = R_z(xi_0) * prod_{j=1..L} R_z(xi_j) R_x(phi) R_z(-xi_j),

with the product evaluated right to left over j = L..1.  Writing
t = exp(i phi / 2), U(phi) = A I + iB X + iC Y + iD Z where A, B, C, D are
Laurent polynomials in t of degree at most L, parity matching L, with A, D
reciprocal and B, C anti-reciprocal.  For odd L that makes A and D series
in cos(j phi / 2) and B and C series in sin(j phi / 2) over odd j.

Synthesis: pick signal parameters so that each input weight w lands on
phi_w = step * w - offset, interpolate A and B through the target values
with flat derivatives, complete C and D so the quadruple is unitary, then
factor the unitary-valued Laurent polynomial into the angle sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np
import scipy.linalg
import scipy.optimize

from .boolfun import SymmetricSpec

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class SolveError(Exception):
    """Interpolation system is rank deficient or misses its targets."""


class CompletionError(Exception):
    """No valid completion: negativity or root pairing failure."""


class AngleFindingError(Exception):
    """Degree reduction broke down or the angles fail to reconstruct."""


@dataclass(frozen=True)
class SignalParams:
    """Signal angle layout phi_w = step * w - offset and the degree L."""

    step: float
    offset: float
    L: int
    maj_symmetry: bool = False

    def __post_init__(self) -> None:
        if self.L < 1 or self.L % 2 == 0:
            raise ValueError("degree L must be odd and positive")

    def phi(self, w) -> np.ndarray:
        return self.step * np.asarray(w, dtype=float) - self.offset


def signal_params_general(n: int) -> SignalParams:
    """Parameters that work for every symmetric function of arity n."""
    return SignalParams(pi / (n + 1), 0.0, 4 * n + 1)


def signal_params_maj(n: int) -> SignalParams:
    """Shorter schedule for targets with f(w) = 1 - f(n - w), majority included."""
    if n % 2 == 0:
        raise ValueError("majority parameters need odd arity")
    return SignalParams(2 * pi / (n + 1), (pi / 2) * (n - 1) / (n + 1), 2 * n + 1, True)


class TrigPolynomial:
    """Series over odd half-angle harmonics: sum_k coeffs[k] * basis((2k+1) phi / 2).

    kind "cos" gives a reciprocal Laurent polynomial (even in phi), kind
    "sin" an anti-reciprocal one (odd in phi).
    """

    __slots__ = ("kind", "coeffs")

    def __init__(self, kind: str, coeffs) -> None:
        if kind not in ("cos", "sin"):
            raise ValueError("kind must be 'cos' or 'sin'")
        self.kind = kind
        self.coeffs = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise ValueError("coeffs must be a nonempty vector")

    @property
    def degree(self) -> int:
        return 2 * self.coeffs.size - 1

    def _harmonics(self) -> np.ndarray:
        return 2.0 * np.arange(self.coeffs.size) + 1.0

    def __call__(self, phi) -> np.ndarray | float:
        phi_arr = np.asarray(phi, dtype=float)
        j = self._harmonics()
        angles = 0.5 * np.multiply.outer(phi_arr, j)
        basis = np.cos(angles) if self.kind == "cos" else np.sin(angles)
        out = basis @ self.coeffs
        return float(out) if np.isscalar(phi) else out

    def derivative(self, phi) -> np.ndarray | float:
        phi_arr = np.asarray(phi, dtype=float)
        j = self._harmonics()
        angles = 0.5 * np.multiply.outer(phi_arr, j)
        if self.kind == "cos":
            basis = -np.sin(angles)
        else:
            basis = np.cos(angles)
        out = basis @ (0.5 * j * self.coeffs)
        return float(out) if np.isscalar(phi) else out

    def laurent(self, L: int | None = None) -> np.ndarray:
        """Coefficients over powers -L..L of t = exp(i phi / 2)."""
        if L is None:
            L = self.degree
        if L < self.degree:
            raise ValueError("requested Laurent degree is below the actual degree")
        out = np.zeros(2 * L + 1, dtype=complex)
        for k, c in enumerate(self.coeffs):
            j = 2 * k + 1
            if self.kind == "cos":
                out[L + j] += 0.5 * c
                out[L - j] += 0.5 * c
            else:
                out[L + j] += -0.5j * c
                out[L - j] += 0.5j * c
        return out


def _zero_poly(kind: str) -> TrigPolynomial:
    return TrigPolynomial(kind, [0.0])


_POSITIVITY_SLACK = 1e-9


def solve_ab(
    f: SymmetricSpec, params: SignalParams, relax_derivatives: bool = False
) -> tuple[TrigPolynomial, TrigPolynomial]:
    """Interpolate A and B through the weight-point targets.

    Targets are A(phi_w) = 1 - f(w) and B(phi_w) = f(w).  Derivatives are
    pinned to zero at every weight point when that admits a completable
    pair (max A^2 + B^2 <= 1); otherwise only the tangency-forced subset
    is pinned: A' where A = 1 and B' where B = 1.  Where A^2 + B^2 touches
    its ceiling the derivative of the pinned polynomial must vanish, but
    the other one is genuinely free, and that freedom is what makes
    general signal parameters work (the unique fully-pinned solution can
    overshoot one between weight points).  relax_derivatives skips the
    fully-pinned attempt.  A target with f(0^n) = 1 is complemented first;
    callers account for the flip by checking f(0^n) themselves.
    """
    values = list(f.by_weight)
    if values[0] == 1:
        values = [1 - v for v in values]
    n = f.n
    w = np.arange(n + 1)
    phis = params.phi(w)
    a_target = 1.0 - np.asarray(values, dtype=float)
    b_target = np.asarray(values, dtype=float)

    if params.maj_symmetry:
        if any(values[i] ^ values[n - i] != 1 for i in range(n + 1)):
            raise SolveError("maj shortcut needs f(w) + f(n-w) = 1 at every weight")
        a = _solve_pinned("cos", phis, a_target, params.L)
        # B(t) = A(-it): in half-angle series b_k = (-1)^k a_k.
        signs = (-1.0) ** np.arange(a.coeffs.size)
        b = TrigPolynomial("sin", signs * a.coeffs)
        mask_a = mask_b = np.ones(phis.size, dtype=bool)
    else:
        a, b, mask_a, mask_b = _solve_general(
            phis, a_target, b_target, params.L, relax_derivatives
        )

    _check_targets(a, b, phis, a_target, b_target, mask_a, mask_b)
    return a, b


def _basis_rows(kind: str, phis: np.ndarray, L: int):
    harmonics = 2.0 * np.arange((L + 1) // 2) + 1.0
    angles = 0.5 * np.multiply.outer(phis, harmonics)
    if kind == "cos":
        return harmonics, np.cos(angles), -np.sin(angles) * (0.5 * harmonics)
    return harmonics, np.sin(angles), np.cos(angles) * (0.5 * harmonics)


def _solve_pinned(
    kind: str, phis: np.ndarray, targets: np.ndarray, L: int
) -> TrigPolynomial:
    """Values plus zero derivative at every weight point."""
    harmonics, value_rows, deriv_rows = _basis_rows(kind, phis, L)
    rows = np.vstack([value_rows, deriv_rows])
    rhs = np.concatenate([targets, np.zeros(phis.size)])
    coeffs, _, rank, _ = scipy.linalg.lstsq(rows, rhs, lapack_driver="gelsy")
    if rank < harmonics.size:
        raise SolveError(
            f"{kind} system is rank deficient (rank {rank} of {harmonics.size})"
        )
    residual = float(np.max(np.abs(rows @ coeffs - rhs)))
    if residual > 1e-10:
        raise SolveError(f"{kind} system residual {residual:.3e} exceeds 1e-10")
    return TrigPolynomial(kind, coeffs)


def squared_magnitude_overshoot(
    a: TrigPolynomial, b: TrigPolynomial, points: int = 100001
) -> float:
    """max over phi of A^2 + B^2 - 1; the pair completes iff this is <= 0.

    A^2 + B^2 is even, 2pi-periodic, and mirror-symmetric about pi, so a
    grid on [0, pi] sees its full range.
    """
    grid = np.linspace(0.0, pi, points)
    total = a(grid) ** 2 + b(grid) ** 2
    return float(total.max()) - 1.0


def _solve_general(
    phis: np.ndarray,
    a_target: np.ndarray,
    b_target: np.ndarray,
    L: int,
    relax: bool,
):
    if not relax:
        try:
            a = _solve_pinned("cos", phis, a_target, L)
            b = _solve_pinned("sin", phis, b_target, L)
        except SolveError:
            pass
        else:
            if squared_magnitude_overshoot(a, b) <= _POSITIVITY_SLACK:
                full = np.ones(phis.size, dtype=bool)
                return a, b, full, full

    # Tangency-forced rows only; the leftover null-space freedom is spent
    # pushing max(A^2 + B^2) down to one.
    mask_a = a_target > 0.5
    mask_b = b_target > 0.5
    harmonics, a_vals, a_ders = _basis_rows("cos", phis, L)
    _, b_vals, b_ders = _basis_rows("sin", phis, L)
    rows_a = np.vstack([a_vals, a_ders[mask_a]])
    rhs_a = np.concatenate([a_target, np.zeros(int(mask_a.sum()))])
    rows_b = np.vstack([b_vals, b_ders[mask_b]])
    rhs_b = np.concatenate([b_target, np.zeros(int(mask_b.sum()))])
    part_a, *_ = scipy.linalg.lstsq(rows_a, rhs_a, lapack_driver="gelsd")
    part_b, *_ = scipy.linalg.lstsq(rows_b, rhs_b, lapack_driver="gelsd")
    residual = max(
        float(np.max(np.abs(rows_a @ part_a - rhs_a))),
        float(np.max(np.abs(rows_b @ part_b - rhs_b))),
    )
    if residual > 1e-10:
        raise SolveError(f"forced-row residual {residual:.3e} exceeds 1e-10")

    a = TrigPolynomial("cos", part_a)
    b = TrigPolynomial("sin", part_b)
    if squared_magnitude_overshoot(a, b) > _POSITIVITY_SLACK:
        null_a = scipy.linalg.null_space(rows_a)
        null_b = scipy.linalg.null_space(rows_b)
        if null_a.shape[1] + null_b.shape[1] > 0:
            coeff_a, coeff_b = _minimax_polish(
                part_a, null_a, part_b, null_b, harmonics
            )
            a = TrigPolynomial("cos", coeff_a)
            b = TrigPolynomial("sin", coeff_b)
    return a, b, mask_a, mask_b


def _minimax_polish(
    part_a: np.ndarray,
    null_a: np.ndarray,
    part_b: np.ndarray,
    null_b: np.ndarray,
    harmonics: np.ndarray,
    stages: int = 3,
):
    """Minimize max(A^2 + B^2) over the affine family of interpolants.

    Pointwise A^2 + B^2 is a convex quadratic in the free coordinates, so
    the epigraph program is convex and the solver reaches the global
    optimum; refining the grid near active maxima tightens the finite-grid
    relaxation between stages.
    """
    ka = null_a.shape[1]
    kb = null_b.shape[1]
    u = np.zeros(ka + kb)
    fine = np.linspace(0.0, pi, 200001)
    fine_cos = np.cos(0.5 * np.multiply.outer(fine, harmonics))
    fine_sin = np.sin(0.5 * np.multiply.outer(fine, harmonics))
    grid = np.linspace(0.0, pi, 2001)
    for _ in range(stages):
        base = 0.5 * np.multiply.outer(grid, harmonics)
        cos_rows = np.cos(base)
        sin_rows = np.sin(base)

        def squared(v):
            A = cos_rows @ (part_a + null_a @ v[:ka])
            B = sin_rows @ (part_b + null_b @ v[ka:])
            return A * A + B * B

        z0 = np.concatenate([u, [float(squared(u).max()) + 1e-12]])
        result = scipy.optimize.minimize(
            lambda z: z[-1],
            z0,
            method="SLSQP",
            constraints=[{"type": "ineq", "fun": lambda z: z[-1] - squared(z[:-1])}],
            options={"maxiter": 1000, "ftol": 1e-16},
        )
        u = result.x[:-1]
        total = (fine_cos @ (part_a + null_a @ u[:ka])) ** 2
        total += (fine_sin @ (part_b + null_b @ u[ka:])) ** 2
        if float(total.max()) <= 1.0 + _POSITIVITY_SLACK:
            break
        hot = fine[total > 1.0 - 1e-4]
        grid = np.unique(np.concatenate([np.linspace(0.0, pi, 2001), hot]))
    return part_a + null_a @ u[:ka], part_b + null_b @ u[ka:]


def _check_targets(
    a, b, phis, a_target, b_target, mask_a, mask_b, tol: float = 1e-10
) -> None:
    worst = max(
        float(np.max(np.abs(a(phis) - a_target))),
        float(np.max(np.abs(b(phis) - b_target))),
        float(np.max(np.abs(a.derivative(phis[mask_a])))) if mask_a.any() else 0.0,
        float(np.max(np.abs(b.derivative(phis[mask_b])))) if mask_b.any() else 0.0,
    )
    if worst > tol:
        raise SolveError(f"constraint residual {worst:.3e} exceeds {tol:.1e}")


@dataclass(frozen=True)
class QspQuadruple:
    """The four real component polynomials of a QSP unitary."""

    a: TrigPolynomial
    b: TrigPolynomial
    c: TrigPolynomial
    d: TrigPolynomial

    def __post_init__(self) -> None:
        if self.a.kind != "cos" or self.d.kind != "cos":
            raise ValueError("A and D must be cosine kind (reciprocal)")
        if self.b.kind != "sin" or self.c.kind != "sin":
            raise ValueError("B and C must be sine kind (anti-reciprocal)")

    @property
    def L(self) -> int:
        return max(p.degree for p in (self.a, self.b, self.c, self.d))

    def matrix(self, phi: float) -> np.ndarray:
        return (
            self.a(phi) * _I2
            + 1j * self.b(phi) * _X
            + 1j * self.c(phi) * _Y
            + 1j * self.d(phi) * _Z
        )

    def unitarity_defect(self, grid_points: int | None = None) -> float:
        """max |A^2+B^2+C^2+D^2 - 1| over an even grid on [-2pi, 2pi)."""
        if grid_points is None:
            grid_points = 4 * self.L
        phis = np.linspace(-2 * pi, 2 * pi, grid_points, endpoint=False)
        total = sum(p(phis) ** 2 for p in (self.a, self.b, self.c, self.d))
        return float(np.max(np.abs(total - 1.0)))

    def check(self, tol: float = 1e-8) -> None:
        defect = self.unitarity_defect()
        if defect > tol:
            raise ValueError(f"unitarity defect {defect:.3e} exceeds {tol:.1e}")


def complete_cd(
    a: TrigPolynomial, b: TrigPolynomial
) -> tuple[TrigPolynomial, TrigPolynomial]:
    """Find C, D with A^2 + B^2 + C^2 + D^2 = 1.

    P = 1 - A^2 - B^2 is a symmetric Laurent polynomial in z = t^2 that is
    nonnegative on the unit circle.  Factor P(z) = gamma G(z) G(1/z) by
    pairing companion-matrix roots (r with 1/conj(r); unit-circle roots
    come in even multiplicity and contribute half), set H(t) = t^s G(t^2)
    with an odd shift s, and split H into the reciprocal part D and the
    anti-reciprocal part C.
    """
    L = max(a.degree, b.degree)
    la = a.laurent(L)
    lb = b.laurent(L)
    p_laurent = -(np.convolve(la, la) + np.convolve(lb, lb))
    p_laurent[2 * L] += 1.0  # center of the degree-2L Laurent array
    if float(np.max(np.abs(p_laurent.imag))) > 1e-10:
        raise CompletionError("P has a non-real Laurent expansion")
    odd_part = float(np.max(np.abs(p_laurent.real[1::2])))
    if odd_part > 1e-10:
        raise CompletionError("P has odd t-powers; A or B is malformed")
    r_full = p_laurent.real[::2]  # z-coefficients over powers -L..L

    scale = float(np.max(np.abs(r_full)))
    if scale < 1e-12:
        return _zero_poly("sin"), _zero_poly("cos")
    _check_nonnegative(a, b)

    m = L
    while m > 0 and abs(r_full[L + m]) < 1e-12 * scale:
        m -= 1
    r = r_full[L - m : L + m + 1]
    if m == 0:
        if r[0] < 0:
            raise CompletionError("constant P is negative")
        # H = sqrt(P) * t gives C = sqrt(P) sin(phi/2), D = sqrt(P) cos(phi/2).
        root = float(np.sqrt(r[0]))
        return TrigPolynomial("sin", [root]), TrigPolynomial("cos", [root])

    roots = np.roots(r[::-1])
    last_error: Exception | None = None
    for unit_tol in (1e-7, 1e-6, 1e-5, 1e-4, 1e-3):
        try:
            selected = _pair_roots(roots, unit_tol)
            c, d = _build_cd(selected, r, m, L)
        except CompletionError as exc:
            last_error = exc
            continue
        defect = QspQuadruple(a, b, c, d).unitarity_defect(max(64, 8 * L))
        if defect <= 1e-8:
            return c, d
        last_error = CompletionError(f"completion defect {defect:.3e} exceeds 1e-8")
    raise last_error if last_error is not None else CompletionError("no completion")


def _check_nonnegative(a: TrigPolynomial, b: TrigPolynomial) -> None:
    phis = np.linspace(-2 * pi, 2 * pi, 10000)
    p = 1.0 - a(phis) ** 2 - b(phis) ** 2
    low = float(np.min(p))
    if low < -1e-9:
        raise CompletionError(f"P dips to {low:.3e} below zero; no completion exists")


def _pair_roots(roots: np.ndarray, unit_tol: float) -> np.ndarray:
    on_circle = np.abs(np.abs(roots) - 1.0) < unit_tol
    unit = roots[on_circle]
    rest = roots[~on_circle]
    if unit.size % 2:
        raise CompletionError("odd number of unit-circle roots")
    selected = []
    if unit.size:
        selected.extend(_pair_unit_roots(unit))
    inside = sorted(rest[np.abs(rest) < 1.0], key=lambda z: (z.real, z.imag))
    outside = list(rest[np.abs(rest) >= 1.0])
    if len(inside) != len(outside):
        raise CompletionError("inside/outside root counts differ")
    for rt in inside:
        mirror = 1.0 / np.conj(rt)
        dists = [abs(o - mirror) for o in outside]
        k = int(np.argmin(dists))
        if dists[k] > 1e-3 * max(1.0, abs(mirror)):
            raise CompletionError("no inversion partner for an off-circle root")
        outside.pop(k)
        selected.append(rt)
    return np.asarray(selected)


def _pair_unit_roots(unit: np.ndarray) -> list[complex]:
    angles = np.sort(np.angle(unit))
    pairings = []
    for start in (0, 1):
        shifted = np.roll(angles, -start)
        if start:
            shifted[-start:] += 2 * pi
        gaps = shifted[1::2] - shifted[0::2]
        pairings.append((float(np.max(gaps)), shifted))
    worst, shifted = min(pairings, key=lambda item: item[0])
    if worst > 2e-2:
        raise CompletionError("unit-circle roots do not pair up")
    means = 0.5 * (shifted[0::2] + shifted[1::2])
    return [complex(np.cos(t), np.sin(t)) for t in means]


def _build_cd(
    selected: np.ndarray, r: np.ndarray, m: int, L: int
) -> tuple[TrigPolynomial, TrigPolynomial]:
    if selected.size != m:
        raise CompletionError(f"selected {selected.size} roots, expected {m}")
    g = np.poly(selected)  # descending, monic
    if float(np.max(np.abs(g.imag))) > 1e-6 * float(np.max(np.abs(g))):
        raise CompletionError("selected roots are not conjugation-closed")
    g = g.real[::-1]  # ascending powers of z
    g0 = g[0]
    if abs(g0) < 1e-14:
        raise CompletionError("degenerate constant term in the factor")
    gamma = float(r[-1]) / g0
    if gamma <= 0:
        raise CompletionError("negative normalization; root pairing failed")
    g = g * np.sqrt(gamma)

    shift = -m if m % 2 else -(m + 1)
    h_powers = shift + 2 * np.arange(g.size)
    degree = int(np.max(np.abs(h_powers)))
    if degree > L:
        raise CompletionError("completion degree exceeds the quadruple degree")
    h = dict(zip(h_powers.tolist(), g.tolist()))
    size = (degree + 1) // 2
    c = np.zeros(size)
    d = np.zeros(size)
    for k in range(size):
        j = 2 * k + 1
        hp = h.get(j, 0.0)
        hm = h.get(-j, 0.0)
        d[k] = hp + hm
        c[k] = hp - hm
    return TrigPolynomial("sin", c), TrigPolynomial("cos", d)


@dataclass(frozen=True)
class AngleSequence:
    """z-rotation angles xi_0..xi_L, in radians."""

    xi: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "xi", np.asarray(self.xi, dtype=float))
        if self.xi.ndim != 1 or self.xi.size < 1:
            raise ValueError("angle sequence must be a nonempty vector")

    @property
    def L(self) -> int:
        return self.xi.size - 1

    def tolist(self) -> list[float]:
        return [float(v) for v in self.xi]


def _rz(xi: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * xi), 0], [0, np.exp(0.5j * xi)]])


def _rx(phi: float) -> np.ndarray:
    c, s = np.cos(phi / 2), np.sin(phi / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def reconstruct(angles: AngleSequence, phi: float) -> np.ndarray:
    """Evaluate U(phi) for the angle sequence, right to left over j=L..1."""
    xi = angles.xi
    u = _I2
    rx = _rx(phi)
    for j in range(xi.size - 1, 0, -1):
        u = (_rz(xi[j]) @ rx @ _rz(-xi[j])) @ u
    return _rz(xi[0]) @ u


def _laurent_matrix(q: QspQuadruple) -> tuple[np.ndarray, int]:
    L = q.L
    coeffs = np.zeros((2 * L + 1, 2, 2), dtype=complex)
    parts = ((q.a, _I2, 1.0), (q.b, _X, 1j), (q.c, _Y, 1j), (q.d, _Z, 1j))
    for poly, basis, factor in parts:
        coeffs += np.multiply.outer(factor * poly.laurent(L), basis)
    return coeffs, L


def find_angles(q: QspQuadruple) -> AngleSequence:
    """Factor the quadruple into z-rotation angles by degree reduction.

    Each step peels the innermost R_z R_x R_z' factor: the kernel of the
    leading Laurent coefficient fixes xi_j, multiplying by the inverse
    factor drops the degree by one, and out-of-range coefficients are
    re-projected to zero.  The result is verified by reconstruction at 100
    random signal angles.
    """
    coeffs, L = _laurent_matrix(q)
    center = L
    # Trim a degenerate declared degree down to the true one, keeping parity.
    while L > 1:
        top = np.linalg.norm(coeffs[center + L]) + np.linalg.norm(coeffs[center - L])
        if top > 1e-9:
            break
        L -= 2
    xi = np.zeros(L + 1)
    for d in range(L, 0, -1):
        lead = coeffs[center + d]
        norm = np.linalg.norm(lead)
        if norm < 1e-9:
            raise AngleFindingError(f"leading coefficient vanished at degree {d}")
        row = lead[0] if np.linalg.norm(lead[0]) >= np.linalg.norm(lead[1]) else lead[1]
        v = np.array([-row[1], row[0]])
        balance = abs(abs(v[0]) - abs(v[1])) / np.linalg.norm(v)
        if balance > 1e-3:
            raise AngleFindingError(f"kernel vector is unbalanced at degree {d}")
        xi[d] = float(np.angle(v[1] * np.conj(v[0])))
        e = np.exp(1j * xi[d])
        qp = 0.5 * np.array([[1, np.conj(e)], [e, 1]])
        qm = _I2 - qp
        new = np.zeros_like(coeffs)
        new[: 2 * center] += coeffs[1:] @ qm  # coefficient m picks up F_{m+1} Q-
        new[1:] += coeffs[: 2 * center] @ qp  # and F_{m-1} Q+
        wipe = np.abs(new) < 1e-9
        new[wipe] = 0.0
        new[center + d :] = 0.0
        new[: center - d + 1] = 0.0
        coeffs = new
    const = coeffs[center]
    off = abs(const[0, 1]) + abs(const[1, 0])
    if off > 1e-6:
        raise AngleFindingError(f"residual off-diagonal {off:.3e} after reduction")
    xi[0] = 2.0 * float(np.angle(const[1, 1]))
    angles = AngleSequence(xi)

    rng = np.random.default_rng(20240614)
    worst = 0.0
    for phi in rng.uniform(-2 * pi, 2 * pi, size=100):
        diff = reconstruct(angles, float(phi)) - q.matrix(float(phi))
        worst = max(worst, float(np.linalg.norm(diff, ord=2)))
    if worst > 1e-6:
        raise AngleFindingError(f"reconstruction error {worst:.3e} exceeds 1e-6")
    return angles
