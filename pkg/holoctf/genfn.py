"""Generating functions for the phase (Z_f) and attenuation (W_f) channels.

A generating function is an even entire function of sine type whose real
zeros λ sit where one trigonometric factor of the CTF vanishes:

    phase:        λ² = f·(l + 1/2)     (cos(πλ²/f) = 0)
    attenuation:  λ² = f·l             (sin(πλ²/f) = 0)

For odd f = 2p + 1 the function is a product of f cosine factors in the
variable u = λ² times a rational correction R(u) that removes the multiple
zero of the raw product and contributes simple zeros with odd l.

Every factor is stored as

    K·sin(α(s + s0))·sin(α(s − s0)),   s² = u + c,

which equals (K/2)·(cos 2αs0 − cos 2αs), an even function of s and thus
single-valued in u. Dividing such a factor by (u − u0), u0 = s0² − c, gives
K·α²·sinc(α(s + s0))·sinc(α(s − s0)); each power of the correction
denominator is absorbed this way, so removable singularities never appear.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    ConstructionInconsistencyError,
    ContractError,
    DegenerateZeroError,
    DomainError,
    UnsupportedConfigurationError,
)

logger = logging.getLogger(__name__)

SIMPLICITY_THRESHOLD = 1e-8
DUPLICATE_GAP = 1e-9
LITERAL_EVEN = (2, 4)

ArrayLike = Union[float, complex, np.ndarray]


class GenFnKind(str, Enum):
    PHASE = "phase"
    ATTENUATION = "attenuation"


def _sinc(x: np.ndarray) -> np.ndarray:
    """sin(x)/x, complex-safe."""
    return np.sinc(x / np.pi)


@dataclass(frozen=True)
class ChirpFactor:
    """K·sin(α(s+s0))·sin(α(s−s0)) with s² = u + shift, optionally over (u − u0)."""
    scale: float
    alpha: float
    shift: float
    s0: float
    divided: bool
    label: str

    @property
    def pole(self) -> float:
        return self.s0 ** 2 - self.shift

    def _root(self, u: np.ndarray) -> np.ndarray:
        return np.sqrt(u + self.shift)

    def undivided(self, u: np.ndarray) -> np.ndarray:
        s = self._root(u)
        return self.scale * np.sin(self.alpha * (s + self.s0)) * np.sin(self.alpha * (s - self.s0))

    def value(self, u: np.ndarray) -> np.ndarray:
        if not self.divided:
            return self.undivided(u)
        s = self._root(u)
        a = self.alpha
        return self.scale * a * a * _sinc(a * (s + self.s0)) * _sinc(a * (s - self.s0))

    def deriv(self, u: np.ndarray) -> np.ndarray:
        """d/du of value()."""
        s = self._root(u)
        a = self.alpha
        d_undivided = self.scale * a * a * _sinc(2 * a * s)
        if not self.divided:
            return d_undivided
        du = u - self.pole
        h = 1e-4 * max(1.0, abs(self.pole))
        near = np.abs(du) <= 1e-3 * max(1.0, abs(self.pole))
        safe_du = np.where(near, 1.0, du)
        quotient = (d_undivided * safe_du - self.undivided(u)) / safe_du ** 2
        if not np.any(near):
            return quotient
        central = (self.value(u + h) - self.value(u - h)) / (2 * h)
        return np.where(near, central, quotient)


def paired_cosines(s: ArrayLike, q: int, f: int) -> ArrayLike:
    """cos(π/f·(s+q))·cos(π/f·(s+f−q)); even in s."""
    w = np.pi / f
    return np.cos(w * (s + q)) * np.cos(w * (s + f - q))


def _removable_limit(fn: Callable[[np.ndarray], np.ndarray], t: float, h: float) -> float:
    """Quadratic extrapolation of fn to t from symmetric samples at t ± h, t ± 2h."""
    def mean(step: float) -> float:
        return 0.5 * float(fn(np.array([t + step]))[0] + fn(np.array([t - step]))[0])
    return (4.0 * mean(h) - mean(2.0 * h)) / 3.0


@dataclass(frozen=True)
class GenFn:
    """Even generating function of one kind at Fresnel number f."""
    kind: GenFnKind
    f: int
    factors: Tuple[ChirpFactor, ...]
    numerator_roots: Tuple[float, ...]
    denominator_root: Optional[float]
    denominator_power: int
    parity: int = field(default=1, init=False)

    @property
    def p(self) -> int:
        return (self.f - 1) // 2

    @property
    def is_literal_f4(self) -> bool:
        return self.kind is GenFnKind.PHASE and self.f == 4

    @property
    def name(self) -> str:
        letter = "Z" if self.kind is GenFnKind.PHASE else "W"
        return f"{letter}_{self.f}"

    # ---- evaluation ----

    def _eval_u(self, u: np.ndarray) -> np.ndarray:
        out = np.ones_like(u, dtype=np.complex128)
        for factor in self.factors:
            out = out * factor.value(u)
        for root in self.numerator_roots:
            out = out * (u - root)
        return out

    def eval(self, t: ArrayLike) -> ArrayLike:
        """Value at real t (scalar or array)."""
        t_arr = np.asarray(t, dtype=np.float64)
        if self.is_literal_f4:
            result = _z4_real(t_arr)
        else:
            result = self._eval_u(t_arr.astype(np.complex128) ** 2).real
        return float(result) if np.ndim(t) == 0 else result

    def eval_complex(self, z: ArrayLike) -> ArrayLike:
        if self.is_literal_f4:
            raise UnsupportedConfigurationError("Z_4 is only evaluated on the real axis")
        z_arr = np.asarray(z, dtype=np.complex128)
        result = self._eval_u(z_arr ** 2)
        return complex(result) if np.ndim(z) == 0 else result

    def eval_literal(self, z: ArrayLike) -> ArrayLike:
        """The literal product form Z0·R with principal roots.

        Numerically 0/0 at the correction denominator root; used only to
        cross-check eval away from it.
        """
        if self.is_literal_f4:
            return self.eval(z)
        z_arr = np.asarray(z, dtype=np.complex128)
        u = z_arr ** 2
        f = self.f
        w = np.pi / f
        if self.f == 2:
            out = np.cos(np.pi * np.sqrt(u - 0.75))
        else:
            if self.kind is GenFnKind.PHASE:
                disc = [u - f / 2 + (f / 2 - q) ** 2 for q in range(self.p + 1)]
            else:
                disc = [u + (f / 2 - q) ** 2 for q in range(self.p + 1)]
            out = np.cos(w * np.sqrt(disc[0]))
            for q in range(1, self.p + 1):
                out = out * paired_cosines(np.sqrt(disc[q]), q, f)
            for root in self.numerator_roots:
                out = out * (u - root)
            if self.denominator_power:
                out = out / (u - self.denominator_root) ** self.denominator_power
        if np.isrealobj(z) or np.all(np.asarray(z).imag == 0):
            out = out.real
        return out.item() if np.ndim(z) == 0 else out

    # ---- derivative ----

    def _derivative_u(self, u: np.ndarray) -> np.ndarray:
        values = [factor.value(u) for factor in self.factors]
        derivs = [factor.deriv(u) for factor in self.factors]
        for root in self.numerator_roots:
            values.append(u - root)
            derivs.append(np.ones_like(u))
        count = len(values)
        prefix = [np.ones_like(u)]
        for v in values:
            prefix.append(prefix[-1] * v)
        suffix = [np.ones_like(u)] * (count + 1)
        for i in range(count - 1, -1, -1):
            suffix[i] = suffix[i + 1] * values[i]
        total = np.zeros_like(u)
        for i in range(count):
            total = total + derivs[i] * prefix[i] * suffix[i + 1]
        return total

    def derivative_values(self, lambdas: np.ndarray) -> np.ndarray:
        """Z′ at an array of real points (no simplicity check)."""
        lam = np.asarray(lambdas, dtype=np.float64)
        if self.is_literal_f4:
            return _z4_derivative(lam)
        u = lam.astype(np.complex128) ** 2
        return (2.0 * lam * self._derivative_u(u)).real


def build_genfn(kind: Union[GenFnKind, str], f: int) -> GenFn:
    """Construct Z_f (phase) or W_f (attenuation)."""
    kind = GenFnKind(kind)
    if isinstance(f, float) and f.is_integer():
        f = int(f)
    if not isinstance(f, (int, np.integer)) or f < 1:
        raise UnsupportedConfigurationError(f"Fresnel number must be a positive integer, got {f!r}")
    f = int(f)
    if f % 2 == 0:
        if kind is GenFnKind.PHASE and f in LITERAL_EVEN:
            return _build_literal_even(f)
        raise UnsupportedConfigurationError(
            f"no {kind.value} generating function at even f={f}; "
            "use choose_odd_fresnel to move to the next odd Fresnel number"
        )

    p = (f - 1) // 2
    w = math.pi / f
    factors: List[ChirpFactor] = []
    if kind is GenFnKind.PHASE:
        # cos(π/f·√ρ0): s0 = f/2 puts its zero at u0 = f/2 (l = 0), kept simple
        factors.append(ChirpFactor(-2.0, w / 2, f * f / 4 - f / 2, f / 2, False, "rho_0"))
        for q in range(1, p + 1):
            factors.append(ChirpFactor(1.0, w, (f / 2 - q) ** 2 - f / 2, f / 2 - q, True, f"rho_{q}"))
        numerator = tuple(f * (2 * q - 0.5) for q in range(1, p + 1))
        denominator_root = f / 2
        power = p
    else:
        # every factor vanishes to second order at λ = 0; all are divided by u
        factors.append(ChirpFactor(-2.0, w / 2, f * f / 4, f / 2, True, "sigma_0"))
        for q in range(1, p + 1):
            factors.append(ChirpFactor(1.0, w, (f / 2 - q) ** 2, f / 2 - q, True, f"sigma_{q}"))
        numerator = tuple(float((2 * q + 1) * f) for q in range(0, p + 1))
        denominator_root = 0.0
        power = p + 1

    genfn = GenFn(kind, f, tuple(factors), numerator, denominator_root, power)
    logger.debug(f"Built {genfn.name}: {len(factors)} factors, {len(numerator)} correction roots")
    return genfn


def _build_literal_even(f: int) -> GenFn:
    if f == 2:
        # cos(π√(u − 3/4))
        factor = ChirpFactor(-2.0, math.pi / 2, -0.75, 0.5, False, "rho_0")
        return GenFn(GenFnKind.PHASE, 2, (factor,), (), None, 0)
    return GenFn(GenFnKind.PHASE, 4, (), (14.0,), 2.0, 1)


def _z4_parts(u: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    half_pi = math.pi / 2
    s_root = np.sqrt(np.abs(u - 2.0))
    sine = np.where(u >= 2.0, np.sin(half_pi * s_root), np.sinh(half_pi * s_root))
    cosine = np.cos(half_pi * np.sqrt(u.astype(np.complex128) - 1.0)).real
    return sine, cosine


def _z4_raw(t: np.ndarray) -> np.ndarray:
    u = np.asarray(t, dtype=np.float64) ** 2
    sine, cosine = _z4_parts(u)
    with np.errstate(divide="ignore", invalid="ignore"):
        return sine * cosine * (u - 14.0) / (u - 2.0)


def _z4_real(t: np.ndarray) -> np.ndarray:
    """Literal Z_4 on the real axis, continued by sinh below the branch point."""
    t = np.asarray(t, dtype=np.float64)
    out = np.atleast_1d(_z4_raw(t)).copy()
    flat_t = np.atleast_1d(t)
    root = math.sqrt(2.0)
    for idx in np.flatnonzero(np.abs(np.abs(flat_t) - root) < 1e-6 * np.maximum(1.0, np.abs(flat_t))):
        h = 1e-6 * max(1.0, abs(flat_t[idx]))
        out[idx] = _removable_limit(_z4_raw, float(flat_t[idx]), h)
    return out.reshape(t.shape)


def _z4_derivative(lam: np.ndarray) -> np.ndarray:
    """Z_4′ at real points away from the branch point; inf at λ² = 2."""
    lam = np.asarray(lam, dtype=np.float64)
    u = lam ** 2
    half_pi = math.pi / 2
    sine, cosine = _z4_parts(u)
    with np.errstate(divide="ignore", invalid="ignore"):
        s_a = np.sqrt(np.abs(u - 2.0))
        s_b = np.sqrt(np.abs(u - 1.0))
        d_sine = np.where(u >= 2.0, np.cos(half_pi * s_a), np.cosh(half_pi * s_a)) * half_pi / (2 * s_a)
        d_sine = np.where(u >= 2.0, d_sine, -d_sine)
        d_cos = -np.sin(half_pi * s_b) * half_pi / (2 * s_b)
        rational = (u - 14.0) / (u - 2.0)
        d_rational = 12.0 / (u - 2.0) ** 2
        du = d_sine * cosine * rational + sine * d_cos * rational + sine * cosine * d_rational
        out = 2.0 * lam * du
    return np.where(np.isclose(u, 2.0, rtol=0, atol=1e-9), np.inf, out)


def derivative_at(genfn: GenFn, lam: float) -> float:
    """Z′(λ) at a tabulated zero via the product rule."""
    value = float(genfn.derivative_values(np.array([lam]))[0])
    if not abs(value) > SIMPLICITY_THRESHOLD:
        raise DegenerateZeroError(f"{genfn.name}′({lam}) = {value} is below the simplicity threshold")
    return value


# ---- zero tables ----

@dataclass(frozen=True)
class ZeroEntry:
    lam: float
    lambda_sq: float
    l: int
    dZ: float
    family: str


@dataclass(frozen=True)
class ZeroTable:
    """Nonnegative zeros of an even or odd generator, ascending.

    The mirror zeros −λ are implied; parity = +1 (even) gives Z′(−λ) = −Z′(λ),
    parity = −1 (odd) gives Z′(−λ) = Z′(λ). A zero at λ = 0 has no mirror.
    """
    generator: object
    entries: Tuple[ZeroEntry, ...]
    parity: int = 1

    def __post_init__(self) -> None:
        lams = np.array([e.lam for e in self.entries])
        if len(lams) and np.any(np.diff(lams) < DUPLICATE_GAP):
            i = int(np.argmin(np.diff(lams)))
            raise ConstructionInconsistencyError(
                f"duplicate zeros {self.entries[i].family} and {self.entries[i + 1].family} at λ={lams[i]:.12g}"
            )

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([e.lam for e in self.entries])

    @property
    def ls(self) -> np.ndarray:
        return np.array([e.l for e in self.entries], dtype=np.int64)

    @property
    def dZs(self) -> np.ndarray:
        return np.array([e.dZ for e in self.entries])

    @property
    def radius(self) -> float:
        return self.entries[-1].lam if self.entries else 0.0

    @property
    def c_est(self) -> float:
        """Minimal separation of the full zero set ±λ."""
        lams = self.lambdas
        gaps = list(np.diff(lams))
        if len(lams) and lams[0] > 0:
            gaps.append(2 * lams[0])
        return float(min(gaps)) if gaps else math.inf

    def head(self, count: int) -> "ZeroTable":
        if count > len(self.entries):
            raise ContractError(f"table holds {len(self.entries)} zeros, {count} requested")
        return ZeroTable(self.generator, self.entries[:count], self.parity)

    def with_entries(self, entries: Sequence[ZeroEntry]) -> "ZeroTable":
        return ZeroTable(self.generator, tuple(entries), self.parity)


def _closed_form_indices(genfn: GenFn, l_max: int) -> List[Tuple[int, str]]:
    """All (l, family) with l <= l_max from the closed-form zero families."""
    f = genfn.f
    found: List[Tuple[int, str]] = []
    if genfn.is_literal_f4:
        k = 0
        while k * k <= l_max:
            found.append((k * k, f"alpha(k={k})"))
            if k and k * k + k <= l_max:
                found.append((k * k + k, f"beta(k={k})"))
            k += 1
        if 3 <= l_max:
            found.append((3, "corr(q=1)"))
        return found
    if f == 2:
        k = 0
        while (k * k + k) // 2 <= l_max:
            found.append(((k * k + k) // 2, f"A(k={k})"))
            k += 1
        return found

    p = genfn.p
    for q in range(p + 1):
        k = 0
        while f * k * k + (f - 2 * q) * k <= l_max:
            if k > 0 or q == 0:
                found.append((f * k * k + (f - 2 * q) * k, f"A(k={k},q={q})"))
            k += 1
    for q in range(1, p + 1):
        k = 1
        while f * k * k - (f - 2 * q) * k <= l_max:
            found.append((f * k * k - (f - 2 * q) * k, f"B(k={k},q={q})"))
            k += 1
    if genfn.kind is GenFnKind.PHASE:
        found.extend((2 * q - 1, f"corr(q={q})") for q in range(1, p + 1) if 2 * q - 1 <= l_max)
    else:
        found = [(l, fam) for l, fam in found if l > 0]
        found.extend((2 * q + 1, f"corr(q={q})") for q in range(0, p + 1) if 2 * q + 1 <= l_max)
    return found


def zero_radius_sq(kind: GenFnKind, f: int, l: int) -> float:
    return f * (l + 0.5) if kind is GenFnKind.PHASE else float(f * l)


def zeros_up_to(genfn: GenFn, radius_max: float, extra: int = 0) -> ZeroTable:
    """All zeros with λ <= radius_max plus `extra` further ones, from closed forms."""
    if not radius_max > 0:
        raise DomainError(f"radius_max must be positive, got {radius_max}")
    if extra < 0:
        raise ContractError(f"extra must be nonnegative, got {extra}")

    reach = radius_max + extra + genfn.f + 2.0
    while True:
        l_max = int(reach * reach / genfn.f) + 1
        indices = sorted(_closed_form_indices(genfn, l_max))
        lambda_sq = np.array([zero_radius_sq(genfn.kind, genfn.f, l) for l, _ in indices])
        lams = np.sqrt(lambda_sq)
        inside = int(np.count_nonzero(lams <= radius_max))
        if inside + extra <= len(indices) and (extra == 0 or lams[inside + extra - 1] < reach):
            break
        reach *= 2.0

    keep = inside + extra
    indices = indices[:keep]
    lams = lams[:keep]
    lambda_sq = lambda_sq[:keep]
    for (l_a, fam_a), (l_b, fam_b) in zip(indices, indices[1:]):
        if l_a == l_b:
            raise ConstructionInconsistencyError(f"families {fam_a} and {fam_b} share l={l_a}")

    dZ = genfn.derivative_values(lams)
    degenerate = [(lam, d) for lam, d in zip(lams, dZ) if not abs(d) > SIMPLICITY_THRESHOLD]
    if degenerate:
        raise DegenerateZeroError(f"{genfn.name} has non-simple zeros: {degenerate[:3]}")

    entries = tuple(
        ZeroEntry(float(lam), float(usq), int(l), float(d), fam)
        for lam, usq, (l, fam), d in zip(lams, lambda_sq, indices, dZ)
    )
    table = ZeroTable(genfn, entries, genfn.parity)
    logger.info(f"{genfn.name}: {len(table)} zeros up to λ={table.radius:.4g} (c_est={table.c_est:.4g})")
    return table


def first_zeros(genfn: GenFn, count: int) -> ZeroTable:
    """The first `count` positive zeros."""
    smallest = math.sqrt(zero_radius_sq(genfn.kind, genfn.f, 1 if genfn.kind is GenFnKind.ATTENUATION else 0))
    return zeros_up_to(genfn, smallest * (1 - 1e-12), count)


# ---- verification ----

@dataclass
class ValidationReport:
    name: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)
    skipped: bool = False
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def summary(self) -> str:
        if self.skipped:
            return f"{self.name}: skipped"
        status = "ok" if self.passed else f"{len(self.failures)} failures"
        return f"{self.name}: {self.checks} checks, {status}"


@dataclass
class SineTypeReport:
    H: float
    A_est: float
    B_est: float
    delta_est: float
    samples: int
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return self.skipped or (self.B_est > 0 and self.delta_est > 0)


def check_zero_identities(table: ZeroTable, genfn: GenFn) -> ValidationReport:
    """Per-entry trigonometric identities, vanishing and simplicity."""
    report = ValidationReport(f"identities {genfn.name}")
    f = genfn.f
    values = genfn.eval(table.lambdas) if len(table) else np.array([])
    for entry, value in zip(table.entries, values):
        report.checks += 1
        lam, l = entry.lam, entry.l
        if abs(lam * lam - zero_radius_sq(genfn.kind, f, l)) > 1e-9 * max(1.0, lam * lam):
            report.fail(f"λ={lam:.12g}: λ² does not match l={l}")
        phase = math.pi * entry.lambda_sq / f
        sign = -1.0 if l % 2 else 1.0
        if genfn.kind is GenFnKind.PHASE:
            vanishing, signed = math.cos(phase), math.sin(phase)
        else:
            vanishing, signed = math.sin(phase), math.cos(phase)
        if abs(vanishing) > 1e-10:
            report.fail(f"λ={lam:.12g}: vanishing trig factor is {vanishing:.3e}")
        if abs(signed - sign) > 1e-10:
            report.fail(f"λ={lam:.12g}: sign identity gives {signed:.12g}, expected (−1)^{l}")
        if not abs(entry.dZ) > SIMPLICITY_THRESHOLD:
            report.fail(f"λ={lam:.12g}: |Z′| = {abs(entry.dZ):.3e} (not simple)")
        elif math.isfinite(entry.dZ) and abs(value) > 1e-8 * abs(entry.dZ) * max(1.0, lam):
            report.fail(f"λ={lam:.12g}: {genfn.name}(λ) = {value:.3e} is not zero")
    return report


def check_zero_structure(table: ZeroTable, genfn: GenFn) -> ValidationReport:
    """Separation, parity of l, interlacing and asymptotic spacing of the main series."""
    report = ValidationReport(f"structure {genfn.name}")
    report.details["c_est"] = table.c_est
    report.checks += 1
    if not table.c_est > 0:
        report.fail(f"zeros not separated: c_est={table.c_est}")

    if genfn.f % 2 == 0:
        return report
    f = genfn.f
    main = {}
    for entry in table.entries:
        report.checks += 1
        is_corr = entry.family.startswith("corr")
        if is_corr and entry.l % 2 == 0:
            report.fail(f"correction zero {entry.family} has even l={entry.l}")
        if not is_corr and entry.l % 2 == 1:
            report.fail(f"main-series zero {entry.family} has odd l={entry.l}")
        if entry.family.startswith("A(") and entry.l > 0:
            k, q = (int(part.split("=")[1]) for part in entry.family[2:-1].split(","))
            main[(k, q)] = entry.lam

    p = genfn.p
    for (k, q), lam in sorted(main.items()):
        nxt = main.get((k, q - 1)) if q > 0 else main.get((k + 1, p))
        if nxt is not None:
            report.checks += 1
            if not lam < nxt:
                report.fail(f"interlacing broken after A(k={k},q={q})")

    tail_start = table.entries[int(0.8 * len(table))].lam if len(table) else math.inf
    for (k, q), lam in main.items():
        if k >= 1 and lam >= tail_start and genfn.kind is GenFnKind.PHASE:
            report.checks += 1
            if abs(lam - (f * (k + 0.5) - q)) > 2.0 / k:
                report.fail(f"A(k={k},q={q}) deviates from f(k+1/2)−q by more than 2/k")
    return report


def check_derivatives(table: ZeroTable, genfn: GenFn, h: float = 1e-5, rtol: float = 1e-7) -> ValidationReport:
    """Analytic Z′ against Richardson-extrapolated central differences."""
    report = ValidationReport(f"derivatives {genfn.name}")
    lams = table.lambdas
    finite = np.isfinite(table.dZs)
    lams, analytic = lams[finite], table.dZs[finite]
    if not len(lams):
        return report

    def central(step: float) -> np.ndarray:
        hi, lo = lams + step, lams - step
        return (genfn.eval(hi) - genfn.eval(lo)) / (hi - lo)

    numeric = (4.0 * central(h / 2) - central(h)) / 3.0
    for lam, a, n in zip(lams, analytic, numeric):
        report.checks += 1
        if abs(a - n) > rtol * abs(a):
            report.fail(f"λ={lam:.12g}: analytic {a:.12g} vs finite difference {n:.12g}")
    return report


def scan_zeros(genfn: GenFn, upper: float, step: float = 1e-3) -> np.ndarray:
    """Sign-change scan of eval on (0, upper] refined by bisection."""
    grid = np.arange(step, upper + step / 2, step)
    values = genfn.eval(grid)
    exact = grid[values == 0.0]
    flips = np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)
    lo, hi = grid[flips], grid[flips + 1]
    sign_lo = np.sign(values[flips])
    # all brackets are halved together
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        same = np.sign(genfn.eval(mid)) == sign_lo
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    return np.sort(np.concatenate([exact, 0.5 * (lo + hi)]))


def check_completeness(genfn: GenFn, upper: float = 30.0, tol: float = 1e-9) -> ValidationReport:
    """Closed-form zeros on (0, upper] against a bisection scan, one-to-one."""
    report = ValidationReport(f"completeness {genfn.name}")
    table = zeros_up_to(genfn, upper)
    # the Z_4 branch-point zero does not change sign
    closed = table.lambdas[np.isfinite(table.dZs)]
    scanned = scan_zeros(genfn, upper)
    report.checks = len(closed)
    report.details["closed_form"] = len(closed)
    report.details["scanned"] = len(scanned)
    if len(closed) != len(scanned):
        report.fail(f"{len(closed)} closed-form zeros vs {len(scanned)} found by scanning")
        return report
    for a, b in zip(closed, scanned):
        if abs(a - b) > tol:
            report.fail(f"closed-form λ={a:.12g} vs scanned {b:.12g}")
    return report


def check_literal_form(genfn: GenFn, upper: float = 30.0, samples: int = 2000) -> ValidationReport:
    """Stable evaluation against the literal product away from denominator roots."""
    report = ValidationReport(f"literal form {genfn.name}")
    t = np.linspace(0.05, upper, samples)
    if genfn.denominator_root is not None:
        t = t[np.abs(t * t - genfn.denominator_root) > 0.5]
    stable = genfn.eval(t)
    literal = np.asarray(genfn.eval_literal(t), dtype=np.float64)
    scale = float(np.max(np.abs(stable)))
    report.checks = len(t)
    bad = np.flatnonzero(np.abs(stable - literal) > 1e-8 * scale)
    for i in bad[:10]:
        report.fail(f"t={t[i]:.6g}: stable {stable[i]:.12g} vs literal {literal[i]:.12g}")
    return report


def verify_sine_type(genfn: GenFn, H: float = 3.0, n_samples: int = 2000,
                     table: Optional[ZeroTable] = None) -> SineTypeReport:
    """Sample |Z(x+iy)|·exp(−π|y|) over the strip |y| <= H.

    A_est is the maximum, B_est the minimum on the lines y = ±H, δ_est the
    minimum over all sampled lines outside discs of radius c/4 around zeros.
    """
    if not H > 0:
        raise DomainError(f"strip half-width must be positive, got {H}")
    if genfn.is_literal_f4:
        logger.info("Skipping strip verification for Z_4 (real-axis form only)")
        return SineTypeReport(H, math.nan, math.nan, math.nan, 0, skipped=True)
    if table is None:
        table = zeros_up_to(genfn, 30.0)
    x_max = table.radius
    zeros = np.concatenate([-table.lambdas[::-1], table.lambdas])
    eps = table.c_est / 4

    x = np.linspace(-x_max, x_max, n_samples)
    A_est, B_est, delta_est, count = 0.0, math.inf, math.inf, 0
    for y in np.linspace(-H, H, 7):
        z = x + 1j * y
        dist = np.min(np.abs(z[:, None] - zeros[None, :]), axis=1)
        keep = dist >= eps
        scaled = np.abs(genfn.eval_complex(z[keep])) * math.exp(-math.pi * abs(y))
        if not len(scaled):
            continue
        count += len(scaled)
        A_est = max(A_est, float(scaled.max()))
        delta_est = min(delta_est, float(scaled.min()))
        if abs(abs(y) - H) < 1e-12:
            B_est = min(B_est, float(scaled.min()))
    report = SineTypeReport(H, A_est, B_est, delta_est, count)
    if not report.passed:
        logger.warning(f"{genfn.name}: sine-type bounds failed (B={B_est:.3e}, δ={delta_est:.3e})")
    return report


def run_validation(kind: Union[GenFnKind, str], f: int, n_zeros: int = 500,
                   H: float = 3.0, corrupt: bool = False) -> List[ValidationReport]:
    """The full generating-function validation suite for one (kind, f).

    corrupt=True shifts one tabulated zero, as a negative control.
    """
    genfn = build_genfn(kind, f)
    table = first_zeros(genfn, n_zeros)
    if corrupt:
        entries = list(table.entries)
        e = entries[len(entries) // 2]
        entries[len(entries) // 2] = ZeroEntry(e.lam + 1e-3, e.lambda_sq, e.l, e.dZ, e.family)
        table = table.with_entries(entries)

    reports = [
        check_zero_identities(table, genfn),
        check_zero_structure(table, genfn),
        check_derivatives(table, genfn),
        check_completeness(genfn),
        check_literal_form(genfn),
    ]
    sine = verify_sine_type(genfn, H)
    sine_report = ValidationReport(f"sine type {genfn.name}", checks=sine.samples, skipped=sine.skipped,
                                   details={"A_est": sine.A_est, "B_est": sine.B_est, "delta_est": sine.delta_est})
    if not sine.passed:
        sine_report.fail(f"B_est={sine.B_est:.3e}, delta_est={sine.delta_est:.3e}")
    reports.append(sine_report)
    return reports
