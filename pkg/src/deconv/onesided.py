"""One-sided and growing-coefficient inverses on the integer line.

The kernels ``delta_0 + delta_1`` and ``delta_{-1} + delta_0`` have no
summable inverse, but each admits two formal alternating series
inverses, one supported to the right and one to the left:

    right of delta_0 + delta_1 :  delta_0 - delta_1 + delta_2 - ...
    left  of delta_0 + delta_1 :  delta_{-1} - delta_{-2} + delta_{-3} - ...
    right of delta_{-1}+delta_0:  delta_1 - delta_2 + delta_3 - ...
    left  of delta_{-1}+delta_0:  delta_0 - delta_{-1} + delta_{-2} - ...

Truncations of these series annihilate the kernel everywhere except at a
few boundary atoms near the truncation edge.  Multiplying a right series
by a right series of the complementary kernel (a Cauchy product) yields a
truncated inverse of the binomial smoothing kernel
``1/4 delta_{-1} + 1/2 delta_0 + 1/4 delta_1`` whose interior
coefficients grow linearly: the two-sided inverse has weight
``2|n| (-1)^(|n|+1)`` at position n.  That growth is the whole story of
the noise sensitivity quantified by ``perturbation_response``.

Everything here defaults to exact rational arithmetic so that "equals"
means equals.  A ``TruncatedSeries`` records, next to the measure itself,
the kernel it targets and the boundary atoms where the product
``kernel * series - delta_0`` is allowed to be nonzero; the boundary is
computed by carrying out the convolution, never assumed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    InsufficientTruncation,
    ParameterOutOfRange,
    UnsupportedKernel,
)
from .grids import EXACT, GridSignal
from .measures import (
    AtomicMeasure,
    WindowSpec,
    apply_to_signal,
    coerce_weight,
    from_atoms,
)

Point = tuple[int, ...]


class Side(enum.Enum):
    """Which side of the origin a one-sided series lives on."""

    RIGHT = "right"
    LEFT = "left"


# --- kernel constructors ---------------------------------------------------


def pair_kernel(step: int, *, mode: str = EXACT) -> AtomicMeasure:
    """Unit pair kernel delta_0 + delta_step for step in {+1, -1}."""
    if step not in (1, -1):
        raise ParameterOutOfRange(f"pair kernels take step +1 or -1, got {step}")
    return from_atoms({0: 1, step: 1}, mode=mode)


def binomial_kernel(*, mode: str = EXACT) -> AtomicMeasure:
    """The smoothing kernel 1/4 delta_{-1} + 1/2 delta_0 + 1/4 delta_1."""
    q = Fraction(1, 4)
    return from_atoms({-1: q, 0: 2 * q, 1: q}, mode=mode)


def half_pair_kernel(*, mode: str = EXACT) -> AtomicMeasure:
    """The averaging kernel (delta_0 + delta_1) / 2."""
    h = Fraction(1, 2)
    return from_atoms({0: h, 1: h}, mode=mode)


# --- truncated series ------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """A truncation of a formal inverse series.

    Attributes
    ----------
    measure : AtomicMeasure
        The truncated series itself.
    kernel : AtomicMeasure
        The kernel this series inverts (up to boundary junk).
    window : WindowSpec
        Nominal support window of the truncation.
    boundary : tuple of points
        Where ``kernel * measure - delta_0`` is nonzero.  Computed by
        direct convolution at construction time.
    """

    measure: AtomicMeasure
    kernel: AtomicMeasure
    window: WindowSpec
    boundary: tuple[Point, ...]

    @property
    def halfwidth(self) -> int:
        return max(abs(lo) for b in self.window.bounds for lo in b)

    def boundary_distance(self) -> int | None:
        """Distance from the origin to the nearest boundary atom (None if clean)."""
        if not self.boundary:
            return None
        return min(max(abs(c) for c in p) for p in self.boundary)

    def residual(self) -> AtomicMeasure:
        return self.kernel.convolve(self.measure) - AtomicMeasure.unit(
            self.kernel.dimension, self.kernel.mode)


def _finish(measure: AtomicMeasure, kernel: AtomicMeasure, window: WindowSpec) -> TruncatedSeries:
    resid = kernel.convolve(measure) - AtomicMeasure.unit(kernel.dimension, kernel.mode)
    return TruncatedSeries(measure, kernel, window, tuple(sorted(resid.atoms)))


def _classify_pair(kernel: AtomicMeasure) -> int:
    if kernel.dimension != 1:
        raise DimensionMismatch("one-sided series are one-dimensional")
    atoms = dict(kernel.atoms)
    for step in (1, -1):
        if set(atoms) == {(0,), (step,)} and all(w == 1 for w in atoms.values()):
            return step
    raise UnsupportedKernel(
        "expected delta_0 + delta_1 or delta_{-1} + delta_0, got atoms "
        f"{ {p: str(w) for p, w in kernel.atoms.items()} }")


def unit_pair_inverse(kernel: AtomicMeasure, side: Side, terms: int) -> TruncatedSeries:
    """First ``terms`` atoms of the one-sided inverse series of a unit pair kernel."""
    if terms < 1:
        raise ParameterOutOfRange("a truncated series needs at least one term")
    step = _classify_pair(kernel)
    mode = kernel.mode
    if step == 1 and side is Side.RIGHT:
        atoms = {k: (-1) ** k for k in range(terms)}
    elif step == 1 and side is Side.LEFT:
        atoms = {-k: (-1) ** (k + 1) for k in range(1, terms + 1)}
    elif step == -1 and side is Side.RIGHT:
        atoms = {k: (-1) ** (k + 1) for k in range(1, terms + 1)}
    else:
        atoms = {-k: (-1) ** k for k in range(terms)}
    lo, hi = min(atoms), max(atoms)
    measure = from_atoms(atoms, mode=mode)
    return _finish(measure, kernel, WindowSpec(((lo, hi),)))


def cauchy_product(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product of two truncated series, targeting the product kernel.

    The interior coefficients (those unaffected by either truncation
    edge) agree with the Cauchy product of the untruncated series.
    """
    measure = a.measure.convolve(b.measure)
    kernel = a.kernel.convolve(b.kernel)
    bounds = tuple(
        (ba[0] + bb[0], ba[1] + bb[1])
        for ba, bb in zip(a.window.bounds, b.window.bounds))
    return _finish(measure, kernel, WindowSpec(bounds))


def binomial_inverse(halfwidth: int, *, mode: str = EXACT) -> TruncatedSeries:
    """Truncated two-sided inverse of the binomial kernel.

    Carries weight ``2|n| (-1)^(|n|+1)`` at every nonzero n in
    [-halfwidth, halfwidth]; the weight at the origin is zero.  The
    largest coefficient magnitude is therefore exactly ``2 * halfwidth``.
    """
    if halfwidth < 1:
        raise ParameterOutOfRange("halfwidth must be >= 1")
    atoms = {}
    for n in range(1, halfwidth + 1):
        w = 2 * n * (-1) ** (n + 1)
        atoms[n] = w
        atoms[-n] = w
    measure = from_atoms(atoms, mode=mode)
    return _finish(measure, binomial_kernel(mode=mode),
                   WindowSpec(((-halfwidth, halfwidth),)))


def half_pair_inverse(halfwidth: int, *, mode: str = EXACT) -> TruncatedSeries:
    """Truncated two-sided inverse of (delta_0 + delta_1) / 2.

    Weights are ``(-1)^n`` for n >= 0 and ``(-1)^(n+1)`` for n < 0: the
    coefficients never decay, but unlike the binomial case they do not
    grow either, so a single-sample perturbation of size eps moves the
    reconstruction by at most eps.
    """
    if halfwidth < 1:
        raise ParameterOutOfRange("halfwidth must be >= 1")
    atoms = {}
    for n in range(-halfwidth, halfwidth + 1):
        atoms[n] = (-1) ** n if n >= 0 else (-1) ** (n + 1)
    measure = from_atoms(atoms, mode=mode)
    return _finish(measure, half_pair_kernel(mode=mode),
                   WindowSpec(((-halfwidth, halfwidth),)))


# --- reconstruction and its failure modes ---------------------------------


@dataclass(frozen=True)
class MarginReport:
    """Bookkeeping for one windowed reconstruction.

    ``boundary_distance`` is the exact distance from the origin to the
    nearest residual atom of the series; reconstruction is exact on
    [-s, s] precisely when that distance exceeds 2s.  The sufficient
    rule of thumb ``halfwidth > 2s + 2`` is reported alongside.
    """

    support_radius: int
    halfwidth: int
    boundary_distance: int | None
    sufficient_halfwidth: int
    contamination: tuple[tuple[Point, object], ...]
    max_contamination: object


def _require_margin(f: GridSignal, inverse: TruncatedSeries) -> tuple[int, int | None]:
    s = f.support_radius()
    dist = inverse.boundary_distance()
    if dist is not None and dist <= 2 * s:
        raise InsufficientTruncation(
            f"series halfwidth {inverse.halfwidth} cannot separate boundary junk "
            f"from a support radius {s} image: required N > {2 * s + 2}",
            required_halfwidth=2 * s + 3,
            support_radius=s)
    return s, dist


def reconstruct(f: GridSignal, kernel: AtomicMeasure,
                inverse: TruncatedSeries) -> tuple[GridSignal, MarginReport]:
    """Blur ``f`` with ``kernel`` and unblur with a truncated series inverse.

    Returns the reconstruction restricted to the support window
    ``[-s, s]`` of ``f`` plus a margin report locating whatever boundary
    contamination landed outside that window.  In exact mode the
    restricted part reproduces ``f`` atom for atom whenever the margin
    precondition holds.
    """
    if f.dimension != 1:
        raise DimensionMismatch("series reconstruction works on 1D lattice signals")
    if kernel != inverse.kernel:
        raise UnsupportedKernel("this inverse was built for a different kernel")
    s, dist = _require_margin(f, inverse)
    blurred = apply_to_signal(f, kernel)
    full = apply_to_signal(blurred, inverse.measure)
    restricted = full.restrict((-s, s))
    spill = (full - f).lattice_dict()
    contamination = tuple(sorted(spill.items()))
    max_cont = max((abs(v) for v in spill.values()), default=f._zero())
    report = MarginReport(
        support_radius=s,
        halfwidth=inverse.halfwidth,
        boundary_distance=dist,
        sufficient_halfwidth=2 * s + 3,
        contamination=contamination,
        max_contamination=max_cont,
    )
    return restricted, report


@dataclass(frozen=True)
class PerturbationReport:
    """Effect of one noisy sample on a series reconstruction."""

    eps: object
    site: Point
    support_radius: int
    halfwidth: int
    margin: int | None
    max_deviation: object
    predicted_deviation: object


def perturbation_response(f: GridSignal, kernel: AtomicMeasure,
                          inverse: TruncatedSeries, eps,
                          site: int = 0) -> PerturbationReport:
    """Perturb one blurred sample by eps and measure the reconstruction shift.

    The deviation pattern is eps times the series coefficients
    translated to the perturbation site, so the worst-case deviation is
    ``|eps| * max |coefficient|``: ``2 N eps`` for the binomial inverse
    and plain ``eps`` for the half-pair inverse.  Reported next to the
    measured maximum for comparison.
    """
    if f.dimension != 1:
        raise DimensionMismatch("series reconstruction works on 1D lattice signals")
    if kernel != inverse.kernel:
        raise UnsupportedKernel("this inverse was built for a different kernel")
    s, dist = _require_margin(f, inverse)
    eps_w = coerce_weight(eps, kernel.mode)
    blurred = apply_to_signal(f, kernel)
    noisy = blurred.with_impulse(site, eps_w)
    clean_rec = apply_to_signal(blurred, inverse.measure)
    noisy_rec = apply_to_signal(noisy, inverse.measure)
    deviation = (noisy_rec - clean_rec).max_abs_exact()
    predicted = abs(eps_w) * inverse.measure.max_abs_weight()
    return PerturbationReport(
        eps=eps_w,
        site=(site,) if isinstance(site, int) else tuple(site),
        support_radius=s,
        halfwidth=inverse.halfwidth,
        margin=None if dist is None else dist - 2 * s,
        max_deviation=deviation,
        predicted_deviation=predicted,
    )


def growth_table(halfwidths, *, mode: str = EXACT) -> list[tuple[int, int]]:
    """Measured max |coefficient| of the binomial inverse per halfwidth."""
    rows = []
    for n in halfwidths:
        series = binomial_inverse(n, mode=mode)
        rows.append((n, int(series.measure.max_abs_weight())))
    return rows
