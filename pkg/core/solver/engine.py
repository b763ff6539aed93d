"""Eigenvalue solver for the weighted squared-range cost.

Every stationary point y of the rotated cost satisfies y = −(λI−D)⁻¹b with
λ = yᵀy, and every such λ is a real eigenvalue of the (2n+1)×(2n+1)
matrix M assembled below. The global minimizer belongs to the largest one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from config import (
    CLAMP_THRESHOLD,
    CONSISTENCY_TOL,
    IMAG_TOL,
    NEAR_SINGULAR_COND,
    RADICAND_TOL,
    RANK_TOL,
)
from core.errors import NearSingular, NoRealEigenvalue
from core.linalg import all_eigenvalues, largest_real, largest_real_eigenvalue, shifted_diag_rank, sym_eig
from core.problem.types import SolutionKind, SolutionSet, Sphere, TrilaterationProblem
from core.problem.validation import validate_problem
from core.solver.normal import (
    NormalData,
    SpectralData,
    build_normal_data,
    cost_h,
    embed_known_coordinates,
    reduce_known_coordinates,
    spectral_data,
    to_world,
)
from services.logging_config import get_solver_logger

logger = get_solver_logger()


@dataclass(frozen=True)
class SolverOptions:
    """Tolerances and reporting switches of ``solve``.

    Attributes:
        rank_tol: Relative threshold below which λ − D_kk counts as zero.
        imag_tol: Relative imaginary part accepted as a real eigenvalue.
        radicand_tol: Negative radicands above −tol·(1+λ) are clamped to zero.
        consistency_tol: Kernel residual accepted for singular shifts.
        clamp_threshold: Lower bound applied to distances.
        report_sphere: Report continua with kind SPHERE instead of ILL_DEFINED.
        always_return: Add one point of a continuum to ``points``.
    """

    rank_tol: float = RANK_TOL
    imag_tol: float = IMAG_TOL
    radicand_tol: float = RADICAND_TOL
    consistency_tol: float = CONSISTENCY_TOL
    clamp_threshold: float = CLAMP_THRESHOLD
    report_sphere: bool = False
    always_return: bool = False


def build_M(sd: SpectralData) -> np.ndarray:
    """Assemble [[D, −diag(b), 0], [0, D, −b], [1ᵀ, 0, 0]]."""
    n = sd.dim
    M = np.zeros((2 * n + 1, 2 * n + 1))
    D = np.diag(sd.d_values)
    M[:n, :n] = D
    M[:n, n:2 * n] = -np.diag(sd.b)
    M[n:2 * n, n:2 * n] = D
    M[n:2 * n, 2 * n] = -sd.b
    M[2 * n, :n] = 1.0
    return M


def build_MA(nd: NormalData) -> np.ndarray:
    """Assemble the unrotated [[A, I, 0], [0, A, −g], [−gᵀ, 0, 0]]."""
    return _companion(nd.A, nd.g)


def build_MD(sd: SpectralData) -> np.ndarray:
    """Assemble the rotated [[D, I, 0], [0, D, −b], [−bᵀ, 0, 0]]."""
    return _companion(np.diag(sd.d_values), sd.b)


def _companion(A: np.ndarray, g: np.ndarray) -> np.ndarray:
    n = g.shape[0]
    M = np.zeros((2 * n + 1, 2 * n + 1))
    M[:n, :n] = A
    M[:n, n:2 * n] = np.eye(n)
    M[n:2 * n, n:2 * n] = A
    M[n:2 * n, 2 * n] = -g
    M[2 * n, :n] = -g
    return M


def lambda_max(sd: SpectralData, opts: SolverOptions | None = None) -> float:
    """Largest real eigenvalue of M, never below D₁₁.

    When the rightmost eigenvalue has an imaginary part above tolerance but
    a real part beyond every numerically real one, its real part is used.
    """
    opts = opts or SolverOptions()
    spectrum = all_eigenvalues(build_M(sd))
    try:
        lam = largest_real(spectrum, opts.imag_tol)
    except NoRealEigenvalue:
        lam = -np.inf

    rightmost = float(spectrum.real_parts[0])
    if rightmost - lam > opts.rank_tol * (1.0 + abs(rightmost)):
        logger.info(
            f"Rightmost eigenvalue {spectrum.values[0]:.6g} is not numerically real; using its real part"
        )
        lam = rightmost
    return max(lam, float(sd.d_values[0]))


def solve(p: TrilaterationProblem, opts: SolverOptions | None = None) -> SolutionSet:
    """Find and classify the global minimizers of the weighted squared-range cost.

    Args:
        p: Problem; distances are clamped and weights checked first.
        opts: Tolerances and reporting switches.

    Returns:
        UNIQUE when λI−D has full rank or the mirrored pair coincides,
        PAIR (positive branch first) when its rank is n−1, and ILL_DEFINED
        or SPHERE when the minimizers form a continuum.

    Raises:
        TrilaterationError: On invalid input or eigensolver failure.
    """
    opts = opts or SolverOptions()
    p = validate_problem(p, opts.clamp_threshold)
    nd = build_normal_data(p)
    sd = spectral_data(nd)
    lam = lambda_max(sd, opts)
    return _classify(p, nd, sd, lam, opts)


def _classify(p: TrilaterationProblem, nd: NormalData, sd: SpectralData,
              lam: float, opts: SolverOptions) -> SolutionSet:
    n = sd.dim
    shift = lam - sd.d_values
    # kernel indices form a prefix since D is sorted descending and λ ≥ D₁₁
    singular = np.abs(shift) <= opts.rank_tol * max(1.0, abs(lam))
    rank = n - int(np.count_nonzero(singular))

    y = np.zeros(n)
    regular = ~singular
    y[regular] = -sd.b[regular] / shift[regular]
    slack = opts.radicand_tol * (1.0 + abs(lam))

    def ill_defined(sphere: Sphere | None = None) -> SolutionSet:
        kind = SolutionKind.SPHERE if (sphere is not None and opts.report_sphere) else SolutionKind.ILL_DEFINED
        points = (sphere.sample(),) if (sphere is not None and opts.always_return) else ()
        cost = cost_h(points[0], p) if points else float("nan")
        return SolutionSet(kind=kind, points=points, lam=lam, cost=cost, rank=rank, sphere=sphere)

    def unique(y_point: np.ndarray) -> SolutionSet:
        x = to_world(sd, nd, y_point)
        return SolutionSet(kind=SolutionKind.UNIQUE, points=(x,), lam=lam, cost=cost_h(x, p), rank=rank)

    if rank >= n - 1:
        radicand = lam - float(y[1:] @ y[1:])
        if radicand < -slack:
            logger.warning(f"Radicand {radicand:.3e} is negative beyond roundoff at λ={lam:.6g}")
            return ill_defined()
        root = np.sqrt(max(radicand, 0.0))

        if rank == n:
            y[0] = -root if sd.b[0] > 0 else root
            return unique(y)

        if radicand <= slack:
            y[0] = 0.0
            return unique(y)
        y_plus, y_minus = y.copy(), y.copy()
        y_plus[0], y_minus[0] = root, -root
        points = (to_world(sd, nd, y_plus), to_world(sd, nd, y_minus))
        logger.debug(f"Rank n-1 at λ={lam:.6g}: returning mirrored pair")
        return SolutionSet(kind=SolutionKind.PAIR, points=points, lam=lam, cost=cost_h(points[0], p), rank=rank)

    b_norm = float(np.linalg.norm(sd.b))
    residual = float(np.linalg.norm(sd.b[singular]))
    if residual > opts.consistency_tol * max(1.0, b_norm, abs(lam)):
        logger.warning(f"Singular shift at λ={lam:.6g} is inconsistent (residual {residual:.3e})")
        return ill_defined()

    radius_sq = lam - float(y @ y)
    if radius_sq < -slack:
        logger.warning(f"Negative sphere radius² {radius_sq:.3e} at λ={lam:.6g}")
        return ill_defined()
    if radius_sq <= slack:
        return unique(y)

    sphere = Sphere(
        center=to_world(sd, nd, y),
        radius=float(np.sqrt(radius_sq)),
        normal_space=sd.Q[:, singular],
    )
    logger.info(f"Rank {rank} < n-1: minimizers form a sphere of radius {sphere.radius:.6g}")
    return ill_defined(sphere)


def solve_simple(p: TrilaterationProblem, cond_limit: float | None = NEAR_SINGULAR_COND,
                 use_m: bool = False, imag_tol: float = IMAG_TOL,
                 clamp_threshold: float = CLAMP_THRESHOLD) -> np.ndarray:
    """Single-point solver x = −(λI−A)⁻¹g + t.

    Args:
        p: Problem to solve.
        cond_limit: Largest accepted condition number of λI−A; None skips the check.
        use_m: Take λ from the rotated matrix M instead of the unrotated M_A.
        imag_tol: Relative imaginary part accepted as real.
        clamp_threshold: Lower bound applied to distances.

    Raises:
        NearSingular: If λI−A is singular or worse conditioned than cond_limit.
    """
    x, _ = simple_point(p, cond_limit, use_m, imag_tol, clamp_threshold)
    return x


def simple_point(p: TrilaterationProblem, cond_limit: float | None = NEAR_SINGULAR_COND,
                 use_m: bool = False, imag_tol: float = IMAG_TOL,
                 clamp_threshold: float = CLAMP_THRESHOLD) -> tuple[np.ndarray, float]:
    """Like ``solve_simple`` but also return λ."""
    p = validate_problem(p, clamp_threshold)
    nd = build_normal_data(p)
    if use_m:
        lam = largest_real_eigenvalue(build_M(spectral_data(nd)), imag_tol)
    else:
        lam = largest_real_eigenvalue(build_MA(nd), imag_tol)

    shifted = lam * np.eye(nd.dim) - nd.A
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if cond_limit is not None:
            cond = np.linalg.cond(shifted)
            if not np.isfinite(cond) or cond > cond_limit:
                raise NearSingular(f"λI−A is near singular (cond={cond:.3e}, λ={lam:.6g})")
        try:
            y = np.linalg.solve(shifted, nd.g)
        except np.linalg.LinAlgError as e:
            raise NearSingular(f"λI−A is singular at λ={lam:.6g}") from e
    x = -y + nd.t
    if not np.all(np.isfinite(x)):
        raise NearSingular(f"Solution is not finite at λ={lam:.6g}")
    return x, lam


def simple_solution(p: TrilaterationProblem, opts: SolverOptions | None = None,
                    cond_limit: float | None = NEAR_SINGULAR_COND, use_m: bool = False) -> SolutionSet:
    """``solve_simple`` packaged as a UNIQUE SolutionSet with λ, cost and rank."""
    opts = opts or SolverOptions()
    p = validate_problem(p, opts.clamp_threshold)
    x, lam = simple_point(p, cond_limit, use_m, opts.imag_tol, opts.clamp_threshold)
    rank = shifted_diag_rank(lam, sym_eig(build_normal_data(p).A).values, opts.rank_tol)
    return SolutionSet(kind=SolutionKind.UNIQUE, points=(x,), lam=lam, cost=cost_h(x, p), rank=rank)


@dataclass(frozen=True, eq=False)
class StationaryPoint:
    """Stationary point of the rotated cost belonging to one eigenvalue λ.

    For a singular shift the point is a sphere of ``radius`` around ``y``
    spanned by the coordinate axes in ``kernel``; otherwise radius is 0.
    """

    lam: float
    y: np.ndarray
    radius: float = 0.0
    kernel: tuple[int, ...] = field(default_factory=tuple)

    @property
    def is_sphere(self) -> bool:
        return self.radius > 0.0

    def samples(self) -> list[np.ndarray]:
        """The point itself, or the sphere's extreme points along each kernel axis."""
        if not self.is_sphere:
            return [self.y]
        result = []
        for k in self.kernel:
            for sign in (1.0, -1.0):
                point = self.y.copy()
                point[k] = sign * self.radius
                result.append(point)
        return result


def stationary_points(sd: SpectralData, opts: SolverOptions | None = None) -> list[StationaryPoint]:
    """Every stationary point of the rotated cost, ordered by descending λ."""
    opts = opts or SolverOptions()
    spectrum = all_eigenvalues(build_M(sd))
    candidates: list[float] = []
    for lam in spectrum.real_values(opts.imag_tol):
        lam = float(lam)
        if any(abs(lam - seen) <= opts.rank_tol * max(1.0, abs(seen)) for seen in candidates):
            continue
        candidates.append(lam)

    b_norm = float(np.linalg.norm(sd.b))
    points = []
    for lam in candidates:
        shift = lam - sd.d_values
        singular = np.abs(shift) <= opts.rank_tol * max(1.0, abs(lam))
        y = np.zeros(sd.dim)
        y[~singular] = -sd.b[~singular] / shift[~singular]
        if not singular.any():
            points.append(StationaryPoint(lam=lam, y=y))
            continue

        if np.linalg.norm(sd.b[singular]) > opts.consistency_tol * max(1.0, b_norm, abs(lam)):
            continue
        radius_sq = lam - float(y @ y)
        slack = opts.radicand_tol * (1.0 + abs(lam))
        if radius_sq < -slack:
            continue
        if radius_sq <= slack:
            points.append(StationaryPoint(lam=lam, y=y))
        else:
            points.append(StationaryPoint(
                lam=lam, y=y, radius=float(np.sqrt(radius_sq)),
                kernel=tuple(int(k) for k in np.flatnonzero(singular)),
            ))
    return points


def solve_with_known(p: TrilaterationProblem, known: dict[int, float],
                     opts: SolverOptions | None = None) -> SolutionSet:
    """Solve with some receiver coordinates fixed in advance.

    The reduced problem over the free coordinates is solved with ``solve``
    and its points are embedded back into R^n.

    Raises:
        AllCoordinatesKnown: If every coordinate is fixed.
    """
    if not known:
        return solve(p, opts)
    opts = opts or SolverOptions()
    p = validate_problem(p, opts.clamp_threshold)
    reduced = solve(reduce_known_coordinates(p, known), opts)

    points = tuple(embed_known_coordinates(x, known, p.dim) for x in reduced.points)
    sphere = None
    if reduced.sphere is not None:
        free = [i for i in range(p.dim) if i not in known]
        normal_space = np.zeros((p.dim, reduced.sphere.normal_space.shape[1]))
        normal_space[free] = reduced.sphere.normal_space
        sphere = Sphere(
            center=embed_known_coordinates(reduced.sphere.center, known, p.dim),
            radius=reduced.sphere.radius,
            normal_space=normal_space,
        )
    cost = cost_h(points[0], p) if points else float("nan")
    return SolutionSet(kind=reduced.kind, points=points, lam=reduced.lam,
                       cost=cost, rank=reduced.rank, sphere=sphere)
