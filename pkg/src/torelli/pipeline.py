"""End-to-end computation of the stable cohomology tables.

Chains the label-ring character through plethysm, the involution, the
change of basis into symplectic or orthogonal classes, and the scalar
quotient, then applies the requested bundle variant.
"""

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .branching import ClassSeries, D_series, OrthSympClass
from .characters import decompose
from .labels import ch_B
from .partitions import Partition
from .setparts import quotient_series_by_L, sigma_character
from .symfunc import LambdaSeries, SymFunc, exp_h, omega


class ConfigError(ValueError):
    """Rejected configuration."""


class NegativeMultiplicity(ArithmeticError):
    """A computed class had a coefficient outside the nonnegative integers."""


class Unsupported(ValueError):
    """No trusted-degree formula exists for this dimension."""


class ExtrapolationWarning(UserWarning):
    """The closed variant was requested outside its proven window."""


class LimitOnlyCaveat(UserWarning):
    """Dimension four results hold only after taking the genus limit."""


VARIANTS = ("disc", "point", "closed")
OUTPUTS = ("text", "json", "latex")


@dataclass(frozen=True)
class PipelineConfig:
    two_n: int
    max_degree: int
    variant: str = "disc"
    g: Optional[int] = None
    output: str = "text"

    def __post_init__(self):
        if not isinstance(self.two_n, int) or self.two_n < 2 or self.two_n % 2:
            raise ConfigError(f"dimension must be a positive even integer, got {self.two_n}")
        if not isinstance(self.max_degree, int) or self.max_degree < 0:
            raise ConfigError(f"max degree must be a nonnegative integer, got {self.max_degree}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.g is not None and (not isinstance(self.g, int) or self.g < 1):
            raise ConfigError(f"genus must be a positive integer, got {self.g}")
        if self.output not in OUTPUTS:
            raise ConfigError(f"output must be one of {OUTPUTS}, got {self.output!r}")
        if self.two_n == 4:
            warnings.warn(
                "dimension 4 tables are limit-only; no finite stable range is known",
                LimitOnlyCaveat,
                stacklevel=2,
            )

    @property
    def n(self) -> int:
        return self.two_n // 2

    @property
    def epsilon(self) -> int:
        return -1 if self.n % 2 else 1


@dataclass
class CohomologyTable:
    two_n: int
    variant: str
    epsilon: int
    entries: tuple[OrthSympClass, ...]
    trusted_up_to: Optional[int]
    snapshots: dict = field(repr=False)
    footnotes: tuple[str, ...] = ()

    @property
    def max_degree(self) -> int:
        return len(self.entries) - 1


def stable_range(two_n: int, g: int) -> int:
    """Largest degree in which the stable answer is proven at this genus."""
    if not isinstance(two_n, int) or two_n < 2 or two_n % 2:
        raise ConfigError(f"dimension must be a positive even integer, got {two_n}")
    if not isinstance(g, int) or g < 1:
        raise ConfigError(f"genus must be a positive integer, got {g}")
    if two_n == 4:
        raise Unsupported("dimension 4 has no known stable range at finite genus")
    if two_n == 2:
        return (2 * g - 2) // 3
    return (g - 3) // 2


def _scalar_geometric(step: int, trunc: int) -> LambdaSeries:
    coeffs = {k: Fraction(1) for k in range(0, trunc + 1, step)}
    return LambdaSeries.from_rational_coeffs(coeffs, trunc)


def bundle_scalar_series(n: int, trunc: int) -> LambdaSeries:
    """Poincare series of the full polynomial ring on the Euler class and
    all Pontrjagin classes below the top, as a scalar t-series."""
    out = _scalar_geometric(2 * n, trunc)
    for i in range(1, n):
        out = out * _scalar_geometric(4 * i, trunc)
    return out


def closed_fiber_series(n: int, epsilon: int, trunc: int) -> ClassSeries:
    """Class-valued Poincare series of the fibre, 1 + V_1 t^n + t^{2n}."""
    terms = {0: OrthSympClass.unit(epsilon)}
    if n <= trunc:
        terms[n] = OrthSympClass.irreducible(Partition((1,)), epsilon)
    if 2 * n <= trunc:
        terms[2 * n] = OrthSympClass.unit(epsilon)
    return ClassSeries(epsilon, terms, trunc)


def variant_adjust(series: ClassSeries, cfg: PipelineConfig) -> ClassSeries:
    if cfg.variant == "disc":
        return series
    adjusted = series.mul_scalar_series(bundle_scalar_series(cfg.n, series.trunc))
    if cfg.variant == "point":
        return adjusted
    if cfg.n > 1:
        warnings.warn(
            "closed tables above dimension 2 extrapolate the fibre division",
            ExtrapolationWarning,
            stacklevel=2,
        )
    fiber = closed_fiber_series(cfg.n, cfg.epsilon, series.trunc)
    return adjusted * fiber.invert()


def _validate_entries(series: ClassSeries, max_degree: int) -> tuple[OrthSympClass, ...]:
    entries = []
    for d in range(max_degree + 1):
        cls = series.coefficient(d)
        for lam, c in cls.coeffs.items():
            if c.denominator != 1:
                raise NegativeMultiplicity(f"multiplicity of V_{lam} in degree {d} is {c}, not an integer")
            if c < 0:
                raise NegativeMultiplicity(f"multiplicity of V_{lam} in degree {d} is {c}")
        entries.append(cls)
    return tuple(entries)


def compute_cohomology(cfg: PipelineConfig) -> CohomologyTable:
    """Decompose each cohomology degree into irreducible classes."""
    n = cfg.n
    epsilon = cfg.epsilon
    chb = ch_B(n, cfg.max_degree)
    pleth = exp_h(chb)
    pre_d = pleth.map_coefficients(omega) if n % 2 else pleth
    post_d = D_series(pre_d, epsilon)
    quotiented = quotient_series_by_L(post_d, n)
    final = variant_adjust(quotiented, cfg)
    entries = _validate_entries(final, cfg.max_degree)
    snapshots = {
        "chB": chb,
        "plethysm": pleth,
        "pre-D": pre_d,
        "post-D": post_d,
        "final": final,
    }
    footnotes = []
    if cfg.g is None:
        trusted: Optional[int] = cfg.max_degree
    else:
        try:
            trusted = min(cfg.max_degree, stable_range(cfg.two_n, cfg.g))
        except Unsupported:
            trusted = None
            footnotes.append("no finite-genus trust window is known in dimension 4")
    if cfg.two_n == 2:
        footnotes.append(
            "degrees 2 and above are lower bounds unless the groups are finite dimensional"
        )
    if cfg.variant == "closed" and n > 1:
        footnotes.append("closed variant extrapolated beyond its proven window")
    return CohomologyTable(
        two_n=cfg.two_n,
        variant=cfg.variant,
        epsilon=epsilon,
        entries=entries,
        trusted_up_to=trusted,
        snapshots=snapshots,
        footnotes=tuple(footnotes),
    )


@dataclass(frozen=True)
class OracleCell:
    q: int
    d: int
    lhs: SymFunc
    rhs: SymFunc

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class OracleReport:
    two_n: int
    q_max: int
    d_max: int
    cells: tuple[OracleCell, ...]

    @property
    def ok(self) -> bool:
        return all(cell.ok for cell in self.cells)

    def failures(self) -> list[OracleCell]:
        return [cell for cell in self.cells if not cell.ok]


def oracle_check(two_n: int, d_max: int, q_max: int) -> OracleReport:
    """Recompute the series one symmetric-group weight at a time.

    The enumerative route lists the labelled-partition basis in each
    degree, takes the fixed-point character of the permutation action
    twisted by the orientation sign, and decomposes it by orthogonality.
    It must agree with the weight-graded slice of the plethysm route.
    """
    if two_n < 2 or two_n % 2:
        raise ConfigError(f"dimension must be a positive even integer, got {two_n}")
    if d_max < 0 or q_max < 0:
        raise ConfigError("bounds must be nonnegative")
    n = two_n // 2
    chb = ch_B(n, d_max)
    pre_d = exp_h(chb)
    if n % 2:
        pre_d = pre_d.map_coefficients(omega)
    rhs_series = quotient_series_by_L(pre_d, n)
    cells = []
    for q in range(q_max + 1):
        terms = {}
        for d in range(d_max + 1):
            mults = decompose(sigma_character(q, n, d, "Pprime"))
            f = SymFunc.zero()
            for lam, m in sorted(mults.items(), key=lambda kv: kv[0].sort_key()):
                f = f + SymFunc.schur(lam) * SymFunc.scalar(m)
            if not f.is_zero():
                terms[d] = f
        lhs_series = quotient_series_by_L(LambdaSeries(terms, d_max), n)
        for d in range(d_max + 1):
            cells.append(
                OracleCell(
                    q=q,
                    d=d,
                    lhs=lhs_series.coefficient(d),
                    rhs=rhs_series.coefficient(d).homogeneous_part(q),
                )
            )
    return OracleReport(two_n=two_n, q_max=q_max, d_max=d_max, cells=tuple(cells))
