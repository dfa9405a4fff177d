"""Strata of projection centers by splitting type: formulas, construction, surveys.

For fixed (n, k) the centers form a Grassmannian, stratified by how many
summands of the normal (or restricted tangent) bundle sit at the minimal
possible degree.  This module provides the closed formulas for the
generic splitting on each stratum and its codimension, an explicit
seeded construction of centers realizing a prescribed stratum (spanned
inside the joint annihilator of independent squarefree dual forms), and
Monte-Carlo surveys of random centers.

Every randomized entry point takes a 64-bit master seed; per-trial seeds
are derived by hashing a counter, so results are reproducible and trials
are independent of evaluation order.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field as dc_field
from typing import Literal, Sequence

from .binpoly import is_squarefree
from .bundles import (
    Kind,
    ProjectionCenter,
    SplittingType,
    normal_matrix,
    ordinary_singularities,
    splitting_from_ladder,
    splitting_type,
    tangent_matrix,
    twist_ladder,
)
from .fields import Field, GF, QQ, SURVEY_PRIME
from .forms import BinaryForm, DualForm
from .linalg import Matrix

RETRY_BUDGET = 32


class InfeasibleStratumError(ValueError):
    """The requested stratum admits no center by the construction bounds."""


class ConstructionError(RuntimeError):
    """The randomized construction exhausted its retry budget."""

    def __init__(self, message: str, attempts: list[str]):
        super().__init__(message)
        self.attempts = attempts


def derive_seed(master: int, label: str, index: int) -> int:
    """Counter-based 64-bit seed stream: independent of evaluation order."""
    digest = hashlib.sha256(f"{master}:{label}:{index}".encode()).hexdigest()
    return int(digest[:16], 16)


def generic_min_mult(kind: Kind, n: int, k: int) -> int:
    """Minimal-summand multiplicity of the splitting at a generic center."""
    if kind == "normal":
        return max(0, n - 1 - 3 * k)
    if kind == "tangent":
        return max(0, n - 2 * k)
    raise ValueError(f"unknown kind {kind!r}")


class StratumSpec:
    """A stratum: bundle kind, ambient data (n, k), minimal-summand count."""

    __slots__ = ("kind", "n", "k", "min_mult")

    def __init__(self, kind: Kind, n: int, k: int, min_mult: int):
        if kind not in ("normal", "tangent"):
            raise ValueError(f"unknown kind {kind!r}")
        if not 1 <= k <= n - 3:
            raise ValueError(f"need 1 <= k <= n - 3 (k={k}, n={n})")
        lo = generic_min_mult(kind, n, k)
        hi = n - k - 2 if kind == "normal" else n - k - 1
        if not lo <= min_mult <= hi:
            raise ValueError(
                f"minimal-summand multiplicity {min_mult} outside [{lo}, {hi}] "
                f"for kind={kind}, n={n}, k={k}"
            )
        self.kind = kind
        self.n = n
        self.k = k
        self.min_mult = min_mult

    @property
    def is_generic(self) -> bool:
        return self.min_mult == generic_min_mult(self.kind, self.n, self.k)

    def dual_degree(self) -> int:
        """Degree of the dual forms cutting out the stratum's base loci."""
        return self.n - 2 if self.kind == "normal" else self.n - 1

    def conditions_per_form(self) -> int:
        # A degree-e dual form imposes n - e + 1 linear conditions.
        return self.n - self.dual_degree() + 1

    def construction_feasible(self) -> tuple[bool, str]:
        """Whether the base-locus construction applies, with a reason if not."""
        n, k, m = self.n, self.k, self.min_mult
        if m < 1:
            return False, "nothing to impose: the stratum is the generic one"
        cond = self.conditions_per_form()
        if cond * m > n - k + 1:
            return False, (
                f"multiplicity {m} exceeds the construction bound "
                f"({cond}*{m} > n - k + 1 = {n - k + 1})"
            )
        if k > n + 1 - cond * m:
            return False, (
                f"base locus too small: k={k} > n + 1 - {cond}*{m} = {n + 1 - cond * m}"
            )
        return True, ""

    def as_dict(self) -> dict:
        key = "rho" if self.kind == "normal" else "delta"
        return {"kind": self.kind, "n": self.n, "k": self.k, key: self.min_mult}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StratumSpec)
            and (self.kind, self.n, self.k, self.min_mult)
            == (other.kind, other.n, other.k, other.min_mult)
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.n, self.k, self.min_mult))

    def __repr__(self) -> str:
        return f"StratumSpec({self.kind!r}, n={self.n}, k={self.k}, min_mult={self.min_mult})"


class DualSystem:
    """Independent squarefree dual forms whose joint annihilator holds a center."""

    __slots__ = ("generators",)

    def __init__(self, generators: Sequence[DualForm]):
        if not generators:
            raise ValueError("empty system")
        field = generators[0].field
        e = generators[0].degree
        if any(g.field != field or g.degree != e for g in generators):
            raise ValueError("generators must share degree and field")
        for g in generators:
            if not is_squarefree(g.as_poly()):
                raise ValueError("generators must be squarefree")
        coeff_matrix = Matrix(field, [list(g.coeffs) for g in generators])
        if coeff_matrix.rank() != len(generators):
            raise ValueError("generators must be linearly independent")
        self.generators = tuple(generators)

    @property
    def field(self) -> Field:
        return self.generators[0].field

    @property
    def degree(self) -> int:
        return self.generators[0].degree

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"DualSystem({len(self.generators)} generators of degree {self.degree})"


@dataclass
class StratumReport:
    """Outcome of one constructed-center trial against the predicted splitting."""

    spec: StratumSpec
    center: ProjectionCenter | None
    predicted: SplittingType
    computed: SplittingType | None
    agrees: bool
    seed: int
    note: str = ""


@dataclass
class SurveyResult:
    """Histograms of splitting types over uniformly random centers."""

    n: int
    k: int
    field_tag: str
    trials: int
    immersive: int = 0
    non_immersive: int = 0
    degenerate: int = 0
    normal_hist: dict = dc_field(default_factory=dict)
    tangent_hist: dict = dc_field(default_factory=dict)

    def histogram(self, kind: Kind) -> dict:
        return self.normal_hist if kind == "normal" else self.tangent_hist

    def modal(self, kind: Kind) -> tuple[tuple[int, ...], int]:
        hist = self.histogram(kind)
        if not hist:
            raise ValueError("empty histogram")
        summands = max(hist, key=lambda s: (hist[s], s))
        return summands, hist[summands]


# -- closed formulas -----------------------------------------------------


def generic_splitting(spec: StratumSpec) -> SplittingType:
    """Splitting type at a generic center of the stratum.

    The minimal degree appears with the prescribed multiplicity; the
    remaining summands are as balanced as the degree sum allows.
    """
    n, k, m = spec.n, spec.k, spec.min_mult
    if spec.kind == "normal":
        base, excess = n + 2, 2 * k
        residual = n - 1 - m - k
    else:
        base, excess = n + 1, k
        residual = n - m - k
    if residual <= 0:
        raise ValueError("no residual summands: multiplicity too large")
    step = excess // residual
    upper = excess - step * residual
    lower = residual - upper
    assert lower >= 0 and upper >= 0
    summands = [base] * m + [base + step] * lower + [base + step + 1] * upper
    return SplittingType(spec.kind, n, k, summands)


def stratum_codim(spec: StratumSpec) -> int:
    """Codimension of the stratum in the Grassmannian of centers."""
    n, k, m = spec.n, spec.k, spec.min_mult
    if spec.kind == "normal":
        return m * (3 * k - n + 1 + m)
    return m * (2 * k - n + m)


def expected_dim_secant_grassmannian(n: int, s: int, r: int) -> int:
    """Expected dimension of the s-planes lying in spans of r+1 curve points.

    The count ``(s+1)(r-s) + r + 1`` (choose the points, then an s-plane
    in their span) is capped by the dimension of the full Grassmannian of
    s-planes in the ambient n-space.
    """
    if not 0 <= s <= r <= n:
        raise ValueError(f"need 0 <= s <= r <= n, got s={s}, r={r}, n={n}")
    return min((s + 1) * (n - s), (s + 1) * (r - s) + r + 1)


def normal_stratum_multiplicity(n: int, k: int, r: int) -> int:
    """Translate the r-th normal stratum index into a minimal-summand count.

    Both branches amount to ``generic multiplicity + r``; the admissible
    range of r is whatever keeps the result a valid multiplicity.
    """
    if not 1 <= k <= n - 3:
        raise ValueError(f"need 1 <= k <= n - 3 (k={k}, n={n})")
    if 3 * k >= n - 1:
        value = r
        if not 1 <= r <= n - k - 2:
            raise ValueError(f"index r={r} outside [1, {n - k - 2}]")
    else:
        value = n - 3 * k + r - 1
        if not 1 <= r <= 2 * k - 1:
            raise ValueError(f"index r={r} outside [1, {2 * k - 1}]")
    return value


def tangent_stratum_multiplicity(n: int, k: int, r: int) -> int:
    """Tangent analog of :func:`normal_stratum_multiplicity`.

    The inherited branch ranges are unreliable (for small k the first
    branch admits no index at all, although the strata exist); prefer
    passing the minimal-summand multiplicity to :class:`StratumSpec`
    directly.  This translation keeps the r-indexing available where it
    is consistent: the r-th stratum above the generic one.
    """
    if not 1 <= k <= n - 3:
        raise ValueError(f"need 1 <= k <= n - 3 (k={k}, n={n})")
    value = generic_min_mult("tangent", n, k) + r
    if not 1 <= r <= (n - k - 1) - generic_min_mult("tangent", n, k):
        raise ValueError(f"index r={r} gives no valid stratum")
    return value


# -- construction --------------------------------------------------------


def _constraint_rows(phi: DualForm, n: int) -> list[list]:
    """Linear conditions on degree-n coordinate vectors annihilated by phi."""
    F = phi.field
    b = phi.coeffs
    e = phi.degree
    rows = []
    for i in range(n - e + 1):
        rows.append([b[m - i] if 0 <= m - i <= e else F.zero for m in range(n + 1)])
    return rows


def _sample_system(rng: random.Random, field: Field, count: int, degree: int) -> DualSystem | None:
    gens: list[DualForm] = []
    vectors: list[list] = []
    tries = 0
    while len(gens) < count and tries < 64:
        tries += 1
        coeffs = [field.random(rng) for _ in range(degree + 1)]
        phi = DualForm(field, coeffs)
        if phi.is_zero() or not is_squarefree(phi.as_poly()):
            continue
        if Matrix(field, vectors + [list(coeffs)]).rank() != len(gens) + 1:
            continue
        gens.append(phi)
        vectors.append(list(coeffs))
    if len(gens) < count:
        return None
    return DualSystem(gens)


def _sample_points(
    rng: random.Random, field: Field, kernel: Sequence[tuple], k: int
) -> list[BinaryForm] | None:
    n_coords = len(kernel[0])
    for _ in range(16):
        rows = []
        for _ in range(k):
            acc = [field.zero] * n_coords
            for vec in kernel:
                w = field.random(rng)
                if field.is_zero(w):
                    continue
                for i, x in enumerate(vec):
                    acc[i] = field.add(acc[i], field.mul(w, x))
            rows.append(acc)
        if Matrix(field, rows).rank() == k:
            return [BinaryForm(field, row) for row in rows]
    return None


def construct_special_center(
    spec: StratumSpec, seed: int, field: Field = QQ
) -> tuple[ProjectionCenter, DualSystem]:
    """Build a center realizing the stratum, with its generating dual forms.

    Samples the prescribed number of independent squarefree dual forms,
    solves for their joint annihilator in degree n, spans a center by k
    independent points of it, and retries (bounded) until the projected
    map is an immersion and the relation-matrix rank hits the stratum's
    exact value.  Each generator contributes its own coefficient vector
    to the relation matrix's kernel, so the rank can only be deficient,
    never too large.
    """
    feasible, reason = spec.construction_feasible()
    if not feasible:
        raise InfeasibleStratumError(reason)
    n, k, m = spec.n, spec.k, spec.min_mult
    degree = spec.dual_degree()
    if spec.kind == "normal":
        target_rank = n - 1 - m
    else:
        target_rank = n - m
    attempts: list[str] = []
    for attempt in range(RETRY_BUDGET):
        rng = random.Random(derive_seed(seed, "attempt", attempt))
        system = _sample_system(rng, field, m, degree)
        if system is None:
            attempts.append(f"attempt {attempt}: no independent squarefree system")
            continue
        rows = []
        for phi in system.generators:
            rows.extend(_constraint_rows(phi, n))
        kernel = Matrix(field, rows, ncols=n + 1).kernel_basis()
        if len(kernel) < k:
            attempts.append(f"attempt {attempt}: base locus of dimension {len(kernel)} < k")
            continue
        points = _sample_points(rng, field, kernel, k)
        if points is None:
            attempts.append(f"attempt {attempt}: no independent span in the base locus")
            continue
        center = ProjectionCenter(points)
        if not ordinary_singularities(center):
            attempts.append(f"attempt {attempt}: projected map not an immersion")
            continue
        matrix = normal_matrix(center) if spec.kind == "normal" else tangent_matrix(center)
        rank = matrix.rank()
        if rank != target_rank:
            attempts.append(f"attempt {attempt}: relation rank {rank} != {target_rank}")
            continue
        return center, system
    raise ConstructionError(
        f"no center found for {spec!r} with seed {seed} in {RETRY_BUDGET} attempts",
        attempts,
    )


def verify_equivalence(
    spec: StratumSpec, trials: int, seed: int, field: Field = QQ
) -> list[StratumReport]:
    """Constructed centers versus the predicted generic splitting, per trial.

    Every trial yields a report.  Trials whose construction fails, or
    whose computed splitting deviates from the prediction, are flagged
    (``agrees=False`` with a note) rather than dropped; the computed
    splitting still passes all structural validation.
    """
    predicted = generic_splitting(spec)
    reports = []
    for t in range(trials):
        trial_seed = derive_seed(seed, "trial", t)
        try:
            center, _system = construct_special_center(spec, trial_seed, field)
        except ConstructionError as exc:
            reports.append(
                StratumReport(spec, None, predicted, None, False, trial_seed, note=str(exc))
            )
            continue
        computed = splitting_type(center, spec.kind)
        note = ""
        if computed.min_mult != spec.min_mult:
            note = (
                f"minimal-summand multiplicity {computed.min_mult} deviates from "
                f"{spec.min_mult}"
            )
        agrees = computed == predicted and not note
        reports.append(StratumReport(spec, center, predicted, computed, agrees, trial_seed, note))
    return reports


def survey_generic(
    n: int, k: int, trials: int, seed: int, field: Field | None = None
) -> SurveyResult:
    """Histogram both splitting types over uniformly random centers.

    By default samples over a large prime field; the rationals work too
    for small trial counts.  Non-immersive draws are counted, not
    analyzed.
    """
    if field is None:
        field = GF(SURVEY_PRIME)
    result = SurveyResult(n=n, k=k, field_tag=field.tag, trials=trials)
    for t in range(trials):
        rng = random.Random(derive_seed(seed, "survey", t))
        center = None
        for _ in range(8):
            rows = [[field.random(rng) for _ in range(n + 1)] for _ in range(k)]
            if Matrix(field, rows).rank() == k:
                center = ProjectionCenter([BinaryForm(field, r) for r in rows])
                break
        if center is None:
            result.degenerate += 1
            continue
        if not ordinary_singularities(center):
            result.non_immersive += 1
            continue
        result.immersive += 1
        for kind in ("normal", "tangent"):
            st = splitting_from_ladder(twist_ladder(center, kind))
            hist = result.histogram(kind)
            hist[st.summands] = hist.get(st.summands, 0) + 1
    return result
