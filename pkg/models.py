"""
Pydantic Models for the Gaussian Separability Toolkit
Phase-space matrices, states, spectra, criterion configs and reports
"""
import math
from enum import Enum
from typing import Optional, Dict, Any, List, Tuple

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_serializer,
    field_validator,
    model_validator,
)

from config import ERROR_MESSAGES, TOLERANCES, MP_DEFAULTS, ENSEMBLE_DEFAULTS
from exceptions import PartitionError


class QuadratureOrdering(str, Enum):
    """Phase-space coordinate layout of a 2N x 2N matrix"""
    INTERLEAVED = "interleaved"          # q1, p1, ..., qN, pN
    BLOCK_QP = "block_qp"                # q1..qN, p1..pN
    PAPER_BIPARTITE = "paper_bipartite"  # qA.., qB.., pA.., pB..
    PAIRED = "paired"                    # qA1, qB1, ..., pA1, pB1, ...

    @property
    def needs_partition(self) -> bool:
        return self in (QuadratureOrdering.PAPER_BIPARTITE, QuadratureOrdering.PAIRED)


class Verdict(str, Enum):
    """Separability verdict"""
    SEPARABLE = "Separable"
    ENTANGLED = "Entangled"


class CriterionRegime(str, Enum):
    """Whether a PPT verdict is conclusive for the bipartition"""
    EXACT = "exact"
    NECESSARY_ONLY = "necessary-only"


class Normalization(str, Enum):
    """Spectrum rescaling applied before the support test"""
    NONE = "none"
    MEAN_ONE = "mean-one"
    TRACE_DIM = "trace-dim"  # alias of MEAN_ONE


class BoundSource(str, Enum):
    """Where the support interval of the MP criterion comes from"""
    FORMULA = "formula"  # [(1-sqrt r)^2, (1+sqrt r)^2]
    PAPER = "paper"      # [3-2sqrt2, 3+2sqrt2]


class StateKind(str, Enum):
    """Gaussian state families"""
    VACUUM = "vacuum"
    THERMAL = "thermal"
    TWO_MODE_SQUEEZED = "tmsv"
    RANDOM_PURE = "random-pure"
    RANDOM_MIXED = "random-mixed"
    SEPARABLE_PRODUCT = "separable-product"


ENSEMBLE_KINDS = (
    StateKind.SEPARABLE_PRODUCT,
    StateKind.RANDOM_PURE,
    StateKind.RANDOM_MIXED,
    StateKind.TWO_MODE_SQUEEZED,
)


def _as_float_matrix(value: Any) -> np.ndarray:
    matrix = np.array(value, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(ERROR_MESSAGES["not_square"].format(shape=matrix.shape))
    if not np.all(np.isfinite(matrix)):
        raise ValueError(ERROR_MESSAGES["non_finite"])
    return matrix


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _check_dimension(matrix: np.ndarray, n_modes: int) -> None:
    expected = 2 * n_modes
    if matrix.shape != (expected, expected):
        raise ValueError(
            ERROR_MESSAGES["dimension_mismatch"].format(
                expected=expected, n_modes=n_modes, shape=matrix.shape
            )
        )


class CovarianceMatrix(BaseModel):
    """
    Covariance matrix V of an N-mode Gaussian state

    Convention: hbar = 1 and V_ab = <{dx_a, dx_b}>/2, so the vacuum is I/2
    and physical states satisfy V + (i/2) Omega >= 0. The input is
    symmetrized on load; the discarded asymmetry is kept in `asymmetry`.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_modes: int = Field(..., ge=1, description="Total number of modes N")
    matrix: np.ndarray = Field(..., description="Symmetric 2N x 2N matrix")
    ordering: QuadratureOrdering = Field(
        QuadratureOrdering.INTERLEAVED, description="Quadrature layout"
    )
    asymmetry: float = Field(0.0, ge=0, exclude=True, description="max|M - M^T| on load")

    @model_validator(mode="before")
    @classmethod
    def symmetrize(cls, data: Any) -> Any:
        if not isinstance(data, dict) or "matrix" not in data:
            return data
        raw = _as_float_matrix(data["matrix"])
        if raw.size == 0:
            return {**data, "matrix": raw}
        asymmetry = float(np.max(np.abs(raw - raw.T)))
        tolerance = TOLERANCES["symmetry_relative"] * float(np.max(np.abs(raw)))
        if asymmetry > tolerance:
            raise ValueError(
                ERROR_MESSAGES["asymmetric_matrix"].format(
                    asymmetry=asymmetry, tolerance=tolerance
                )
            )
        return {**data, "matrix": _readonly((raw + raw.T) / 2.0), "asymmetry": asymmetry}

    @model_validator(mode="after")
    def check_dimension(self) -> "CovarianceMatrix":
        _check_dimension(self.matrix, self.n_modes)
        return self

    @field_serializer("matrix")
    def serialize_matrix(self, matrix: np.ndarray) -> List[List[float]]:
        return matrix.tolist()

    @property
    def dim(self) -> int:
        return 2 * self.n_modes

    def replace_matrix(self, matrix: np.ndarray, ordering: Optional[QuadratureOrdering] = None) -> "CovarianceMatrix":
        """New covariance matrix with the same mode count"""
        return CovarianceMatrix(
            n_modes=self.n_modes,
            matrix=matrix,
            ordering=ordering or self.ordering,
        )


class SymplecticForm(BaseModel):
    """Antisymmetric form Omega encoding [x_a, x_b] = i Omega_ab"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_modes: int = Field(..., ge=1)
    matrix: np.ndarray
    ordering: QuadratureOrdering = QuadratureOrdering.INTERLEAVED

    @field_validator("matrix", mode="before")
    @classmethod
    def coerce_matrix(cls, value: Any) -> np.ndarray:
        return _readonly(_as_float_matrix(value))

    @model_validator(mode="after")
    def check_dimension(self) -> "SymplecticForm":
        _check_dimension(self.matrix, self.n_modes)
        return self

    @field_serializer("matrix")
    def serialize_matrix(self, matrix: np.ndarray) -> List[List[float]]:
        return matrix.tolist()


class SymplecticMatrix(BaseModel):
    """Real matrix S with S^T Omega S = Omega (checked by is_symplectic, not on construction)"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray
    ordering: QuadratureOrdering = QuadratureOrdering.INTERLEAVED

    @field_validator("matrix", mode="before")
    @classmethod
    def coerce_matrix(cls, value: Any) -> np.ndarray:
        return _readonly(_as_float_matrix(value))

    @field_serializer("matrix")
    def serialize_matrix(self, matrix: np.ndarray) -> List[List[float]]:
        return matrix.tolist()

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2


class PartitionSpec(BaseModel):
    """Bipartition A|B given by the (0-based) modes of party B"""
    model_config = ConfigDict(frozen=True)

    party_b_modes: Tuple[int, ...] = Field(..., min_length=1)

    @field_validator("party_b_modes", mode="before")
    @classmethod
    def normalize_modes(cls, value: Any) -> Tuple[int, ...]:
        modes = tuple(sorted({int(m) for m in value}))
        if any(m < 0 for m in modes):
            raise ValueError(ERROR_MESSAGES["negative_mode"].format(mode=modes[0]))
        return modes

    @classmethod
    def parse(cls, text: str) -> "PartitionSpec":
        """Parse a comma list such as '1' or '2,3'"""
        return cls(party_b_modes=[int(token) for token in text.split(",") if token.strip()])

    def validate_for(self, n_modes: int) -> None:
        """Raise PartitionError unless B is a non-empty proper subset of the modes"""
        for mode in self.party_b_modes:
            if mode >= n_modes:
                raise PartitionError(
                    ERROR_MESSAGES["partition_out_of_range"].format(mode=mode, n_modes=n_modes)
                )
        if len(self.party_b_modes) >= n_modes:
            raise PartitionError(
                ERROR_MESSAGES["partition_empty"].format(
                    last=n_modes - 1, modes=list(self.party_b_modes)
                )
            )

    def party_a_modes(self, n_modes: int) -> Tuple[int, ...]:
        return tuple(m for m in range(n_modes) if m not in self.party_b_modes)

    def is_one_by_n(self, n_modes: int) -> bool:
        return min(len(self.party_a_modes(n_modes)), len(self.party_b_modes)) == 1


class MirrorMap(BaseModel):
    """Diagonal mirror reflection Lambda: +1 on q slots, -1 on the p slots of party B"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    diagonal: np.ndarray
    ordering: QuadratureOrdering = QuadratureOrdering.INTERLEAVED

    @field_validator("diagonal", mode="before")
    @classmethod
    def check_signs(cls, value: Any) -> np.ndarray:
        diagonal = np.array(value, dtype=float)
        if diagonal.ndim != 1 or not np.all(np.abs(diagonal) == 1.0):
            raise ValueError("Mirror diagonal must be a vector of +1/-1 entries")
        return _readonly(diagonal)

    @field_serializer("diagonal")
    def serialize_diagonal(self, diagonal: np.ndarray) -> List[float]:
        return diagonal.tolist()

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal)


class GaussianState(BaseModel):
    """Gaussian state at the covariance level: V, mean vector and generation metadata"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    cov: CovarianceMatrix
    mean: Optional[np.ndarray] = Field(None, description="Mean vector of length 2N, zero by default")
    kind: Optional[StateKind] = None
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = Field(None, ge=0, le=ENSEMBLE_DEFAULTS["max_seed"])

    @model_validator(mode="before")
    @classmethod
    def default_mean(cls, data: Any) -> Any:
        if not isinstance(data, dict) or data.get("mean") is not None:
            return data
        cov = data.get("cov")
        if isinstance(cov, CovarianceMatrix):
            n_modes = cov.n_modes
        elif isinstance(cov, dict):
            n_modes = cov.get("n_modes")
        else:
            return data
        return {**data, "mean": np.zeros(2 * int(n_modes))} if n_modes else data

    @field_validator("mean", mode="before")
    @classmethod
    def coerce_mean(cls, value: Any) -> Optional[np.ndarray]:
        if value is None:
            return None
        mean = np.array(value, dtype=float)
        if mean.ndim != 1 or not np.all(np.isfinite(mean)):
            raise ValueError(ERROR_MESSAGES["non_finite"])
        return _readonly(mean)

    @model_validator(mode="after")
    def check_mean(self) -> "GaussianState":
        if self.mean is None or len(self.mean) != self.cov.dim:
            length = None if self.mean is None else len(self.mean)
            raise ValueError(
                ERROR_MESSAGES["mean_length"].format(expected=self.cov.dim, length=length)
            )
        return self

    @field_serializer("mean")
    def serialize_mean(self, mean: np.ndarray) -> List[float]:
        return mean.tolist()

    @property
    def n_modes(self) -> int:
        return self.cov.n_modes


class UncertaintyReport(BaseModel):
    """Result of the uncertainty-relation check V + (i/2) Omega >= 0"""
    min_eigenvalue: float
    passes: bool
    tol: float


class SimonReport(BaseModel):
    """Simon (PPT) criterion report"""
    criterion: str = "simon"
    verdict: Verdict
    min_eigenvalue: float
    regime: CriterionRegime
    tol: float
    boundary: bool = False
    n_modes: int
    partition: List[int]
    note: str = ""


class MPParams(BaseModel):
    """Marchenko-Pastur law with aspect ratio r = m/n <= 1"""
    model_config = ConfigDict(frozen=True)

    r: float = Field(..., gt=0, le=1, description="Aspect ratio m/n")

    @computed_field
    @property
    def a(self) -> float:
        return (1.0 - math.sqrt(self.r)) ** 2

    @computed_field
    @property
    def b(self) -> float:
        return (1.0 + math.sqrt(self.r)) ** 2


class SpectralSample(BaseModel):
    """Sorted eigenvalues of an m x m sample matrix built from n vectors"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenvalues: np.ndarray
    m: int = Field(..., ge=1)
    n: Optional[int] = Field(None, ge=1)

    @field_validator("eigenvalues", mode="before")
    @classmethod
    def sort_values(cls, value: Any) -> np.ndarray:
        values = np.sort(np.array(value, dtype=float).ravel())
        if not np.all(np.isfinite(values)):
            raise ValueError(ERROR_MESSAGES["non_finite"])
        if values.size and values[0] < -TOLERANCES["psd_floor"]:
            raise ValueError(f"Eigenvalue {values[0]!r} is negative beyond roundoff")
        return _readonly(values)

    @model_validator(mode="after")
    def check_length(self) -> "SpectralSample":
        if len(self.eigenvalues) != self.m:
            raise ValueError(f"Expected {self.m} eigenvalues, got {len(self.eigenvalues)}")
        return self

    @field_serializer("eigenvalues")
    def serialize_eigenvalues(self, values: np.ndarray) -> List[float]:
        return values.tolist()


class Histogram(BaseModel):
    """Density-normalized histogram: sum(density * width) = 1"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    bin_edges: np.ndarray
    densities: np.ndarray

    @field_validator("bin_edges", "densities", mode="before")
    @classmethod
    def coerce_vector(cls, value: Any) -> np.ndarray:
        return _readonly(np.array(value, dtype=float).ravel())

    @model_validator(mode="after")
    def check_normalization(self) -> "Histogram":
        if len(self.bin_edges) != len(self.densities) + 1:
            raise ValueError("Histogram needs one more edge than bins")
        if np.any(np.diff(self.bin_edges) <= 0):
            raise ValueError("Histogram edges must be strictly increasing")
        if np.any(self.densities < 0):
            raise ValueError("Histogram densities must be nonnegative")
        total = float(np.sum(self.densities * self.widths))
        if abs(total - 1.0) > TOLERANCES["histogram_normalization"]:
            raise ValueError(f"Histogram integrates to {total!r}, expected 1")
        return self

    @field_serializer("bin_edges", "densities")
    def serialize_vector(self, values: np.ndarray) -> List[float]:
        return values.tolist()

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)


class MPCriterionConfig(BaseModel):
    """Configuration of the Marchenko-Pastur support test"""
    model_config = ConfigDict(frozen=True)

    r: float = Field(MP_DEFAULTS["r"], gt=0, le=1, description="Aspect ratio of the reference law")
    normalization: Normalization = Normalization.MEAN_ONE
    support_tol: float = Field(0.0, ge=0, description="Slack delta added to both support edges")
    bound_source: BoundSource = BoundSource.FORMULA

    def bounds(self) -> Tuple[float, float]:
        if self.bound_source == BoundSource.PAPER:
            return MP_DEFAULTS["paper_bounds"]
        params = MPParams(r=self.r)
        return params.a, params.b


class SupportViolation(BaseModel):
    """Normalized eigenvalue lying outside the widened support"""
    index: int
    value: float
    distance: float


class MPVerdict(BaseModel):
    """Marchenko-Pastur criterion report"""
    criterion: str = "marchenko-pastur"
    verdict: Verdict
    r: float
    normalization: Normalization
    bound_source: BoundSource
    bounds: Tuple[float, float]
    support_tol: float
    eigenvalues_raw: List[float]
    eigenvalues_normalized: List[float]
    violations: List[SupportViolation]
    ks_distance: float
    n_modes: Optional[int] = None
    note: str = ""

    @model_validator(mode="after")
    def check_verdict(self) -> "MPVerdict":
        expected = Verdict.SEPARABLE if not self.violations else Verdict.ENTANGLED
        if self.verdict != expected:
            raise ValueError("Verdict must be Separable exactly when there are no violations")
        return self


class SpectrumReport(BaseModel):
    """Plot data: normalized spectrum histogram plus the MP density on a grid"""
    histogram: Histogram
    grid: List[float]
    mp_density: List[float]
    ks_distance: float
    r: float
    bounds: Tuple[float, float]


class EnsembleSpec(BaseModel):
    """Seeded family of bipartite states with n modes per party"""
    model_config = ConfigDict(frozen=True)

    n_states: int = Field(..., ge=1)
    n_modes_per_party: int = Field(1, ge=1)
    kind: StateKind
    seed: int = Field(..., ge=0, le=ENSEMBLE_DEFAULTS["max_seed"])
    squeezing: float = Field(ENSEMBLE_DEFAULTS["squeezing"], ge=0)
    squeezing_range: Optional[Tuple[float, float]] = None
    occupation: float = Field(ENSEMBLE_DEFAULTS["occupation"], ge=0)
    noise: float = Field(ENSEMBLE_DEFAULTS["noise"], ge=0)

    @field_validator("kind")
    @classmethod
    def check_kind(cls, kind: StateKind) -> StateKind:
        if kind not in ENSEMBLE_KINDS:
            raise ValueError(ERROR_MESSAGES["unknown_kind"].format(kind=kind.value))
        return kind

    @field_validator("squeezing_range")
    @classmethod
    def check_range(cls, value: Optional[Tuple[float, float]]) -> Optional[Tuple[float, float]]:
        if value is not None and not 0 <= value[0] <= value[1]:
            raise ValueError(f"Squeezing range must satisfy 0 <= low <= high, got {value}")
        return value


class StateRecord(BaseModel):
    """Per-state outcome of the criteria comparison"""
    index: int
    seed: int
    kind: StateKind
    label: Optional[Verdict] = None
    params: Dict[str, Any] = Field(default_factory=dict)
    partition: List[int]
    simon_verdict: Verdict
    simon_min_eigenvalue: float
    simon_regime: CriterionRegime
    mp_verdict: Verdict
    mp_violations: int
    mp_ks_distance: float


class ConfusionMatrix(BaseModel):
    """MP verdicts (columns) against the Simon oracle (rows)"""
    separable_separable: int = 0
    separable_entangled: int = 0
    entangled_separable: int = 0
    entangled_entangled: int = 0

    def count(self, simon: Verdict, mp: Verdict) -> "ConfusionMatrix":
        key = f"{simon.value.lower()}_{mp.value.lower()}"
        return self.model_copy(update={key: getattr(self, key) + 1})

    @property
    def total(self) -> int:
        return (
            self.separable_separable + self.separable_entangled
            + self.entangled_separable + self.entangled_entangled
        )

    @property
    def agreements(self) -> int:
        return self.separable_separable + self.entangled_entangled


class AgreementReport(BaseModel):
    """Comparison of the MP criterion with the Simon oracle over labelled ensembles"""
    seed: Optional[int] = Field(None, ge=0, le=ENSEMBLE_DEFAULTS["max_seed"], description="Base seed of the mixture")
    n_states: int
    confusion: ConfusionMatrix
    agreement_rate: float
    labeled_states: int
    simon_label_matches: int
    disagreeing_seeds: List[int]
    pooled_ks: Dict[str, float]
    config: MPCriterionConfig
    records: List[StateRecord]


class RunConfig(BaseModel):
    """Flags of one CLI invocation, as recorded in the run log"""
    command: str
    seed: Optional[int] = Field(None, ge=0, le=ENSEMBLE_DEFAULTS["max_seed"])
    n_modes: Optional[int] = Field(None, ge=1)
    partition: Optional[str] = None
    r: Optional[float] = None
    tol: Optional[float] = Field(None, ge=0)
    out: Optional[str] = None
    format: str = "json"
    extra: Dict[str, Any] = Field(default_factory=dict)
