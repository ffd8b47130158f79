"""Catalog of the five three-parameter state families and their region predicates.

Each family has the form

    rho(t) = 1/(dim_a*dim_b) * (1 x 1) + 1/4 * sum_i t_i * (A_i x B_i)

with three fixed generator pairs (A_i, B_i).  The catalog provides the
density-matrix builder, analytic physicality predicates (where a closed
form exists), PPT predicates with verified fast paths, and the two
entanglement constraints

    additive:        (|t1| + |t2| + |t3|)^2 > additive_threshold
    multiplicative:  (t1*t2*t3)^2 > multiplicative_threshold

both strict.

Models
------
M1  qubit-ququart (2x4), generators (s1,l1), (s2,l13), (s3,l3).
    Physical iff |t2| <= 1/2 and |t1|+|t3| <= 1/2.  Every physical state
    equals its own partial transpose on the ququart side.
M2  two-ququart (4x4), generators (l1,l1), (l13,l13), (l3,l3).
    Mode "paper_cube" uses the documented cube domain [-1/4,1/4]^3; the
    eigenvalue oracle shows the actual PSD set is the smaller prism
    {|t2| <= 1/4, |t1|+|t3| <= 1/4} (mode "analytic").  Both modes are
    first class and every report names the mode it used.
M3  two-qubit (2x2) Bell-diagonal family, generators (s_i, s_i).  The
    middle term's second-side generator index is read as 2 (the standard
    Bell-diagonal family); the resulting spectrum is (1 +- t1 +- t2 +- t3)/4
    over sign patterns with an even number of plus signs.
M4  two-qutrit (3x3), generators (l_i, l_i) for i = 1, 2, 3.  Its physical
    set is the M3 tetrahedron scaled by 4/9; the additive threshold (4/9)^2
    is the image of the M3 threshold under that exact affine map.
M5  two-qutrit (3x3), generators (l1,l1), (l2,l4), (l3,l6).  No closed-form
    physicality predicate is shipped; the PSD eigen-oracle decides.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ContractViolation, UnsupportedMode
from .generators import gell_mann, pauli
from .linalg import (
    DEFAULT_EPS_PSD,
    eigvalsh_stack,
    hermitian_eigenvalues,
    partial_transpose_b,
)

LABELS = ("unphysical", "undetermined", "bound_entangled", "free_entangled")

MODE_ANALYTIC = "analytic"
MODE_PSD_ORACLE = "psd_oracle"
MODE_PAPER_CUBE = "paper_cube"


@dataclass(frozen=True)
class ModelSpec:
    """Immutable description of one state family."""

    model_id: str
    dim_a: int
    dim_b: int
    term_indices: tuple  # three (A-side index, B-side index) pairs
    mult_threshold: Fraction
    add_threshold: Fraction
    modes: tuple
    default_mode: str
    box_half: float  # per-axis half width of the tight bounding box
    note: str = ""

    coefficient: float = field(default=0.25, init=False)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    @property
    def identity_weight(self) -> float:
        return 1.0 / self.dim

    @property
    def multiplicative_threshold(self) -> float:
        return float(self.mult_threshold)

    @property
    def additive_threshold(self) -> float:
        return float(self.add_threshold)


MODELS = {
    "M1": ModelSpec(
        model_id="M1",
        dim_a=2,
        dim_b=4,
        term_indices=((1, 1), (2, 13), (3, 3)),
        mult_threshold=Fraction(4, 19683),
        add_threshold=Fraction(1),
        modes=(MODE_ANALYTIC, MODE_PSD_ORACLE),
        default_mode=MODE_ANALYTIC,
        box_half=0.5,
        note="physical set is the prism |t2| <= 1/2, |t1|+|t3| <= 1/2; "
        "all physical states are PPT (the partial transpose equals the state).",
    ),
    "M2": ModelSpec(
        model_id="M2",
        dim_a=4,
        dim_b=4,
        term_indices=((1, 1), (13, 13), (3, 3)),
        mult_threshold=Fraction(16, 531441),
        add_threshold=Fraction(1),
        modes=(MODE_PAPER_CUBE, MODE_ANALYTIC, MODE_PSD_ORACLE),
        default_mode=MODE_PAPER_CUBE,
        box_half=0.25,
        note="'paper_cube' takes the cube [-1/4,1/4]^3 as the physical domain; "
        "the PSD eigen-oracle gives the smaller prism |t2| <= 1/4, "
        "|t1|+|t3| <= 1/4 ('analytic' mode).  The partial transpose equals "
        "the state bit-exactly.",
    ),
    "M3": ModelSpec(
        model_id="M3",
        dim_a=2,
        dim_b=2,
        term_indices=((1, 1), (2, 2), (3, 3)),
        mult_threshold=Fraction(1, 729),
        add_threshold=Fraction(1),
        modes=(MODE_ANALYTIC, MODE_PSD_ORACLE),
        default_mode=MODE_ANALYTIC,
        box_half=1.0,
        note="Bell-diagonal two-qubit family; the middle term's second-side "
        "generator index is read as 2.  Physical set is the tetrahedron with "
        "vertices (1,1,-1), (1,-1,1), (-1,1,1), (-1,-1,-1).",
    ),
    "M4": ModelSpec(
        model_id="M4",
        dim_a=3,
        dim_b=3,
        term_indices=((1, 1), (2, 2), (3, 3)),
        mult_threshold=Fraction(4096, 387420489),
        add_threshold=Fraction(16, 81),
        modes=(MODE_ANALYTIC, MODE_PSD_ORACLE),
        default_mode=MODE_ANALYTIC,
        box_half=4.0 / 9.0,
        note="physical set is the M3 tetrahedron scaled by 4/9; the additive "
        "threshold (4/9)^2 is inferred from that scaling (no independent "
        "source states it) and is flagged in reports.",
    ),
    "M5": ModelSpec(
        model_id="M5",
        dim_a=3,
        dim_b=3,
        term_indices=((1, 1), (2, 4), (3, 6)),
        mult_threshold=Fraction(4096, 14348907),
        add_threshold=Fraction(16, 81),
        modes=(MODE_PSD_ORACLE,),
        default_mode=MODE_PSD_ORACLE,
        box_half=4.0 / 9.0,
        note="no closed-form physicality predicate; the PSD eigen-oracle "
        "decides.  The additive threshold is an unused placeholder.  The "
        "partial transpose equals the state.",
    ),
}

# Analytic volume of the physical set, per (model, mode); None where no
# closed form is shipped.
_PHYSICAL_VOLUME = {
    ("M1", MODE_ANALYTIC): 0.5,
    ("M1", MODE_PSD_ORACLE): 0.5,
    ("M2", MODE_PAPER_CUBE): 0.125,
    ("M2", MODE_ANALYTIC): 0.0625,
    ("M2", MODE_PSD_ORACLE): 0.0625,
    ("M3", MODE_ANALYTIC): 8.0 / 3.0,
    ("M3", MODE_PSD_ORACLE): 8.0 / 3.0,
    ("M4", MODE_ANALYTIC): (8.0 / 3.0) * (4.0 / 9.0) ** 3,
    ("M4", MODE_PSD_ORACLE): (8.0 / 3.0) * (4.0 / 9.0) ** 3,
    ("M5", MODE_PSD_ORACLE): None,
}


@dataclass(frozen=True)
class Classification:
    """Per-point verdict for one model at one parameter point."""

    physical: bool
    ppt: bool
    additive: bool
    multiplicative: bool
    label: str
    min_eigenvalue: float
    min_pt_eigenvalue: float

    def as_dict(self) -> dict:
        return {
            "physical": self.physical,
            "ppt": self.ppt,
            "additive": self.additive,
            "multiplicative": self.multiplicative,
            "label": self.label,
            "min_eigenvalue": self.min_eigenvalue,
            "min_pt_eigenvalue": self.min_pt_eigenvalue,
        }


def get_model(model_id: str) -> ModelSpec:
    try:
        return MODELS[model_id]
    except KeyError:
        raise KeyError(
            f"unknown model {model_id!r}; available: {', '.join(sorted(MODELS))}"
        ) from None


def resolve_mode(spec: ModelSpec, mode: str | None) -> str:
    if mode is None:
        return spec.default_mode
    if mode not in spec.modes:
        raise UnsupportedMode(
            f"model {spec.model_id} supports physicality modes {spec.modes}, not {mode!r}"
        )
    return mode


def _side_generator(dim: int, index: int) -> np.ndarray:
    return pauli(index) if dim == 2 else gell_mann(dim, index)


_COUPLING_CACHE: dict = {}


def coupling_matrices(spec: ModelSpec) -> np.ndarray:
    """The three tensor-product coupling matrices as a read-only (3, d, d) stack."""
    stack = _COUPLING_CACHE.get(spec.model_id)
    if stack is None:
        mats = [
            np.kron(_side_generator(spec.dim_a, ia), _side_generator(spec.dim_b, ib))
            for ia, ib in spec.term_indices
        ]
        stack = np.array(mats)
        stack.flags.writeable = False
        _COUPLING_CACHE[spec.model_id] = stack
    return stack


def build_state(spec: ModelSpec, t) -> np.ndarray:
    """Density matrix of the family at parameter point t = (t1, t2, t3).

    Any real t is accepted; physicality is a separate check.  The result is
    Hermitian with unit trace by construction.
    """
    t = np.asarray(t, dtype=float)
    if t.shape != (3,):
        raise ContractViolation(f"parameter point must have three components, got {t.shape}")
    k = coupling_matrices(spec)
    return spec.identity_weight * np.eye(spec.dim, dtype=complex) + spec.coefficient * (
        t[0] * k[0] + t[1] * k[1] + t[2] * k[2]
    )


def build_states(spec: ModelSpec, ts: np.ndarray) -> np.ndarray:
    """Batched ``build_state`` for an (N, 3) array of parameter points."""
    ts = np.asarray(ts, dtype=float)
    k = coupling_matrices(spec)
    base = spec.identity_weight * np.eye(spec.dim, dtype=complex)
    return base[None, :, :] + spec.coefficient * np.einsum("ni,ijk->njk", ts, k)


def _bell_forms(ts: np.ndarray, scale: float) -> np.ndarray:
    """The four affine forms scale +- t1 +- t2 +- t3 over even-plus sign patterns."""
    t1, t2, t3 = ts[:, 0], ts[:, 1], ts[:, 2]
    return np.stack(
        [
            scale + t1 - t2 + t3,
            scale - t1 + t2 + t3,
            scale + t1 + t2 - t3,
            scale - t1 - t2 - t3,
        ]
    )


def _psd_mask(spec: ModelSpec, ts: np.ndarray, eps_psd: float) -> np.ndarray:
    if len(ts) == 0:
        return np.zeros(0, dtype=bool)
    vals = eigvalsh_stack(build_states(spec, ts))
    return vals[:, 0] >= -eps_psd


def physical_mask(
    spec: ModelSpec,
    ts: np.ndarray,
    mode: str | None = None,
    eps_psd: float = DEFAULT_EPS_PSD,
) -> np.ndarray:
    """Vectorized physicality test for an (N, 3) array of parameter points."""
    ts = np.atleast_2d(np.asarray(ts, dtype=float))
    mode = resolve_mode(spec, mode)
    if mode == MODE_PSD_ORACLE:
        return _psd_mask(spec, ts, eps_psd)
    if mode == MODE_PAPER_CUBE:
        return np.max(np.abs(ts), axis=1) <= 0.25
    mid = spec.model_id
    if mid == "M1":
        return (np.abs(ts[:, 1]) <= 0.5) & (np.abs(ts[:, 0]) + np.abs(ts[:, 2]) <= 0.5)
    if mid == "M2":
        return (np.abs(ts[:, 1]) <= 0.25) & (np.abs(ts[:, 0]) + np.abs(ts[:, 2]) <= 0.25)
    if mid == "M3":
        return np.all(_bell_forms(ts, 1.0) >= 0.0, axis=0)
    if mid == "M4":
        return np.all(_bell_forms(ts, 4.0 / 9.0) >= 0.0, axis=0)
    raise UnsupportedMode(f"no analytic physicality predicate for model {mid}")


def physical_margin(spec: ModelSpec, ts: np.ndarray, mode: str | None = None) -> np.ndarray:
    """Signed distance proxy to the analytic physicality boundary (positive inside).

    Used to exclude a thin boundary band when comparing analytic predicates
    against the PSD eigen-oracle.
    """
    ts = np.atleast_2d(np.asarray(ts, dtype=float))
    mode = resolve_mode(spec, mode)
    mid = spec.model_id
    if mode == MODE_PAPER_CUBE:
        return 0.25 - np.max(np.abs(ts), axis=1)
    if mid == "M1":
        return np.minimum(0.5 - np.abs(ts[:, 1]), 0.5 - np.abs(ts[:, 0]) - np.abs(ts[:, 2]))
    if mid == "M2":
        return np.minimum(0.25 - np.abs(ts[:, 1]), 0.25 - np.abs(ts[:, 0]) - np.abs(ts[:, 2]))
    if mid == "M3":
        return np.min(_bell_forms(ts, 1.0), axis=0)
    if mid == "M4":
        return np.min(_bell_forms(ts, 4.0 / 9.0), axis=0)
    raise UnsupportedMode(f"no analytic margin for model {mid}")


def is_physical_analytic(spec: ModelSpec, t, mode: str | None = None) -> bool:
    """Closed-form physicality predicate (raises UnsupportedMode for M5)."""
    mode = resolve_mode(spec, mode)
    if mode == MODE_PSD_ORACLE:
        raise UnsupportedMode(
            f"model {spec.model_id} has no analytic physicality predicate; "
            "use the PSD oracle"
        )
    return bool(physical_mask(spec, np.asarray(t, dtype=float)[None, :], mode)[0])


def is_physical(
    spec: ModelSpec,
    t,
    mode: str | None = None,
    eps_psd: float = DEFAULT_EPS_PSD,
) -> bool:
    return bool(physical_mask(spec, np.asarray(t, dtype=float)[None, :], mode, eps_psd)[0])


def ppt_mask(spec: ModelSpec, ts: np.ndarray, eps_psd: float = DEFAULT_EPS_PSD) -> np.ndarray:
    """Vectorized PPT test using the per-model fast path.

    M1, M2, M5: the second-side generators are real symmetric, so the
    partial transpose equals the state and PPT coincides with positivity.
    M3, M4: the partial transpose flips the sign of t2.  All fast paths are
    tested against the eigenvalue oracle on the partial transpose.
    """
    ts = np.atleast_2d(np.asarray(ts, dtype=float))
    mid = spec.model_id
    if mid == "M1":
        return physical_mask(spec, ts, MODE_ANALYTIC)
    if mid == "M2":
        return physical_mask(spec, ts, MODE_ANALYTIC)
    if mid == "M5":
        return _psd_mask(spec, ts, eps_psd)
    flipped = ts * np.array([1.0, -1.0, 1.0])
    return physical_mask(spec, flipped, MODE_ANALYTIC)


def is_ppt(spec: ModelSpec, t, eps_psd: float = DEFAULT_EPS_PSD) -> bool:
    """PPT test via the eigenvalue oracle on the partial transpose."""
    rho = build_state(spec, t)
    pt = partial_transpose_b(rho, spec.dim_a, spec.dim_b)
    return bool(hermitian_eigenvalues(pt).values[0] >= -eps_psd)


def multiplicative_mask(spec: ModelSpec, ts: np.ndarray) -> np.ndarray:
    ts = np.atleast_2d(np.asarray(ts, dtype=float))
    return (ts[:, 0] * ts[:, 1] * ts[:, 2]) ** 2 > spec.multiplicative_threshold


def additive_mask(spec: ModelSpec, ts: np.ndarray) -> np.ndarray:
    ts = np.atleast_2d(np.asarray(ts, dtype=float))
    return np.sum(np.abs(ts), axis=1) ** 2 > spec.additive_threshold


def satisfies_multiplicative(spec: ModelSpec, t) -> bool:
    return bool(multiplicative_mask(spec, np.asarray(t, dtype=float)[None, :])[0])


def satisfies_additive(spec: ModelSpec, t) -> bool:
    return bool(additive_mask(spec, np.asarray(t, dtype=float)[None, :])[0])


def classify(
    spec: ModelSpec,
    t,
    eps_psd: float = DEFAULT_EPS_PSD,
    physical_mode: str | None = None,
) -> Classification:
    """Full per-point verdict: physicality, PPT, constraints and label."""
    t = np.asarray(t, dtype=float)
    mode = resolve_mode(spec, physical_mode)
    rho = build_state(spec, t)
    min_eig = float(hermitian_eigenvalues(rho).values[0])
    pt = partial_transpose_b(rho, spec.dim_a, spec.dim_b)
    min_pt_eig = float(hermitian_eigenvalues(pt).values[0])
    if mode == MODE_PSD_ORACLE:
        physical = min_eig >= -eps_psd
    else:
        physical = bool(physical_mask(spec, t[None, :], mode)[0])
    ppt = min_pt_eig >= -eps_psd
    additive = satisfies_additive(spec, t)
    multiplicative = satisfies_multiplicative(spec, t)
    if not physical:
        label = "unphysical"
    elif not ppt:
        label = "free_entangled"
    elif multiplicative or additive:
        label = "bound_entangled"
    else:
        label = "undetermined"
    return Classification(
        physical=physical,
        ppt=ppt,
        additive=additive,
        multiplicative=multiplicative,
        label=label,
        min_eigenvalue=min_eig,
        min_pt_eigenvalue=min_pt_eig,
    )


def extremal_states() -> list:
    """The extremal single-side states tied to the two constraint constants.

    Returns one record per sign variant: the 8 qubit-side states
    1/2 + (1/(2 sqrt 3)) (+-s1 +-s2 +-s3) and the 4 ququart-side states
    1/4 + 1/2 (+-(sqrt2/3) l1 +- (sqrt2/3) l3 + (1/3) l13 + (1/(3 sqrt3)) l8
    + (1/(3 sqrt6)) l15), each with trace, spectrum and minimum eigenvalue.
    """
    records = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            for s3 in (1, -1):
                rho = np.eye(2, dtype=complex) / 2 + (
                    s1 * pauli(1) + s2 * pauli(2) + s3 * pauli(3)
                ) / (2 * np.sqrt(3))
                vals = hermitian_eigenvalues(rho).values
                records.append(
                    {
                        "side": "qubit",
                        "signs": (s1, s2, s3),
                        "trace": float(np.trace(rho).real),
                        "eigenvalues": [float(v) for v in vals],
                        "min_eigenvalue": float(vals[0]),
                    }
                )
    w = np.sqrt(2.0) / 3.0
    for s1 in (1, -1):
        for s2 in (1, -1):
            rho = np.eye(4, dtype=complex) / 4 + 0.5 * (
                s1 * w * gell_mann(4, 1)
                + s2 * w * gell_mann(4, 3)
                + gell_mann(4, 13) / 3
                + gell_mann(4, 8) / (3 * np.sqrt(3))
                + gell_mann(4, 15) / (3 * np.sqrt(6))
            )
            vals = hermitian_eigenvalues(rho).values
            records.append(
                {
                    "side": "ququart",
                    "signs": (s1, s2),
                    "trace": float(np.trace(rho).real),
                    "eigenvalues": [float(v) for v in vals],
                    "min_eigenvalue": float(vals[0]),
                }
            )
    return records


def physical_volume(spec: ModelSpec, mode: str | None = None):
    """Euclidean volume of the physical set in parameter space, or None."""
    mode = resolve_mode(spec, mode)
    return _PHYSICAL_VOLUME[(spec.model_id, mode)]


def catalog() -> list:
    """JSON-ready description of every model in the catalog."""
    out = []
    for mid in sorted(MODELS):
        spec = MODELS[mid]
        out.append(
            {
                "id": spec.model_id,
                "dim_a": spec.dim_a,
                "dim_b": spec.dim_b,
                "identity_weight": spec.identity_weight,
                "coefficient": spec.coefficient,
                "term_indices": [list(pair) for pair in spec.term_indices],
                "multiplicative_threshold": spec.multiplicative_threshold,
                "multiplicative_threshold_fraction": str(spec.mult_threshold),
                "additive_threshold": spec.additive_threshold,
                "additive_threshold_fraction": str(spec.add_threshold),
                "physical_modes": list(spec.modes),
                "default_physical_mode": spec.default_mode,
                "bounding_box_half_width": spec.box_half,
                "physical_volume": {
                    mode: _PHYSICAL_VOLUME[(mid, mode)] for mode in spec.modes
                },
                "note": spec.note,
            }
        )
    return out
