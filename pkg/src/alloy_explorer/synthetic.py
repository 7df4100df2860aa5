"""Seeded synthetic alloy tables with known statistics.

Desk-scale stand-in for a full casting-simulation corpus. Twelve element
fractions are drawn independently and uniformly from fixed wt.% ranges; each
output column is a fixed mix of standardized basis features of those inputs
plus a small Gaussian noise term:

    y = mean + std * (sum_t w_t * phi_t(z) + 0.1 * eps) / sqrt(sum_t w_t^2 + 0.01)

where z_i is the exactly standardized element (zero mean, unit variance, so
z_i is uniform on [-sqrt(3), +sqrt(3)]) and each basis feature phi_t has zero
mean, unit variance, and zero covariance with the others in its mix:

    z_i                                  linear term
    q_i  = (z_i^2 - 1) / sqrt(4/5)       centred quadratic (var of z^2 is 4/5)
    h_ij = z_i * z_j                     pairwise interaction (i != j)
    c_iw = (cos(w z_i) - m_w) / s_w      centred cosine ripple

with m_w = sin(w sqrt(3)) / (w sqrt(3)) and
s_w^2 = 1/2 + sin(2 w sqrt(3)) / (4 w sqrt(3)) - m_w^2, both exact for the
uniform z. By construction every output column therefore has expectation
``mean`` and variance ``std^2`` exactly, so sample statistics converge to the
targets in the recipe table at the usual 1/sqrt(n) rate and tests can check
them against closed forms.

Three scrap-feed indicator columns (a smooth softmax mix driven by the
composition) fill out the scrap-input group so all four semantic groups are
exercised. Generation is a pure function of (n, seed).
"""

from __future__ import annotations

import math

import numpy as np

from .data import ColumnGroup, ColumnSpec, Dataset
from .errors import InvalidCount

SQRT3 = math.sqrt(3.0)

# name, low, high (wt.%) -- uniform sampling ranges for the twelve inputs
ELEMENT_RANGES: tuple[tuple[str, float, float], ...] = (
    ("Si", 0.0, 14.0),
    ("Fe", 0.0, 1.5),
    ("Cu", 0.0, 5.0),
    ("Mn", 0.0, 1.5),
    ("Mg", 0.0, 6.0),
    ("Zn", 0.0, 8.0),
    ("Ni", 0.0, 2.0),
    ("Ti", 0.0, 0.3),
    ("Cr", 0.0, 0.35),
    ("Zr", 0.0, 0.25),
    ("Sr", 0.0, 0.05),
    ("V", 0.0, 0.15),
)

ELEMENTS: tuple[str, ...] = tuple(name for name, _, _ in ELEMENT_RANGES)

# name, units, target mean, target std, group
# Nominal statistics for a die-cast style Al-Si-Cu-Mg corpus: fourteen bulk
# properties plus six solidification/phase features.
OUTPUT_TARGETS: tuple[tuple[str, str, float, float, ColumnGroup], ...] = (
    ("CSC", "", 0.4562, 0.0637, ColumnGroup.PROPERTY),
    ("YS", "MPa", 277.798, 41.7141, ColumnGroup.PROPERTY),
    ("Hardness", "HV", 84.986, 12.7542, ColumnGroup.PROPERTY),
    ("CTEvol", "1/K", 7.73e-5, 2.24e-6, ColumnGroup.PROPERTY),
    ("Density", "g/cm^3", 2.6964, 0.0162, ColumnGroup.PROPERTY),
    ("Volume", "m^3/mol", 1.02e-5, 3.59e-8, ColumnGroup.PROPERTY),
    ("ElConductivity", "S/m", 1.28e7, 6.79e5, ColumnGroup.PROPERTY),
    ("ElResistivity", "ohm*m", 7.83e-8, 4.20e-9, ColumnGroup.PROPERTY),
    ("HeatCapacity", "J/mol*K", 27.6340, 0.0910, ColumnGroup.PROPERTY),
    ("ThermConductivity", "W/m*K", 176.168, 8.0090, ColumnGroup.PROPERTY),
    ("ThermDiffusivity", "m^2/s", 6.51e-5, 2.65e-6, ColumnGroup.PROPERTY),
    ("ThermResistivity", "mK/W", 5.69e-3, 2.61e-4, ColumnGroup.PROPERTY),
    ("LinThermalExp", "1/K", 2.58e-5, 7.48e-7, ColumnGroup.PROPERTY),
    ("TechThermalExp", "1/K", 2.35e-5, 6.82e-7, ColumnGroup.PROPERTY),
    ("Vf_FCC_A1", "%", 88.4799, 3.5077, ColumnGroup.MICROSTRUCTURE),
    ("delta_T", "degC", 120.2042, 9.5306, ColumnGroup.MICROSTRUCTURE),
    ("T_liq", "degC", 658.3913, 6.4341, ColumnGroup.MICROSTRUCTURE),
    ("EutFrac", "%", 57.3786, 18.1783, ColumnGroup.MICROSTRUCTURE),
    ("Vf_DIAMOND_A4", "%", 3.1701, 1.9947, ColumnGroup.MICROSTRUCTURE),
    ("Vf_AL15SI2M4", "%", 2.2810, 0.5720, ColumnGroup.MICROSTRUCTURE),
)

OUTPUT_NAMES: tuple[str, ...] = tuple(name for name, *_ in OUTPUT_TARGETS)

NOISE_WEIGHT = 0.1

# Term kinds: ("z", elem, w) | ("q", elem, w) | ("h", elem, elem, w) |
# ("c", elem, omega, w). Signs follow the usual metallurgical lore (solutes
# raise strength and resistivity, silicon depresses expansion and liquidus,
# manganese/iron feed the Al15(MnFe)3Si2 sludge phase, ...), which keeps the
# case-study filters meaningful on generated data.
RECIPES: dict[str, tuple[tuple, ...]] = {
    "CSC": (("z", "Cu", 0.5), ("z", "Mg", 0.35), ("q", "Si", -0.55), ("h", "Cu", "Mg", 0.3), ("c", "Fe", 2.0, 0.25)),
    "YS": (("z", "Cu", 0.55), ("z", "Mg", 0.45), ("z", "Zn", 0.35), ("z", "Mn", 0.2), ("z", "Zr", 0.12), ("z", "Sr", 0.08), ("h", "Cu", "Mg", 0.3), ("q", "Si", 0.15)),
    "Hardness": (("z", "Cu", 0.5), ("z", "Mg", 0.4), ("z", "Si", 0.3), ("z", "Zn", 0.3), ("z", "Ti", 0.1), ("z", "Zr", 0.1), ("h", "Zn", "Mg", 0.3)),
    "CTEvol": (("z", "Mg", 0.5), ("z", "Zn", 0.3), ("z", "Si", -0.6), ("c", "Mg", 1.0, 0.25)),
    "Density": (("z", "Cu", 0.6), ("z", "Zn", 0.45), ("z", "Ni", 0.25), ("z", "Fe", 0.2), ("z", "Si", -0.45), ("z", "Mg", -0.3)),
    "Volume": (("z", "Si", 0.5), ("z", "Mg", 0.35), ("z", "Cu", -0.5), ("z", "Zn", -0.35)),
    "ElConductivity": (("z", "Mn", -0.55), ("z", "Fe", -0.35), ("z", "Si", -0.35), ("z", "Cu", -0.25), ("q", "Mg", 0.2), ("c", "Si", 2.0, 0.2)),
    "ElResistivity": (("z", "Mn", 0.55), ("z", "Fe", 0.35), ("z", "Si", 0.35), ("z", "Cu", 0.25), ("z", "V", 0.1), ("z", "Cr", 0.1), ("h", "Mn", "Fe", 0.2)),
    "HeatCapacity": (("z", "Mg", 0.4), ("z", "Si", 0.3), ("z", "Cu", -0.35), ("c", "Zn", 1.0, 0.3)),
    "ThermConductivity": (("z", "Mn", -0.5), ("z", "Fe", -0.3), ("z", "Si", -0.4), ("z", "Cu", -0.2), ("z", "V", -0.12), ("z", "Cr", -0.1), ("q", "Si", -0.2)),
    "ThermDiffusivity": (("z", "Mn", -0.5), ("z", "Si", -0.35), ("z", "Cu", -0.3), ("h", "Mn", "Si", -0.2)),
    "ThermResistivity": (("z", "Mn", 0.5), ("z", "Si", 0.4), ("z", "Fe", 0.3), ("q", "Mn", 0.15)),
    "LinThermalExp": (("z", "Mg", 0.45), ("z", "Zn", 0.3), ("z", "Si", -0.55), ("z", "Cu", -0.15), ("c", "Si", 1.0, 0.2)),
    "TechThermalExp": (("z", "Mg", 0.45), ("z", "Zn", 0.3), ("z", "Si", -0.5), ("q", "Zn", 0.15)),
    "Vf_FCC_A1": (("z", "Si", -0.6), ("z", "Cu", -0.3), ("z", "Mg", -0.25), ("z", "Fe", -0.2), ("z", "Sr", 0.1), ("q", "Si", -0.2)),
    "delta_T": (("z", "Cu", 0.45), ("z", "Mg", 0.4), ("z", "Si", -0.35), ("h", "Cu", "Zn", 0.2), ("c", "Si", 2.0, 0.2)),
    "T_liq": (("z", "Si", -0.65), ("z", "Cu", -0.25), ("z", "Mg", -0.2), ("z", "Zn", -0.15), ("z", "Ti", 0.08)),
    "EutFrac": (("z", "Si", 0.7), ("z", "Cu", 0.2), ("h", "Si", "Fe", 0.15), ("q", "Si", 0.2)),
    "Vf_DIAMOND_A4": (("z", "Si", 0.7), ("z", "Ni", 0.15), ("z", "Mg", -0.1), ("q", "Si", 0.25)),
    "Vf_AL15SI2M4": (("z", "Mn", 0.6), ("z", "Fe", 0.35), ("z", "Si", 0.25), ("h", "Mn", "Si", 0.25)),
}

SCRAP_COLUMNS: tuple[str, ...] = ("scrap_sheet", "scrap_cast", "scrap_shred")

# direction vectors for the scrap-feed softmax, keyed by element
_SCRAP_DIRECTIONS: tuple[dict[str, float], ...] = (
    {"Mg": 0.5, "Zn": 0.4, "Si": -0.3},
    {"Si": 0.6, "Cu": 0.3, "Mg": -0.2},
    {"Fe": 0.5, "Mn": 0.4},
)


def synthetic_schema() -> list[ColumnSpec]:
    """Column specs for generated tables: 3 scrap + 12 elements + 20 outputs."""
    specs = [ColumnSpec(name, ColumnGroup.SCRAP_INPUT, "fraction") for name in SCRAP_COLUMNS]
    specs += [ColumnSpec(name, ColumnGroup.ELEMENT_FRACTION, "wt.%") for name in ELEMENTS]
    specs += [ColumnSpec(name, group, units) for name, units, _, _, group in OUTPUT_TARGETS]
    return specs


def _cosine_feature(z: np.ndarray, omega: float) -> np.ndarray:
    arg = omega * SQRT3
    mean = math.sin(arg) / arg
    var = 0.5 + math.sin(2.0 * arg) / (4.0 * arg) - mean * mean
    return (np.cos(omega * z) - mean) / math.sqrt(var)


def _feature(term: tuple, z: dict[str, np.ndarray]) -> tuple[np.ndarray, float]:
    kind = term[0]
    if kind == "z":
        _, elem, w = term
        return z[elem], w
    if kind == "q":
        _, elem, w = term
        return (z[elem] ** 2 - 1.0) / math.sqrt(0.8), w
    if kind == "h":
        _, a, b, w = term
        return z[a] * z[b], w
    if kind == "c":
        _, elem, omega, w = term
        return _cosine_feature(z[elem], omega), w
    raise ValueError(f"unknown recipe term kind {kind!r}")


def synthesize_dataset(n: int, seed: int, noise: float = NOISE_WEIGHT) -> Dataset:
    """Generate ``n`` rows deterministically from ``seed``.

    Draw order is fixed (element uniforms, then output noise, then scrap
    noise) so a given (n, seed) pair always produces a bit-identical table.
    ``noise=0.0`` yields the pure analytic response surface over the same
    compositions, which is what a perfect regressor should reproduce.
    """
    if n < 1:
        raise InvalidCount(f"row count must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    u = rng.random((n, len(ELEMENTS)))
    eps_out = rng.standard_normal((n, len(OUTPUT_TARGETS)))
    eps_scrap = rng.standard_normal((n, len(SCRAP_COLUMNS)))

    lows = np.array([lo for _, lo, _ in ELEMENT_RANGES])
    highs = np.array([hi for _, _, hi in ELEMENT_RANGES])
    elements = lows + (highs - lows) * u
    # exact standardization of U(lo, hi): mean (lo+hi)/2, std (hi-lo)/sqrt(12)
    z_all = (elements - (lows + highs) / 2.0) / ((highs - lows) / math.sqrt(12.0))
    z = {name: z_all[:, i] for i, name in enumerate(ELEMENTS)}

    outputs = np.empty((n, len(OUTPUT_TARGETS)))
    for j, (name, _, mean, std, _) in enumerate(OUTPUT_TARGETS):
        mix = np.zeros(n)
        total_weight_sq = noise**2
        for term in RECIPES[name]:
            feature, w = _feature(term, z)
            mix += w * feature
            total_weight_sq += w * w
        mix += noise * eps_out[:, j]
        outputs[:, j] = mean + std * mix / math.sqrt(total_weight_sq)

    logits = np.empty((n, len(SCRAP_COLUMNS)))
    for k, direction in enumerate(_SCRAP_DIRECTIONS):
        drive = sum(w * z[elem] for elem, w in direction.items())
        logits[:, k] = 0.6 * drive + 0.3 * eps_scrap[:, k]
    raw = np.exp(logits)
    scrap = raw / raw.sum(axis=1, keepdims=True)

    values = np.hstack([scrap, elements, outputs])
    return Dataset(
        columns=tuple(synthetic_schema()),
        values=np.ascontiguousarray(values),
        source_row_ids=np.arange(n, dtype=np.int64),
    )


def output_target(name: str) -> tuple[float, float]:
    """(mean, std) the generator is calibrated to for an output column."""
    for target_name, _, mean, std, _ in OUTPUT_TARGETS:
        if target_name == name:
            return mean, std
    raise KeyError(name)
