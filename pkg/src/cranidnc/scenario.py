"""Random instance generation: cell geometry, pathloss channel, side information.

The cell is a regular hexagon given by its corner-to-corner diameter. RRHs
sit on a deterministic circle of radius diameter/4 (a single RRH sits at the
center); users are uniform over the hexagon via rejection sampling. Link
gains follow a log-distance pathloss with lognormal shadowing drawn
independently per resource block, which stands in for per-block frequency
response. Every draw is a pure function of the configured seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from cranidnc.channel import (
    CapacityMatrix,
    ChannelState,
    NetworkDims,
    PowerProfile,
    capacity_matrix,
)
from cranidnc.sideinfo import SideInformation

__all__ = [
    "DEFAULT_PATHLOSS_INTERCEPT_DB",
    "ScenarioConfig",
    "Scenario",
    "free_space_intercept_db",
    "place_nodes",
    "channel_gain",
    "sample_side_info",
    "generate_scenario",
    "load_key_values",
    "config_from_mapping",
    "config_to_text",
    "scenario_to_text",
    "SCENARIO_KEYS",
]

_SPEED_OF_LIGHT_M_S = 299_792_458.0
_DEFAULT_CARRIER_HZ = 2.0e9
# Links shorter than this are evaluated at this distance to keep the
# log-distance model out of its near-field blow-up.
_MIN_LINK_DISTANCE_M = 1.0


def free_space_intercept_db(ref_distance_m: float,
                            carrier_hz: float = _DEFAULT_CARRIER_HZ) -> float:
    """Free-space pathloss at the reference distance, in dB."""
    wavelength = _SPEED_OF_LIGHT_M_S / carrier_hz
    return 20.0 * math.log10(4.0 * math.pi * ref_distance_m / wavelength)


DEFAULT_PATHLOSS_INTERCEPT_DB = free_space_intercept_db(100.0)


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to draw one scheduling frame."""

    dims: NetworkDims
    cell_diameter_m: float = 500.0
    tx_psd_dbm_hz: float = -42.60
    noise_psd_dbm_hz: float = -168.60
    bandwidth_hz: float = 1.0e7
    file_size_bits: float = 1.0e6
    has_prob: float = 0.5
    wants_per_user: int = 1
    rng_seed: int = 0
    pathloss_exponent: float = 4.0
    pathloss_ref_distance_m: float = 100.0
    pathloss_intercept_db: float = DEFAULT_PATHLOSS_INTERCEPT_DB
    shadowing_std_db: float = 8.0

    def __post_init__(self):
        if not 0.0 <= self.has_prob <= 1.0:
            raise ValueError("has_prob must lie in [0, 1]")
        if self.wants_per_user < 1:
            raise ValueError("wants_per_user must be >= 1")
        if not self.cell_diameter_m > 0:
            raise ValueError("cell_diameter_m must be positive")
        if not self.file_size_bits > 0:
            raise ValueError("file_size_bits must be positive")
        if not self.pathloss_ref_distance_m > 0:
            raise ValueError("pathloss_ref_distance_m must be positive")
        if self.shadowing_std_db < 0:
            raise ValueError("shadowing_std_db must be nonnegative")


@dataclass(frozen=True)
class Scenario:
    """One sampled problem instance plus the geometry it came from."""

    config: ScenarioConfig
    rrh_positions: np.ndarray
    user_positions: np.ndarray
    channel: ChannelState
    capacities: CapacityMatrix
    side_info: SideInformation


def _inside_hexagon(x: float, y: float, circumradius: float) -> bool:
    # Flat-top hexagon with vertices at (+-R, 0), (+-R/2, +-sqrt(3)R/2).
    sqrt3 = math.sqrt(3.0)
    return abs(y) <= sqrt3 * circumradius / 2.0 and sqrt3 * abs(x) + abs(y) <= sqrt3 * circumradius


def place_nodes(config: ScenarioConfig, rng: np.random.Generator,
                ) -> tuple[np.ndarray, np.ndarray]:
    """RRHs on the deterministic layout, users uniform over the hexagon."""
    dims = config.dims
    if dims.num_rrhs == 1:
        rrh = np.zeros((1, 2))
    else:
        radius = config.cell_diameter_m / 4.0
        angles = 2.0 * math.pi * np.arange(dims.num_rrhs) / dims.num_rrhs
        rrh = radius * np.column_stack([np.cos(angles), np.sin(angles)])
    circumradius = config.cell_diameter_m / 2.0
    half_height = math.sqrt(3.0) / 2.0 * circumradius
    users = np.empty((dims.num_users, 2))
    for u in range(dims.num_users):
        while True:
            x = rng.uniform(-circumradius, circumradius)
            y = rng.uniform(-half_height, half_height)
            if _inside_hexagon(x, y, circumradius):
                users[u] = (x, y)
                break
    return rrh, users


def channel_gain(distance_m: float, rng: np.random.Generator, *,
                 exponent: float = 4.0, ref_distance_m: float = 100.0,
                 intercept_db: float = DEFAULT_PATHLOSS_INTERCEPT_DB,
                 shadowing_std_db: float = 8.0) -> float:
    """Linear power gain of one link: log-distance pathloss plus shadowing.

    PL(d) = intercept + 10 * exponent * log10(d / d_ref) + N(0, sigma^2) dB,
    returned as 10**(-PL/10). A zero shadowing deviation draws nothing from
    the generator.
    """
    if distance_m <= 0:
        raise ValueError(f"distance must be positive, got {distance_m}")
    pathloss_db = intercept_db + 10.0 * exponent * math.log10(distance_m / ref_distance_m)
    if shadowing_std_db > 0:
        pathloss_db += rng.normal(0.0, shadowing_std_db)
    return 10.0 ** (-pathloss_db / 10.0)


def sample_side_info(config: ScenarioConfig, rng: np.random.Generator) -> SideInformation:
    """Independent has-membership per (user, file); wants drawn from the rest."""
    num_files = config.dims.num_files
    has: list[frozenset[int]] = []
    wants: list[frozenset[int]] = []
    for _ in range(config.dims.num_users):
        draws = rng.random(num_files)
        held = frozenset(int(f) for f in np.flatnonzero(draws < config.has_prob))
        complement = np.array(sorted(set(range(num_files)) - held), dtype=np.int64)
        count = min(config.wants_per_user, len(complement))
        if count > 0:
            chosen = rng.choice(complement, size=count, replace=False)
            wants.append(frozenset(int(f) for f in chosen))
        else:
            wants.append(frozenset())
        has.append(held)
    return SideInformation(tuple(has), tuple(wants), num_files)


def generate_scenario(config: ScenarioConfig) -> Scenario:
    """Draw positions, per-block link gains, capacities, and side information."""
    rng = np.random.default_rng(config.rng_seed)
    dims = config.dims
    rrh_positions, user_positions = place_nodes(config, rng)
    gain = np.zeros((dims.num_rrhs, dims.num_rrbs_per_rrh, dims.num_users))
    for b in range(dims.num_rrhs):
        for z in range(dims.num_rrbs_per_rrh):
            for u in range(dims.num_users):
                distance = float(np.hypot(*(user_positions[u] - rrh_positions[b])))
                distance = max(distance, _MIN_LINK_DISTANCE_M)
                gain[b, z, u] = channel_gain(
                    distance, rng,
                    exponent=config.pathloss_exponent,
                    ref_distance_m=config.pathloss_ref_distance_m,
                    intercept_db=config.pathloss_intercept_db,
                    shadowing_std_db=config.shadowing_std_db,
                )
    side_info = sample_side_info(config, rng)
    channel = ChannelState(gain)
    power = PowerProfile.uniform(dims, config.tx_psd_dbm_hz,
                                 config.noise_psd_dbm_hz, config.bandwidth_hz)
    capacities = capacity_matrix(channel, power, dims)
    return Scenario(config, rrh_positions, user_positions, channel, capacities, side_info)


# --- flat key = value configuration files ---------------------------------

_INT_KEYS = ("num_rrhs", "num_rrbs_per_rrh", "num_users", "num_files",
             "wants_per_user", "rng_seed")
_FLOAT_KEYS = ("cell_diameter_m", "tx_psd_dbm_hz", "noise_psd_dbm_hz",
               "bandwidth_hz", "file_size_bits", "has_prob",
               "pathloss_exponent", "pathloss_ref_distance_m",
               "pathloss_intercept_db", "shadowing_std_db")
SCENARIO_KEYS = frozenset(_INT_KEYS) | frozenset(_FLOAT_KEYS)


def load_key_values(path: str) -> dict[str, str]:
    """Parse a flat `key = value` file; blank lines and # comments ignored."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key] = value
    return values


def config_from_mapping(mapping: dict[str, str]) -> ScenarioConfig:
    """Build a configuration from string key-values; unknown keys are ignored."""
    defaults = ScenarioConfig(dims=NetworkDims(3, 4, 15, 10))
    dims_kwargs = {
        key: int(mapping[key]) if key in mapping else getattr(defaults.dims, key)
        for key in ("num_rrhs", "num_rrbs_per_rrh", "num_users", "num_files")
    }
    config = replace(defaults, dims=NetworkDims(**dims_kwargs))
    for key in ("wants_per_user", "rng_seed"):
        if key in mapping:
            config = replace(config, **{key: int(mapping[key])})
    for key in _FLOAT_KEYS:
        if key in mapping:
            config = replace(config, **{key: float(mapping[key])})
    return config


def config_to_text(config: ScenarioConfig) -> str:
    """Round-trippable flat key = value rendering."""
    dims = config.dims
    pairs = [
        ("num_rrhs", dims.num_rrhs),
        ("num_rrbs_per_rrh", dims.num_rrbs_per_rrh),
        ("num_users", dims.num_users),
        ("num_files", dims.num_files),
        ("cell_diameter_m", config.cell_diameter_m),
        ("tx_psd_dbm_hz", config.tx_psd_dbm_hz),
        ("noise_psd_dbm_hz", config.noise_psd_dbm_hz),
        ("bandwidth_hz", config.bandwidth_hz),
        ("file_size_bits", config.file_size_bits),
        ("has_prob", config.has_prob),
        ("wants_per_user", config.wants_per_user),
        ("rng_seed", config.rng_seed),
        ("pathloss_exponent", config.pathloss_exponent),
        ("pathloss_ref_distance_m", config.pathloss_ref_distance_m),
        ("pathloss_intercept_db", config.pathloss_intercept_db),
        ("shadowing_std_db", config.shadowing_std_db),
    ]
    return "\n".join(f"{key} = {value!r}" for key, value in pairs) + "\n"


def scenario_to_text(scenario: Scenario) -> str:
    """Deterministic text snapshot for regression comparisons."""
    lines: list[str] = []
    for i, (x, y) in enumerate(scenario.rrh_positions):
        lines.append(f"rrh {i} {float(x)!r} {float(y)!r}")
    for u, (x, y) in enumerate(scenario.user_positions):
        lines.append(f"user {u} {float(x)!r} {float(y)!r}")
    dims = scenario.config.dims
    for b in range(dims.num_rrhs):
        for z in range(dims.num_rrbs_per_rrh):
            for u in range(dims.num_users):
                gain = float(scenario.channel.gain[b, z, u])
                rate = float(scenario.capacities.rate[b, z, u])
                lines.append(f"link {b} {z} {u} {gain!r} {rate!r}")
    for u in range(dims.num_users):
        held = ",".join(str(f) for f in sorted(scenario.side_info.has[u])) or "-"
        wanted = ",".join(str(f) for f in sorted(scenario.side_info.wants[u])) or "-"
        lines.append(f"sideinfo {u} {held} {wanted}")
    return "\n".join(lines) + "\n"
