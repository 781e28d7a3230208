"""Physical-layer model: SINR, per-link spectral efficiency, capacity matrices.

Powers are carried as spectral densities in dBm/Hz together with the system
bandwidth; linear total power is 10**((psd - 30) / 10) * bandwidth (watts).
Rates are spectral efficiencies in bits/s/Hz; absolute bit rates are a
reporting-layer concern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "NetworkDims",
    "PowerProfile",
    "ChannelState",
    "CapacityMatrix",
    "sinr",
    "capacity",
    "capacity_matrix",
]


@dataclass(frozen=True)
class NetworkDims:
    """Topology counts: RRHs, resource blocks per RRH frame, users, files."""

    num_rrhs: int
    num_rrbs_per_rrh: int
    num_users: int
    num_files: int

    def __post_init__(self):
        for name in ("num_rrhs", "num_rrbs_per_rrh", "num_users", "num_files"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be >= 1")

    @property
    def total_rrbs(self) -> int:
        return self.num_rrhs * self.num_rrbs_per_rrh


@dataclass(frozen=True)
class PowerProfile:
    """Transmit PSD per (rrh, rrb), noise PSD, and the shared bandwidth.

    tx_psd_dbm_hz has shape (num_rrhs, num_rrbs_per_rrh). Each RRB keeps a
    fixed power for the whole frame; power adaptation happens outside this
    model.
    """

    tx_psd_dbm_hz: np.ndarray
    noise_psd_dbm_hz: float
    bandwidth_hz: float

    def __post_init__(self):
        psd = np.array(self.tx_psd_dbm_hz, dtype=float)
        if psd.ndim != 2:
            raise ValueError("tx_psd_dbm_hz must be a (num_rrhs, num_rrbs) array")
        object.__setattr__(self, "tx_psd_dbm_hz", psd)
        if not self.bandwidth_hz > 0:
            raise ValueError("bandwidth_hz must be positive")

    @classmethod
    def uniform(cls, dims: NetworkDims, tx_psd_dbm_hz: float,
                noise_psd_dbm_hz: float, bandwidth_hz: float) -> "PowerProfile":
        """Same PSD on every RRB."""
        psd = np.full((dims.num_rrhs, dims.num_rrbs_per_rrh), float(tx_psd_dbm_hz))
        return cls(psd, float(noise_psd_dbm_hz), float(bandwidth_hz))

    @classmethod
    def from_linear_watts(cls, tx_watts, noise_watts: float) -> "PowerProfile":
        """Build a profile from already-linear powers (bandwidth pinned to 1 Hz)."""
        tx = np.array(tx_watts, dtype=float)
        if np.any(tx < 0) or noise_watts < 0:
            raise ValueError("linear powers must be nonnegative")
        with np.errstate(divide="ignore"):
            psd = 10.0 * np.log10(tx) + 30.0
        noise_psd = 10.0 * math.log10(noise_watts) + 30.0 if noise_watts > 0 else -math.inf
        return cls(psd, noise_psd, 1.0)

    @property
    def tx_power_watts(self) -> np.ndarray:
        return 10.0 ** ((self.tx_psd_dbm_hz - 30.0) / 10.0) * self.bandwidth_hz

    @property
    def noise_watts(self) -> float:
        return float(10.0 ** ((self.noise_psd_dbm_hz - 30.0) / 10.0) * self.bandwidth_hz)


@dataclass(frozen=True)
class ChannelState:
    """Linear power gains |h|^2 indexed (rrh, rrb, user), constant per frame."""

    gain: np.ndarray

    def __post_init__(self):
        g = np.array(self.gain, dtype=float)
        if g.ndim != 3:
            raise ValueError("gain must be a (num_rrhs, num_rrbs, num_users) array")
        if not np.all(np.isfinite(g)) or np.any(g < 0):
            raise ValueError("gains must be finite and nonnegative")
        object.__setattr__(self, "gain", g)


@dataclass(frozen=True)
class CapacityMatrix:
    """Spectral efficiency (bits/s/Hz) per (rrh, rrb, user) association."""

    rate: np.ndarray

    def __post_init__(self):
        r = np.array(self.rate, dtype=float)
        if r.ndim != 3:
            raise ValueError("rate must be a (num_rrhs, num_rrbs, num_users) array")
        if not np.all(np.isfinite(r)) or np.any(r < 0):
            raise ValueError("rates must be finite and nonnegative")
        object.__setattr__(self, "rate", r)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.rate.shape


def _check_index(name: str, value: int, bound: int) -> None:
    if not 0 <= value < bound:
        raise IndexError(f"{name} index {value} out of range [0, {bound})")


def sinr(channel: ChannelState, power: PowerProfile, b: int, z: int, u: int) -> float:
    """Signal-to-interference-plus-noise ratio of user u on RRB z of RRH b.

    RRBs are orthogonal within one RRH, so interference comes only from the
    RRBs with the same index z in the other RRHs.
    """
    g = channel.gain
    num_rrhs, num_rrbs, num_users = g.shape
    _check_index("rrh", b, num_rrhs)
    _check_index("rrb", z, num_rrbs)
    _check_index("user", u, num_users)
    p = power.tx_power_watts
    if p.shape != (num_rrhs, num_rrbs):
        raise ValueError(f"power grid {p.shape} does not match channel {(num_rrhs, num_rrbs)}")
    signal = p[b, z] * g[b, z, u]
    interference = 0.0
    for other in range(num_rrhs):
        if other != b:
            interference += p[other, z] * g[other, z, u]
    denominator = power.noise_watts + interference
    if denominator == 0.0:
        raise ZeroDivisionError("zero noise power with no co-channel interference")
    return float(signal / denominator)


def capacity(s: float) -> float:
    """Link spectral efficiency log2(1 + SINR) in bits/s/Hz."""
    if s < 0:
        raise ValueError(f"SINR must be nonnegative, got {s}")
    return math.log2(1.0 + s)


def capacity_matrix(channel: ChannelState, power: PowerProfile,
                    dims: NetworkDims) -> CapacityMatrix:
    """Achievable capacity of every (rrh, rrb, user) association."""
    expected = (dims.num_rrhs, dims.num_rrbs_per_rrh, dims.num_users)
    if channel.gain.shape != expected:
        raise ValueError(f"channel gain shape {channel.gain.shape} does not cover dims {expected}")
    if power.tx_psd_dbm_hz.shape != expected[:2]:
        raise ValueError(f"power grid shape {power.tx_psd_dbm_hz.shape} does not cover dims {expected[:2]}")
    rate = np.empty(expected)
    for b in range(dims.num_rrhs):
        for z in range(dims.num_rrbs_per_rrh):
            for u in range(dims.num_users):
                rate[b, z, u] = capacity(sinr(channel, power, b, z, u))
    return CapacityMatrix(rate)
