"""Suite configuration: explicit parameter grids per suite, in two profiles."""

from __future__ import annotations

import copy
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..errors import ConfigError

SUITES = (
    "bijection", "phase", "reindex", "nu", "euler", "expsums", "lfunc", "convexity",
    "mellin", "bessel", "dfactor", "decay", "poisson", "partition", "amplifier",
)
PROFILES = ("default", "smoke")

PAIR_SAMPLES = [
    [1, 1, [0, 0.3]], [2, 1, [0, 0.5]], [0.5, 2, [0, -0.4]], [1, 3, [0.2, 0.1]], [3, 0.5, [0, 0.7]],
    [1, 1, [0.1, 0]], [0.7, 1.3, [-0.2, 1]], [2, 2, [0, 1.5]], [0.3, 0.8, [0.25, 0]], [5, 1, [0, -0.3]],
]

DEFAULT_GRIDS: dict[str, dict] = {
    "bijection": {"c_max": 30, "n_max": 60, "zero_c_max": 50, "brute": True,
                  "phase_pairs": [[1, 1], [2, 3], [-1, 5], [0, 1], [7, -4]]},
    "phase": {"samples": 2000, "c_max": 30, "n_max": 60, "l_max": 20},
    "reindex": {"p": 3, "q": 5, "caps": [[12, 15, 10], [18, 25, 16], [30, 40, 24]], "theta": 0.17,
                "l": 2, "lp": 3, "tol": 1e-9},
    "nu": {"n_max": 500, "hensel_p_max": 50, "hensel_k_max": 4, "mult_max": 1000,
           "quads": [[1, 1, 1], [3, 2, 5], [7, 3, -2], [5, 1, 6], [4, 1, 4]]},
    "euler": {"trunc": 20000, "points": [[1, 1, 2.5, -1, 0, 0.3], [3, 0, 2, 0, 0.5, 0], [2, 0.5, 2.2, 0, 0.8, 0]],
              "quads": [[3, 2, 5], [1, 1, 1]], "chi_modulus": 7, "psi_modulus": 5, "ad_prime_cap": 1000,
              "tol": 1e-8, "rational_primes": [3, 5, 7, 11], "rational_r": [1, 2, 3]},
    "expsums": {"moduli": [3, 5, 7, 11, 13], "r_values": [1, 2, 4], "arguments": 10, "tol": 1e-10,
                "weil_p_max": 200, "crt_pairs": [[3, 5], [4, 7], [5, 8], [7, 9]]},
    "lfunc": {"q_max": 100, "zeta_q_max": 100, "zeta_re": [1.2, 2.0], "reflection_q_max": 100,
              "reflection_samples": 20},
    "convexity": {"q_max": 2000, "t_grid": [0, 0.5, 1, 1.5, 2], "threshold": 0.30, "q_min": 3,
                  "stability_q_max": 200},
    "mellin": {"x": [0.1, 1, 3], "s": [[2, 0], [1, 0], [0.5, 3]], "tol": 1e-8, "T_max": 200,
               "ratio_alpha": 0.25, "ratio_s2": [0.5, 20], "ratio_t": [0, 5, 10, 20, 40, 50, 80]},
    "bessel": {"pair_samples": PAIR_SAMPLES, "pair_tol": 1e-6, "limit_z": [0.5, 1, 3, 10, 30],
               "limit_tol": 1e-5, "regime_tol": 1e-3, "oracle_points": [[0, 2, 5], [0, 0.5, 3], [0.3, 1, 7]]},
    "dfactor": {"nodes": 24, "t": [1, 3, 9], "eps": 0.1, "tol": 1e-5, "oracle_s": [[0.5, 1, 0.5, 3, 0, 1]],
                "geom": {"d0": 1, "k": 1, "l1": 2, "l2": 3, "m": 1}},
    "decay": {"doublings": 5, "required": 2.0},
    "poisson": {"c_max": 30, "tol": 1e-9, "kinds": ["quadratic_root", "character"]},
    "partition": {"x_caps": [1, 10, 1024, 100000], "grid": 1000, "tol": 1e-12},
    "amplifier": {"L_max": 10000, "L_step": 97, "sequences": 3, "prime_cap": 100, "vectors": 100,
                  "support": 30, "ladder": [4, 16, 100, 1000, 10000], "tol": 1e-10},
}

SMOKE_OVERRIDES: dict[str, dict] = {
    "bijection": {"c_max": 10, "n_max": 20, "zero_c_max": 20},
    "phase": {"samples": 200, "c_max": 12, "n_max": 20},
    "reindex": {"caps": [[12, 15, 10], [18, 25, 16]]},
    "nu": {"n_max": 151, "hensel_p_max": 13, "hensel_k_max": 3, "mult_max": 200},
    "euler": {"trunc": 5000, "points": [[3, 0, 2, 0, 0.5, 0]], "ad_prime_cap": 200},
    "expsums": {"moduli": [3, 5, 7], "r_values": [1, 2], "arguments": 3, "weil_p_max": 50},
    "lfunc": {"q_max": 15, "zeta_q_max": 20, "reflection_q_max": 11, "reflection_samples": 3},
    "convexity": {"q_max": 200, "stability_q_max": 50},
    "mellin": {"ratio_t": [0, 5, 20, 50]},
    "bessel": {"pair_samples": PAIR_SAMPLES[:3], "limit_z": [1, 10]},
    "dfactor": {"t": [1, 3]},
    "decay": {"doublings": 4},
    "poisson": {"c_max": 8},
    "partition": {"x_caps": [10, 1024]},
    "amplifier": {"L_max": 1000, "sequences": 1, "vectors": 20},
}

# upper limits of the tables behind each suite
TABLE_LIMITS = {
    ("bijection", "c_max"): 200, ("bijection", "n_max"): 1000, ("bijection", "zero_c_max"): 500,
    ("phase", "c_max"): 500, ("nu", "n_max"): 20000, ("nu", "mult_max"): 100000,
    ("euler", "trunc"): 10**6, ("lfunc", "q_max"): 1000, ("convexity", "q_max"): 20000,
    ("poisson", "c_max"): 500, ("amplifier", "L_max"): 10**6, ("amplifier", "prime_cap"): 10000,
}


def default_grid(suite: str, profile: str = "default") -> dict:
    if suite not in DEFAULT_GRIDS:
        raise ConfigError(f"unknown suite {suite!r}")
    if profile not in PROFILES:
        raise ConfigError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    g = copy.deepcopy(DEFAULT_GRIDS[suite])
    if profile == "smoke":
        g.update(copy.deepcopy(SMOKE_OVERRIDES.get(suite, {})))
    return g


def default_cache_dir() -> str:
    env = os.environ.get("AMPSUM_CACHE_DIR")
    if env:
        return env
    return str(Path.home() / ".cache" / "ampsum")


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    grid: dict = field(default_factory=dict)    # for 'all': suite -> grid
    seed: int = 0
    workers: int = 1
    cache_dir: Optional[str] = None
    profile: str = "default"

    def echo(self) -> dict:
        """Everything needed to rerun, except the cache location (which does not affect results)."""
        return {"suite": self.suite, "grid": self.grid, "seed": self.seed, "profile": self.profile}

    def suite_grid(self, suite: str) -> dict:
        return self.grid[suite] if self.suite == "all" else self.grid


CONFIG_KEYS = {"suite", "grid", "seed", "workers", "cache_dir", "profile"}


def _validate_grid(suite: str, grid: dict) -> None:
    allowed = DEFAULT_GRIDS[suite]
    unknown = set(grid) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown grid keys for {suite}: {sorted(unknown)}")
    for key, val in grid.items():
        if key.endswith("tol") or key == "threshold":
            if not isinstance(val, (int, float)) or val <= 0:
                raise ConfigError(f"{suite}.{key} must be a positive number")
        limit = TABLE_LIMITS.get((suite, key))
        if limit is not None and (not isinstance(val, int) or isinstance(val, bool) or not 1 <= val <= limit):
            raise ConfigError(f"{suite}.{key} must be an integer in [1, {limit}]")


def make_config(suite: str, grid: Optional[dict] = None, seed: int = 0, workers: int = 1,
                cache_dir: Optional[str] = None, profile: Optional[str] = None) -> SuiteConfig:
    """Merge an explicit (partial) grid over the profile defaults and validate.

    Without a profile, ``all`` runs the smoke grids and single suites the default ones.
    """
    if suite != "all" and suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}")
    profile = profile or ("smoke" if suite == "all" else "default")
    if profile not in PROFILES:
        raise ConfigError(f"unknown profile {profile!r}")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("seed must be an integer")
    if not isinstance(workers, int) or workers < 1:
        raise ConfigError("workers must be a positive integer")
    grid = grid or {}
    if not isinstance(grid, dict):
        raise ConfigError("grid must be a mapping")
    if suite == "all":
        unknown = set(grid) - set(SUITES)
        if unknown:
            raise ConfigError(f"unknown suites in grid: {sorted(unknown)}")
        merged = {}
        for s in SUITES:
            g = default_grid(s, profile)
            g.update(grid.get(s, {}))
            _validate_grid(s, g)
            merged[s] = g
    else:
        merged = default_grid(suite, profile)
        merged.update(grid)
        _validate_grid(suite, merged)
    return SuiteConfig(suite, merged, seed, workers, cache_dir or default_cache_dir(), profile)


def load_config(path: str, **overrides) -> SuiteConfig:
    """Read a JSON config; unknown keys are rejected.  Non-None ``overrides`` win over the file."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    raw.update({k: v for k, v in overrides.items() if v is not None})
    if "suite" not in raw:
        raise ConfigError("config needs a 'suite'")
    return make_config(raw["suite"], raw.get("grid"), raw.get("seed", 0), raw.get("workers", 1),
                       raw.get("cache_dir"), raw.get("profile"))
