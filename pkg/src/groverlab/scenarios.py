"""Scenario configuration: JSON schema, defaults, validation, builders.

A scenario is one register size, one iterate, one initial state and one
horizon.  Configs are flat JSON documents in which every field is
optional; angles are given in units of pi (beta = 1.0 means a pi
rotation).  Command-line flags override file values, which override the
defaults below.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass

import numpy as np

from . import grover, states
from .errors import DomainError
from .linalg import StateVector, basis_state, load_operator, random_unitary, uniform_state
from .states import Ensemble, MMixSpec, PseudoPureSpec
from .tolerances import MAX_HORIZON

MAX_CLI_QUBITS = 12

DEFAULT_CONFIG = {
    "n": 10,
    "marked": [0],
    "iterate": {
        "kind": "original",
        "unitary": "hadamard_all",
        "s": "zero",
        "beta": 1.0,
        "gamma": 1.0,
    },
    "initial": {"kind": "pure_uniform"},
    "horizon": None,
    "seed": 0,
}

_INITIAL_KINDS = ("pure_uniform", "basis", "pseudo_pure", "m_mix", "ensemble_file")
_ITERATE_KINDS = ("original", "generalized")
_NAMED_UNITARIES = ("hadamard_all", "identity", "random")
SWEEP_AXES = ("epsilon", "m", "n", "beta", "gamma")


def merge_config(*layers: dict) -> dict:
    """Deep-merge config layers over the defaults, later layers winning."""
    out = copy.deepcopy(DEFAULT_CONFIG)
    for layer in layers:
        _merge_into(out, layer or {})
    return out


def overlay(*layers: dict) -> dict:
    """Deep-merge config layers without injecting defaults."""
    out: dict = {}
    for layer in layers:
        _merge_into(out, layer or {})
    return out


def _merge_into(base: dict, extra: dict) -> None:
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _merge_into(base[key], value)
        elif value is not None:
            base[key] = copy.deepcopy(value)


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"bad JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise DomainError(f"{path}: config must be a JSON object")
    return doc


def dump_config(config: dict) -> str:
    """Canonical JSON for --dump-config; reloads to an equivalent scenario."""
    return json.dumps(config, indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class Scenario:
    """A validated, fully-resolved scenario ready to run."""

    config: dict
    spec: grover.IterateSpec
    initial: Ensemble
    horizon: int

    @property
    def n(self) -> int:
        return int(self.config["n"])


def resolve(config: dict) -> dict:
    """Fill defaults and validate field values; returns the resolved dict."""
    cfg = merge_config(config)
    n = cfg["n"]
    if not isinstance(n, int) or not 1 <= n <= MAX_CLI_QUBITS:
        raise DomainError(f"n must be an integer in [1, {MAX_CLI_QUBITS}], got {n!r}")
    dim = 1 << n
    marked = cfg["marked"]
    if not isinstance(marked, list) or not marked:
        raise DomainError("marked must be a nonempty list of basis labels")
    if any(not isinstance(x, int) or not 0 <= x < dim for x in marked):
        raise DomainError(f"marked labels must lie in [0, {dim})")
    cfg["marked"] = sorted(set(marked))

    it = cfg["iterate"]
    if it.get("kind") not in _ITERATE_KINDS:
        raise DomainError(f"iterate.kind must be one of {_ITERATE_KINDS}")
    if it["kind"] == "original":
        it.update({"unitary": "hadamard_all", "s": "zero", "beta": 1.0, "gamma": 1.0})
    else:
        for key in ("beta", "gamma"):
            if not isinstance(it.get(key), (int, float)) or not math.isfinite(it[key]):
                raise DomainError(f"iterate.{key} must be a finite number (units of pi)")
        s = it.get("s")
        if not (s in ("zero", "uniform") or isinstance(s, list)):
            raise DomainError("iterate.s must be 'zero', 'uniform' or an amplitude list")

    ini = cfg["initial"]
    kind = ini.get("kind")
    if kind not in _INITIAL_KINDS:
        raise DomainError(f"initial.kind must be one of {_INITIAL_KINDS}")
    if kind == "basis":
        label = ini.setdefault("label", 0)
        if not isinstance(label, int) or not 0 <= label < dim:
            raise DomainError(f"initial.label must lie in [0, {dim})")
    elif kind == "pseudo_pure":
        eps = ini.setdefault("epsilon", 0.5)
        if not isinstance(eps, (int, float)) or not 0.0 <= eps <= 1.0:
            raise DomainError("initial.epsilon must lie in [0, 1]")
        base = ini.setdefault("base", "uniform")
        if base not in ("uniform", "zero") and not _is_basis_name(base):
            raise DomainError("initial.base must be 'uniform', 'zero' or 'basis:<label>'")
    elif kind == "m_mix":
        m = ini.setdefault("m", 0)
        if not isinstance(m, int) or not 0 <= m <= n:
            raise DomainError(f"initial.m must lie in [0, {n}]")
    elif kind == "ensemble_file":
        if not isinstance(ini.get("path"), str):
            raise DomainError("initial.path must name an ensemble file")

    if cfg["horizon"] is None:
        cfg["horizon"] = 4 * math.ceil(math.pi * math.sqrt(dim) / 4.0)
    horizon = cfg["horizon"]
    if not isinstance(horizon, int) or not 0 <= horizon <= MAX_HORIZON:
        raise DomainError(f"horizon must be an integer in [0, {MAX_HORIZON}]")
    if not isinstance(cfg["seed"], int):
        raise DomainError("seed must be an integer")
    return cfg


def _is_basis_name(name) -> bool:
    if not isinstance(name, str) or not name.startswith("basis:"):
        return False
    return name[6:].isdigit()


def _named_state(name, n: int) -> StateVector:
    if name == "zero":
        return basis_state(0, n)
    if name == "uniform":
        return uniform_state(n)
    if _is_basis_name(name):
        return basis_state(int(name[6:]), n)
    if isinstance(name, list):
        amps = np.array([complex(re, im) for re, im in name])
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise DomainError("inline state has zero norm")
        return StateVector(n, amps / norm)
    raise DomainError(f"unknown state name {name!r}")


def build(config: dict) -> Scenario:
    """Construct the iterate and initial ensemble for a resolved config."""
    cfg = resolve(config)
    n, dim = cfg["n"], 1 << cfg["n"]
    marked = tuple(cfg["marked"])

    it = cfg["iterate"]
    if it["kind"] == "original":
        spec = grover.original_iterate(n, marked)
    else:
        name = it["unitary"]
        if name in ("hadamard_all", "identity"):
            unitary = name
        elif name == "random":
            unitary = random_unitary(dim, cfg["seed"])
        elif isinstance(name, str):
            op = load_operator(name)
            if op.dim != dim:
                raise DomainError(
                    f"unitary file has dimension {op.dim}, scenario needs {dim}")
            unitary = op
        else:
            raise DomainError(f"bad iterate.unitary {name!r}")
        spec = grover.generalized_iterate(
            n, unitary, _named_state(it["s"], n), it["beta"] * math.pi,
            marked, it["gamma"] * math.pi)

    ini = cfg["initial"]
    kind = ini["kind"]
    if kind == "pure_uniform":
        ensemble = states.pure_ensemble(uniform_state(n))
    elif kind == "basis":
        ensemble = states.pure_ensemble(basis_state(ini["label"], n))
    elif kind == "pseudo_pure":
        base = _named_state(ini["base"], n)
        ensemble = states.pseudo_pure(PseudoPureSpec(n, float(ini["epsilon"]), base))
    elif kind == "m_mix":
        ensemble = states.m_mix(MMixSpec(n, ini["m"]))
    else:
        ensemble = states.load_ensemble(ini["path"])
        if ensemble.n != n:
            raise DomainError(
                f"ensemble file is for {ensemble.n} qubits, scenario needs {n}")
    return Scenario(config=cfg, spec=spec, initial=ensemble, horizon=cfg["horizon"])


def expand_sweep(axis: str, values: list, base_config: dict) -> list[tuple[float, dict]]:
    """Instantiate one unresolved config per sweep value.

    The axis value is written into the matching field, coercing the
    iterate to 'generalized' for angle axes and the initial state to the
    matching family for epsilon/m.
    """
    if axis not in SWEEP_AXES:
        raise DomainError(f"sweep axis must be one of {SWEEP_AXES}")
    if not values:
        raise DomainError("sweep needs a nonempty value list")
    out = []
    for value in values:
        cfg = copy.deepcopy(base_config)
        if axis == "n":
            cfg["n"] = int(value)
            cfg.setdefault("marked", [0])
        elif axis == "epsilon":
            ini = cfg.setdefault("initial", {})
            if ini.get("kind") != "pseudo_pure":
                cfg["initial"] = {"kind": "pseudo_pure", "base": "uniform"}
            cfg["initial"]["epsilon"] = float(value)
        elif axis == "m":
            ini = cfg.setdefault("initial", {})
            if ini.get("kind") != "m_mix":
                cfg["initial"] = {"kind": "m_mix"}
            cfg["initial"]["m"] = int(value)
        else:  # beta / gamma
            it = cfg.setdefault("iterate", {})
            if it.get("kind") != "generalized":
                it.update({"kind": "generalized", "unitary": "hadamard_all",
                           "s": "zero", "beta": 1.0, "gamma": 1.0})
            it[axis] = float(value)
        out.append((float(value), cfg))
    return out


def parse_grid(text: str) -> list[float]:
    """Parse 'start:stop:count' into an inclusive evenly spaced grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError("grid must look like start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise DomainError(f"bad grid {text!r}") from exc
    if count < 1:
        raise DomainError("grid count must be >= 1")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]
